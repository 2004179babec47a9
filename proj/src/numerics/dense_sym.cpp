#include "hypolab/numerics/dense_sym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hypolab::num {

double SymMatrix::asymmetry() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            m = std::max(m, std::abs(at(i, j) - at(j, i)));
    return m;
}

Vec jacobi_eigen(SymMatrix m, std::vector<Vec>* vectors, int max_sweeps) {
    const std::size_t n = m.n;
    if (n == 0) throw InvalidArgument("jacobi_eigen: empty matrix");
    std::vector<Vec> v;
    if (vectors) {
        v.assign(n, Vec(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    }
    if (n == 1) {
        if (vectors) *vectors = v;
        return Vec{m.at(0, 0)};
    }

    auto offdiag = [&m, n]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += sqr(m.at(i, j));
        return s;
    };
    double dscale = 0.0;
    for (std::size_t i = 0; i < n; ++i) dscale = std::max(dscale, std::abs(m.at(i, i)));
    dscale = std::max(dscale, std::sqrt(offdiag()));
    const double stop = sqr(1e-15 * std::max(dscale, 1.0)) * static_cast<double>(n * n);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag() <= stop) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = m.at(p, q);
                if (std::abs(apq) <= 1e-18 * std::max(dscale, 1.0)) continue;
                double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
                double t = std::copysign(1.0, theta) /
                           (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = m.at(i, p), aiq = m.at(i, q);
                    m.at(i, p) = c * aip - s * aiq;
                    m.at(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double api = m.at(p, i), aqi = m.at(q, i);
                    m.at(p, i) = c * api - s * aqi;
                    m.at(q, i) = s * api + c * aqi;
                }
                if (vectors) {
                    for (std::size_t i = 0; i < n; ++i) {
                        double vp = v[p][i], vq = v[q][i];
                        v[p][i] = c * vp - s * vq;
                        v[q][i] = s * vp + c * vq;
                    }
                }
            }
        }
    }

    Vec vals(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        vals[i] = m.at(i, i);
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&vals](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    Vec sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = vals[order[i]];
    if (vectors) {
        vectors->resize(n);
        for (std::size_t i = 0; i < n; ++i) (*vectors)[i] = v[order[i]];
    }
    return sorted;
}

}  // namespace hypolab::num
