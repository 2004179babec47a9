#include "hypolab/spectral/sampling.hpp"

#include <cmath>
#include <cstdio>

namespace hypolab::spectral {

double Grid2D::l2_norm() const {
    double h1 = x1[1] - x1[0];
    double h2 = x2[1] - x2[0];
    double sum = 0.0;
    for (std::size_t i = 0; i < x1.size(); ++i) {
        double wi = (i == 0 || i + 1 == x1.size()) ? 0.5 : 1.0;
        for (std::size_t j = 0; j < x2.size(); ++j) {
            double wj = (j == 0 || j + 1 == x2.size()) ? 0.5 : 1.0;
            sum += wi * wj * sqr(values[i][j]);
        }
    }
    return std::sqrt(sum * h1 * h2);
}

Grid2D sample_on_grid(const SpectralVector& u, int nx1, int nx2) {
    if (nx1 < 2 || nx2 < 2)
        throw InvalidArgument("sample_on_grid: grid sizes must be >= 2");
    const SpectralBasis& basis = *u.basis;
    Grid2D g;
    g.x1.resize(nx1);
    g.x2.resize(nx2);
    for (int i = 0; i < nx1; ++i) g.x1[i] = -1.0 + 2.0 * i / (nx1 - 1);
    for (int j = 0; j < nx2; ++j) g.x2[j] = static_cast<double>(j) / (nx2 - 1);
    g.values.assign(nx1, Vec(nx2, 0.0));

    const double h = basis.x1_step();
    for (std::size_t m = 0; m < basis.size(); ++m) {
        if (u.coeffs[m] == 0.0) continue;
        const Vec& prof = basis.modes[m].profile;
        // x1 profile by linear interpolation onto the sampling grid.
        Vec v1(nx1);
        for (int i = 0; i < nx1; ++i) {
            double t = (g.x1[i] + 1.0) / h;
            int idx = std::min(static_cast<int>(t), basis.spec.grid_n - 2);
            double w = t - idx;
            v1[i] = prof[idx] * (1.0 - w) + prof[idx + 1] * w;
        }
        for (int j = 0; j < nx2; ++j) {
            double f2 = basis.x2_factor(m, g.x2[j]) * u.coeffs[m];
            if (f2 == 0.0) continue;
            for (int i = 0; i < nx1; ++i) g.values[i][j] += v1[i] * f2;
        }
    }
    return g;
}

std::string heatmap_csv(const Grid2D& g) {
    std::string out = "x1,x2,value\n";
    char buf[128];
    for (std::size_t i = 0; i < g.x1.size(); ++i) {
        for (std::size_t j = 0; j < g.x2.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.x1[i],
                          g.x2[j], g.values[i][j]);
            out += buf;
        }
    }
    return out;
}

}  // namespace hypolab::spectral
