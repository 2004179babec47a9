#include "hypolab/geometry/sr_system.hpp"

#include <cmath>

#include "hypolab/numerics/dense_sym.hpp"

namespace hypolab::geom {

double SRSystem::hamiltonian(const CotangentState& st) const {
    double s = 0.0;
    for (const auto& f : fields) s += sqr(dot(st.xi, f.value(st.x)));
    return s;
}

void SRSystem::flow_rhs(const CotangentState& st, Vec& dx, Vec& dxi) const {
    dx.assign(dim, 0.0);
    dxi.assign(dim, 0.0);
    for (const auto& f : fields) {
        Vec X = f.value(st.x);
        auto J = f.jacobian(st.x);
        double p = dot(st.xi, X);
        for (int a = 0; a < dim; ++a) {
            dx[a] += 2.0 * p * X[a];
            // d l / d x_a = sum_i 2 p_i <xi, dX_i/dx_a>
            double jt = 0.0;
            for (int b = 0; b < dim; ++b) jt += st.xi[b] * J[b][a];
            dxi[a] -= 2.0 * p * jt;
        }
    }
}

std::vector<Vec> SRSystem::frame_gram(const Vec& x) const {
    std::vector<Vec> q(dim, Vec(dim, 0.0));
    for (const auto& f : fields) {
        Vec X = f.value(x);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) q[a][b] += X[a] * X[b];
    }
    return q;
}

double SRSystem::jacobian_mismatch(const Vec& x, double h) const {
    double worst = 0.0;
    for (const auto& f : fields) {
        auto J = f.jacobian(x);
        for (int a = 0; a < dim; ++a) {
            Vec xp = x, xm = x;
            xp[a] += h;
            xm[a] -= h;
            Vec fp = f.value(xp), fm = f.value(xm);
            for (int b = 0; b < dim; ++b) {
                double fd = (fp[b] - fm[b]) / (2.0 * h);
                worst = std::max(worst, std::abs(fd - J[b][a]));
            }
        }
    }
    return worst;
}

SRSystem grushin_system(int gamma) {
    if (gamma < 0) throw InvalidArgument("grushin_system: gamma >= 0");
    SRSystem sys;
    sys.dim = 2;
    sys.name = "grushin(" + std::to_string(gamma) + ")";
    sys.fields.push_back({[](const Vec&) { return Vec{1.0, 0.0}; },
                          [](const Vec&) {
                              return std::vector<Vec>{{0.0, 0.0}, {0.0, 0.0}};
                          }});
    auto dmono = [gamma](double t) {
        if (gamma == 0) return 0.0;
        if (gamma == 1) return 1.0;
        double p = 1.0;
        for (int i = 1; i < gamma; ++i) p *= t;
        return gamma * p;
    };
    sys.fields.push_back(
        {[gamma](const Vec& x) {
             double p = 1.0;
             for (int i = 0; i < gamma; ++i) p *= x[0];
             return Vec{0.0, p};
         },
         [gamma, dmono](const Vec& x) {
             return std::vector<Vec>{{0.0, 0.0}, {dmono(x[0]), 0.0}};
         }});
    return sys;
}

SRSystem heisenberg_system() {
    SRSystem sys;
    sys.dim = 3;
    sys.name = "heisenberg";
    sys.fields.push_back({[](const Vec& w) { return Vec{1.0, 0.0, 2.0 * w[1]}; },
                          [](const Vec&) {
                              return std::vector<Vec>{
                                  {0, 0, 0}, {0, 0, 0}, {0, 2.0, 0}};
                          }});
    sys.fields.push_back({[](const Vec& w) { return Vec{0.0, 1.0, -2.0 * w[0]}; },
                          [](const Vec&) {
                              return std::vector<Vec>{
                                  {0, 0, 0}, {0, 0, 0}, {-2.0, 0, 0}};
                          }});
    return sys;
}

SRSystem elliptic_system() {
    SRSystem sys;
    sys.dim = 2;
    sys.name = "elliptic";
    sys.fields.push_back({[](const Vec&) { return Vec{1.0, 0.0}; },
                          [](const Vec&) {
                              return std::vector<Vec>{{0, 0}, {0, 0}};
                          }});
    sys.fields.push_back({[](const Vec&) { return Vec{0.0, 1.0}; },
                          [](const Vec&) {
                              return std::vector<Vec>{{0, 0}, {0, 0}};
                          }});
    return sys;
}

std::pair<double, Vec> sr_metric_controls(const SRSystem& sys, const Vec& x,
                                          const Vec& v) {
    const int d = sys.dim;
    const int m = static_cast<int>(sys.fields.size());
    std::vector<Vec> X(m);
    for (int i = 0; i < m; ++i) X[i] = sys.fields[i].value(x);

    // Least-norm u = A^T w with (A A^T) w = v, via the eigendecomposition
    // of the frame Gram Q = A A^T.  Rank decided at 1e-13 * ||Q||.
    num::SymMatrix q(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += X[i][a] * X[i][b];
            q.at(a, b) = s;
        }
    std::vector<Vec> evec;
    Vec eval = num::jacobi_eigen(q, &evec);
    double qnorm = 0.0;
    for (double e : eval) qnorm = std::max(qnorm, std::abs(e));
    double drop = 1e-13 * std::max(qnorm, 1e-30);

    Vec w(d, 0.0);
    for (int r = 0; r < d; ++r) {
        if (eval[r] <= drop) continue;
        double proj = dot(evec[r], v) / eval[r];
        for (int a = 0; a < d; ++a) w[a] += proj * evec[r][a];
    }
    Vec u(m);
    for (int i = 0; i < m; ++i) u[i] = dot(X[i], w);

    // Residual test: v in span iff A u reproduces v.
    Vec av(d, 0.0);
    for (int i = 0; i < m; ++i)
        for (int a = 0; a < d; ++a) av[a] += u[i] * X[i][a];
    double resid = 0.0, vscale = std::max(1.0, norm2(v));
    for (int a = 0; a < d; ++a) resid += sqr(av[a] - v[a]);
    if (std::sqrt(resid) > 1e-10 * vscale)
        return {std::numeric_limits<double>::infinity(), {}};
    return {dot(u, u), u};
}

double sr_metric(const SRSystem& sys, const Vec& x, const Vec& v) {
    return sr_metric_controls(sys, x, v).first;
}

}  // namespace hypolab::geom
