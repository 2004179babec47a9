#include "hypolab/evolution/restricted.hpp"

#include <cmath>

#include "hypolab/parallel.hpp"

namespace hypolab::evo {

void ObservationRegion::validate() const {
    if (!(x1_range.first < x1_range.second) || x1_range.first < -1.0 ||
        x1_range.second > 1.0)
        throw InvalidArgument("ObservationRegion: x1_range must be inside [-1,1]");
    if (!(x2_range.first < x2_range.second) || x2_range.first < 0.0 ||
        x2_range.second > 1.0)
        throw InvalidArgument("ObservationRegion: x2_range must be inside [0,1]");
    if (!(t_range.first < t_range.second))
        throw InvalidArgument("ObservationRegion: t_range must be nondegenerate");
}

num::SymMatrix spatial_cross_gram(const SpectralBasis& basis,
                                  const std::vector<std::size_t>& mode_idx,
                                  const ObservationRegion& region, int quad_nx) {
    (void)quad_nx;
    const std::size_t m = mode_idx.size();
    num::SymMatrix s(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            std::size_t a = mode_idx[i], b = mode_idx[j];
            double x2 = basis.x2_pair_integral(a, b, region.x2_range.first,
                                               region.x2_range.second);
            double v = 0.0;
            if (x2 != 0.0)
                v = x2 * basis.x1_pair_integral(a, b, region.x1_range.first,
                                                region.x1_range.second);
            s.at(i, j) = s.at(j, i) = v;
        }
    }
    return s;
}

namespace {

void check_resolutions(int quad_nt, int quad_nx) {
    if (quad_nt < 16 || quad_nx < 16)
        throw InvalidArgument("restricted norms: quadrature resolutions must be >= 16");
}

// int_{t0}^{t1} e^{-s t} dt with the s = 0 branch.
double heat_time_pair(double s, double t0, double t1) {
    if (s == 0.0) return t1 - t0;
    // e^{-s t0} - e^{-s t1} over s, stable for small s*(t1-t0)
    return std::exp(-s * t0) * (t1 - t0) * expm1_ratio(s * (t1 - t0));
}

// int_{t0}^{t1} trig_i(w_i t) trig_j(w_j t) dt for cos/cos, cos/sin, sin/sin.
double trig_pair(double wi, bool sin_i, double wj, bool sin_j, double t0,
                 double t1) {
    auto int_cos = [t0, t1](double m) {
        // int cos(m t)
        if (std::abs(m) * std::max(std::abs(t0), std::abs(t1)) < 1e-8)
            return (t1 - t0);
        return (std::sin(m * t1) - std::sin(m * t0)) / m;
    };
    auto int_sin = [t0, t1](double m) {
        if (std::abs(m) * std::max(std::abs(t0), std::abs(t1)) < 1e-8)
            return m * (t1 * t1 - t0 * t0) / 2.0;
        return (std::cos(m * t0) - std::cos(m * t1)) / m;
    };
    double dm = wi - wj, dp = wi + wj;
    if (sin_i && sin_j) return 0.5 * (int_cos(dm) - int_cos(dp));
    if (!sin_i && !sin_j) return 0.5 * (int_cos(dm) + int_cos(dp));
    if (sin_i) return 0.5 * (int_sin(dm) + int_sin(dp));
    return 0.5 * (int_sin(-dm) + int_sin(dp));
}

}  // namespace

double restricted_heat_norm(const SpectralVector& u0,
                            const ObservationRegion& region, int quad_nt,
                            int quad_nx) {
    region.validate();
    check_resolutions(quad_nt, quad_nx);
    if (region.t_range.first < 0.0)
        throw InvalidArgument("restricted_heat_norm: heat window starts at t >= 0");
    const SpectralBasis& basis = *u0.basis;

    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < u0.size(); ++j)
        if (u0.coeffs[j] != 0.0) active.push_back(j);
    if (active.empty()) return 0.0;

    num::SymMatrix s = spatial_cross_gram(basis, active, region, quad_nx);
    double total = 0.0;
    for (std::size_t i = 0; i < active.size(); ++i) {
        for (std::size_t j = 0; j < active.size(); ++j) {
            double sij = s.at(std::min(i, j), std::max(i, j));
            if (sij == 0.0) continue;
            double li = u0.lambda(active[i]), lj = u0.lambda(active[j]);
            total += u0.coeffs[active[i]] * u0.coeffs[active[j]] * sij *
                     heat_time_pair(li + lj, region.t_range.first,
                                    region.t_range.second);
        }
    }
    return total;
}

double restricted_wave_norm(const WaveState& w0, const ObservationRegion& region,
                            int quad_nt, int quad_nx) {
    region.validate();
    check_resolutions(quad_nt, quad_nx);
    w0.validate();
    const SpectralBasis& basis = *w0.u.basis;

    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < w0.u.size(); ++j)
        if (w0.u.coeffs[j] != 0.0 || w0.ut.coeffs[j] != 0.0) active.push_back(j);
    if (active.empty()) return 0.0;

    num::SymMatrix s = spatial_cross_gram(basis, active, region, quad_nx);
    const double t0 = region.t_range.first, t1 = region.t_range.second;
    double total = 0.0;
    for (std::size_t i = 0; i < active.size(); ++i) {
        double li = w0.u.lambda(active[i]);
        double wi = std::sqrt(std::max(0.0, li));
        // u_j(t) = A cos(w t) + B sin(w t); for lambda=0, u = A + B t (the
        // cos/sin pair with w=0 reproduces A + B*0, so handle B t exactly).
        double Ai = w0.u.coeffs[active[i]];
        double Bi = (wi > 0.0) ? w0.ut.coeffs[active[i]] / wi : w0.ut.coeffs[active[i]];
        for (std::size_t j = 0; j < active.size(); ++j) {
            double sij = s.at(std::min(i, j), std::max(i, j));
            if (sij == 0.0) continue;
            double lj = w0.u.lambda(active[j]);
            double wj = std::sqrt(std::max(0.0, lj));
            double Aj = w0.u.coeffs[active[j]];
            double Bj = (wj > 0.0) ? w0.ut.coeffs[active[j]] / wj : w0.ut.coeffs[active[j]];
            double tint;
            if (wi == 0.0 && wj == 0.0) {
                // (A_i + B_i t)(A_j + B_j t)
                auto P = [&](double t) {
                    return Ai * Aj * t + (Ai * Bj + Aj * Bi) * t * t / 2.0 +
                           Bi * Bj * t * t * t / 3.0;
                };
                tint = P(t1) - P(t0);
            } else if (wi == 0.0 || wj == 0.0) {
                // (A + B t) * (A' cos + B' sin)
                double A = (wi == 0.0) ? Ai : Aj, B = (wi == 0.0) ? Bi : Bj;
                double Ao = (wi == 0.0) ? Aj : Ai, Bo = (wi == 0.0) ? Bj : Bi;
                double w = std::max(wi, wj);
                auto I0c = [&](double t) { return std::sin(w * t) / w; };
                auto I0s = [&](double t) { return -std::cos(w * t) / w; };
                auto I1c = [&](double t) {
                    return t * std::sin(w * t) / w + std::cos(w * t) / (w * w);
                };
                auto I1s = [&](double t) {
                    return -t * std::cos(w * t) / w + std::sin(w * t) / (w * w);
                };
                tint = A * Ao * (I0c(t1) - I0c(t0)) + A * Bo * (I0s(t1) - I0s(t0)) +
                       B * Ao * (I1c(t1) - I1c(t0)) + B * Bo * (I1s(t1) - I1s(t0));
            } else {
                tint = Ai * Aj * trig_pair(wi, false, wj, false, t0, t1) +
                       Ai * Bj * trig_pair(wi, false, wj, true, t0, t1) +
                       Bi * Aj * trig_pair(wi, true, wj, false, t0, t1) +
                       Bi * Bj * trig_pair(wi, true, wj, true, t0, t1);
            }
            total += sij * tint;
        }
    }
    return total;
}

num::SymMatrix heat_gramian(const SpectralBasis& basis,
                            const std::vector<std::size_t>& mode_idx,
                            const ObservationRegion& region, double T,
                            int threads) {
    region.validate();
    if (!(T > 0.0)) throw InvalidArgument("heat_gramian: T must be > 0");
    if (mode_idx.empty()) throw InvalidArgument("heat_gramian: empty mode set");
    const std::size_t m = mode_idx.size();
    num::SymMatrix g(m);
    parallel_for(m, threads, [&](std::size_t i) {
        for (std::size_t j = i; j < m; ++j) {
            std::size_t a = mode_idx[i], b = mode_idx[j];
            double x2 = basis.x2_pair_integral(a, b, region.x2_range.first,
                                               region.x2_range.second);
            double v = 0.0;
            if (x2 != 0.0) {
                double x1 = basis.x1_pair_integral(a, b, region.x1_range.first,
                                                   region.x1_range.second);
                double s = basis.modes[a].lambda + basis.modes[b].lambda;
                v = x2 * x1 * heat_time_pair(s, 0.0, T);
            }
            g.at(i, j) = g.at(j, i) = v;
        }
    });
    return g;
}

}  // namespace hypolab::evo
