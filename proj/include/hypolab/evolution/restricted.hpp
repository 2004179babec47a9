#pragma once

#include "hypolab/evolution/evolve.hpp"
#include "hypolab/numerics/dense_sym.hpp"

namespace hypolab::evo {

// Space-time observation window: omega = x1_range x x2_range, times in
// t_range.
struct ObservationRegion {
    std::pair<double, double> x1_range{-1.0, 1.0};
    std::pair<double, double> x2_range{0.0, 1.0};
    std::pair<double, double> t_range{0.0, 1.0};

    void validate() const;
    bool full_x2() const {
        return x2_range.first <= 0.0 && x2_range.second >= 1.0;
    }
};

// Spatial cross-Gram over omega: S_ij = int_omega phi_i phi_j dx, exact in
// x2, trapezoid in x1 on the native profile grid (quad_nx validated; the
// profiles already resolve the range).
num::SymMatrix spatial_cross_gram(const SpectralBasis& basis,
                                  const std::vector<std::size_t>& mode_idx,
                                  const ObservationRegion& region,
                                  int quad_nx = 0);

// int_{t_range} int_omega |sum_j u0_j e^{-lambda_j t} phi_j|^2 dx dt.
// Time integrals are closed-form per mode pair; quad_nt is validated but
// the time axis never uses quadrature.
double restricted_heat_norm(const SpectralVector& u0,
                            const ObservationRegion& region, int quad_nt,
                            int quad_nx);

// Same for the wave solution with data w0 (t_range may be negative-sided).
double restricted_wave_norm(const WaveState& w0, const ObservationRegion& region,
                            int quad_nt, int quad_nx);

// Heat observability Gramian on the modes `mode_idx` over (0,T) x omega:
//   G_ij = int_0^T int_omega e^{-(lambda_i+lambda_j) t} phi_i phi_j.
num::SymMatrix heat_gramian(const SpectralBasis& basis,
                            const std::vector<std::size_t>& mode_idx,
                            const ObservationRegion& region, double T,
                            int threads = 1);

}  // namespace hypolab::evo
