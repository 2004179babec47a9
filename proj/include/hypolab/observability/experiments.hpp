#pragma once

#include <string>

#include "hypolab/evolution/restricted.hpp"
#include "hypolab/numerics/fit.hpp"

namespace hypolab::obs {

using evo::ObservationRegion;
using spectral::SpectralBasis;
using spectral::SpectralVector;

// Result of a scaling experiment: per-mode (or per-cutoff) quantities and
// the fitted exponents.
struct ObservabilityReport {
    Vec lambdas;               // ascending
    Vec fourier_ns;            // aligned Fourier indices (0 when n/a)
    Vec gram_min_eigs;         // restricted masses or Gramian minima
    double fitted_exponent = 0.0;   // slope against lambda^{k/2}
    double fitted_prefactor = 0.0;  // e^{-intercept} of that fit
    num::FitResult fit_quality;     // the lambda^{k/2} fit
    num::FitResult raw_fit;         // against lambda itself
    // r^2 comparison fits of -log(mass) against lambda^p.
    std::vector<std::pair<double, num::FitResult>> power_fits;
    // Secondary final-data cost column, log(||y(T)||^2 / observation) per
    // cutoff (the two forms differ by e^{2 lambda T} factors on high modes).
    Vec final_cost_log;
    int excluded_modes = 0;    // dropped by the underflow rule
    std::string config_echo;
};

// Per ground-branch mode: the restricted mass ||phi_n||_{L^2(omega)}^2,
// then fits of -log(mass) against lambda^{(gamma+1)/2}, against lambda, and
// against the candidate powers {1, 3/2, 2}.  Masses below 1e-300 are
// dropped; masses below 1e-250 are excluded from fits (count reported).
// Requires gamma >= 1 and an x1 range with positive distance to x1 = 0.
ObservabilityReport tunneling_experiment(const SpectralBasis& basis,
                                         const ObservationRegion& region);

// cost(lambda) = 1 / min-eig of the heat Gramian on E_lambda over
// (0,T) x omega, for each cutoff in lambda_grid; fits log cost against
// lambda^{k/2} and lambda.  Stops with a partial report when the minimum
// eigenvalue falls below 1e-280.
ObservabilityReport lowfreq_cost_experiment(const SpectralBasis& basis,
                                            const ObservationRegion& region,
                                            double T, const Vec& lambda_grid,
                                            int threads = 1);

// Final-state tradeoff (k = 2): for eigenmode and random data, the minimal
// beta making  ||y(T)||^2 <= eps^{-beta} Obs_{(T-eta,T)} + eps ||y0||^2
// hold over the eps grid.  Everything is evaluated in log space so the
// deep-dissipation regime stays meaningful.
struct ParabolicRow {
    double T, eps, lhs, rhs;
    double log_lhs, log_rhs;
};
struct ParabolicReport {
    Vec T_list;
    Vec beta;            // empirical minimal exponent per T
    double fitted_T0 = 0.0;
    std::vector<ParabolicRow> rows;
};
ParabolicReport parabolic_tradeoff_experiment(const SpectralBasis& basis,
                                              const ObservationRegion& region,
                                              const Vec& T_list, double eta,
                                              std::uint64_t seed = 1);

// Gevrey-data cost: the minimal polynomial exponent e(theta) making
//   ||y0||^2 <= eps^{-e} Obs_{(T/2,T)} + eps ||y0||_{k/2,theta}^2
// hold for mixed low/high data, per theta (> theta0 = measured c0).
struct GevreyRow {
    double theta, eps, lhs, rhs;
    double log_lhs, log_rhs;
};
struct GevreyReport {
    Vec theta_list;
    Vec exponent;        // empirical minimal exponent per theta
    std::vector<GevreyRow> rows;
};
GevreyReport gevrey_cost_experiment(const SpectralBasis& basis,
                                    const ObservationRegion& region, double T,
                                    const Vec& theta_list, double theta0,
                                    std::uint64_t seed = 1);

// Cost against the frequency function Lambda = ||y0||_{H^1_L} / ||y0||_{L^2}:
// random band data (plus the ground modes) binned by Lambda, max cost per
// bin, and a fit of log cost against Lambda^k.
struct FrequencyCostReport {
    Vec bin_lambda;      // representative Lambda per bin
    Vec bin_cost;        // max cost in the bin
    num::FitResult fit;  // log cost vs Lambda^k
};
FrequencyCostReport frequency_cost_experiment(const SpectralBasis& basis,
                                              const ObservationRegion& region,
                                              double T, int trials = 200,
                                              int bins = 8,
                                              std::uint64_t seed = 1);

}  // namespace hypolab::obs
