#include "hypolab/observability/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypolab/numerics/dense_sym.hpp"
#include "hypolab/rng.hpp"

namespace hypolab::obs {

namespace {

// Ground-branch mode indices sorted by lambda.
std::vector<std::size_t> ground_branch(const SpectralBasis& basis) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (basis.modes[j].branch == 1 && basis.modes[j].fourier_n >= 1)
            idx.push_back(j);
    return idx;
}

double restricted_mass(const SpectralBasis& basis, std::size_t j,
                       const ObservationRegion& region) {
    double x2 = basis.x2_pair_integral(j, j, region.x2_range.first,
                                       region.x2_range.second);
    return x2 * basis.x1_pair_integral(j, j, region.x1_range.first,
                                       region.x1_range.second);
}

// log(sum_j w_j e^{a_j}) with positive weights.
double log_sum_exp(const Vec& a, const Vec& w) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (w[i] > 0.0) m = std::max(m, a[i] + std::log(w[i]));
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (w[i] > 0.0) s += std::exp(a[i] + std::log(w[i]) - m);
    return m + std::log(s);
}

// beta needed so that L <= eps^{-beta} O + eps*N, all quantities as logs.
// Returns 0 when the eps term alone covers the left side.
double beta_needed(double logL, double logO, double logN, double log_eps) {
    double log_eps_term = log_eps + logN;
    if (log_eps_term >= logL) return 0.0;
    // log(L - eps N) via log1p
    double logR = logL + std::log1p(-std::exp(log_eps_term - logL));
    double need = (logR - logO) / (-log_eps);
    return std::max(0.0, need);
}

}  // namespace

ObservabilityReport tunneling_experiment(const SpectralBasis& basis,
                                         const ObservationRegion& region) {
    region.validate();
    if (basis.spec.gamma < 1)
        throw InvalidArgument("tunneling_experiment: gamma >= 1 required");
    // Distance of the x1 window to the degeneracy line; a = 0 (window
    // touching x1 = 0) is allowed and yields a flat fit.
    double a = std::min(std::abs(region.x1_range.first),
                        std::abs(region.x1_range.second));
    if (region.x1_range.first <= 0.0 && region.x1_range.second >= 0.0)
        a = 0.0;

    ObservabilityReport rep;
    Vec xs_fit, ys_fit;
    for (std::size_t j : ground_branch(basis)) {
        double w = restricted_mass(basis, j, region);
        if (!(w > 1e-300)) {
            ++rep.excluded_modes;
            continue;
        }
        rep.lambdas.push_back(basis.modes[j].lambda);
        rep.fourier_ns.push_back(basis.modes[j].fourier_n);
        rep.gram_min_eigs.push_back(w);
        if (w > 1e-250) {
            xs_fit.push_back(basis.modes[j].lambda);
            ys_fit.push_back(-std::log(w));
        } else {
            ++rep.excluded_modes;
        }
    }
    if (xs_fit.size() < 3)
        throw Error("tunneling_experiment: fewer than 3 usable modes");

    const double k_half = 0.5 * (basis.spec.gamma + 1);
    Vec xpow(xs_fit.size());
    for (std::size_t i = 0; i < xs_fit.size(); ++i)
        xpow[i] = std::pow(xs_fit[i], k_half);
    rep.fit_quality = num::fit_loglinear(xpow, ys_fit);
    rep.fitted_exponent = rep.fit_quality.slope;
    rep.fitted_prefactor = std::exp(-rep.fit_quality.intercept);
    rep.raw_fit = num::fit_loglinear(xs_fit, ys_fit);
    for (double p : {1.0, 1.5, 2.0}) {
        Vec xp(xs_fit.size());
        for (std::size_t i = 0; i < xs_fit.size(); ++i)
            xp[i] = std::pow(xs_fit[i], p);
        rep.power_fits.emplace_back(p, num::fit_loglinear(xp, ys_fit));
    }
    std::ostringstream cfg;
    cfg << "tunneling gamma=" << basis.spec.gamma << " x1=["
        << region.x1_range.first << "," << region.x1_range.second << "] a=" << a;
    rep.config_echo = cfg.str();
    return rep;
}

ObservabilityReport lowfreq_cost_experiment(const SpectralBasis& basis,
                                            const ObservationRegion& region,
                                            double T, const Vec& lambda_grid,
                                            int threads) {
    region.validate();
    if (lambda_grid.size() < 4)
        throw InvalidArgument("lowfreq_cost_experiment: need >= 4 grid points");
    for (std::size_t i = 1; i < lambda_grid.size(); ++i)
        if (!(lambda_grid[i] > lambda_grid[i - 1]))
            throw InvalidArgument("lowfreq_cost_experiment: grid must ascend");

    if (!basis.cutoff_complete)
        throw InvalidArgument(
            "lowfreq_cost_experiment: basis ranges do not provably cover "
            "E_lambda below the cutoff (raise branch_max/fourier_max)");

    ObservabilityReport rep;
    Vec xs, ys;
    for (double lam : lambda_grid) {
        auto idx = basis.modes_below(lam);
        if (idx.empty()) continue;
        ObservationRegion win = region;
        win.t_range = {0.0, T};
        num::SymMatrix g = evo::heat_gramian(basis, idx, win, T, threads);
        double mineig = num::min_eigenvalue(g);
        rep.lambdas.push_back(lam);
        rep.fourier_ns.push_back(0.0);
        rep.gram_min_eigs.push_back(mineig);
        // Final-data form: generalized Gramian e^{lambda_i T} G e^{lambda_j T},
        // rescaled by e^{-2 lambda_max T} to stay representable.
        {
            double lam_top = 0.0;
            for (std::size_t a = 0; a < idx.size(); ++a)
                lam_top = std::max(lam_top, basis.modes[idx[a]].lambda);
            num::SymMatrix m(idx.size());
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = 0; b < idx.size(); ++b) {
                    double shift = (basis.modes[idx[a]].lambda +
                                    basis.modes[idx[b]].lambda - 2.0 * lam_top) *
                                   T;
                    m.at(a, b) = g.at(a, b) == 0.0
                                     ? 0.0
                                     : g.at(a, b) * std::exp(shift);
                }
            double me = num::min_eigenvalue(m);
            rep.final_cost_log.push_back(
                me > 0.0 ? -2.0 * lam_top * T - std::log(me)
                         : std::numeric_limits<double>::infinity());
        }
        if (!(mineig > 1e-280)) break;  // partial report below this cutoff
        xs.push_back(lam);
        ys.push_back(std::log(1.0 / mineig));
    }
    if (xs.size() < 4)
        throw Error("lowfreq_cost_experiment: fewer than 4 usable cutoffs");

    const double k_half = 0.5 * (basis.spec.gamma + 1);
    Vec xpow(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xpow[i] = std::pow(xs[i], k_half);
    rep.fit_quality = num::fit_loglinear(xpow, ys);
    rep.fitted_exponent = rep.fit_quality.slope;
    rep.fitted_prefactor = std::exp(-rep.fit_quality.intercept);
    rep.raw_fit = num::fit_loglinear(xs, ys);
    std::ostringstream cfg;
    cfg << "lowfreq_cost gamma=" << basis.spec.gamma << " T=" << T
        << " dims<=" << basis.modes_below(lambda_grid.back()).size();
    rep.config_echo = cfg.str();
    return rep;
}

ParabolicReport parabolic_tradeoff_experiment(const SpectralBasis& basis,
                                              const ObservationRegion& region,
                                              const Vec& T_list, double eta,
                                              std::uint64_t seed) {
    region.validate();
    if (basis.spec.hypoellipticity_index() != 2)
        throw InvalidArgument("parabolic_tradeoff_experiment: k = 2 (gamma = 1) only");
    if (!(eta > 0.0)) throw InvalidArgument("parabolic tradeoff: eta must be > 0");
    for (double T : T_list)
        if (!(T > eta))
            throw InvalidArgument("parabolic tradeoff: every T must exceed eta");

    // Eigenmode data: ground-branch modes (the adversarial family), in logs.
    struct ModeDatum {
        double lambda;
        double log_mass;  // log ||phi||_{L^2(omega)}^2
    };
    std::vector<ModeDatum> modes;
    for (std::size_t j : ground_branch(basis)) {
        double w = restricted_mass(basis, j, region);
        if (w > 0.0) modes.push_back({basis.modes[j].lambda, std::log(w)});
    }

    // Random data on the full kept basis (moderate frequencies).
    Rng rng(seed);
    std::vector<SpectralVector> randoms;
    for (int r = 0; r < 8; ++r) {
        Vec c(basis.size(), 0.0);
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (basis.modes[j].lambda <= 60.0) c[j] = rng.normal();
        randoms.emplace_back(basis, std::move(c));
    }

    Vec log_eps_grid;
    for (double le = std::log(0.5); le > -640.0; le -= std::log(10.0) * 2.0)
        log_eps_grid.push_back(le);

    ParabolicReport rep;
    rep.T_list = T_list;
    for (double T : T_list) {
        double beta = 0.0;
        ParabolicRow best_row{T, 0, 0, 0, 0, 0};
        auto consider = [&](double logL, double logO, double logN, double log_eps) {
            double need = beta_needed(logL, logO, logN, log_eps);
            if (need > beta) {
                beta = need;
                best_row.eps = std::exp(log_eps);
                best_row.log_lhs = logL;
                best_row.lhs = std::exp(logL);
            }
        };
        for (const auto& md : modes) {
            // y(t) = e^{-lambda t} phi: ||y(T)||^2 = e^{-2 lambda T};
            // Obs = mass * int_{T-eta}^T e^{-2 lambda t} dt.
            double s = 2.0 * md.lambda;
            double log_tint = -s * (T - eta) +
                              std::log((T - (T - eta)) *
                                       expm1_ratio(s * eta));
            double logL = -s * T;
            double logO = md.log_mass + log_tint;
            for (double le : log_eps_grid) consider(logL, logO, 0.0, le);
        }
        for (const auto& y0 : randoms) {
            double n2 = sqr(spectral::hsl_norm(y0, 0.0));
            SpectralVector yT = evo::heat_evolve(y0, T);
            double l2 = sqr(spectral::hsl_norm(yT, 0.0));
            ObservationRegion win = region;
            win.t_range = {T - eta, T};
            double obs = evo::restricted_heat_norm(y0, win, 16, 16);
            if (!(l2 > 0.0) || !(obs > 0.0)) continue;
            for (double le : log_eps_grid)
                consider(std::log(l2), std::log(obs), std::log(n2), le);
        }
        rep.beta.push_back(beta);
        // rhs at the reported beta for the binding row
        best_row.log_rhs = best_row.log_lhs;  // equality at the binding point
        best_row.rhs = std::exp(best_row.log_rhs);
        rep.rows.push_back(best_row);
    }
    if (!rep.beta.empty() && rep.beta.front() > 0.0) {
        // Solve beta = T0 / (T - (T0 + eta)) at the first sweep point.
        double b = rep.beta.front(), T = rep.T_list.front();
        rep.fitted_T0 = b * (T - eta) / (1.0 + b);
    }
    return rep;
}

GevreyReport gevrey_cost_experiment(const SpectralBasis& basis,
                                    const ObservationRegion& region, double T,
                                    const Vec& theta_list, double theta0,
                                    std::uint64_t seed) {
    region.validate();
    const double kh = 0.5 * basis.spec.hypoellipticity_index();
    for (double th : theta_list)
        if (!(th > theta0))
            throw InvalidArgument(
                "gevrey_cost_experiment: every theta must exceed theta0");

    struct ModeDatum {
        double lambda;
        double log_mass;
    };
    std::vector<ModeDatum> modes;
    for (std::size_t j : ground_branch(basis)) {
        double w = restricted_mass(basis, j, region);
        if (w > 0.0) modes.push_back({basis.modes[j].lambda, std::log(w)});
    }

    Rng rng(seed);
    std::vector<SpectralVector> randoms;
    for (int r = 0; r < 6; ++r) {
        Vec c(basis.size(), 0.0);
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (basis.modes[j].lambda <= 40.0) c[j] = rng.normal();
        randoms.emplace_back(basis, std::move(c));
    }

    Vec log_eps_grid;
    for (double le = std::log(0.5); le > -400.0; le -= std::log(10.0) * 1.5)
        log_eps_grid.push_back(le);

    GevreyReport rep;
    rep.theta_list = theta_list;
    for (double theta : theta_list) {
        double expo = 0.0;
        GevreyRow best{theta, 0, 0, 0, 0, 0};
        auto consider = [&](double logL, double logO, double logN, double log_eps) {
            double need = beta_needed(logL, logO, logN, log_eps);
            if (need > expo) {
                expo = need;
                best.eps = std::exp(log_eps);
                best.log_lhs = logL;
                best.lhs = std::exp(logL);
            }
        };
        for (const auto& md : modes) {
            // Heat solution from phi_j over the window (T/2, T).
            double s = 2.0 * md.lambda;
            double log_tint = -s * (T / 2.0) +
                              std::log((T / 2.0) * expm1_ratio(s * (T / 2.0)));
            double logL = 0.0;  // ||y0||^2 = 1
            double logO = md.log_mass + log_tint;
            double logN = 2.0 * theta * std::pow(md.lambda, kh);
            for (double le : log_eps_grid) consider(logL, logO, logN, le);
        }
        for (const auto& y0 : randoms) {
            double n2 = sqr(spectral::hsl_norm(y0, 0.0));
            ObservationRegion win = region;
            win.t_range = {T / 2.0, T};
            double obs = evo::restricted_heat_norm(y0, win, 16, 16);
            if (!(obs > 0.0)) continue;
            // log Gevrey^2 via logsumexp over the occupied modes.
            Vec a, w;
            for (std::size_t j = 0; j < y0.size(); ++j) {
                if (y0.coeffs[j] == 0.0) continue;
                a.push_back(2.0 * theta * std::pow(y0.lambda(j), kh));
                w.push_back(sqr(y0.coeffs[j]));
            }
            double logN = log_sum_exp(a, w);
            for (double le : log_eps_grid)
                consider(std::log(n2), std::log(obs), logN, le);
        }
        rep.exponent.push_back(expo);
        best.log_rhs = best.log_lhs;
        best.rhs = std::exp(best.log_rhs);
        rep.rows.push_back(best);
    }
    return rep;
}

FrequencyCostReport frequency_cost_experiment(const SpectralBasis& basis,
                                              const ObservationRegion& region,
                                              double T, int trials, int bins,
                                              std::uint64_t seed) {
    region.validate();
    if (trials < 8 || bins < 3)
        throw InvalidArgument("frequency_cost_experiment: too few trials/bins");
    const int k = basis.spec.hypoellipticity_index();

    ObservationRegion win = region;
    win.t_range = {0.0, T};

    struct Sample {
        double Lambda;
        double cost;
    };
    std::vector<Sample> samples;
    auto push_sample = [&](const SpectralVector& y0) {
        double n0 = spectral::hsl_norm(y0, 0.0);
        if (!(n0 > 0.0)) return;
        double obs = evo::restricted_heat_norm(y0, win, 16, 16);
        if (!(obs > 0.0)) return;
        samples.push_back({spectral::frequency_function(y0, 1.0), sqr(n0) / obs});
    };

    // Ground modes witness the lower-bound family.
    for (std::size_t j : ground_branch(basis))
        push_sample(SpectralVector::unit_mode(basis, j));

    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        // Random band: center mode by lambda, Gaussian width in lambda.
        double lam_max = basis.modes.back().lambda;
        double center = rng.uniform(0.0, lam_max);
        double width = std::exp(rng.uniform(std::log(2.0), std::log(40.0)));
        Vec c(basis.size(), 0.0);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            double d = (basis.modes[j].lambda - center) / width;
            if (std::abs(d) < 4.0) c[j] = rng.normal() * std::exp(-0.5 * d * d);
        }
        if (!all_finite(c)) continue;
        SpectralVector y0(basis, std::move(c));
        if (spectral::hsl_norm(y0, 0.0) > 0.0) push_sample(y0);
    }
    if (samples.size() < static_cast<std::size_t>(bins))
        throw Error("frequency_cost_experiment: not enough usable samples");

    double lmin = std::numeric_limits<double>::infinity(), lmax = 0.0;
    for (const auto& s : samples) {
        lmin = std::min(lmin, s.Lambda);
        lmax = std::max(lmax, s.Lambda);
    }
    FrequencyCostReport rep;
    double step = (std::log(lmax) - std::log(lmin)) / bins;
    rep.bin_lambda.assign(bins, 0.0);
    rep.bin_cost.assign(bins, 0.0);
    Vec bin_count(bins, 0.0);
    for (const auto& s : samples) {
        int b = std::min(bins - 1, static_cast<int>((std::log(s.Lambda) -
                                                     std::log(lmin)) /
                                                    step));
        rep.bin_cost[b] = std::max(rep.bin_cost[b], s.cost);
        rep.bin_lambda[b] += s.Lambda;
        bin_count[b] += 1.0;
    }
    Vec xs, ys;
    for (int b = 0; b < bins; ++b) {
        if (bin_count[b] == 0.0) continue;
        rep.bin_lambda[b] /= bin_count[b];
        xs.push_back(std::pow(rep.bin_lambda[b], k));
        ys.push_back(std::log(rep.bin_cost[b]));
    }
    // Compact the report to occupied bins.
    Vec bl, bc;
    for (int b = 0; b < bins; ++b)
        if (bin_count[b] > 0.0) {
            bl.push_back(rep.bin_lambda[b]);
            bc.push_back(rep.bin_cost[b]);
        }
    rep.bin_lambda = bl;
    rep.bin_cost = bc;
    if (xs.size() >= 3) rep.fit = num::fit_loglinear(xs, ys);
    return rep;
}

}  // namespace hypolab::obs
