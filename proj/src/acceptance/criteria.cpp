#include "hypolab/acceptance/criteria.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "hypolab/evolution/restricted.hpp"
#include "hypolab/geometry/distance.hpp"
#include "hypolab/numerics/fit.hpp"
#include "hypolab/observability/experiments.hpp"
#include "hypolab/rng.hpp"
#include "hypolab/spectral/sampling.hpp"
#include "hypolab/spectral/subelliptic.hpp"
#include "hypolab/transmutation/transmute.hpp"

namespace hypolab::accept {

namespace {

using spectral::Family;
using spectral::OperatorSpec;
using spectral::Potential;
using spectral::SpectralBasis;
using spectral::SpectralVector;

struct Ctx {
    int threads = 4;
    std::map<std::string, SpectralBasis> cache;

    spectral::BuildOptions build_opts() const {
        spectral::BuildOptions b;
        b.threads = threads;
        return b;
    }

    const SpectralBasis& basis(const std::string& key,
                               const std::function<SpectralBasis()>& make) {
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, make()).first;
        return it->second;
    }

    const SpectralBasis& g1_n80() {
        return basis("g1_n80", [this] {
            OperatorSpec s;
            s.family = Family::grushin_rectangle;
            s.gamma = 1;
            s.grid_n = 2049;
            s.fourier_max = 80;
            s.branch_max = 1;
            return spectral::build_basis(s, build_opts());
        });
    }

    const SpectralBasis& g1_lam300(int grid_n) {
        return basis("g1_lam300_" + std::to_string(grid_n), [this, grid_n] {
            OperatorSpec s;
            s.family = Family::grushin_rectangle;
            s.gamma = 1;
            s.grid_n = grid_n;
            s.fourier_max = 96;
            s.branch_max = 50;
            s.lambda_cutoff = 300.0;
            return spectral::build_basis(s, build_opts());
        });
    }
};

evo::ObservationRegion strip_03_09() {
    evo::ObservationRegion r;
    r.x1_range = {0.3, 0.9};
    r.x2_range = {0.0, 1.0};
    r.t_range = {0.0, 1.0};
    return r;
}

std::string fmt(double v, int prec = 6) {
    std::ostringstream ss;
    ss.precision(prec);
    ss << v;
    return ss.str();
}

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << "FAILED: " << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

// --- criterion 1: exact elliptic spectrum -------------------------------
CriterionResult crit1(Ctx& ctx) {
    Check c;
    OperatorSpec s;
    s.family = Family::elliptic;
    s.gamma = 0;
    s.grid_n = 4097;
    s.fourier_max = 20;
    s.branch_max = 5;
    auto basis = spectral::build_basis(s, ctx.build_opts());
    double worst = 0.0;
    for (const auto& m : basis.modes) {
        double exact = sqr(m.branch * kPi / 2.0) + sqr(m.fourier_n * kPi);
        worst = std::max(worst, std::abs(m.lambda - exact) / exact);
    }
    c.require(worst <= 1e-6, "rel error " + fmt(worst) + " > 1e-6");
    c.note("max rel error " + fmt(worst, 3) + " over " +
           std::to_string(basis.size()) + " modes");
    return {1, "exact elliptic spectrum (gamma=0, grid 4097)", c.pass,
            c.detail.str(), 0.0};
}

// --- criterion 2: gamma=1 ground eigenvalue ~ n pi ----------------------
CriterionResult crit2(Ctx& ctx) {
    Check c;
    const auto& basis = ctx.g1_n80();
    double lo = 2.0, hi = 0.0;
    for (const auto& m : basis.modes) {
        if (m.branch != 1 || m.fourier_n < 10 || m.fourier_n > 80) continue;
        double r = m.lambda / (m.fourier_n * kPi);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    c.require(lo >= 0.99 && hi <= 1.01,
              "lambda/(n pi) range [" + fmt(lo, 8) + ", " + fmt(hi, 8) + "]");
    c.note("lambda/(n pi) in [" + fmt(lo, 8) + ", " + fmt(hi, 8) + "]");
    return {2, "Grushin gamma=1 ground eigenvalue ~ n pi", c.pass, c.detail.str(),
            0.0};
}

// --- criterion 3: eigenvalue growth exponent 2/(1+gamma) ----------------
CriterionResult crit3(Ctx& ctx) {
    Check c;
    for (int gamma : {1, 2, 3}) {
        OperatorSpec s;
        s.family = Family::grushin_rectangle;
        s.gamma = gamma;
        s.grid_n = 1025;
        s.fourier_max = 100;
        s.branch_max = 1;
        auto basis = spectral::build_basis(s, ctx.build_opts());
        Vec ln, ll;
        for (const auto& m : basis.modes) {
            if (m.fourier_n < 10) continue;
            ln.push_back(std::log(static_cast<double>(m.fourier_n)));
            ll.push_back(std::log(m.lambda));
        }
        auto f = num::fit_loglinear(ln, ll);
        double target = 2.0 / (1.0 + gamma);
        c.require(std::abs(f.slope - target) <= 0.05,
                  "gamma=" + std::to_string(gamma) + " slope " + fmt(f.slope));
        c.note("gamma=" + std::to_string(gamma) + ": " + fmt(f.slope, 4) +
               " (target " + fmt(target, 4) + ")");
    }
    return {3, "eigenvalue growth exponent 2/(1+gamma)", c.pass, c.detail.str(),
            0.0};
}

// --- criterion 4: tunneling decay, gamma=1 ------------------------------
CriterionResult crit4(Ctx& ctx) {
    Check c;
    const auto& basis = ctx.g1_n80();
    auto rep = obs::tunneling_experiment(basis, strip_03_09());
    c.require(rep.raw_fit.slope >= 0.081 && rep.raw_fit.slope <= 0.099,
              "exponent " + fmt(rep.raw_fit.slope));
    double rlo = 1e300, rhi = 0.0;
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
        double n = rep.fourier_ns[i];
        if (n < 20 || n > 80) continue;
        double predicted =
            std::exp(-0.09 * n * kPi) / (2.0 * 0.3 * kPi * std::sqrt(n));
        double ratio = rep.gram_min_eigs[i] / predicted;
        rlo = std::min(rlo, ratio);
        rhi = std::max(rhi, ratio);
    }
    c.require(rlo >= 0.5 && rhi <= 2.0,
              "prefactor ratio range [" + fmt(rlo) + ", " + fmt(rhi) + "]");
    c.note("exponent " + fmt(rep.raw_fit.slope, 5) + " (target 0.09), prefactor in [" +
           fmt(rlo, 4) + ", " + fmt(rhi, 4) + "]");
    return {4, "tunneling decay exponent and prefactor (gamma=1)", c.pass,
            c.detail.str(), 0.0};
}

// --- criterion 5: tunneling power law, gamma=2 --------------------------
CriterionResult crit5(Ctx& ctx) {
    Check c;
    OperatorSpec s;
    s.family = Family::grushin_rectangle;
    s.gamma = 2;
    s.grid_n = 2049;
    s.fourier_max = 500;
    s.branch_max = 1;
    auto full = spectral::build_basis(s, ctx.build_opts());

    // Log-spaced sweep n in [6, 500]: the scaling-law experiment samples
    // the dynamic range geometrically to weight the curved low-lambda
    // region; the window starts at a = 0.5 so the WKB regime opens early.
    SpectralBasis swept;
    swept.spec = full.spec;
    int prev = 0;
    for (int i = 0; i < 46; ++i) {
        int n = static_cast<int>(std::lround(
            6.0 * std::pow(500.0 / 6.0, static_cast<double>(i) / 45.0)));
        if (n == prev) continue;
        prev = n;
        for (const auto& m : full.modes)
            if (m.fourier_n == n) swept.modes.push_back(m);
    }
    evo::ObservationRegion reg;
    reg.x1_range = {0.5, 0.9};
    auto rep = obs::tunneling_experiment(swept, reg);

    double r15 = 0.0, rbest_other = 0.0;
    for (const auto& [p, fit] : rep.power_fits) {
        if (p == 1.5)
            r15 = fit.r_squared;
        else
            rbest_other = std::max(rbest_other, fit.r_squared);
    }
    double margin = r15 - rbest_other;
    c.require(r15 > rbest_other, "p = 1.5 not selected");
    c.require(margin >= 0.02, "r^2 margin " + fmt(margin, 4) + " < 0.02");
    c.note("r2(1.5) = " + fmt(r15, 6) + ", best other " + fmt(rbest_other, 6) +
           ", margin " + fmt(margin, 4));
    return {5, "tunneling power law selection (gamma=2)", c.pass, c.detail.str(),
            0.0};
}

// --- criterion 6: Laplace asymptotics -----------------------------------
CriterionResult crit6(Ctx&) {
    Check c;
    trans::TransmuteParams p{1.0, 0.5, 1.0};
    double r4 = trans::I_of_lambda(p, 1e4) / trans::I_asymptotic(p, 1e4);
    c.require(std::abs(r4 - 1.0) <= 0.15, "|ratio-1| at 1e4 = " + fmt(std::abs(r4 - 1.0)));
    Vec logl, logR;
    for (double lam : {1e2, 1e3, 1e4, 1e5}) {
        double ratio = trans::I_of_lambda(p, lam) / trans::I_asymptotic(p, lam);
        logl.push_back(std::log(lam));
        logR.push_back(std::log(std::abs(ratio - 1.0) * std::pow(lam, 0.25)));
    }
    auto fit = num::fit_loglinear(logl, logR);
    c.require(fit.slope >= -0.35 && fit.slope <= -0.15,
              "remainder exponent " + fmt(fit.slope, 4));
    c.note("|ratio-1|(1e4) = " + fmt(std::abs(r4 - 1.0), 4) +
           ", remainder-exponent fit " + fmt(fit.slope, 4));
    return {6, "Laplace asymptotics of I(T,lambda)", c.pass, c.detail.str(), 0.0};
}

// --- criterion 7: transmutation identity --------------------------------
CriterionResult crit7(Ctx& ctx) {
    Check c;
    Rng rng(77);
    Vec lams;
    for (int i = 0; i < 50; ++i) lams.push_back(std::exp(rng.uniform(0.0, 8.5)));
    std::sort(lams.begin(), lams.end());
    SpectralBasis basis;
    basis.spec.family = Family::grushin_rectangle;
    basis.spec.gamma = 1;
    basis.spec.grid_n = 257;
    basis.spec.fourier_max = static_cast<int>(lams.size());
    basis.spec.branch_max = 1;
    for (std::size_t j = 0; j < lams.size(); ++j) {
        spectral::Mode m;
        m.fourier_n = static_cast<int>(j + 1);
        m.branch = 1;
        m.lambda = m.lambda_grid = lams[j];
        m.profile.assign(basis.spec.grid_n, 0.0);
        basis.modes.push_back(std::move(m));
    }
    Vec coef(lams.size());
    for (double& x : coef) x = rng.normal();
    SpectralVector y0(basis, std::move(coef));
    trans::TransmuteParams p{1.0, 0.5, 1.0};
    auto w = trans::transmute(p, y0, ctx.threads);
    double worst = 0.0;
    bool pos_zero = true;
    for (std::size_t j = 0; j < y0.size(); ++j) {
        if (w.u.coeffs[j] != 0.0) pos_zero = false;
        auto f = [&p, &lams, j](double t) {
            if (t <= 0.0 || t >= p.T) return 0.0;
            double e = -p.alpha * (1.0 / t + 1.0 / (p.T - t)) - lams[j] * t;
            return e < -745.0 ? 0.0 : std::exp(e);
        };
        num::QuadOptions o;
        o.tol_abs = 0.0;
        o.tol_rel = 1e-13;
        o.initial_panels = 64;
        double direct = num::adaptive_quad(f, 0.0, p.T, o).value * y0.coeffs[j];
        worst = std::max(worst, std::abs(w.ut.coeffs[j] - direct) / std::abs(direct));
    }
    c.require(pos_zero, "position data not exactly zero");
    c.require(worst <= 1e-10, "velocity mismatch " + fmt(worst));
    c.note("max relative mismatch " + fmt(worst, 3) + " over 50 modes");
    return {7, "transmutation boundary-data identity", c.pass, c.detail.str(), 0.0};
}

// --- criterion 8: geodesic suite -----------------------------------------
CriterionResult crit8(Ctx&) {
    Check c;
    using namespace geom;
    auto normal_covector = [](const SRSystem& sys, CotangentState st) {
        double ell = sys.hamiltonian(st);
        double scale = 1.0 / (2.0 * std::sqrt(ell));
        for (auto& v : st.xi) v *= scale;
        return st;
    };
    // drift over S=5 at step 1e-3
    {
        auto gr = grushin_system(1);
        auto st = normal_covector(gr, {{0.1, 0.0}, {0.3, 0.4}});
        double d = flow_geodesic(gr, st, 5.0, 1e-3).hamiltonian_drift(gr);
        c.require(d <= 1e-8, "grushin drift " + fmt(d));
        c.note("grushin drift " + fmt(d, 3));

        auto heis = heisenberg_system();
        auto sth = normal_covector(heis, {{0.2, -0.1, 0.0}, {0.4, 0.2, 0.1}});
        double dh = flow_geodesic(heis, sth, 5.0, 1e-3).hamiltonian_drift(heis);
        c.require(dh <= 1e-8, "heisenberg drift " + fmt(dh));
        c.note("heisenberg drift " + fmt(dh, 3));
    }
    // RK4 global error ratio under halving
    {
        auto gr = grushin_system(1);
        CotangentState st0{{0.0, 0.0}, {0.3, 0.4}};
        auto ref = flow_geodesic(gr, st0, 3.0, 1.25e-3);
        auto err = [&](double h) {
            auto p = flow_geodesic(gr, st0, 3.0, h);
            double e = 0.0;
            std::size_t stride = (ref.size() - 1) / (p.size() - 1);
            for (std::size_t j = 0; j < p.size(); ++j)
                for (int a = 0; a < 2; ++a)
                    e = std::max(e, std::abs(p.states[j].x[a] -
                                             ref.states[j * stride].x[a]));
            return e;
        };
        double ratio = err(2e-2) / err(1e-2);
        c.require(ratio >= 12.0 && ratio <= 20.0, "RK4 ratio " + fmt(ratio));
        c.note("RK4 halving ratio " + fmt(ratio, 4));
    }
    // g(v0) = 4 l(xi)
    {
        Rng rng(88);
        for (auto sys : {grushin_system(1), heisenberg_system()}) {
            double worst = 0.0;
            for (int t = 0; t < 1000; ++t) {
                Vec x(sys.dim), xi(sys.dim);
                for (double& v : x) v = rng.uniform(-2.0, 2.0);
                for (double& v : xi) v = rng.uniform(-1.0, 1.0);
                double ell = sys.hamiltonian({x, xi});
                Vec v0(sys.dim, 0.0);
                for (const auto& f : sys.fields) {
                    Vec X = f.value(x);
                    double pp = 2.0 * dot(xi, X);
                    for (int a = 0; a < sys.dim; ++a) v0[a] += pp * X[a];
                }
                worst = std::max(worst, std::abs(sr_metric(sys, x, v0) - 4.0 * ell) /
                                            (1.0 + 4.0 * ell));
            }
            c.require(worst <= 1e-10, sys.name + " g(v0)=4l worst " + fmt(worst));
            c.note(sys.name + " davide worst " + fmt(worst, 3));
        }
    }
    return {8, "geodesic suite (drift, RK4 order, g(v0)=4l)", c.pass,
            c.detail.str(), 0.0};
}

// --- criterion 9: frequency-function property suite ----------------------
CriterionResult crit9(Ctx&) {
    Check c;
    Rng rng(99);
    int viol_freq = 0, viol_prod = 0, viol_jensen = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        Vec lams(10);
        double base = rng.uniform(0.0, 3.0);
        for (auto& l : lams) {
            base += std::exp(rng.uniform(-2.0, 3.0));
            l = base;
        }
        SpectralBasis basis;
        basis.spec.family = Family::grushin_rectangle;
        basis.spec.gamma = 1;
        basis.spec.grid_n = 257;
        basis.spec.fourier_max = 10;
        basis.spec.branch_max = 1;
        for (std::size_t j = 0; j < lams.size(); ++j) {
            spectral::Mode m;
            m.fourier_n = static_cast<int>(j + 1);
            m.branch = 1;
            m.lambda = m.lambda_grid = lams[j];
            m.profile.assign(basis.spec.grid_n, 0.0);
            basis.modes.push_back(std::move(m));
        }
        Vec coef(lams.size());
        for (double& x : coef) x = rng.normal();
        SpectralVector u(basis, std::move(coef));
        double sigma = rng.uniform(0.2, 2.5);

        auto Hu = spectral::apply_calculus(u, [](double l) { return 1.0 / (1.0 + l); });
        if (spectral::frequency_function(Hu, sigma) >
            2.0 * spectral::frequency_function(u, sigma) * (1.0 + 1e-13))
            ++viol_freq;

        auto F = [](double l) { return std::sqrt(1.0 + l); };
        auto G = [](double l) { return 1.0 + l; };
        double lhs = spectral::hsl_norm(spectral::apply_calculus(u, F), 0.0) *
                     spectral::hsl_norm(spectral::apply_calculus(u, G), 0.0);
        double rhs =
            2.0 *
            spectral::hsl_norm(
                spectral::apply_calculus(u, [&](double l) { return F(l) * G(l); }),
                0.0) *
            spectral::hsl_norm(u, 0.0);
        if (lhs > rhs * (1.0 + 1e-13)) ++viol_prod;

        auto j1 = spectral::jensen_check(
            u, [](double s) { return s + 1.0; },
            [](double s) { return 1.0 / std::sqrt(s); });
        auto j2 = spectral::jensen_check(
            u, [](double s) { return s; },
            [](double s) { return std::exp(-3.0 * std::sqrt(1.3 * s)); });
        if (j1.lhs > j1.rhs * (1.0 + 1e-13)) ++viol_jensen;
        if (j2.lhs > j2.rhs * (1.0 + 1e-13)) ++viol_jensen;
    }
    c.require(viol_freq == 0, std::to_string(viol_freq) + " frequency violations");
    c.require(viol_prod == 0, std::to_string(viol_prod) + " product violations");
    c.require(viol_jensen == 0, std::to_string(viol_jensen) + " Jensen violations");
    c.note("10^4 trials per inequality, violations " + std::to_string(viol_freq) +
           "/" + std::to_string(viol_prod) + "/" + std::to_string(viol_jensen));
    return {9, "frequency-function property suite", c.pass, c.detail.str(), 0.0};
}

// --- criterion 10: wave/heat evolution invariants -------------------------
CriterionResult crit10(Ctx& ctx) {
    Check c;
    const auto& basis = ctx.g1_n80();
    Rng rng(1010);
    Vec ca(basis.size()), cb(basis.size());
    for (double& x : ca) x = rng.normal();
    for (double& x : cb) x = rng.normal();
    SpectralVector u(basis, std::move(ca));
    SpectralVector v(basis, std::move(cb));

    double semi = 0.0;
    auto one = evo::heat_evolve(evo::heat_evolve(u, 0.02), 0.03);
    auto two = evo::heat_evolve(u, 0.05);
    for (std::size_t j = 0; j < u.size(); ++j)
        semi = std::max(semi, std::abs(one.coeffs[j] - two.coeffs[j]));
    c.require(semi <= 1e-14, "semigroup defect " + fmt(semi));

    evo::WaveState w{u, v};
    double edrift = 0.0;
    for (double s : {0.0, 1.0}) {
        double e0 = evo::wave_energy(w, s);
        for (double t : {0.4, 1.7, 3.9})
            edrift = std::max(edrift,
                              std::abs(evo::wave_energy(evo::wave_evolve(w, t), s) - e0) /
                                  e0);
    }
    c.require(edrift <= 1e-12, "energy drift " + fmt(edrift));

    auto back = evo::wave_evolve(evo::wave_evolve(w, 1.37), -1.37);
    double rev = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        rev = std::max(rev, std::abs(back.u.coeffs[j] - w.u.coeffs[j]));
        rev = std::max(rev, std::abs(back.ut.coeffs[j] - w.ut.coeffs[j]));
    }
    c.require(rev <= 1e-12, "reversibility defect " + fmt(rev));
    c.note("semigroup " + fmt(semi, 3) + ", energy " + fmt(edrift, 3) +
           ", reversibility " + fmt(rev, 3));
    return {10, "wave/heat evolution invariants", c.pass, c.detail.str(), 0.0};
}

// --- criterion 11: low-frequency cost exponent ----------------------------
CriterionResult crit11(Ctx& ctx) {
    Check c;
    Vec grid{75.0, 150.0, 225.0, 300.0};
    auto fine = obs::lowfreq_cost_experiment(ctx.g1_lam300(2049), strip_03_09(),
                                             1.0, grid, ctx.threads);
    auto coarse = obs::lowfreq_cost_experiment(ctx.g1_lam300(1025), strip_03_09(),
                                               1.0, grid, ctx.threads);
    c.require(fine.raw_fit.slope > 0.0, "slope not positive");
    double stab = std::abs(fine.raw_fit.slope - coarse.raw_fit.slope) /
                  fine.raw_fit.slope;
    c.require(stab <= 0.15, "grid stability " + fmt(stab));
    auto tun = obs::tunneling_experiment(ctx.g1_n80(), strip_03_09());
    double agree = std::abs(fine.raw_fit.slope - tun.raw_fit.slope) /
                   tun.raw_fit.slope;
    c.require(agree <= 0.25, "tunneling agreement " + fmt(agree));
    c.note("slope " + fmt(fine.raw_fit.slope, 5) + ", grid stability " +
           fmt(stab, 3) + ", vs tunneling " + fmt(agree, 3) + " (dim E_300 = " +
           std::to_string(ctx.g1_lam300(2049).modes_below(300.0).size()) + ")");
    return {11, "low-frequency observability cost exponent", c.pass,
            c.detail.str(), 0.0};
}

// --- criterion 12: parabolic tradeoff -------------------------------------
CriterionResult crit12(Ctx& ctx) {
    Check c;
    auto rep = obs::parabolic_tradeoff_experiment(
        ctx.g1_lam300(2049), strip_03_09(), {1.0, 2.0, 4.0, 8.0}, 0.02, 12);
    bool finite = true, decreasing = true;
    for (std::size_t i = 0; i < rep.beta.size(); ++i) {
        if (!(std::isfinite(rep.beta[i]) && rep.beta[i] > 0.0)) finite = false;
        if (i > 0 && !(rep.beta[i] < rep.beta[i - 1])) decreasing = false;
    }
    c.require(finite, "beta not finite/positive on the sweep");
    c.require(decreasing, "beta not strictly decreasing along doubling");
    std::ostringstream bs;
    for (double b : rep.beta) bs << fmt(b, 4) << " ";
    c.note("beta(T) = " + bs.str() + "(T = 1,2,4,8), fitted T0 " +
           fmt(rep.fitted_T0, 4));
    return {12, "parabolic tradeoff beta(T) (k=2)", c.pass, c.detail.str(), 0.0};
}

// --- criterion 13: subelliptic ratio on the torus --------------------------
CriterionResult crit13(Ctx&) {
    Check c;
    Vec maxima;
    for (int q : {4, 8, 16, 32, 64}) {
        OperatorSpec s;
        s.family = Family::grushin_torus;
        s.gamma = 1;
        s.grid_n = 257;
        s.fourier_max = q;
        s.branch_max = 1;
        s.potential = Potential::sine;
        Vec ratios = spectral::subelliptic_ratio(s, 200, 1300 + q);
        maxima.push_back(*std::max_element(ratios.begin(), ratios.end()));
    }
    double worst_var = 0.0;
    for (std::size_t i = 1; i < maxima.size(); ++i)
        worst_var = std::max(worst_var,
                             std::abs(maxima[i] - maxima[i - 1]) / maxima[i - 1]);
    c.require(worst_var < 0.5, "adjacent band variation " + fmt(worst_var));
    std::ostringstream ms;
    for (double m : maxima) ms << fmt(m, 4) << " ";
    c.note("band maxima " + ms.str() + "(q = 4..64), adjacent variation " +
           fmt(worst_var, 3));
    return {13, "subelliptic ratio band stability (torus gamma=1)", c.pass,
            c.detail.str(), 0.0};
}

CriterionResult timed(Ctx& ctx, int id,
                      const std::function<CriterionResult(Ctx&)>& fn,
                      double budget_s) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = fn(ctx);
    } catch (const std::exception& e) {
        r = {id, "criterion " + std::to_string(id), false,
             std::string("exception: ") + e.what(), 0.0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
    if (budget_s > 0.0 && r.seconds >= budget_s) {
        r.pass = false;
        r.detail += "; FAILED: runtime " + fmt(r.seconds, 3) + "s over budget " +
                    fmt(budget_s, 3) + "s";
    }
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(int threads) {
    Ctx ctx;
    ctx.threads = threads;
    std::vector<CriterionResult> out;
    out.push_back(timed(ctx, 1, crit1, 30.0));
    out.push_back(timed(ctx, 2, crit2, 60.0));
    out.push_back(timed(ctx, 3, crit3, 0.0));
    out.push_back(timed(ctx, 4, crit4, 120.0));
    out.push_back(timed(ctx, 5, crit5, 0.0));
    out.push_back(timed(ctx, 6, crit6, 10.0));
    out.push_back(timed(ctx, 7, crit7, 0.0));
    out.push_back(timed(ctx, 8, crit8, 0.0));
    out.push_back(timed(ctx, 9, crit9, 0.0));
    out.push_back(timed(ctx, 10, crit10, 0.0));
    out.push_back(timed(ctx, 11, crit11, 300.0));
    out.push_back(timed(ctx, 12, crit12, 0.0));
    out.push_back(timed(ctx, 13, crit13, 0.0));
    return out;
}

CriterionResult run_criterion(int id, int threads) {
    Ctx ctx;
    ctx.threads = threads;
    switch (id) {
        case 1: return timed(ctx, 1, crit1, 30.0);
        case 2: return timed(ctx, 2, crit2, 60.0);
        case 3: return timed(ctx, 3, crit3, 0.0);
        case 4: return timed(ctx, 4, crit4, 120.0);
        case 5: return timed(ctx, 5, crit5, 0.0);
        case 6: return timed(ctx, 6, crit6, 10.0);
        case 7: return timed(ctx, 7, crit7, 0.0);
        case 8: return timed(ctx, 8, crit8, 0.0);
        case 9: return timed(ctx, 9, crit9, 0.0);
        case 10: return timed(ctx, 10, crit10, 0.0);
        case 11: return timed(ctx, 11, crit11, 300.0);
        case 12: return timed(ctx, 12, crit12, 0.0);
        case 13: return timed(ctx, 13, crit13, 0.0);
    }
    throw InvalidArgument("run_criterion: id must be 1..13");
}

}  // namespace hypolab::accept
