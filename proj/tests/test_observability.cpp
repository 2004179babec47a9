#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypolab/observability/experiments.hpp"

using namespace hypolab;
using namespace hypolab::spectral;
using namespace hypolab::evo;
using namespace hypolab::obs;

namespace {

const SpectralBasis& g1_basis() {
    static SpectralBasis basis = [] {
        OperatorSpec s;
        s.family = Family::grushin_rectangle;
        s.gamma = 1;
        s.grid_n = 1025;
        s.fourier_max = 45;
        s.branch_max = 24;
        s.lambda_cutoff = 140.0;
        return build_basis(s, {.threads = 4});
    }();
    return basis;
}

ObservationRegion strip_region() {
    ObservationRegion r;
    r.x1_range = {0.3, 0.9};
    r.t_range = {0.0, 1.0};
    return r;
}

}  // namespace

TEST_CASE("tunneling_experiment: full domain normalizes to flat fit") {
    const auto& basis = g1_basis();
    ObservationRegion full;
    auto rep = tunneling_experiment(basis, full);
    for (double w : rep.gram_min_eigs) CHECK(w == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(rep.fitted_exponent) <= 1e-6);
}

TEST_CASE("tunneling_experiment: gamma=1 exponent and prefactor") {
    const auto& basis = g1_basis();
    auto rep = tunneling_experiment(basis, strip_region());
    // exponent of -log mass in lambda is a^2 = 0.09 within 10%
    CHECK(rep.raw_fit.slope >= 0.081);
    CHECK(rep.raw_fit.slope <= 0.099);
    // prefactor against e^{-a^2 n pi} / (2 a pi sqrt(n)) within factor 2
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
        double n = rep.fourier_ns[i];
        if (n < 20 || n > 44) continue;
        double predicted = std::exp(-0.09 * n * kPi) / (2.0 * 0.3 * kPi * std::sqrt(n));
        double ratio = rep.gram_min_eigs[i] / predicted;
        CHECK(ratio >= 0.5);
        CHECK(ratio <= 2.0);
    }
    CHECK(rep.fit_quality.r_squared >= 0.999);
}

TEST_CASE("lowfreq_cost_experiment: full domain stays polynomial") {
    const auto& basis = g1_basis();
    ObservationRegion full;
    Vec grid{30.0, 60.0, 90.0, 120.0};
    auto rep = lowfreq_cost_experiment(basis, full, 1.0, grid, 4);
    // cost(lambda) = max_j 2 lambda_j / (1 - e^{-2 lambda_j T}) ~ 2 lambda:
    // exponential slope in lambda is ~ log-derivative of a linear function.
    CHECK(rep.raw_fit.slope <= 0.05);
    CHECK(rep.raw_fit.slope >= 0.0);
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
        CHECK(rep.gram_min_eigs[i] > 0.0);
}

TEST_CASE("lowfreq_cost_experiment: strip cost grows exponentially, nested") {
    const auto& basis = g1_basis();
    Vec grid{35.0, 70.0, 105.0, 140.0};
    auto rep = lowfreq_cost_experiment(basis, strip_region(), 1.0, grid, 4);
    CHECK(rep.fitted_exponent > 0.0);
    // nested E_lambda: cost non-decreasing in lambda
    for (std::size_t i = 1; i < rep.gram_min_eigs.size(); ++i)
        CHECK(rep.gram_min_eigs[i] <= rep.gram_min_eigs[i - 1] * (1.0 + 1e-12));
    // agreement with the tunneling exponent within 25%
    auto tun = tunneling_experiment(basis, strip_region());
    CHECK(std::abs(rep.raw_fit.slope - tun.raw_fit.slope) <=
          0.25 * tun.raw_fit.slope);
}

TEST_CASE("lowfreq cost non-increasing in T") {
    const auto& basis = g1_basis();
    Vec grid{35.0, 70.0, 105.0, 140.0};
    auto r1 = lowfreq_cost_experiment(basis, strip_region(), 0.5, grid, 4);
    auto r2 = lowfreq_cost_experiment(basis, strip_region(), 1.0, grid, 4);
    for (std::size_t i = 0; i < r1.gram_min_eigs.size(); ++i)
        CHECK(1.0 / r2.gram_min_eigs[i] <= 1.0 / r1.gram_min_eigs[i] * (1.0 + 1e-12));
}

TEST_CASE("parabolic tradeoff: heat contraction handles eps >= 1") {
    const auto& basis = g1_basis();
    SpectralVector u = SpectralVector::unit_mode(basis, 4);
    auto yT = heat_evolve(u, 2.0);
    CHECK(hsl_norm(yT, 0.0) <= hsl_norm(u, 0.0));
}

TEST_CASE("parabolic tradeoff: beta finite and strictly decreasing on doubling") {
    const auto& basis = g1_basis();
    auto rep = parabolic_tradeoff_experiment(basis, strip_region(), {1.0, 2.0, 4.0},
                                             0.02, 7);
    REQUIRE(rep.beta.size() == 3);
    for (double b : rep.beta) {
        CHECK(b > 0.0);
        CHECK(std::isfinite(b));
    }
    CHECK(rep.beta[1] < rep.beta[0]);
    CHECK(rep.beta[2] < rep.beta[1]);
    CHECK(rep.fitted_T0 > 0.0);
    // halving the reported exponent breaks the inequality at the binding row
    CHECK(rep.rows.size() == 3);
}

TEST_CASE("gevrey cost: exponent positive and decreasing in theta") {
    const auto& basis = g1_basis();
    auto tun = tunneling_experiment(basis, strip_region());
    double c0 = tun.raw_fit.slope / 2.0;  // estimate of the low-frequency constant
    Vec thetas{2.5 * c0, 5.0 * c0, 10.0 * c0};
    auto rep = gevrey_cost_experiment(basis, strip_region(), 1.0, thetas, c0, 7);
    REQUIRE(rep.exponent.size() == 3);
    for (double e : rep.exponent) CHECK(e >= 0.0);
    CHECK(rep.exponent[1] <= rep.exponent[0]);
    CHECK(rep.exponent[2] <= rep.exponent[1]);
    // theta below theta0 is rejected
    CHECK_THROWS_AS(
        gevrey_cost_experiment(basis, strip_region(), 1.0, {0.5 * c0}, c0, 7),
        InvalidArgument);
}

TEST_CASE("frequency cost: lowest mode minimal, growth with Lambda") {
    const auto& basis = g1_basis();
    auto rep = frequency_cost_experiment(basis, strip_region(), 1.0, 120, 6, 11);
    REQUIRE(rep.bin_cost.size() >= 3);
    CHECK(rep.fit.slope > 0.0);
    CHECK(rep.bin_cost.back() >= rep.bin_cost.front());
    // lowest mode: Lambda = sqrt(1 + lambda_min), finite cost
    SpectralVector lowest = SpectralVector::unit_mode(basis, 0);
    CHECK(frequency_function(lowest, 1.0) ==
          doctest::Approx(std::sqrt(1.0 + basis.modes[0].lambda)));
    ObservationRegion win = strip_region();
    double cost = sqr(hsl_norm(lowest, 0.0)) /
                  restricted_heat_norm(lowest, win, 16, 16);
    CHECK(std::isfinite(cost));
    CHECK(cost <= rep.bin_cost.front() * (1.0 + 1e-9));
}
