#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hypolab/numerics/fit.hpp"
#include "hypolab/rng.hpp"
#include "hypolab/spectral/basis.hpp"
#include "hypolab/spectral/sampling.hpp"
#include "hypolab/spectral/subelliptic.hpp"
#include "hypolab/spectral/vector.hpp"

using namespace hypolab;
using namespace hypolab::spectral;

namespace {

OperatorSpec small_spec(int gamma, int grid_n, int fourier_max, int branch_max) {
    OperatorSpec s;
    s.family = gamma == 0 ? Family::elliptic : Family::grushin_rectangle;
    s.gamma = gamma;
    s.grid_n = grid_n;
    s.fourier_max = fourier_max;
    s.branch_max = branch_max;
    return s;
}

// Coefficient-space basis with prescribed eigenvalues; profiles unused by
// the norm/calculus operations under test.
SpectralBasis synthetic_basis(const Vec& lambdas) {
    SpectralBasis b;
    b.spec = small_spec(1, 257, 4, 1);
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        Mode m;
        m.fourier_n = static_cast<int>(j + 1);
        m.branch = 1;
        m.lambda = m.lambda_grid = lambdas[j];
        m.profile.assign(b.spec.grid_n, 0.0);
        b.modes.push_back(std::move(m));
    }
    return b;
}

SpectralVector random_vector(const SpectralBasis& b, Rng& rng) {
    Vec c(b.size());
    for (double& x : c) x = rng.normal();
    return SpectralVector(b, std::move(c));
}

}  // namespace

TEST_CASE("operator spec validation") {
    OperatorSpec s = small_spec(1, 257, 4, 1);
    CHECK_NOTHROW(s.validate());
    s.grid_n = 200;
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("grid_n"), InvalidArgument);
    s = small_spec(1, 257, 4, 1);
    s.gamma = -1;
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("gamma"), InvalidArgument);
    CHECK(small_spec(2, 257, 4, 1).hypoellipticity_index() == 3);
}

TEST_CASE("build_basis: gamma=0 closed form lambda = (b pi/2)^2 + (n pi)^2") {
    auto basis = build_basis(small_spec(0, 513, 3, 3));
    REQUIRE(basis.size() == 9);
    for (const auto& m : basis.modes) {
        double exact = sqr(m.branch * kPi / 2.0) + sqr(m.fourier_n * kPi);
        CHECK(std::abs(m.lambda - exact) / exact <= 1e-6);
    }
    // sorted ascending
    for (std::size_t j = 1; j < basis.size(); ++j)
        CHECK(basis.modes[j].lambda >= basis.modes[j - 1].lambda);
}

TEST_CASE("build_basis: gamma=1 ground eigenvalue near n pi") {
    OperatorSpec s = small_spec(1, 1025, 40, 1);
    auto basis = build_basis(s, {.threads = 4});
    for (const auto& m : basis.modes) {
        if (m.fourier_n == 40) {
            CHECK(m.lambda / (40.0 * kPi) >= 0.99);
            CHECK(m.lambda / (40.0 * kPi) <= 1.01);
        }
    }
}

TEST_CASE("build_basis: gamma=2 growth exponent 2/3") {
    OperatorSpec s = small_spec(2, 513, 0, 1);
    s.fourier_max = 100;
    auto basis = build_basis(s, {.threads = 4});
    Vec ln, ll;
    for (const auto& m : basis.modes) {
        if (m.fourier_n < 10) continue;
        ln.push_back(std::log(static_cast<double>(m.fourier_n)));
        ll.push_back(std::log(m.lambda));
    }
    auto f = num::fit_loglinear(ln, ll);
    CHECK(std::abs(f.slope - 2.0 / 3.0) <= 0.05);
}

TEST_CASE("basis invariants: orthonormality, ground positivity, monotonicity") {
    auto basis = build_basis(small_spec(1, 513, 6, 3));
    // Gram with exact x2 integration and trapezoid x1 integration.
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            double g = basis.x2_pair_integral(i, j, 0.0, 1.0) *
                       basis.x1_pair_integral(i, j, -1.0, 1.0);
            if (i == j)
                CHECK(std::abs(g - 1.0) <= 1e-8);
            else
                CHECK(std::abs(g) <= 1e-8);
        }
    }
    // Ground-state profiles sign-definite; lambda_{n,1} increasing in n.
    double prev = 0.0;
    for (const auto& m : basis.modes) {
        if (m.branch != 1) continue;
        double lo = 1e300, hi = -1e300;
        for (int i = 1; i + 1 < basis.spec.grid_n; ++i) {
            lo = std::min(lo, m.profile[i]);
            hi = std::max(hi, m.profile[i]);
        }
        CHECK(lo >= -1e-9 * hi);
    }
    for (int n = 1; n <= 6; ++n) {
        for (const auto& m : basis.modes)
            if (m.fourier_n == n && m.branch == 1) {
                CHECK(m.lambda > prev);
                prev = m.lambda;
            }
    }
}

TEST_CASE("basis invariants: Richardson stability between two finest grids") {
    OperatorSpec s1 = small_spec(1, 1025, 5, 2);
    OperatorSpec s2 = small_spec(1, 513, 5, 2);
    auto b1 = build_basis(s1);
    auto b2 = build_basis(s2);
    REQUIRE(b1.size() == b2.size());
    for (std::size_t j = 0; j < b1.size(); ++j)
        CHECK(std::abs(b1.modes[j].lambda - b2.modes[j].lambda) /
                  b1.modes[j].lambda <=
              1e-6);
}

TEST_CASE("x2 full-range shortcut cross-validates against the generic formula") {
    auto basis = build_basis(small_spec(1, 257, 4, 2));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            double shortcut = basis.x2_pair_integral(i, j, 0.0, 1.0);
            double generic = basis.x2_pair_integral(i, j, 1e-15, 1.0 - 1e-15);
            CHECK(std::abs(shortcut - generic) <= 1e-12);
        }
    }
}

TEST_CASE("basis export/import round trip is bit-stable") {
    auto basis = build_basis(small_spec(1, 257, 3, 2));
    std::ostringstream os;
    export_basis(basis, os);
    std::istringstream is(os.str());
    auto copy = import_basis(is);
    REQUIRE(copy.size() == basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        CHECK(copy.modes[j].lambda == basis.modes[j].lambda);
        CHECK(copy.modes[j].fourier_n == basis.modes[j].fourier_n);
        CHECK(copy.modes[j].profile == basis.modes[j].profile);
    }
    std::ostringstream os2;
    export_basis(copy, os2);
    CHECK(os.str() == os2.str());
}

TEST_CASE("torus basis: n=0 present, cos/sin partners share lambda") {
    OperatorSpec s;
    s.family = Family::grushin_torus;
    s.gamma = 1;
    s.grid_n = 257;
    s.fourier_max = 3;
    s.branch_max = 1;
    s.potential = Potential::sine;
    auto basis = build_basis(s);
    bool has_zero = false;
    for (const auto& m : basis.modes)
        if (m.fourier_n == 0) has_zero = true;
    CHECK(has_zero);
    for (const auto& m : basis.modes) {
        if (m.fourier_n <= 0) continue;
        bool found = false;
        for (const auto& mm : basis.modes)
            if (mm.fourier_n == -m.fourier_n && mm.branch == m.branch) {
                CHECK(mm.lambda == m.lambda);
                found = true;
            }
        CHECK(found);
    }
}

TEST_CASE("apply_calculus and norms") {
    auto basis = synthetic_basis({1.0, 4.0, 9.0, 25.0});
    Rng rng(5);
    SpectralVector u = random_vector(basis, rng);

    auto id = apply_calculus(u, [](double) { return 1.0; });
    CHECK(id.coeffs == u.coeffs);

    SpectralVector one = SpectralVector::unit_mode(basis, 2, 3.0);
    auto lam = apply_calculus(one, [](double l) { return l; });
    CHECK(lam.coeffs[2] == doctest::Approx(9.0 * 3.0));

    // roundtrip e^{-tL} then e^{+tL}
    double t = 0.5;
    auto fwd = apply_calculus(u, [t](double l) { return std::exp(-t * l); });
    auto back = apply_calculus(fwd, [t](double l) { return std::exp(t * l); });
    for (std::size_t j = 0; j < u.size(); ++j)
        CHECK(back.coeffs[j] == doctest::Approx(u.coeffs[j]).epsilon(1e-12));

    CHECK_THROWS_AS(apply_calculus(u, [](double) { return 1.0 / 0.0; }), Error);

    // hsl_norm examples
    CHECK(hsl_norm(u, 0.0) == doctest::Approx(norm2(u.coeffs)).epsilon(1e-14));
    CHECK(hsl_norm(one, 2.0) == doctest::Approx(10.0 * 3.0).epsilon(1e-14));
    double h0 = hsl_norm(u, 0.0), h1 = hsl_norm(u, 1.0), h2 = hsl_norm(u, 2.0);
    CHECK(h1 * h1 <= h0 * h2 * (1.0 + 1e-12));

    // calculus is a homomorphism on samples
    auto f = [](double l) { return 1.0 / (1.0 + l); };
    auto g = [](double l) { return std::sqrt(l); };
    auto both = apply_calculus(u, [&](double l) { return f(l) * g(l); });
    auto seq = apply_calculus(apply_calculus(u, f), g);
    for (std::size_t j = 0; j < u.size(); ++j)
        CHECK(std::abs(both.coeffs[j] - seq.coeffs[j]) <= 1e-12);
}

TEST_CASE("gevrey_norm") {
    auto basis = synthetic_basis({1.0, 4.0, 9.0});
    Rng rng(6);
    SpectralVector u = random_vector(basis, rng);
    CHECK(gevrey_norm(u, 1.0, 0.0) == doctest::Approx(hsl_norm(u, 0.0)));
    SpectralVector one = SpectralVector::unit_mode(basis, 1, 2.0);
    double t = 0.3;
    CHECK(gevrey_norm(one, 1.0, t) == doctest::Approx(std::exp(t * 4.0) * 2.0));
    // heat-evolved data: gevrey(e^{-TL}u, 1, T) = ||u||
    double T = 0.7;
    auto cooled = apply_calculus(u, [T](double l) { return std::exp(-T * l); });
    CHECK(gevrey_norm(cooled, 1.0, T) == doctest::Approx(hsl_norm(u, 0.0)).epsilon(1e-12));
    // overflow guard
    auto big = synthetic_basis({1e4});
    SpectralVector v = SpectralVector::unit_mode(big, 0);
    CHECK_THROWS_WITH_AS(gevrey_norm(v, 1.0, 1.0), doctest::Contains("overflow"),
                         Error);
}

TEST_CASE("frequency_function inequalities on random vectors") {
    Rng rng(7);
    int violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        Vec lams(12);
        double base = rng.uniform(0.0, 5.0);
        for (auto& l : lams) {
            base += std::exp(rng.uniform(-2.0, 3.0));
            l = base;
        }
        auto basis = synthetic_basis(lams);
        SpectralVector u = random_vector(basis, rng);
        double sigma = rng.uniform(0.2, 2.5);

        // H(lambda) = (1+lambda)^{-1}: nonvanishing, nonincreasing, -> 0
        auto Hu = apply_calculus(u, [](double l) { return 1.0 / (1.0 + l); });
        if (frequency_function(Hu, sigma) > 2.0 * frequency_function(u, sigma))
            ++violations;

        // product inequality ||F u|| ||G u|| <= 2 ||FG u|| ||u||
        auto F = [](double l) { return std::sqrt(1.0 + l); };
        auto G = [](double l) { return 1.0 + l; };
        double lhs = hsl_norm(apply_calculus(u, F), 0.0) *
                     hsl_norm(apply_calculus(u, G), 0.0);
        double rhs = 2.0 *
                     hsl_norm(apply_calculus(u, [&](double l) { return F(l) * G(l); }),
                              0.0) *
                     hsl_norm(u, 0.0);
        if (lhs > rhs * (1.0 + 1e-12)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("frequency_function single mode and zero vector") {
    auto basis = synthetic_basis({3.0, 8.0});
    SpectralVector one = SpectralVector::unit_mode(basis, 1, 0.7);
    CHECK(frequency_function(one, 2.0) == doctest::Approx(9.0));
    CHECK_THROWS_AS(frequency_function(SpectralVector::zero(basis), 1.0), Error);
}

TEST_CASE("jensen_check") {
    auto basis = synthetic_basis({0.5, 2.0, 7.0, 11.0});
    // point mass: equality
    SpectralVector one = SpectralVector::unit_mode(basis, 2, 1.3);
    auto sides = jensen_check(
        one, [](double s) { return s + 1.0; },
        [](double s) { return 1.0 / std::sqrt(s); });
    CHECK(sides.lhs == doctest::Approx(sides.rhs).epsilon(1e-13));

    Rng rng(8);
    for (int trial = 0; trial < 10000; ++trial) {
        Vec lams(8);
        double base = 0.0;
        for (auto& l : lams) {
            base += std::exp(rng.uniform(-2.0, 2.5));
            l = base;
        }
        auto b = synthetic_basis(lams);
        SpectralVector u = random_vector(b, rng);
        // F(s) = s+1, G(s) = 1/sqrt(s):  ||u||/||u||_{H^-1} <= ||u||_{H^1}/||u||
        auto s1 = jensen_check(
            u, [](double s) { return s + 1.0; },
            [](double s) { return 1.0 / std::sqrt(s); });
        CHECK(s1.lhs <= s1.rhs * (1.0 + 1e-12));
        // F(s) = s, G(s) = e^{-3 sqrt(alpha s)}
        double alpha = 1.7;
        auto s2 = jensen_check(
            u, [](double s) { return s; },
            [alpha](double s) { return std::exp(-3.0 * std::sqrt(alpha * s)); });
        CHECK(s2.lhs <= s2.rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("jensen remark: comparing the two frequency functions") {
    auto basis = synthetic_basis({1.0, 3.0, 10.0});
    Rng rng(9);
    SpectralVector u = random_vector(basis, rng);
    double l2 = hsl_norm(u, 0.0);
    CHECK(l2 / hsl_norm(u, -1.0) <= hsl_norm(u, 1.0) / l2 * (1.0 + 1e-12));
}

TEST_CASE("sample_on_grid") {
    auto basis = build_basis(small_spec(1, 257, 3, 2));
    // Dirichlet in x2: first mode vanishes on x2 = 0.
    SpectralVector one = SpectralVector::unit_mode(basis, 0);
    auto g = sample_on_grid(one, 33, 17);
    for (std::size_t i = 0; i < g.x1.size(); ++i) CHECK(g.values[i][0] == 0.0);

    auto z = sample_on_grid(SpectralVector::zero(basis), 9, 9);
    for (const auto& row : z.values)
        for (double v : row) CHECK(v == 0.0);

    // Parseval within 1% at 512 for a multi-mode vector.
    Rng rng(10);
    Vec c(basis.size());
    for (double& x : c) x = rng.normal();
    SpectralVector u(basis, std::move(c));
    auto fine = sample_on_grid(u, 512, 512);
    CHECK(fine.l2_norm() == doctest::Approx(hsl_norm(u, 0.0)).epsilon(0.01));
}

TEST_CASE("subelliptic_ratio: constants and elliptic identity") {
    OperatorSpec s;
    s.family = Family::grushin_torus;
    s.gamma = 1;
    s.grid_n = 257;
    s.fourier_max = 8;
    s.branch_max = 1;
    s.potential = Potential::sine;

    // u constant: numerator = denominator = ||u||^2.
    TorusField cst;
    cst.q = 0;
    cst.p_max = 0;
    cst.c = {std::complex<double>(1.0, 0.0)};
    CHECK(subelliptic_ratio_for(s, cst) == doctest::Approx(1.0).epsilon(1e-12));

    // gamma=0 (k=1): Parseval identity, ratio = 1 on any field.
    OperatorSpec e = s;
    e.gamma = 0;
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        TorusField u;
        u.q = 8;
        u.p_max = 6;
        u.c.resize(13);
        for (auto& z : u.c) z = {rng.normal(), rng.normal()};
        CHECK(subelliptic_ratio_for(e, u) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("subelliptic_ratio: gamma=1 band sweep stays bounded") {
    OperatorSpec s;
    s.family = Family::grushin_torus;
    s.gamma = 1;
    s.grid_n = 257;
    s.branch_max = 1;
    s.potential = Potential::sine;
    Vec maxima;
    for (int q : {4, 8, 16, 32}) {
        s.fourier_max = q;
        Vec ratios = subelliptic_ratio(s, 100, 100 + q);
        maxima.push_back(*std::max_element(ratios.begin(), ratios.end()));
    }
    for (double m : maxima) {
        CHECK(m <= 1.0);
        CHECK(m >= 0.2);
    }
}
