#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypolab/geometry/distance.hpp"
#include "hypolab/rng.hpp"

using namespace hypolab;
using namespace hypolab::geom;

TEST_CASE("hamiltonian: catalog point values") {
    auto ell = elliptic_system();
    CHECK(ell.hamiltonian({{0.0, 0.0}, {3.0, 4.0}}) == doctest::Approx(25.0));

    auto gr = grushin_system(1);
    CHECK(gr.hamiltonian({{0.0, 0.7}, {2.0, 5.0}}) == doctest::Approx(4.0));

    auto heis = heisenberg_system();
    CHECK(heis.hamiltonian({{1.0, 2.0, 0.0}, {0.0, 0.0, 1.0}}) ==
          doctest::Approx(20.0));
}

TEST_CASE("catalog Jacobians agree with finite differences") {
    Rng rng(3);
    for (auto sys : {grushin_system(1), grushin_system(3), heisenberg_system(),
                     elliptic_system()}) {
        for (int t = 0; t < 20; ++t) {
            Vec x(sys.dim);
            for (double& v : x) v = rng.uniform(-2.0, 2.0);
            CHECK(sys.jacobian_mismatch(x) <= 1e-6);
        }
    }
}

TEST_CASE("flow_geodesic: straight Grushin line") {
    auto gr = grushin_system(1);
    auto path = flow_geodesic(gr, {{0.0, 0.0}, {0.5, 0.0}}, 2.0, 1e-3);
    const auto& last = path.states.back();
    CHECK(last.x[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(last.x[1]) <= 1e-12);
    CHECK(std::abs(last.xi[0] - 0.5) <= 1e-12);
    CHECK(path.ell0 == doctest::Approx(0.25));
    CHECK(path_length(gr, path) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("flow_geodesic: elliptic straight unit-speed line") {
    auto ell = elliptic_system();
    auto path = flow_geodesic(ell, {{0.0, 0.0}, {0.3, 0.4}}, 1.0, 1e-3);
    CHECK(norm2(path.states.back().x) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(path_length(ell, path) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("flow_geodesic: conservation and self-convergence") {
    auto gr = grushin_system(1);
    CotangentState st0{{0.0, 0.0}, {0.3, 0.4}};
    auto path = flow_geodesic(gr, st0, 3.0, 1e-3);
    CHECK(path.hamiltonian_drift(gr) <= 1e-8);

    auto fine = flow_geodesic(gr, st0, 3.0, 5e-4);
    double dx = 0.0;
    for (int a = 0; a < 2; ++a)
        dx = std::max(dx, std::abs(path.states.back().x[a] - fine.states.back().x[a]));
    CHECK(dx <= 1e-6);

    // Drift tightens by at least the fourth-order factor when the step
    // halves (measured in the truncation-dominated step range; on these
    // polynomial flows the invariant error actually contracts ~32x).
    double d1 = flow_geodesic(gr, st0, 3.0, 4e-2).hamiltonian_drift(gr);
    double d2 = flow_geodesic(gr, st0, 3.0, 2e-2).hamiltonian_drift(gr);
    CHECK(d1 / d2 >= 10.0);
    CHECK(d1 / d2 <= 64.0);

    // Global trajectory error ratio under halving stays fourth-order.
    auto ref = flow_geodesic(gr, st0, 3.0, 1.25e-3);
    auto err_vs_ref = [&](double h) {
        auto p = flow_geodesic(gr, st0, 3.0, h);
        double e = 0.0;
        std::size_t stride = p.size() > 1 ? (ref.size() - 1) / (p.size() - 1) : 1;
        for (std::size_t j = 0; j < p.size(); ++j)
            for (int a = 0; a < 2; ++a)
                e = std::max(e, std::abs(p.states[j].x[a] -
                                         ref.states[j * stride].x[a]));
        return e;
    };
    double ratio = err_vs_ref(2e-2) / err_vs_ref(1e-2);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("unit speed along normal geodesics") {
    auto heis = heisenberg_system();
    CotangentState st0{{0.2, -0.1, 0.0}, {0.4, 0.2, 0.1}};
    double ell = heis.hamiltonian(st0);
    double scale = 1.0 / (2.0 * std::sqrt(ell));
    for (auto& v : st0.xi) v *= scale;  // now l = 1/4
    auto path = flow_geodesic(heis, st0, 2.0, 1e-3);
    CHECK(path.hamiltonian_drift(heis) <= 1e-8);
    CHECK(path_length(heis, path) == doctest::Approx(2.0).epsilon(1e-6));
    // instantaneous speed
    for (std::size_t j = 0; j < path.size(); j += 200) {
        const auto& st = path.states[j];
        Vec v(3, 0.0);
        for (const auto& f : heis.fields) {
            Vec X = f.value(st.x);
            double p = 2.0 * dot(st.xi, X);
            for (int a = 0; a < 3; ++a) v[a] += p * X[a];
        }
        CHECK(std::sqrt(sr_metric(heis, st.x, v)) == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("sr_metric: catalog examples") {
    auto ell = elliptic_system();
    CHECK(sr_metric(ell, {0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(25.0));

    auto gr = grushin_system(1);
    CHECK(std::isinf(sr_metric(gr, {0.0, 0.5}, {0.0, 1.0})));
    CHECK(sr_metric(gr, {0.5, 0.0}, {0.0, 1.0}) == doctest::Approx(4.0));  // u2 = 2
}

TEST_CASE("sr_metric: g(v0) = 4 l(xi) on random covectors") {
    Rng rng(4);
    for (auto sys : {grushin_system(1), grushin_system(2), heisenberg_system()}) {
        for (int t = 0; t < 1000; ++t) {
            Vec x(sys.dim), xi(sys.dim);
            for (double& v : x) v = rng.uniform(-2.0, 2.0);
            for (double& v : xi) v = rng.uniform(-1.0, 1.0);
            CotangentState st{x, xi};
            double ell = sys.hamiltonian(st);
            Vec v0(sys.dim, 0.0);
            for (const auto& f : sys.fields) {
                Vec X = f.value(x);
                double p = 2.0 * dot(xi, X);
                for (int a = 0; a < sys.dim; ++a) v0[a] += p * X[a];
            }
            double g = sr_metric(sys, x, v0);
            CHECK(std::abs(g - 4.0 * ell) <= 1e-10 * (1.0 + 4.0 * ell));
        }
    }
}

TEST_CASE("sr_metric: least-norm controls orthogonal to frame kernel") {
    auto heis = heisenberg_system();
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        Vec x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        // v in the horizontal span
        double u1 = rng.normal(), u2 = rng.normal();
        Vec X1 = heis.fields[0].value(x), X2 = heis.fields[1].value(x);
        Vec v(3);
        for (int a = 0; a < 3; ++a) v[a] = u1 * X1[a] + u2 * X2[a];
        auto [g, u] = sr_metric_controls(heis, x, v);
        CHECK(g == doctest::Approx(u1 * u1 + u2 * u2).epsilon(1e-10));
        CHECK(std::abs(u[0] - u1) <= 1e-9);
        CHECK(std::abs(u[1] - u2) <= 1e-9);
    }
}

TEST_CASE("distance_to_set: inside, elliptic box, monotone shots") {
    auto ell = elliptic_system();
    Box omega{{1.0, -0.5}, {2.0, 0.5}};

    auto inside = distance_to_set(ell, {1.5, 0.0}, omega, 16, 1.0);
    CHECK(inside.d_est == 0.0);

    ShootOptions opts;
    opts.step = 2e-3;
    double prev = 1e300;
    for (int shots : {64, 128, 256, 512}) {
        auto r = distance_to_set(ell, {0.0, 0.0}, omega, shots, 2.0, opts);
        CHECK(r.d_est <= prev + 1e-15);
        prev = r.d_est;
    }
    CHECK(std::abs(prev - 1.0) <= 0.01);
}

TEST_CASE("distance_to_set: grushin Cauchy between 256 and 512 shots") {
    auto gr = grushin_system(1);
    Box omega{{0.3, -10.0}, {0.4, 10.0}};
    ShootOptions opts;
    opts.step = 1e-3;
    opts.threads = 4;
    auto a = distance_to_set(gr, {0.0, 0.5}, omega, 256, 1.5, opts);
    auto b = distance_to_set(gr, {0.0, 0.5}, omega, 512, 1.5, opts);
    CHECK(std::abs(a.d_est - b.d_est) <= 1e-3);
    CHECK(b.d_est <= a.d_est + 1e-15);
    // witness path is a normal geodesic hitting omega at its reported time
    CHECK(b.witness.hamiltonian_drift(gr) <= 1e-7);
    CHECK(omega.contains(b.witness.states.back().x));
    CHECK(path_length(gr, b.witness) == doctest::Approx(b.d_est).epsilon(1e-4));
}

TEST_CASE("distance_to_set: unreachable target reports coverage") {
    auto ell = elliptic_system();
    Box omega{{5.0, 5.0}, {6.0, 6.0}};
    CHECK_THROWS_WITH_AS(distance_to_set(ell, {0.0, 0.0}, omega, 16, 0.5),
                         doctest::Contains("no shot"), Error);
}

TEST_CASE("min_observation_time: elliptic square, omega = left half") {
    auto ell = elliptic_system();
    Box domain{{0.0, 0.0}, {1.0, 1.0}};
    Box omega{{0.0, 0.0}, {0.5, 1.0}};
    ShootOptions opts;
    opts.step = 2e-3;
    opts.threads = 4;
    double t = min_observation_time(ell, domain, omega, 5, 128, 1.2, opts);
    CHECK(std::abs(t - 0.5) <= 0.03 * 0.5 + 0.01);

    // omega = domain: zero
    CHECK(min_observation_time(ell, domain, domain, 4, 16, 1.0, opts) == 0.0);
}

TEST_CASE("min_observation_time: grushin monotone in target size") {
    auto gr = grushin_system(1);
    Box domain{{-0.5, 0.0}, {0.5, 1.0}};
    Box small{{0.25, 0.2}, {0.5, 0.8}};
    Box large{{0.15, 0.1}, {0.5, 0.9}};
    ShootOptions opts;
    opts.step = 2e-3;
    opts.threads = 4;
    double ts = min_observation_time(gr, domain, small, 4, 128, 3.0, opts);
    double tl = min_observation_time(gr, domain, large, 4, 128, 3.0, opts);
    CHECK(tl <= ts + 1e-12);
}
