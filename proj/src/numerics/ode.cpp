#include "hypolab/numerics/ode.hpp"

#include <algorithm>
#include <cmath>

namespace hypolab::num {

namespace {

Vec axpy(const Vec& y, double a, const Vec& k) {
    Vec r(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] + a * k[i];
    return r;
}

Vec rk4_step(const OdeRhs& rhs, double s, const Vec& y, double h) {
    Vec k1 = rhs(s, y);
    Vec k2 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k1));
    Vec k3 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k2));
    Vec k4 = rhs(s + h, axpy(y, h, k3));
    Vec out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    return out;
}

// Dormand-Prince 5(4) step; returns (y5, error norm).
std::pair<Vec, double> dopri_step(const OdeRhs& rhs, double s, const Vec& y,
                                  double h) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const std::size_t n = y.size();
    Vec k1 = rhs(s, y);
    Vec t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = y[i] + h * a21 * k1[i];
    Vec k2 = rhs(s + h / 5.0, t);
    for (std::size_t i = 0; i < n; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    Vec k3 = rhs(s + 3.0 * h / 10.0, t);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    Vec k4 = rhs(s + 4.0 * h / 5.0, t);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    Vec k5 = rhs(s + 8.0 * h / 9.0, t);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                           a65 * k5[i]);
    Vec k6 = rhs(s + h, t);
    Vec y5(n);
    for (std::size_t i = 0; i < n; ++i)
        y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    Vec k7 = rhs(s + h, y5);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                        e6 * k6[i] + e7 * k7[i]);
        err += e * e;
    }
    return {std::move(y5), std::sqrt(err)};
}

}  // namespace

Trajectory integrate_ode(const OdeRhs& rhs, const Vec& y0,
                         std::pair<double, double> s_span, double step,
                         OdeMethod method, double rk45_tol) {
    if (!(step > 0.0)) throw InvalidArgument("integrate_ode: step must be > 0");
    double s0 = s_span.first, s1 = s_span.second;
    double dir = (s1 >= s0) ? 1.0 : -1.0;
    double span = std::abs(s1 - s0);
    long nsteps = std::max<long>(1, std::lround(span / step));
    double h = dir * span / static_cast<double>(nsteps);

    Trajectory traj;
    traj.s.reserve(nsteps + 1);
    traj.states.reserve(nsteps + 1);
    traj.s.push_back(s0);
    traj.states.push_back(y0);

    Vec y = y0;
    double s = s0;
    for (long i = 0; i < nsteps; ++i) {
        double target = s0 + h * static_cast<double>(i + 1);
        if (method == OdeMethod::rk4) {
            y = rk4_step(rhs, s, y, target - s);
            s = target;
        } else {
            // Adaptive inner stepping that lands exactly on the sample.
            double hh = target - s;
            while (std::abs(target - s) > 1e-14 * std::max(1.0, std::abs(target))) {
                if (std::abs(hh) > std::abs(target - s)) hh = target - s;
                auto [ynew, err] = dopri_step(rhs, s, y, hh);
                double tol = rk45_tol * std::max(1.0, norm2(y));
                if (err <= tol || std::abs(hh) < 1e-13 * std::abs(h)) {
                    s += hh;
                    y = std::move(ynew);
                }
                double f = (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
                hh *= std::clamp(f, 0.2, 5.0);
            }
            s = target;
        }
        if (!all_finite(y))
            throw OdeFailure("integrate_ode: non-finite state at s = " +
                                 std::to_string(s),
                             s);
        traj.s.push_back(target);
        traj.states.push_back(y);
    }
    return traj;
}

}  // namespace hypolab::num
