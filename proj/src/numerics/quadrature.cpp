#include "hypolab/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

namespace hypolab::num {

const std::pair<Vec, Vec>& gauss_legendre(int order) {
    static std::map<int, std::pair<Vec, Vec>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    if (order < 2) throw InvalidArgument("gauss_legendre: order must be >= 2");

    Vec x(order), w(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[order - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[order - 1 - i] = w[i];
    }
    return cache.emplace(order, std::make_pair(std::move(x), std::move(w))).first->second;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b,
                   int order) {
    const auto& [x, w] = gauss_legendre(order);
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += w[i] * f(c + h * x[i]);
    return s * h;
}

namespace {

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

constexpr int kOrder = 15;

Panel make_panel(const std::function<double(double)>& f, double a, double b,
                 long& evals) {
    double whole = gauss_panel(f, a, b, kOrder);
    double mid = 0.5 * (a + b);
    double halves = gauss_panel(f, a, mid, kOrder) + gauss_panel(f, mid, b, kOrder);
    evals += 3 * kOrder;
    // |halves - whole| over-estimates the error of `halves` itself.
    return Panel{a, b, halves, std::abs(halves - whole)};
}

}  // namespace

QuadratureResult adaptive_quad(const std::function<double(double)>& f, double a,
                               double b, double tol) {
    QuadOptions o;
    o.tol_abs = tol;
    return adaptive_quad(f, a, b, o);
}

QuadratureResult adaptive_quad(const std::function<double(double)>& f, double a,
                               double b, const QuadOptions& opts) {
    if (!(a < b)) throw InvalidArgument("adaptive_quad: need a < b");
    long evals = 0;
    std::priority_queue<Panel> queue;
    double total_value = 0.0, total_err = 0.0;
    int seeds = std::max(1, opts.initial_panels);
    for (int i = 0; i < seeds; ++i) {
        double pa = a + (b - a) * i / seeds;
        double pb = a + (b - a) * (i + 1) / seeds;
        Panel p = make_panel(f, pa, pb, evals);
        total_value += p.value;
        total_err += p.err;
        queue.push(p);
    }
    while (true) {
        if (!std::isfinite(total_value))
            throw QuadratureFailure("adaptive_quad: non-finite integrand", total_value,
                                    total_err);
        if (total_err <= std::max(opts.tol_abs, opts.tol_rel * std::abs(total_value)))
            break;
        if (evals >= opts.max_evaluations)
            throw QuadratureFailure(
                "adaptive_quad: evaluation budget exhausted before tolerance",
                total_value, total_err);
        Panel worst = queue.top();
        queue.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at rounding resolution; accept its estimate.
            queue.push(Panel{worst.a, worst.b, worst.value, 0.0});
            total_err -= worst.err;
            continue;
        }
        Panel left = make_panel(f, worst.a, mid, evals);
        Panel right = make_panel(f, mid, worst.b, evals);
        total_value += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }
    return QuadratureResult{total_value, total_err, evals};
}

QuadratureResult quad_endpoint_decay(const std::function<double(double)>& f,
                                     double T, double decay_rate,
                                     const QuadOptions& opts) {
    if (!(T > 0.0)) throw InvalidArgument("quad_endpoint_decay: need T > 0");
    if (!(decay_rate > 0.0))
        throw InvalidArgument("quad_endpoint_decay: need decay_rate > 0");
    // e^{-decay_rate/t} underflows once decay_rate/t > ~745; truncate the
    // log-variable a little beyond that point.
    const double u_min = std::log(decay_rate / 760.0);
    const double u_mid = std::log(T / 2.0);
    if (u_min >= u_mid) return QuadratureResult{0.0, 0.0, 0};

    QuadOptions half = opts;
    half.tol_abs = 0.5 * opts.tol_abs;
    half.max_evaluations = opts.max_evaluations / 2;
    if (half.initial_panels < 24) half.initial_panels = 24;

    // t = e^u on (0, T/2]
    auto g_left = [&f](double u) {
        double t = std::exp(u);
        return f(t) * t;
    };
    QuadratureResult left = adaptive_quad(g_left, u_min, u_mid, half);
    // T - t = e^u on [T/2, T)
    auto g_right = [&f, T](double u) {
        double t = T - std::exp(u);
        return f(t) * std::exp(u);
    };
    QuadratureResult right = adaptive_quad(g_right, u_min, u_mid, half);

    return QuadratureResult{left.value + right.value,
                            left.abs_error_estimate + right.abs_error_estimate,
                            left.evaluations + right.evaluations};
}

}  // namespace hypolab::num
