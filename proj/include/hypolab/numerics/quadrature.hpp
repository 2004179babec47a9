#pragma once

#include <functional>

#include "hypolab/common.hpp"

namespace hypolab::num {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

struct QuadOptions {
    double tol_abs = 1e-10;
    double tol_rel = 0.0;      // terminate when err <= max(tol_abs, tol_rel*|value|)
    long max_evaluations = 2'000'000;
    int initial_panels = 1;    // seed subdivision; guards against missed peaks
};

// Gauss-Legendre nodes/weights on [-1,1], computed once per order by Newton
// iteration on the Legendre recurrence.
const std::pair<Vec, Vec>& gauss_legendre(int order);

// Fixed-order Gauss panel on [a,b].
double gauss_panel(const std::function<double(double)>& f, double a, double b,
                   int order = 15);

// Globally adaptive bisection with a worst-panel-first queue.  Throws
// QuadratureFailure carrying the best estimate when the budget is exhausted.
QuadratureResult adaptive_quad(const std::function<double(double)>& f, double a,
                               double b, double tol);
QuadratureResult adaptive_quad(const std::function<double(double)>& f, double a,
                               double b, const QuadOptions& opts);

// Integral over (0,T) of an integrand vanishing super-polynomially at both
// endpoints (like e^{-alpha/t}): split at T/2 and substitute u = log t,
// u = log(T-t), which turns the endpoint decay into doubly-exponential
// damping on half-lines.  decay_rate is the alpha in e^{-alpha/t}, used to
// place the far truncation point.
QuadratureResult quad_endpoint_decay(const std::function<double(double)>& f,
                                     double T, double decay_rate,
                                     const QuadOptions& opts);

}  // namespace hypolab::num
