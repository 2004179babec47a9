#pragma once

#include <functional>

#include "hypolab/common.hpp"

namespace hypolab::num {

enum class OdeMethod { rk4, rk45 };

// rhs(s, y) -> dy/ds
using OdeRhs = std::function<Vec(double, const Vec&)>;

struct Trajectory {
    Vec s;                    // sample abscissae, uniform
    std::vector<Vec> states;  // aligned with s

    const Vec& back_state() const { return states.back(); }
};

// Integrates from s_span.first to s_span.second with dense output at the
// uniform grid of spacing `step`.  rk4 takes one fixed step per sample;
// rk45 (Dormand-Prince) adapts internally but lands on each sample point.
// Throws OdeFailure at the first non-finite state.
Trajectory integrate_ode(const OdeRhs& rhs, const Vec& y0,
                         std::pair<double, double> s_span, double step,
                         OdeMethod method = OdeMethod::rk4,
                         double rk45_tol = 1e-10);

}  // namespace hypolab::num
