#pragma once

#include "hypolab/common.hpp"

namespace hypolab::num {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double residual_max = 0.0;
};

// Least-squares line ys ~ slope*xs + intercept.  xs must be strictly
// increasing with length >= 3 and ys finite; degenerate xs throws.
FitResult fit_loglinear(const Vec& xs, const Vec& ys);

// Same fit without the monotonicity requirement on xs (used internally for
// fits against transformed regressors).
FitResult fit_line(const Vec& xs, const Vec& ys);

}  // namespace hypolab::num
