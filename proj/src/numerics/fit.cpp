#include "hypolab/numerics/fit.hpp"

#include <algorithm>
#include <cmath>

namespace hypolab::num {

FitResult fit_line(const Vec& xs, const Vec& ys) {
    if (xs.size() != ys.size())
        throw InvalidArgument("fit: xs and ys must have equal length");
    if (xs.size() < 3) throw InvalidArgument("fit: need at least 3 points");
    if (!all_finite(xs) || !all_finite(ys))
        throw InvalidArgument("fit: non-finite input");

    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw InvalidArgument("fit: degenerate xs (zero variance)");

    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double resid = ys[i] - (r.slope * xs[i] + r.intercept);
        ssr += resid * resid;
        r.residual_max = std::max(r.residual_max, std::abs(resid));
    }
    r.r_squared = (syy > 0.0) ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
    return r;
}

FitResult fit_loglinear(const Vec& xs, const Vec& ys) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw InvalidArgument("fit_loglinear: xs must be strictly increasing");
    return fit_line(xs, ys);
}

}  // namespace hypolab::num
