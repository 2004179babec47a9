#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypolab {

using Vec = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Base class for all failures raised by this library.  Subclasses carry
// enough context (index, abscissa, best estimate) for the caller to act.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct EigenFailure : Error {
    int index;
    EigenFailure(const std::string& msg, int idx) : Error(msg), index(idx) {}
};

struct QuadratureFailure : Error {
    double best_estimate;
    double error_estimate;
    QuadratureFailure(const std::string& msg, double best, double err)
        : Error(msg), best_estimate(best), error_estimate(err) {}
};

struct OdeFailure : Error {
    double s;
    OdeFailure(const std::string& msg, double where) : Error(msg), s(where) {}
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

inline bool is_finite(double x) { return std::isfinite(x); }

inline bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double sqr(double x) { return x * x; }

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

// sin(d*t)/d with a series branch for small |d*t|.
inline double sinc_scaled(double d, double t) {
    double z = d * t;
    if (std::abs(z) < 1e-4) return t * (1.0 - z * z / 6.0);
    return std::sin(z) / d;
}

// (1 - e^{-z})/z, stable near z = 0.
inline double expm1_ratio(double z) {
    if (std::abs(z) < 1e-5) return 1.0 - z / 2.0 + z * z / 6.0;
    return -std::expm1(-z) / z;
}

}  // namespace hypolab
