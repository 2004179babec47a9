#include "hypolab/spectral/operator_spec.hpp"

#include <cmath>

namespace hypolab::spectral {

const char* to_string(Family f) {
    switch (f) {
        case Family::grushin_rectangle: return "grushin_rectangle";
        case Family::grushin_torus: return "grushin_torus";
        case Family::elliptic: return "elliptic";
    }
    return "?";
}

const char* to_string(Potential p) {
    return p == Potential::monomial ? "monomial" : "sine";
}

Family family_from_string(const std::string& s) {
    if (s == "grushin_rectangle") return Family::grushin_rectangle;
    if (s == "grushin_torus") return Family::grushin_torus;
    if (s == "elliptic") return Family::elliptic;
    throw InvalidArgument("unknown family: " + s);
}

Potential potential_from_string(const std::string& s) {
    if (s == "monomial") return Potential::monomial;
    if (s == "sine") return Potential::sine;
    throw InvalidArgument("unknown potential: " + s);
}

double OperatorSpec::x2_frequency(int n) const {
    if (family == Family::grushin_torus) return 2.0 * kPi * std::abs(n);
    return kPi * n;
}

double OperatorSpec::potential_at(double x) const {
    if (gamma == 0) return 1.0;
    double base = (potential == Potential::monomial)
                      ? std::abs(x)
                      : std::abs(std::sin(kPi * x / 2.0));
    return std::pow(base, 2.0 * gamma);
}

void OperatorSpec::validate() const {
    if (gamma < 0) throw InvalidArgument("gamma: must be >= 0");
    if (family == Family::elliptic && gamma != 0)
        throw InvalidArgument("gamma: elliptic family requires gamma = 0");
    if (grid_n < 129) throw InvalidArgument("grid_n: must be >= 129");
    int m = grid_n - 1;
    if ((m & (m - 1)) != 0)
        throw InvalidArgument("grid_n: must be a power of two plus one");
    if (fourier_max < 1) throw InvalidArgument("fourier_max: must be >= 1");
    if (branch_max < 1) throw InvalidArgument("branch_max: must be >= 1");
    if (lambda_cutoff < 0.0) throw InvalidArgument("lambda_cutoff: must be >= 0");
}

}  // namespace hypolab::spectral
