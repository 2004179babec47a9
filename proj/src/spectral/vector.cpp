#include "hypolab/spectral/vector.hpp"

#include <cmath>
#include <string>

namespace hypolab::spectral {

SpectralVector::SpectralVector(const SpectralBasis& b, Vec c)
    : basis(&b), coeffs(std::move(c)) {
    if (coeffs.size() != b.modes.size())
        throw InvalidArgument("SpectralVector: coefficient count must match basis");
    if (!all_finite(coeffs))
        throw InvalidArgument("SpectralVector: non-finite coefficient");
}

SpectralVector SpectralVector::zero(const SpectralBasis& b) {
    return SpectralVector(b, Vec(b.modes.size(), 0.0));
}

SpectralVector SpectralVector::unit_mode(const SpectralBasis& b, std::size_t j,
                                         double amplitude) {
    Vec c(b.modes.size(), 0.0);
    c.at(j) = amplitude;
    return SpectralVector(b, std::move(c));
}

SpectralVector apply_calculus(const SpectralVector& u,
                              const std::function<double(double)>& f) {
    SpectralVector out = u;
    for (std::size_t j = 0; j < u.size(); ++j) {
        double fj = f(u.lambda(j));
        if (!std::isfinite(fj))
            throw Error("apply_calculus: f(lambda_" + std::to_string(j) +
                        ") is not finite");
        out.coeffs[j] *= fj;
    }
    return out;
}

double hsl_norm(const SpectralVector& u, double s) {
    double sum = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        sum += std::pow(1.0 + u.lambda(j), s) * sqr(u.coeffs[j]);
    return std::sqrt(sum);
}

double gevrey_norm(const SpectralVector& u, double alpha, double theta) {
    double lam_max = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        lam_max = std::max(lam_max, u.lambda(j));
    if (theta * std::pow(lam_max, alpha) > 700.0)
        throw Error("gevrey_norm: overflow guard, theta*lambda_max^alpha > 700 "
                    "(lambda_max = " +
                    std::to_string(lam_max) + ")");
    double sum = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        sum += std::exp(2.0 * theta * std::pow(u.lambda(j), alpha)) * sqr(u.coeffs[j]);
    return std::sqrt(sum);
}

double frequency_function(const SpectralVector& u, double sigma) {
    double l2 = hsl_norm(u, 0.0);
    if (l2 == 0.0) throw Error("frequency_function: zero vector");
    return hsl_norm(u, sigma) / l2;
}

JensenSides jensen_check(const SpectralVector& u,
                         const std::function<double(double)>& F,
                         const std::function<double(double)>& G) {
    double l2sq = 0.0, hf = 0.0, rhs = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        double c2 = sqr(u.coeffs[j]);
        double Fj = F(u.lambda(j));
        l2sq += c2;
        hf += Fj * c2;
        rhs += sqr(G(Fj)) * c2;
    }
    if (l2sq == 0.0) throw Error("jensen_check: zero vector");
    double lhs = G(hf / l2sq) * std::sqrt(l2sq);
    return {lhs, std::sqrt(rhs)};
}

}  // namespace hypolab::spectral
