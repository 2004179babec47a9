#pragma once

#include <functional>

#include "hypolab/spectral/basis.hpp"

namespace hypolab::spectral {

// A function represented by real coefficients in a SpectralBasis.  The
// basis must outlive the vector.
struct SpectralVector {
    const SpectralBasis* basis = nullptr;
    Vec coeffs;

    SpectralVector() = default;
    SpectralVector(const SpectralBasis& b, Vec c);

    std::size_t size() const { return coeffs.size(); }
    double lambda(std::size_t j) const { return basis->modes[j].lambda; }

    static SpectralVector zero(const SpectralBasis& b);
    static SpectralVector unit_mode(const SpectralBasis& b, std::size_t j,
                                    double amplitude = 1.0);
};

// coeffs_j <- f(lambda_j) * coeffs_j.  Throws naming j when f(lambda_j) is
// not finite.
SpectralVector apply_calculus(const SpectralVector& u,
                              const std::function<double(double)>& f);

// sqrt(sum (1+lambda_j)^s |u_j|^2)
double hsl_norm(const SpectralVector& u, double s);

// sqrt(sum e^{2 theta lambda_j^alpha} |u_j|^2); guards theta*lambda_max^alpha <= 700.
double gevrey_norm(const SpectralVector& u, double alpha, double theta);

// Lambda_sigma(u) = hsl_norm(u, sigma) / hsl_norm(u, 0); u must be nonzero.
double frequency_function(const SpectralVector& u, double sigma);

// Both sides of the Jensen norm inequality
//   G(||u||_{H^F}^2 / ||u||^2) ||u|| <= ||G(F(L)) u||,
// where ||u||_{H^F}^2 = sum F(lambda_j) |u_j|^2 and G^2 is convex.
struct JensenSides {
    double lhs;
    double rhs;
};
JensenSides jensen_check(const SpectralVector& u,
                         const std::function<double(double)>& F,
                         const std::function<double(double)>& G);

}  // namespace hypolab::spectral
