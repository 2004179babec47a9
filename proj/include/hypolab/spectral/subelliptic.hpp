#pragma once

#include <complex>

#include "hypolab/spectral/operator_spec.hpp"

namespace hypolab::spectral {

// Band-limited field on the torus (R/2Z) x (R/Z): a single x2 frequency
// q >= 0 with an x1 trigonometric profile sum_p c_p e^{i pi p x1}.
struct TorusField {
    int q = 0;
    int p_max = 0;                          // coefficients for p in [-p_max, p_max]
    std::vector<std::complex<double>> c;    // length 2*p_max+1

    std::complex<double>& coeff(int p) { return c[p + p_max]; }
    std::complex<double> coeff(int p) const { return c[p + p_max]; }
};

// Ratio ||u||_{H^{1/k}}^2 / (sum_i ||X_i u||^2 + ||u||^2) for the Grushin
// torus fields X1 = d/dx1, X2 = pot(x1)^{1/2} d/dx2 with pot from the spec
// (k = gamma+1).  Sobolev and X1 norms are exact flat-Fourier sums; the X2
// norm is a rectangle-rule integral of the pointwise field application,
// exact for band-limited integrands.
double subelliptic_ratio_for(const OperatorSpec& spec, const TorusField& u);

// Ratios for trial_count random band-limited fields at x2 frequency
// q = spec.fourier_max.  Trials mix coherent packets concentrated near the
// degeneracy line (the extremal regime) with band-scaled rough noise.
Vec subelliptic_ratio(const OperatorSpec& spec, int trial_count,
                      std::uint64_t seed = 1);

}  // namespace hypolab::spectral
