#pragma once

#include <string>

#include "hypolab/common.hpp"

namespace hypolab::spectral {

enum class Family { grushin_rectangle, grushin_torus, elliptic };

// x1-potential entering the 1D reduced operators: |x|^{2 gamma} or its
// analytic-on-the-torus replacement sin(pi x/2)^{2 gamma}.
enum class Potential { monomial, sine };

const char* to_string(Family f);
const char* to_string(Potential p);
Family family_from_string(const std::string& s);
Potential potential_from_string(const std::string& s);

// Selects a hypoelliptic operator instance.  The rectangle family lives on
// [-1,1] x [0,1] with Dirichlet conditions (x2-modes sqrt(2) sin(n pi x2),
// n >= 1); the torus family keeps the Dirichlet x1 interval but is periodic
// in x2 (frequency 2 pi n; negative indices mirror positive ones as the
// sine partner of the cosine mode).
struct OperatorSpec {
    Family family = Family::grushin_rectangle;
    int gamma = 1;
    int grid_n = 1025;     // 1D grid points including endpoints, 2^m + 1
    int fourier_max = 40;  // max |n| of the x2-Fourier index
    int branch_max = 1;    // 1D branches kept per n
    Potential potential = Potential::monomial;
    double lambda_cutoff = 0.0;  // > 0: drop modes with lambda above this

    int hypoellipticity_index() const { return gamma + 1; }

    // x2 frequency mu_n for Fourier index n.
    double x2_frequency(int n) const;

    // Potential value at x1.
    double potential_at(double x) const;

    // Throws InvalidArgument naming the offending field.
    void validate() const;
};

}  // namespace hypolab::spectral
