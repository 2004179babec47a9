#pragma once

#include <iosfwd>
#include <vector>

#include "hypolab/numerics/tridiagonal.hpp"
#include "hypolab/spectral/operator_spec.hpp"

namespace hypolab::spectral {

// One eigenmode lambda, phi = x2factor(n) * v(x1).  The profile is sampled
// on the full x1 grid (boundary zeros included) and L2-normalized with
// trapezoid weights on [-1,1].
struct Mode {
    int fourier_n = 0;
    int branch = 1;          // 1-based index of the 1D eigenvalue branch
    double lambda = 0.0;     // Richardson-extrapolated
    double lambda_grid = 0.0;  // fine-grid eigenvalue (residual checks)
    Vec profile;
};

struct SpectralBasis {
    OperatorSpec spec;
    std::vector<Mode> modes;  // sorted by (lambda, |n|, branch)
    // When lambda_cutoff > 0: true iff the computed branch/fourier ranges
    // provably cover every mode below the cutoff (E_lambda completeness).
    bool cutoff_complete = true;

    std::size_t size() const { return modes.size(); }

    // Uniform x1 grid the profiles live on.
    Vec x1_grid() const;
    double x1_step() const { return 2.0 / (spec.grid_n - 1); }

    // Value of mode j's x2 factor at x2.
    double x2_factor(std::size_t j, double x2) const;

    // Integral over [c,d] of the x2 factors of modes i and j (exact).
    double x2_pair_integral(std::size_t i, std::size_t j, double c, double d) const;

    // Integral over [a,b] (intersected with [-1,1]) of profile_i * profile_j
    // by trapezoid on the grid with linear partial end cells.
    double x1_pair_integral(std::size_t i, std::size_t j, double a, double b) const;

    // Indices of modes with lambda <= lam, in basis order (the space E_lam).
    std::vector<std::size_t> modes_below(double lam) const;

    // True when every mode with lambda <= lam that the spec's ranges could
    // produce is present (branch_max / fourier_max large enough).
    bool complete_below(double lam) const;
};

struct BuildOptions {
    int threads = 1;
    num::EigenOptions eigen;
};

// Builds the eigenbasis: for each Fourier index and branch, solves the
// reduced 1D Dirichlet problem on the fine grid and on the half grid, and
// Richardson-extrapolates the eigenvalue.  Eigensolver failures propagate
// with (n, branch) context.
SpectralBasis build_basis(const OperatorSpec& spec, const BuildOptions& opts = {});

// Line-oriented text export/import; '%.17g' round-trip stable.
void export_basis(const SpectralBasis& basis, std::ostream& os);
SpectralBasis import_basis(std::istream& is);
void save_basis(const SpectralBasis& basis, const std::string& path);
SpectralBasis load_basis(const std::string& path);

}  // namespace hypolab::spectral
