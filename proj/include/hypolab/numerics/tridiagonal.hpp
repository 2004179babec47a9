#pragma once

#include <utility>
#include <vector>

#include "hypolab/common.hpp"

namespace hypolab::num {

// Symmetric tridiagonal matrix: diag has length N, offdiag length N-1.
struct TridiagonalSymmetric {
    Vec diag;
    Vec offdiag;

    std::size_t size() const { return diag.size(); }
    void validate() const;

    // y = M x
    Vec apply(const Vec& x) const;

    // An absolute scale of the matrix, max_i (|d_i| + |e_{i-1}| + |e_i|).
    double scale() const;
};

struct EigenPair {
    double value;
    Vec vector;  // unit Euclidean norm
};

struct EigenOptions {
    // Residual acceptance: ||Mv - lambda v|| <= residual_tol*(1+|lambda|)
    // plus a floor of residual_scale_ulps * eps * scale(M), the attainable
    // level in double precision for ill-scaled discretizations.
    double residual_tol = 1e-10;
    double residual_scale_ulps = 64.0;
    int max_ql_iterations = 50;       // per eigenvalue, QL path
    int min_inverse_iterations = 5;   // tail-scrubbing sweeps
    int max_inverse_iterations = 16;  // per eigenvector
};

// Number of eigenvalues of m strictly below x (Sturm / LDL^T sign count).
int sturm_count(const TridiagonalSymmetric& m, double x);

// Lowest `count` eigenvalues by bisection on the Sturm count; ascending.
Vec eigenvalues_bisection(const TridiagonalSymmetric& m, int count);

// All eigenvalues by the implicit-shift QL iteration; ascending.
// Throws EigenFailure with the offending index on non-convergence.
Vec eigenvalues_ql(const TridiagonalSymmetric& m, int max_iter = 50);

// Lowest `count` eigenpairs.  Eigenvalues from bisection when count is a
// small fraction of N, otherwise from the QL sweep (bisection fallback on
// QL failure); eigenvectors by inverse iteration with cluster
// re-orthogonalization, eigenvalues refined by Rayleigh quotients.
std::vector<EigenPair> eigen_tridiag(const TridiagonalSymmetric& m, int count,
                                     const EigenOptions& opts = {});

}  // namespace hypolab::num
