#pragma once

#include <vector>

#include "hypolab/common.hpp"

namespace hypolab::num {

// Dense symmetric matrix, row-major storage.
struct SymMatrix {
    std::size_t n = 0;
    Vec a;  // n*n

    SymMatrix() = default;
    explicit SymMatrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    // Max |A_ij - A_ji| over the strict upper triangle.
    double asymmetry() const;
};

// Cyclic Jacobi eigendecomposition.  Returns eigenvalues ascending; if
// vectors != nullptr it receives the eigenvectors as rows, matched order.
Vec jacobi_eigen(SymMatrix m, std::vector<Vec>* vectors = nullptr,
                 int max_sweeps = 64);

inline double min_eigenvalue(const SymMatrix& m) {
    return jacobi_eigen(m).front();
}

}  // namespace hypolab::num
