#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hypolab/common.hpp"

namespace hypolab::geom {

// One smooth vector field x -> X(x) in R^d with its analytically coded
// Jacobian, J[b][a] = d X_b / d x_a.
struct VectorField {
    std::function<Vec(const Vec&)> value;
    std::function<std::vector<Vec>(const Vec&)> jacobian;
};

struct CotangentState {
    Vec x;
    Vec xi;
};

// A sub-Riemannian frame: m fields on R^d.
struct SRSystem {
    int dim = 0;
    std::vector<VectorField> fields;
    std::string name;

    // l(x, xi) = sum_i <xi, X_i(x)>^2
    double hamiltonian(const CotangentState& st) const;

    // Hamiltonian vector field of l: (dx/ds, dxi/ds).
    void flow_rhs(const CotangentState& st, Vec& dx, Vec& dxi) const;

    // Frame Gram matrix Q(x) = sum_i X_i X_i^T (so l = xi^T Q xi).
    std::vector<Vec> frame_gram(const Vec& x) const;

    // Max |analytic - finite difference| Jacobian mismatch at x.
    double jacobian_mismatch(const Vec& x, double h = 1e-6) const;
};

// Catalog entries.
SRSystem grushin_system(int gamma);   // d=2: X1 = d1, X2 = x1^gamma d2
SRSystem heisenberg_system();         // d=3 on the universal cover R^3:
                                      // X1 = dx + 2y ds, X2 = dy - 2x ds.
                                      // The compact quotient by the lattice
                                      // L Z x L Z x L^2 Z is documented; all
                                      // distance queries stay in one
                                      // fundamental box.
SRSystem elliptic_system();           // d=2: X1 = d1, X2 = d2

// g(x, v) = min { sum u_i^2 : sum u_i X_i(x) = v }, +infinity when v is
// outside span{X_i(x)} (residual test).  Returns the optimal controls via
// sr_metric_controls; the returned u is orthogonal to ker of the frame.
double sr_metric(const SRSystem& sys, const Vec& x, const Vec& v);
std::pair<double, Vec> sr_metric_controls(const SRSystem& sys, const Vec& x,
                                          const Vec& v);

}  // namespace hypolab::geom
