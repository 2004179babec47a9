#pragma once

#include <iosfwd>

#include "hypolab/geometry/sr_system.hpp"

namespace hypolab::geom {

// Sampled Hamiltonian trajectory (x(s), xi(s)) with its initial level
// l(rho_0).  Normal geodesics carry ell0 = 1/4 and unit speed.
struct GeodesicPath {
    Vec s;
    std::vector<CotangentState> states;
    double ell0 = 0.0;

    std::size_t size() const { return s.size(); }

    // max_j |l(state_j) - ell0|
    double hamiltonian_drift(const SRSystem& sys) const;
};

// RK4 integration of the Hamiltonian flow of l from st0 over [0, S].
GeodesicPath flow_geodesic(const SRSystem& sys, const CotangentState& st0,
                           double S, double step);

// Composite trapezoid of sqrt(g(x, dx/ds)) along the samples, dx/ds taken
// from the Hamiltonian form 2<xi,X_i>X_i.  Throws when g is infinite at a
// sample (path not horizontal).
double path_length(const SRSystem& sys, const GeodesicPath& path);

// CSV export: s, x..., xi..., ell.
void export_path_csv(const SRSystem& sys, const GeodesicPath& path,
                     std::ostream& os);

}  // namespace hypolab::geom
