#pragma once

#include "hypolab/geometry/geodesic.hpp"

namespace hypolab::geom {

// Axis-aligned box.
struct Box {
    Vec lo;
    Vec hi;

    bool contains(const Vec& x) const;
    void validate(int dim) const;
};

struct DistanceResult {
    double d_est = 0.0;       // upper bound on d_L(x0, omega)
    GeodesicPath witness;     // truncated at the entry point
    int shots_used = 0;
    int shots_skipped = 0;    // directions with vanishing symbol
};

struct ShootOptions {
    double step = 1e-3;
    double entry_tol = 1e-8;  // bisection tolerance in s
    int threads = 1;
};

// Shoots normal geodesics (l = 1/4) from x0 over a deterministic covector
// grid on the unit-l level set, records the first entry into omega per
// shot, and returns the minimal entry time (= length, unit speed).  The
// estimate is non-increasing in `shots` because the direction sequence is
// prefix-stable.  Throws when no shot reaches omega within S_max.
DistanceResult distance_to_set(const SRSystem& sys, const Vec& x0,
                               const Box& omega, int shots, double S_max,
                               const ShootOptions& opts = {});

// sup over a uniform lattice of `grid` points per axis in `domain` of
// distance_to_set(x, omega).  Failures propagate with the offending x.
double min_observation_time(const SRSystem& sys, const Box& domain,
                            const Box& omega, int grid, int shots,
                            double S_max, const ShootOptions& opts = {});

}  // namespace hypolab::geom
