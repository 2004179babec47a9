#pragma once

#include "hypolab/spectral/vector.hpp"

namespace hypolab::evo {

using spectral::SpectralBasis;
using spectral::SpectralVector;

// (u, du/dt) on a shared basis.
struct WaveState {
    SpectralVector u;
    SpectralVector ut;

    void validate() const;
};

// coeffs_j <- e^{-lambda_j t} coeffs_j, t >= 0.
SpectralVector heat_evolve(const SpectralVector& u0, double t);

// Per mode (omega = sqrt(lambda)):
//   u(t)  =  cos(omega t) u0 + sin(omega t)/omega ut0
//   ut(t) = -omega sin(omega t) u0 + cos(omega t) ut0
// with the lambda = 0 branch u0 + t ut0.  Reversible for any real t.
WaveState wave_evolve(const WaveState& w0, double t);

// sum_j lambda_j^s |u_j|^2 + lambda_j^{s-1} |ut_j|^2, conserved mode-wise
// by the propagator above.
double wave_energy(const WaveState& w, double s);

}  // namespace hypolab::evo
