#include "hypolab/evolution/evolve.hpp"

#include <cmath>

namespace hypolab::evo {

void WaveState::validate() const {
    if (u.basis != ut.basis)
        throw InvalidArgument("WaveState: components must share a basis");
    if (u.size() != ut.size())
        throw InvalidArgument("WaveState: component length mismatch");
}

SpectralVector heat_evolve(const SpectralVector& u0, double t) {
    if (t < 0.0) throw InvalidArgument("heat_evolve: t must be >= 0");
    SpectralVector out = u0;
    for (std::size_t j = 0; j < out.size(); ++j)
        out.coeffs[j] *= std::exp(-u0.lambda(j) * t);
    return out;
}

WaveState wave_evolve(const WaveState& w0, double t) {
    w0.validate();
    WaveState out = w0;
    for (std::size_t j = 0; j < w0.u.size(); ++j) {
        double lam = w0.u.lambda(j);
        double a = w0.u.coeffs[j];
        double b = w0.ut.coeffs[j];
        if (lam <= 0.0) {
            out.u.coeffs[j] = a + t * b;
            out.ut.coeffs[j] = b;
            continue;
        }
        double om = std::sqrt(lam);
        double c = std::cos(om * t), s = std::sin(om * t);
        out.u.coeffs[j] = c * a + s / om * b;
        out.ut.coeffs[j] = -om * s * a + c * b;
    }
    return out;
}

double wave_energy(const WaveState& w, double s) {
    w.validate();
    double e = 0.0;
    for (std::size_t j = 0; j < w.u.size(); ++j) {
        double lam = w.u.lambda(j);
        if (lam <= 0.0) {
            // lambda = 0: only the s = 1 energy ||ut||^2 is meaningful here.
            e += sqr(w.ut.coeffs[j]);
            continue;
        }
        e += std::pow(lam, s) * sqr(w.u.coeffs[j]) +
             std::pow(lam, s - 1.0) * sqr(w.ut.coeffs[j]);
    }
    return e;
}

}  // namespace hypolab::evo
