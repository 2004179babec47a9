#include "hypolab/spectral/subelliptic.hpp"

#include <cmath>

#include "hypolab/rng.hpp"

namespace hypolab::spectral {

double subelliptic_ratio_for(const OperatorSpec& spec, const TorusField& u) {
    if (spec.family != Family::grushin_torus)
        throw InvalidArgument("subelliptic_ratio: torus family required");
    const int k = spec.hypoellipticity_index();
    const double mu2 = 2.0 * kPi * u.q;

    double l2 = 0.0, h1k = 0.0, x1n = 0.0;
    for (int p = -u.p_max; p <= u.p_max; ++p) {
        double a2 = std::norm(u.coeff(p));
        double xi2 = sqr(kPi * p) + sqr(mu2);
        l2 += a2;
        h1k += std::pow(1.0 + xi2, 1.0 / k) * a2;
        x1n += sqr(kPi * p) * a2;
    }

    // |X2 u|^2 on an x1 grid fine enough that the rectangle rule is exact
    // for the band-limited integrand.
    int m1 = 4 * (u.p_max + 2 * spec.gamma) + 8;
    double x2n = 0.0;
    for (int i = 0; i < m1; ++i) {
        double x = -1.0 + 2.0 * i / m1;
        std::complex<double> prof{0.0, 0.0};
        for (int p = -u.p_max; p <= u.p_max; ++p)
            prof += u.coeff(p) * std::polar(1.0, kPi * p * x);
        double s = std::sqrt(spec.potential_at(x));
        x2n += std::norm(prof * std::complex<double>(0.0, mu2) * s);
    }
    x2n *= 2.0 / m1;

    return 2.0 * h1k / (2.0 * x1n + x2n + 2.0 * l2);
}

Vec subelliptic_ratio(const OperatorSpec& spec, int trial_count,
                      std::uint64_t seed) {
    spec.validate();
    if (trial_count < 1)
        throw InvalidArgument("subelliptic_ratio: trial_count must be >= 1");
    const int q = spec.fourier_max;
    const double sig = std::max(2.0, std::sqrt(2.0 * kPi * q) / kPi);
    const int p_max = static_cast<int>(std::ceil(3.0 * sig)) + 2;
    const double jitter = 0.6 / std::sqrt(2.0 * kPi * q);

    Rng rng(seed);
    Vec out;
    out.reserve(trial_count);
    for (int t = 0; t < trial_count; ++t) {
        TorusField u;
        u.q = q;
        u.p_max = p_max;
        u.c.resize(2 * p_max + 1);
        double x0 = 0.08 * rng.normal();
        double wid = sig * std::exp(rng.uniform(-0.5, 0.5));
        for (int p = -p_max; p <= p_max; ++p) {
            std::complex<double> noise{jitter * rng.normal(), jitter * rng.normal()};
            std::complex<double> packet = std::polar(1.0, kPi * p * x0);
            u.coeff(p) = (packet + noise) * std::exp(-sqr(p) / (2.0 * sqr(wid)));
        }
        out.push_back(subelliptic_ratio_for(spec, u));
    }
    return out;
}

}  // namespace hypolab::spectral
