#include "hypolab/transmutation/transmute.hpp"

#include <cmath>
#include <string>

#include "hypolab/parallel.hpp"

namespace hypolab::trans {

void TransmuteParams::validate() const {
    if (!(T > 0.0)) throw InvalidArgument("TransmuteParams: T must be > 0");
    if (!(S > 0.0)) throw InvalidArgument("TransmuteParams: S must be > 0");
    if (!(alpha > 2.0 * S * S))
        throw InvalidArgument("TransmuteParams: alpha must exceed 2 S^2");
}

TransmuteParams TransmuteParams::for_wave_window(double T, double S) {
    TransmuteParams p;
    p.T = T;
    p.S = S;
    p.alpha = 2.5 * S * S;
    p.validate();
    return p;
}

double I_of_lambda(const TransmuteParams& p, double lambda, double tol_rel) {
    p.validate();
    if (lambda < 0.0) throw InvalidArgument("I_of_lambda: lambda must be >= 0");
    const double a = p.alpha, T = p.T;
    auto f = [a, T, lambda](double t) {
        if (t <= 0.0 || t >= T) return 0.0;
        double expo = -a * (1.0 / t + 1.0 / (T - t)) - lambda * t;
        return (expo < -745.0) ? 0.0 : std::exp(expo);
    };
    num::QuadOptions o;
    o.tol_abs = 0.0;
    o.tol_rel = tol_rel;
    return num::quad_endpoint_decay(f, T, a, o).value;
}

Asymptotic I_asymptotic_detail(const TransmuteParams& p, double lambda) {
    p.validate();
    if (lambda < 1.0) throw InvalidArgument("I_asymptotic: lambda must be >= 1");
    double lg = 0.5 * std::log(kPi) + 0.25 * std::log(p.alpha) -
                0.75 * std::log(lambda) - p.alpha / p.T -
                2.0 * std::sqrt(p.alpha * lambda);
    bool uf = lg < -700.0;
    return Asymptotic{uf ? 0.0 : std::exp(lg), lg, uf};
}

double I_asymptotic(const TransmuteParams& p, double lambda) {
    return I_asymptotic_detail(p, lambda).value;
}

WaveState transmute(const TransmuteParams& p, const SpectralVector& y0,
                    int threads) {
    p.validate();
    WaveState w{SpectralVector::zero(*y0.basis), SpectralVector::zero(*y0.basis)};
    std::vector<std::exception_ptr> errors(y0.size());
    parallel_for(y0.size(), threads, [&](std::size_t j) {
        try {
            if (y0.coeffs[j] == 0.0) return;
            w.ut.coeffs[j] = I_of_lambda(p, y0.lambda(j)) * y0.coeffs[j];
        } catch (const QuadratureFailure& e) {
            errors[j] = std::make_exception_ptr(QuadratureFailure(
                "transmute: mode " + std::to_string(j) + ": " + e.what(),
                e.best_estimate, e.error_estimate));
        } catch (...) {
            errors[j] = std::current_exception();
        }
    });
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return w;
}

NormSandwich norm_equivalence_check(const TransmuteParams& p,
                                    const SpectralVector& y0, double s) {
    p.validate();
    bool any = false;
    double mid2 = 0.0, base2 = 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t j = 0; j < y0.size(); ++j) {
        if (y0.coeffs[j] == 0.0) continue;
        any = true;
        double lam = y0.lambda(j);
        double c2 = sqr(y0.coeffs[j]);
        double I = I_of_lambda(p, lam);
        mid2 += std::pow(1.0 + lam, s) * sqr(I) * c2;
        // log of the comparison weight q = e^{-2 sqrt(alpha lam)} (1+lam)^{-3/4}
        double logq = -2.0 * std::sqrt(p.alpha * lam) - 0.75 * std::log1p(lam);
        base2 += std::pow(1.0 + lam, s) * std::exp(2.0 * logq) * c2;
        double r = (I > 0.0) ? I / std::exp(logq) : 0.0;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    if (!any) throw Error("norm_equivalence_check: zero vector");
    double base = std::sqrt(base2);
    return NormSandwich{lo * base, std::sqrt(mid2), hi * base};
}

std::vector<SweepRow> lambda_sweep(const TransmuteParams& p, const Vec& lambdas,
                                   double tol_rel) {
    std::vector<SweepRow> rows;
    rows.reserve(lambdas.size());
    for (double lam : lambdas) {
        SweepRow r;
        r.lambda = lam;
        r.i_num = I_of_lambda(p, lam, tol_rel);
        r.i_asym = I_asymptotic(p, lam);
        r.ratio = (r.i_asym > 0.0) ? r.i_num / r.i_asym : 0.0;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace hypolab::trans
