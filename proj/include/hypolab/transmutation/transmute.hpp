#pragma once

#include "hypolab/evolution/evolve.hpp"
#include "hypolab/numerics/quadrature.hpp"

namespace hypolab::trans {

using evo::WaveState;
using spectral::SpectralVector;

struct TransmuteParams {
    double T = 1.0;    // heat window
    double S = 0.5;    // wave window
    double alpha = 1.0;

    void validate() const;  // requires alpha > 2 S^2

    // Default choice alpha = 2.5 S^2 for a given wave window.
    static TransmuteParams for_wave_window(double T, double S);
};

// I(T, lambda) = int_0^T e^{-alpha(1/t + 1/(T-t))} e^{-lambda t} dt by
// adaptive quadrature in the log variables; positive and strictly
// decreasing in lambda.
double I_of_lambda(const TransmuteParams& p, double lambda,
                   double tol_rel = 1e-12);

// Laplace approximation sqrt(pi) alpha^{1/4} lambda^{-3/4}
// e^{-alpha/T} e^{-2 sqrt(alpha lambda)}.
struct Asymptotic {
    double value;       // exp(log_value), exact zero when underflowed
    double log_value;
    bool underflowed;   // log_value < -700
};
Asymptotic I_asymptotic_detail(const TransmuteParams& p, double lambda);
double I_asymptotic(const TransmuteParams& p, double lambda);

// Wave state (0, I(T,L) y0): the transmuted solution's initial data.
// Per-mode quadrature failures carry the mode index.
WaveState transmute(const TransmuteParams& p, const SpectralVector& y0,
                    int threads = 1);

// lower <= ||I(T,L) y0||_{H^s_L} <= upper with
// base = ||(L+1)^{(s-3/2)/2} e^{-2 sqrt(alpha L)} y0|| and the sandwich
// constants measured on the modes present in y0.
struct NormSandwich {
    double lower;
    double mid;
    double upper;
};
NormSandwich norm_equivalence_check(const TransmuteParams& p,
                                    const SpectralVector& y0, double s);

// lambda sweep rows for CSV export: lambda, I_num, I_asym, ratio.
struct SweepRow {
    double lambda;
    double i_num;
    double i_asym;
    double ratio;
};
std::vector<SweepRow> lambda_sweep(const TransmuteParams& p, const Vec& lambdas,
                                   double tol_rel = 1e-12);

}  // namespace hypolab::trans
