#pragma once

#include <map>
#include <string>

#include "hypolab/evolution/restricted.hpp"
#include "hypolab/spectral/operator_spec.hpp"
#include "hypolab/transmutation/transmute.hpp"

namespace hypolab::io {

struct ConfigError : Error {
    int line;
    ConfigError(const std::string& msg, int l)
        : Error("config line " + std::to_string(l) + ": " + msg), line(l) {}
};

enum class ExperimentKind {
    spectrum,
    tunneling,
    geodesics,
    transmute,
    lowfreq_cost,
    parabolic,
    gevrey,
    frequency_cost,
    subelliptic,
    accept_all,
};

ExperimentKind experiment_from_string(const std::string& s);
const char* to_string(ExperimentKind k);

struct Tolerances {
    double eigen_residual = 1e-10;
    double ode_step = 1e-3;
    double quad_tol = 1e-10;
};

struct ExperimentConfig {
    spectral::OperatorSpec operator_spec;
    evo::ObservationRegion region;
    trans::TransmuteParams transmute{1.0, 0.5, 1.0};
    ExperimentKind experiment = ExperimentKind::spectrum;
    std::string output_dir = "out";
    std::uint64_t seed = 1;
    int threads = 1;
    Tolerances tolerances;

    // Experiment-specific knobs (all optional in the file).
    Vec lambda_grid{75.0, 150.0, 225.0, 300.0};   // lowfreq_cost
    Vec T_list{1.0, 2.0, 4.0};                    // parabolic
    double eta = 0.02;                            // parabolic window
    Vec theta_list;                               // gevrey (empty: from c0)
    Vec sweep_lambdas{1e2, 1e3, 1e4, 1e5};        // transmute sweep
    std::vector<int> bands{4, 8, 16, 32, 64};     // subelliptic
    int trials = 200;                             // subelliptic / freq cost
    std::string geodesic_system = "grushin";      // grushin|heisenberg|elliptic
    Vec geodesic_x0{0.0, 0.0};                    // geodesics
    Vec geodesic_xi0{0.3, 0.4};
    double geodesic_S = 3.0;

    // Module invariants revalidated here; throws ConfigError with the line
    // of the offending key when available.
    void validate() const;
};

// Flat key = value sections ([operator], [region], [transmute],
// [experiment], [tolerances], [geodesic]).  '#' starts a comment.  Unknown
// keys and malformed lines raise ConfigError with the line number.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace hypolab::io
