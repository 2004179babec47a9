#include "hypolab/io/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hypolab::io {

ExperimentKind experiment_from_string(const std::string& s) {
    static const std::map<std::string, ExperimentKind> table{
        {"spectrum", ExperimentKind::spectrum},
        {"tunneling", ExperimentKind::tunneling},
        {"geodesics", ExperimentKind::geodesics},
        {"transmute", ExperimentKind::transmute},
        {"lowfreq_cost", ExperimentKind::lowfreq_cost},
        {"parabolic", ExperimentKind::parabolic},
        {"gevrey", ExperimentKind::gevrey},
        {"frequency_cost", ExperimentKind::frequency_cost},
        {"subelliptic", ExperimentKind::subelliptic},
        {"accept_all", ExperimentKind::accept_all},
    };
    auto it = table.find(s);
    if (it == table.end()) throw InvalidArgument("unknown experiment: " + s);
    return it->second;
}

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::spectrum: return "spectrum";
        case ExperimentKind::tunneling: return "tunneling";
        case ExperimentKind::geodesics: return "geodesics";
        case ExperimentKind::transmute: return "transmute";
        case ExperimentKind::lowfreq_cost: return "lowfreq_cost";
        case ExperimentKind::parabolic: return "parabolic";
        case ExperimentKind::gevrey: return "gevrey";
        case ExperimentKind::frequency_cost: return "frequency_cost";
        case ExperimentKind::subelliptic: return "subelliptic";
        case ExperimentKind::accept_all: return "accept_all";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    operator_spec.validate();
    region.validate();
    transmute.validate();
    if (threads < 1) throw InvalidArgument("threads: must be >= 1");
    if (trials < 1) throw InvalidArgument("trials: must be >= 1");
    if (!(tolerances.eigen_residual > 0.0))
        throw InvalidArgument("eigen_residual: must be > 0");
    if (!(tolerances.ode_step > 0.0)) throw InvalidArgument("ode_step: must be > 0");
    if (!(tolerances.quad_tol > 0.0)) throw InvalidArgument("quad_tol: must be > 0");
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'", line);
    }
}

int parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        int d = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + v + "'", line);
    }
}

Vec parse_list(const std::string& v, int line) {
    Vec out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item, line));
    }
    if (out.empty()) throw ConfigError("expected a comma list, got '" + v + "'", line);
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw);
        auto hash = s.find('#');
        if (hash != std::string::npos) s = trim(s.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("unterminated section header", line);
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line);
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("empty key or value", line);

        try {
            if (section == "operator") {
                if (key == "family")
                    cfg.operator_spec.family = spectral::family_from_string(val);
                else if (key == "gamma")
                    cfg.operator_spec.gamma = parse_int(val, line);
                else if (key == "grid_n")
                    cfg.operator_spec.grid_n = parse_int(val, line);
                else if (key == "fourier_max")
                    cfg.operator_spec.fourier_max = parse_int(val, line);
                else if (key == "branch_max")
                    cfg.operator_spec.branch_max = parse_int(val, line);
                else if (key == "potential")
                    cfg.operator_spec.potential = spectral::potential_from_string(val);
                else if (key == "lambda_cutoff")
                    cfg.operator_spec.lambda_cutoff = parse_double(val, line);
                else
                    throw ConfigError("unknown operator key '" + key + "'", line);
            } else if (section == "region") {
                if (key == "x1_min") cfg.region.x1_range.first = parse_double(val, line);
                else if (key == "x1_max") cfg.region.x1_range.second = parse_double(val, line);
                else if (key == "x2_min") cfg.region.x2_range.first = parse_double(val, line);
                else if (key == "x2_max") cfg.region.x2_range.second = parse_double(val, line);
                else if (key == "t_min") cfg.region.t_range.first = parse_double(val, line);
                else if (key == "t_max") cfg.region.t_range.second = parse_double(val, line);
                else throw ConfigError("unknown region key '" + key + "'", line);
            } else if (section == "transmute") {
                if (key == "T") cfg.transmute.T = parse_double(val, line);
                else if (key == "S") cfg.transmute.S = parse_double(val, line);
                else if (key == "alpha") cfg.transmute.alpha = parse_double(val, line);
                else if (key == "sweep_lambdas") cfg.sweep_lambdas = parse_list(val, line);
                else throw ConfigError("unknown transmute key '" + key + "'", line);
            } else if (section == "experiment") {
                if (key == "kind") cfg.experiment = experiment_from_string(val);
                else if (key == "output_dir") cfg.output_dir = val;
                else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(
                             std::stoull(val));
                else if (key == "threads") cfg.threads = parse_int(val, line);
                else if (key == "lambda_grid") cfg.lambda_grid = parse_list(val, line);
                else if (key == "T_list") cfg.T_list = parse_list(val, line);
                else if (key == "eta") cfg.eta = parse_double(val, line);
                else if (key == "theta_list") cfg.theta_list = parse_list(val, line);
                else if (key == "trials") cfg.trials = parse_int(val, line);
                else if (key == "bands") {
                    cfg.bands.clear();
                    for (double b : parse_list(val, line))
                        cfg.bands.push_back(static_cast<int>(b));
                } else
                    throw ConfigError("unknown experiment key '" + key + "'", line);
            } else if (section == "tolerances") {
                if (key == "eigen_residual")
                    cfg.tolerances.eigen_residual = parse_double(val, line);
                else if (key == "ode_step") cfg.tolerances.ode_step = parse_double(val, line);
                else if (key == "quad_tol") cfg.tolerances.quad_tol = parse_double(val, line);
                else throw ConfigError("unknown tolerances key '" + key + "'", line);
            } else if (section == "geodesic") {
                if (key == "system") {
                    if (val != "grushin" && val != "heisenberg" && val != "elliptic")
                        throw ConfigError("unknown geodesic system '" + val + "'", line);
                    cfg.geodesic_system = val;
                } else if (key == "x0") cfg.geodesic_x0 = parse_list(val, line);
                else if (key == "xi0") cfg.geodesic_xi0 = parse_list(val, line);
                else if (key == "S") cfg.geodesic_S = parse_double(val, line);
                else throw ConfigError("unknown geodesic key '" + key + "'", line);
            } else if (section.empty()) {
                throw ConfigError("key outside any [section]", line);
            } else {
                throw ConfigError("unknown section '" + section + "'", line);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError(e.what(), line);
        } catch (const std::exception& e) {
            throw ConfigError(e.what(), line);
        }
    }
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("validation: ") + e.what(), line);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open config: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

}  // namespace hypolab::io
