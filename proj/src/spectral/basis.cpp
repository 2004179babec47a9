#include "hypolab/spectral/basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hypolab/parallel.hpp"

namespace hypolab::spectral {

namespace {

num::TridiagonalSymmetric reduced_operator(const OperatorSpec& spec, int n,
                                           int grid_n) {
    int interior = grid_n - 2;
    double h = 2.0 / (grid_n - 1);
    double mu = spec.x2_frequency(n);
    num::TridiagonalSymmetric m;
    m.diag.resize(interior);
    m.offdiag.assign(interior - 1, -1.0 / (h * h));
    for (int i = 0; i < interior; ++i) {
        double x = -1.0 + h * (i + 1);
        m.diag[i] = 2.0 / (h * h) + mu * mu * spec.potential_at(x);
    }
    return m;
}

// sin/cos pair descriptor of a mode's x2 factor: amp * trig(mu * x2).
struct X2Factor {
    double amp;
    double mu;
    bool is_sin;
};

X2Factor x2_descriptor(const OperatorSpec& spec, int n) {
    if (spec.family == Family::grushin_torus) {
        if (n == 0) return {1.0, 0.0, false};
        double mu = 2.0 * kPi * std::abs(n);
        return {std::sqrt(2.0), mu, n < 0};
    }
    return {std::sqrt(2.0), kPi * n, true};
}

double int_cos(double mu, double c, double d) {
    if (std::abs(mu) * std::max(std::abs(c), std::abs(d)) < 1e-8)
        return (d - c) * (1.0 - mu * mu * (d * d + c * d + c * c) / 6.0);
    return (std::sin(mu * d) - std::sin(mu * c)) / mu;
}

double int_sin(double mu, double c, double d) {
    if (std::abs(mu) * std::max(std::abs(c), std::abs(d)) < 1e-8)
        return mu * (d * d - c * c) / 2.0;
    return (std::cos(mu * c) - std::cos(mu * d)) / mu;
}

}  // namespace

Vec SpectralBasis::x1_grid() const {
    Vec x(spec.grid_n);
    double h = x1_step();
    for (int i = 0; i < spec.grid_n; ++i) x[i] = -1.0 + h * i;
    return x;
}

double SpectralBasis::x2_factor(std::size_t j, double x2) const {
    X2Factor f = x2_descriptor(spec, modes[j].fourier_n);
    return f.amp * (f.is_sin ? std::sin(f.mu * x2) : std::cos(f.mu * x2));
}

double SpectralBasis::x2_pair_integral(std::size_t i, std::size_t j, double c,
                                       double d) const {
    X2Factor a = x2_descriptor(spec, modes[i].fourier_n);
    X2Factor b = x2_descriptor(spec, modes[j].fourier_n);
    if (c <= 0.0 && d >= 1.0) {
        // Full x2 period: exact orthonormality of the factors.
        return (a.mu == b.mu && a.is_sin == b.is_sin) ? 1.0 : 0.0;
    }
    double amp = 0.5 * a.amp * b.amp;
    double dm = a.mu - b.mu, dp = a.mu + b.mu;
    if (a.is_sin && b.is_sin)
        return amp * (int_cos(dm, c, d) - int_cos(dp, c, d));
    if (!a.is_sin && !b.is_sin)
        return amp * (int_cos(dm, c, d) + int_cos(dp, c, d));
    // one sine, one cosine: sin(x)cos(y) = (sin(x-y) + sin(x+y))/2
    if (a.is_sin) return amp * (int_sin(dm, c, d) + int_sin(dp, c, d));
    return amp * (int_sin(-dm, c, d) + int_sin(dp, c, d));
}

double SpectralBasis::x1_pair_integral(std::size_t i, std::size_t j, double a,
                                       double b) const {
    a = std::max(a, -1.0);
    b = std::min(b, 1.0);
    if (!(a < b)) return 0.0;
    const Vec& vi = modes[i].profile;
    const Vec& vj = modes[j].profile;
    const double h = x1_step();
    auto value_at = [&](double x) {
        double t = (x + 1.0) / h;
        int idx = std::clamp(static_cast<int>(std::floor(t)), 0, spec.grid_n - 2);
        double w = t - idx;
        double pi_ = vi[idx] * (1.0 - w) + vi[idx + 1] * w;
        double pj_ = vj[idx] * (1.0 - w) + vj[idx + 1] * w;
        return pi_ * pj_;
    };
    int ia = static_cast<int>(std::ceil((a + 1.0) / h - 1e-12));
    int ib = static_cast<int>(std::floor((b + 1.0) / h + 1e-12));
    ia = std::clamp(ia, 0, spec.grid_n - 1);
    ib = std::clamp(ib, 0, spec.grid_n - 1);
    double xa = -1.0 + ia * h, xb = -1.0 + ib * h;
    if (ia > ib) return (b - a) * 0.5 * (value_at(a) + value_at(b));
    double total = 0.0;
    if (a < xa) total += (xa - a) * 0.5 * (value_at(a) + vi[ia] * vj[ia]);
    if (xb < b) total += (b - xb) * 0.5 * (vi[ib] * vj[ib] + value_at(b));
    if (ib > ia) {
        double core = 0.5 * (vi[ia] * vj[ia] + vi[ib] * vj[ib]);
        for (int k = ia + 1; k < ib; ++k) core += vi[k] * vj[k];
        total += h * core;
    }
    return total;
}

std::vector<std::size_t> SpectralBasis::modes_below(double lam) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < modes.size(); ++j)
        if (modes[j].lambda <= lam) out.push_back(j);
    return out;
}

bool SpectralBasis::complete_below(double lam) const {
    // Per |n| group: if any branch is below lam, the last kept branch must
    // exceed lam.  And the first branch of the top |n| group must exceed lam.
    int top_n = 0;
    double top_min = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, std::pair<double, double>>> groups;  // |n| -> (min,max)
    for (const auto& m : modes) {
        int an = std::abs(m.fourier_n);
        top_n = std::max(top_n, an);
        bool found = false;
        for (auto& g : groups)
            if (g.first == an) {
                g.second.first = std::min(g.second.first, m.lambda);
                g.second.second = std::max(g.second.second, m.lambda);
                found = true;
            }
        if (!found) groups.push_back({an, {m.lambda, m.lambda}});
    }
    for (const auto& g : groups) {
        if (g.second.first <= lam && g.second.second <= lam) return false;
        if (g.first == top_n) top_min = g.second.first;
    }
    return top_min > lam;
}

SpectralBasis build_basis(const OperatorSpec& spec, const BuildOptions& opts) {
    spec.validate();
    SpectralBasis basis;
    basis.spec = spec;

    std::vector<int> ns;
    int n_lo = (spec.family == Family::grushin_torus) ? 0 : 1;
    for (int n = n_lo; n <= spec.fourier_max; ++n) ns.push_back(n);

    const int coarse_n = (spec.grid_n - 1) / 2 + 1;
    std::vector<std::vector<Mode>> per_n(ns.size());
    std::vector<std::exception_ptr> errors(ns.size());

    parallel_for(ns.size(), opts.threads, [&](std::size_t idx) {
        try {
            int n = ns[idx];
            auto fine = reduced_operator(spec, n, spec.grid_n);
            auto coarse = reduced_operator(spec, n, coarse_n);
            std::vector<num::EigenPair> pairs;
            Vec coarse_vals;
            try {
                pairs = num::eigen_tridiag(fine, spec.branch_max, opts.eigen);
                coarse_vals = num::eigenvalues_bisection(coarse, spec.branch_max);
            } catch (const EigenFailure& e) {
                throw EigenFailure("build_basis: n=" + std::to_string(n) +
                                       " branch=" + std::to_string(e.index + 1) +
                                       ": " + e.what(),
                                   e.index);
            }
            double h = 2.0 / (spec.grid_n - 1);
            for (int b = 0; b < spec.branch_max; ++b) {
                Mode m;
                m.fourier_n = n;
                m.branch = b + 1;
                m.lambda_grid = pairs[b].value;
                m.lambda = (4.0 * pairs[b].value - coarse_vals[b]) / 3.0;
                m.profile.assign(spec.grid_n, 0.0);
                double inv = 1.0 / std::sqrt(h);
                for (int i = 0; i + 2 < spec.grid_n; ++i)
                    m.profile[i + 1] = pairs[b].vector[i] * inv;
                if (b == 0) {
                    double mean = 0.0;
                    for (double v : m.profile) mean += v;
                    if (mean < 0.0)
                        for (double& v : m.profile) v = -v;
                }
                per_n[idx].push_back(std::move(m));
            }
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    });
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    if (spec.lambda_cutoff > 0.0) {
        // Provable coverage of E_cutoff: every n whose ground state is kept
        // must have its last computed branch above the cutoff, and the top
        // Fourier index must start above the cutoff.
        for (std::size_t idx = 0; idx < ns.size(); ++idx) {
            double ground = per_n[idx].front().lambda;
            double top = per_n[idx].back().lambda;
            if (ground <= spec.lambda_cutoff && top <= spec.lambda_cutoff)
                basis.cutoff_complete = false;
            if (ns[idx] == spec.fourier_max && ground <= spec.lambda_cutoff)
                basis.cutoff_complete = false;
        }
    }
    for (std::size_t idx = 0; idx < ns.size(); ++idx) {
        for (auto& m : per_n[idx]) {
            if (spec.lambda_cutoff > 0.0 && m.lambda > spec.lambda_cutoff) continue;
            basis.modes.push_back(m);
            if (spec.family == Family::grushin_torus && m.fourier_n > 0) {
                Mode mirror = basis.modes.back();
                mirror.fourier_n = -m.fourier_n;
                basis.modes.push_back(std::move(mirror));
            }
        }
    }
    std::sort(basis.modes.begin(), basis.modes.end(), [](const Mode& a, const Mode& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        if (std::abs(a.fourier_n) != std::abs(b.fourier_n))
            return std::abs(a.fourier_n) < std::abs(b.fourier_n);
        if (a.fourier_n != b.fourier_n) return a.fourier_n > b.fourier_n;
        return a.branch < b.branch;
    });
    return basis;
}

namespace {
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

void export_basis(const SpectralBasis& basis, std::ostream& os) {
    os << "hypolab-basis 1\n";
    os << "family " << to_string(basis.spec.family) << "\n";
    os << "gamma " << basis.spec.gamma << "\n";
    os << "grid_n " << basis.spec.grid_n << "\n";
    os << "fourier_max " << basis.spec.fourier_max << "\n";
    os << "branch_max " << basis.spec.branch_max << "\n";
    os << "potential " << to_string(basis.spec.potential) << "\n";
    os << "lambda_cutoff " << fmt17(basis.spec.lambda_cutoff) << "\n";
    os << "modes " << basis.modes.size() << "\n";
    for (const auto& m : basis.modes) {
        os << "m " << m.fourier_n << ' ' << m.branch << ' ' << fmt17(m.lambda)
           << ' ' << fmt17(m.lambda_grid);
        for (double v : m.profile) os << ' ' << fmt17(v);
        os << '\n';
    }
}

SpectralBasis import_basis(std::istream& is) {
    SpectralBasis basis;
    std::string line;
    auto expect_kv = [&](const std::string& key) -> std::string {
        if (!std::getline(is, line))
            throw InvalidArgument("basis import: truncated header, expected " + key);
        std::istringstream ls(line);
        std::string k, v;
        ls >> k;
        std::getline(ls, v);
        if (k != key) throw InvalidArgument("basis import: expected key " + key +
                                            ", got " + k);
        return v.empty() ? v : v.substr(1);
    };
    if (!std::getline(is, line) || line != "hypolab-basis 1")
        throw InvalidArgument("basis import: bad magic line");
    basis.spec.family = family_from_string(expect_kv("family"));
    basis.spec.gamma = std::stoi(expect_kv("gamma"));
    basis.spec.grid_n = std::stoi(expect_kv("grid_n"));
    basis.spec.fourier_max = std::stoi(expect_kv("fourier_max"));
    basis.spec.branch_max = std::stoi(expect_kv("branch_max"));
    basis.spec.potential = potential_from_string(expect_kv("potential"));
    basis.spec.lambda_cutoff = std::stod(expect_kv("lambda_cutoff"));
    std::size_t count = std::stoul(expect_kv("modes"));
    basis.modes.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        if (!std::getline(is, line))
            throw InvalidArgument("basis import: truncated at mode " + std::to_string(j));
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "m") throw InvalidArgument("basis import: bad mode line");
        Mode& m = basis.modes[j];
        ls >> m.fourier_n >> m.branch >> m.lambda >> m.lambda_grid;
        m.profile.assign(basis.spec.grid_n, 0.0);
        for (int i = 0; i < basis.spec.grid_n; ++i) ls >> m.profile[i];
        if (!ls) throw InvalidArgument("basis import: short profile at mode " +
                                       std::to_string(j));
    }
    return basis;
}

void save_basis(const SpectralBasis& basis, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("save_basis: cannot open " + path);
    export_basis(basis, os);
}

SpectralBasis load_basis(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("load_basis: cannot open " + path);
    return import_basis(is);
}

}  // namespace hypolab::spectral
