#include "hypolab/geometry/distance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypolab/parallel.hpp"

namespace hypolab::geom {

bool Box::contains(const Vec& x) const {
    for (std::size_t a = 0; a < lo.size(); ++a)
        if (x[a] < lo[a] || x[a] > hi[a]) return false;
    return true;
}

void Box::validate(int dim) const {
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
        throw InvalidArgument("Box: dimension mismatch");
    for (int a = 0; a < dim; ++a)
        if (!(lo[a] < hi[a])) throw InvalidArgument("Box: degenerate range");
}

namespace {

// Van der Corput base-2 radical inverse; the direction sequence below is a
// fixed infinite sequence, so the shot set is prefix-stable in `shots`.
double vdc2(std::uint64_t i) {
    double r = 0.0, f = 0.5;
    while (i) {
        if (i & 1) r += f;
        f *= 0.5;
        i >>= 1;
    }
    return r;
}

Vec direction(int dim, int i) {
    if (dim == 2) {
        double phi = 2.0 * kPi * vdc2(static_cast<std::uint64_t>(i));
        return {std::cos(phi), std::sin(phi)};
    }
    if (dim == 3) {
        double z = 1.0 - 2.0 * vdc2(static_cast<std::uint64_t>(i));
        z = std::clamp(z, -1.0, 1.0);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double psi = 2.399963229728653 * static_cast<double>(i);
        return {r * std::cos(psi), r * std::sin(psi), z};
    }
    throw InvalidArgument("distance_to_set: only d = 2, 3 supported");
}

struct ShotOutcome {
    bool hit = false;
    double entry_s = 0.0;
    CotangentState entry_state;
    bool skipped = false;
};

// One RK4 step of the Hamiltonian flow.
CotangentState rk4_state(const SRSystem& sys, const CotangentState& st, double h) {
    auto eval = [&sys](const CotangentState& q, Vec& dx, Vec& dxi) {
        sys.flow_rhs(q, dx, dxi);
    };
    const int d = sys.dim;
    Vec k1x, k1p, k2x, k2p, k3x, k3p, k4x, k4p;
    eval(st, k1x, k1p);
    CotangentState t = st;
    for (int a = 0; a < d; ++a) {
        t.x[a] = st.x[a] + 0.5 * h * k1x[a];
        t.xi[a] = st.xi[a] + 0.5 * h * k1p[a];
    }
    eval(t, k2x, k2p);
    for (int a = 0; a < d; ++a) {
        t.x[a] = st.x[a] + 0.5 * h * k2x[a];
        t.xi[a] = st.xi[a] + 0.5 * h * k2p[a];
    }
    eval(t, k3x, k3p);
    for (int a = 0; a < d; ++a) {
        t.x[a] = st.x[a] + h * k3x[a];
        t.xi[a] = st.xi[a] + h * k3p[a];
    }
    eval(t, k4x, k4p);
    CotangentState out = st;
    for (int a = 0; a < d; ++a) {
        out.x[a] = st.x[a] + h / 6.0 * (k1x[a] + 2.0 * (k2x[a] + k3x[a]) + k4x[a]);
        out.xi[a] = st.xi[a] + h / 6.0 * (k1p[a] + 2.0 * (k2p[a] + k3p[a]) + k4p[a]);
    }
    return out;
}

ShotOutcome shoot(const SRSystem& sys, const Vec& x0, const Box& omega, int index,
                  double S_max, const ShootOptions& opts) {
    ShotOutcome out;
    Vec dir = direction(sys.dim, index);
    CotangentState st{x0, dir};
    double ell = sys.hamiltonian(st);
    if (ell <= 1e-14) {
        out.skipped = true;
        return out;
    }
    double scale = 1.0 / (2.0 * std::sqrt(ell));
    for (int a = 0; a < sys.dim; ++a) st.xi[a] = dir[a] * scale;

    long nsteps = static_cast<long>(std::ceil(S_max / opts.step));
    double s = 0.0;
    for (long k = 0; k < nsteps; ++k) {
        double h = std::min(opts.step, S_max - s);
        CotangentState next = rk4_state(sys, st, h);
        if (!all_finite(next.x) || !all_finite(next.xi))
            throw OdeFailure("distance_to_set: non-finite state at s = " +
                                 std::to_string(s + h),
                             s + h);
        if (omega.contains(next.x)) {
            // Bisection on the sub-step from the cached state.
            double t_lo = 0.0, t_hi = h;
            CotangentState hit = next;
            while (t_hi - t_lo > opts.entry_tol) {
                double mid = 0.5 * (t_lo + t_hi);
                CotangentState q = rk4_state(sys, st, mid);
                if (omega.contains(q.x)) {
                    t_hi = mid;
                    hit = q;
                } else {
                    t_lo = mid;
                }
            }
            out.hit = true;
            out.entry_s = s + t_hi;
            out.entry_state = hit;
            return out;
        }
        st = next;
        s += h;
    }
    return out;
}

}  // namespace

DistanceResult distance_to_set(const SRSystem& sys, const Vec& x0,
                               const Box& omega, int shots, double S_max,
                               const ShootOptions& opts) {
    omega.validate(sys.dim);
    if (shots < 8) throw InvalidArgument("distance_to_set: shots must be >= 8");
    if (!(S_max > 0.0)) throw InvalidArgument("distance_to_set: S_max must be > 0");

    DistanceResult res;
    res.shots_used = shots;
    if (omega.contains(x0)) {
        res.d_est = 0.0;
        res.witness.s = {0.0};
        res.witness.states = {CotangentState{x0, Vec(sys.dim, 0.0)}};
        res.witness.ell0 = 0.0;
        return res;
    }

    std::vector<ShotOutcome> outcomes(shots);
    std::vector<std::exception_ptr> errors(shots);
    parallel_for(static_cast<std::size_t>(shots), opts.threads, [&](std::size_t i) {
        try {
            outcomes[i] = shoot(sys, x0, omega, static_cast<int>(i), S_max, opts);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    int best = -1;
    for (int i = 0; i < shots; ++i) {
        if (outcomes[i].skipped) ++res.shots_skipped;
        if (outcomes[i].hit &&
            (best < 0 || outcomes[i].entry_s < outcomes[best].entry_s))
            best = i;
    }
    if (best < 0) {
        std::ostringstream ss;
        ss << "distance_to_set: no shot reached omega within S_max = " << S_max
           << " (" << shots << " shots, " << res.shots_skipped << " skipped)";
        throw Error(ss.str());
    }
    res.d_est = outcomes[best].entry_s;

    // Witness path re-integrated up to the refined entry time.
    Vec dir = direction(sys.dim, best);
    CotangentState st{x0, dir};
    double scale = 1.0 / (2.0 * std::sqrt(sys.hamiltonian(st)));
    for (int a = 0; a < sys.dim; ++a) st.xi[a] = dir[a] * scale;
    res.witness.ell0 = 0.25;
    res.witness.s.push_back(0.0);
    res.witness.states.push_back(st);
    double s = 0.0;
    while (s + opts.step < res.d_est) {
        st = rk4_state(sys, st, opts.step);
        s += opts.step;
        res.witness.s.push_back(s);
        res.witness.states.push_back(st);
    }
    res.witness.s.push_back(res.d_est);
    res.witness.states.push_back(outcomes[best].entry_state);
    return res;
}

double min_observation_time(const SRSystem& sys, const Box& domain,
                            const Box& omega, int grid, int shots, double S_max,
                            const ShootOptions& opts) {
    domain.validate(sys.dim);
    omega.validate(sys.dim);
    if (grid < 4) throw InvalidArgument("min_observation_time: grid must be >= 4");

    std::vector<Vec> points;
    std::vector<int> idx(sys.dim, 0);
    for (;;) {
        Vec x(sys.dim);
        for (int a = 0; a < sys.dim; ++a)
            x[a] = domain.lo[a] +
                   (domain.hi[a] - domain.lo[a]) * idx[a] / (grid - 1);
        points.push_back(x);
        int a = 0;
        while (a < sys.dim && ++idx[a] == grid) idx[a++] = 0;
        if (a == sys.dim) break;
    }

    double worst = 0.0;
    for (const auto& x : points) {
        try {
            worst = std::max(worst,
                             distance_to_set(sys, x, omega, shots, S_max, opts).d_est);
        } catch (const Error& e) {
            std::ostringstream ss;
            ss << "min_observation_time at x = (";
            for (int a = 0; a < sys.dim; ++a) ss << (a ? "," : "") << x[a];
            ss << "): " << e.what();
            throw Error(ss.str());
        }
    }
    return worst;
}

}  // namespace hypolab::geom
