#include "hypolab/geometry/geodesic.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "hypolab/numerics/ode.hpp"

namespace hypolab::geom {

namespace {

Vec pack(const CotangentState& st) {
    Vec y(st.x.size() * 2);
    std::copy(st.x.begin(), st.x.end(), y.begin());
    std::copy(st.xi.begin(), st.xi.end(), y.begin() + st.x.size());
    return y;
}

CotangentState unpack(const Vec& y, int d) {
    CotangentState st;
    st.x.assign(y.begin(), y.begin() + d);
    st.xi.assign(y.begin() + d, y.end());
    return st;
}

}  // namespace

double GeodesicPath::hamiltonian_drift(const SRSystem& sys) const {
    double worst = 0.0;
    for (const auto& st : states)
        worst = std::max(worst, std::abs(sys.hamiltonian(st) - ell0));
    return worst;
}

GeodesicPath flow_geodesic(const SRSystem& sys, const CotangentState& st0,
                           double S, double step) {
    if (static_cast<int>(st0.x.size()) != sys.dim ||
        static_cast<int>(st0.xi.size()) != sys.dim)
        throw InvalidArgument("flow_geodesic: state dimension mismatch");
    const int d = sys.dim;
    auto rhs = [&sys, d](double, const Vec& y) {
        CotangentState st = unpack(y, d);
        Vec dx, dxi;
        sys.flow_rhs(st, dx, dxi);
        Vec out(2 * d);
        std::copy(dx.begin(), dx.end(), out.begin());
        std::copy(dxi.begin(), dxi.end(), out.begin() + d);
        return out;
    };
    num::Trajectory traj = num::integrate_ode(rhs, pack(st0), {0.0, S}, step);
    GeodesicPath path;
    path.s = traj.s;
    path.states.reserve(traj.states.size());
    for (const auto& y : traj.states) path.states.push_back(unpack(y, d));
    path.ell0 = sys.hamiltonian(st0);
    return path;
}

double path_length(const SRSystem& sys, const GeodesicPath& path) {
    if (path.size() < 2) return 0.0;
    Vec speed(path.size());
    for (std::size_t j = 0; j < path.size(); ++j) {
        const auto& st = path.states[j];
        Vec v(sys.dim, 0.0);
        for (const auto& f : sys.fields) {
            Vec X = f.value(st.x);
            double p = 2.0 * dot(st.xi, X);
            for (int a = 0; a < sys.dim; ++a) v[a] += p * X[a];
        }
        double g = sr_metric(sys, st.x, v);
        if (!std::isfinite(g))
            throw Error("path_length: path not horizontal at s = " +
                        std::to_string(path.s[j]));
        speed[j] = std::sqrt(g);
    }
    double len = 0.0;
    for (std::size_t j = 0; j + 1 < path.size(); ++j)
        len += 0.5 * (speed[j] + speed[j + 1]) * (path.s[j + 1] - path.s[j]);
    return len;
}

void export_path_csv(const SRSystem& sys, const GeodesicPath& path,
                     std::ostream& os) {
    os << "s";
    for (int a = 0; a < sys.dim; ++a) os << ",x" << (a + 1);
    for (int a = 0; a < sys.dim; ++a) os << ",xi" << (a + 1);
    os << ",ell\n";
    char buf[40];
    auto put = [&os, &buf](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf << sep;
    };
    for (std::size_t j = 0; j < path.size(); ++j) {
        put(path.s[j], ',');
        for (int a = 0; a < sys.dim; ++a) put(path.states[j].x[a], ',');
        for (int a = 0; a < sys.dim; ++a) put(path.states[j].xi[a], ',');
        std::snprintf(buf, sizeof buf, "%.17g", sys.hamiltonian(path.states[j]));
        os << buf << '\n';
    }
}

}  // namespace hypolab::geom
