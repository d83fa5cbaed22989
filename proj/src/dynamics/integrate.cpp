#include "critint/dynamics.hpp"

#include <cmath>

namespace critint::dynamics {

std::vector<double> State::point() const {
    std::vector<double> x = u;
    x.insert(x.end(), v.begin(), v.end());
    return x;
}

std::string digest(const SystemParams& p) {
    std::string s = "k=" + std::to_string(p.k) + ";eps=" + std::to_string(p.eps) + ";mu=";
    for (std::size_t i = 0; i < p.mu.size(); ++i) s += (i ? "," : "") + p.mu[i].str();
    return s;
}

namespace {

std::string describe(IntegrationError::Kind kind, const State& s) {
    return std::string(kind == IntegrationError::Kind::Escape ? "trajectory escaped" : "non-finite state") + " at t=" +
           std::to_string(s.t);
}

class Leapfrog {
public:
    explicit Leapfrog(const SystemParams& p) : k_(p.k), eps_(p.eps) {
        for (const auto& m : p.mu) mu_.push_back(m.to_double());
    }

    void accel(const std::vector<double>& u, std::vector<double>& a) const {
        double r2 = 0;
        for (double x : u) r2 += x * x;
        double s = eps_;
        for (int e = 0; e < k_ - 1; ++e) s *= r2;
        for (std::size_t i = 0; i < u.size(); ++i) a[i] = -mu_[i] * u[i] + s * u[i];
    }

private:
    int k_;
    double eps_;
    std::vector<double> mu_;
};

bool finite(const State& s) {
    for (double x : s.u)
        if (!std::isfinite(x)) return false;
    for (double x : s.v)
        if (!std::isfinite(x)) return false;
    return true;
}

bool escaped(const State& s, double bound) {
    for (double x : s.u)
        if (std::abs(x) > bound) return true;
    return false;
}

}  // namespace

IntegrationError::IntegrationError(Kind kind, const State& at, Trajectory partial)
    : std::runtime_error(describe(kind, at)), kind_(kind), state_(at), partial_(std::move(partial)) {}

void integrate_visit(const SystemParams& p, const State& x0, double dt, double T,
                     const std::function<bool(const State&)>& visit, const IntegrateOptions& opt) {
    p.validate();
    if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
    if (!(T > dt)) throw std::invalid_argument("T must exceed dt");
    const auto m = static_cast<std::size_t>(p.m());
    if (x0.u.size() != m || x0.v.size() != m) throw std::invalid_argument("initial state has wrong dimension");
    if (!finite(x0)) throw IntegrationError(IntegrationError::Kind::NonFinite, x0, {});

    const Leapfrog lf(p);
    const long long steps = std::llround(T / dt);
    State x = x0;
    std::vector<double> a(m);
    lf.accel(x.u, a);
    if (!visit(x)) return;
    for (long long n = 1; n <= steps; ++n) {
        for (std::size_t i = 0; i < m; ++i) {
            x.v[i] += 0.5 * dt * a[i];
            x.u[i] += dt * x.v[i];
        }
        lf.accel(x.u, a);
        for (std::size_t i = 0; i < m; ++i) x.v[i] += 0.5 * dt * a[i];
        x.t = x0.t + static_cast<double>(n) * dt;
        if (!finite(x)) throw IntegrationError(IntegrationError::Kind::NonFinite, x, {});
        if (escaped(x, opt.escape_bound)) throw IntegrationError(IntegrationError::Kind::Escape, x, {});
        if (!visit(x)) return;
    }
}

Trajectory integrate(const SystemParams& p, const State& x0, double dt, double T, const IntegrateOptions& opt) {
    Trajectory traj;
    traj.params_digest = digest(p);
    traj.dt = dt;
    if (dt > 0 && T > dt) traj.states.reserve(static_cast<std::size_t>(std::llround(T / dt)) + 1);
    try {
        integrate_visit(
            p, x0, dt, T,
            [&](const State& s) {
                traj.states.push_back(s);
                return true;
            },
            opt);
    } catch (const IntegrationError& e) {
        throw IntegrationError(e.kind(), e.state(), std::move(traj));
    }
    return traj;
}

DriftReport observable_drift(const Trajectory& traj, const PolyObservable& f, const std::string& name) {
    DriftReport r;
    r.observable = name;
    r.dt = traj.dt;
    r.T = traj.duration();
    if (traj.states.empty()) return r;
    const double f0 = f.eval(traj.states.front().point());
    for (const auto& s : traj.states) r.max_drift = std::max(r.max_drift, std::abs(f.eval(s.point()) - f0));
    r.relative = f0 != 0.0 ? r.max_drift / std::abs(f0) : r.max_drift;
    return r;
}

VEResidual ve_residual(const SystemParams& p, int pivot, const Trajectory& traj, double plane_tol) {
    p.validate();
    if (pivot < 0 || pivot >= p.m()) throw std::out_of_range("pivot outside the system");
    const auto iv = static_cast<std::size_t>(pivot);
    for (const auto& s : traj.states)
        for (std::size_t l = 0; l < s.u.size(); ++l)
            if (l != iv && (std::abs(s.u[l]) > plane_tol || std::abs(s.v[l]) > plane_tol))
                throw OffManifold("coordinate " + std::to_string(l + 1) + " leaves the invariant plane at t=" +
                                  std::to_string(s.t));
    if (traj.states.size() < 3) throw std::invalid_argument("residual needs at least three states");

    const double mu = p.mu[iv].to_double(), dt = traj.dt;
    VEResidual r;
    for (std::size_t n = 1; n + 1 < traj.states.size(); ++n) {
        const double u = traj.states[n].u[iv];
        const double d2 = (traj.states[n + 1].v[iv] - 2 * traj.states[n].v[iv] + traj.states[n - 1].v[iv]) / (dt * dt);
        const double c = p.eps * (2 * p.k - 1) * std::pow(u, 2 * p.k - 2) - mu;
        r.max_residual = std::max(r.max_residual, std::abs(d2 - c * traj.states[n].v[iv]));
    }
    r.scaled = r.max_residual / (dt * dt);
    return r;
}

}  // namespace critint::dynamics
