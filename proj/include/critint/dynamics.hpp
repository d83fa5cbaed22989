#pragma once

// Numerical side: fixed-step leapfrog integration of the Hamiltonian flow,
// conservation monitors, the variational-equation residual along an
// invariant plane, time-of-flight quadrature and Poincare sections.

#include "critint/critsys.hpp"

#include <json.hpp>

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace critint::dynamics {

using critsys::SystemParams;

struct State {
    std::vector<double> u;
    std::vector<double> v;
    double t = 0.0;

    /// (u_1..u_m, v_1..v_m)
    std::vector<double> point() const;
};

struct Trajectory {
    std::string params_digest;
    double dt = 0.0;
    std::vector<State> states;

    double duration() const { return states.empty() ? 0.0 : states.back().t - states.front().t; }
};

std::string digest(const SystemParams& p);

struct IntegrateOptions {
    /// Abort once any |u_i| exceeds this.
    double escape_bound = 1e6;
};

class IntegrationError : public std::runtime_error {
public:
    enum class Kind { Escape, NonFinite };
    IntegrationError(Kind kind, const State& at, Trajectory partial);

    Kind kind() const { return kind_; }
    const State& state() const { return state_; }
    const Trajectory& partial() const { return partial_; }

private:
    Kind kind_;
    State state_;
    Trajectory partial_;
};

/// Kick-drift-kick leapfrog; round(T/dt) steps, t_n = t_0 + n dt.
Trajectory integrate(const SystemParams& p, const State& x0, double dt, double T, const IntegrateOptions& opt = {});

/// Same stepping without storing the trajectory. The visitor sees every
/// state including x0; returning false stops early. Throws IntegrationError
/// with an empty partial trajectory.
void integrate_visit(const SystemParams& p, const State& x0, double dt, double T,
                     const std::function<bool(const State&)>& visit, const IntegrateOptions& opt = {});

struct DriftReport {
    std::string observable;
    double max_drift = 0.0;
    /// max_drift / |F(x0)|, or max_drift when F(x0) = 0
    double relative = 0.0;
    double dt = 0.0;
    double T = 0.0;
};

DriftReport observable_drift(const Trajectory& traj, const PolyObservable& f, const std::string& name = "F");

class OffManifold : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct VEResidual {
    /// max_n |D^2 v_n - c(u_n) v_n| with D^2 the central second difference
    double max_residual = 0.0;
    /// max_residual / dt^2
    double scaled = 0.0;
};

/// xi = u' along a trajectory in the plane of `pivot` checked against
/// xi'' = (eps (2k-1) u^(2k-2) - mu) xi.
VEResidual ve_residual(const SystemParams& p, int pivot, const Trajectory& traj, double plane_tol = 1e-12);

class InteriorTurningPoint : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// |integral du / sqrt(2h + (eps/k) u^(2k) - mu u^2)| between u_a and u_b.
/// Simple zeros of the radicand at the endpoints are allowed.
double time_of_flight(const critsys::RestrictedSystem& rs, double h, double u_a, double u_b);

/// Time for u_pivot to go from its initial value to `target`, read off a
/// leapfrog run with cubic Hermite interpolation between steps.
double transit_time(const critsys::RestrictedSystem& rs, double u0, double v0, double target, double dt, double t_max);

struct SectionSpec {
    /// coordinate indices into (u_1..u_m, v_1..v_m)
    int section = 0;
    int direction = 1;
    int first = 1;
    int second = 2;

    void validate(int m) const;
};

struct SectionPoint {
    int seed = 0;
    double tcross = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

struct SectionResult {
    std::vector<SectionPoint> points;
    /// per-seed integration failures; crossings found before the failure are kept
    std::vector<std::pair<int, std::string>> errors;
};

struct SectionOptions {
    double energy_tol = 1e-9;
    bool parallel = true;
    IntegrateOptions integrate;
};

SectionResult poincare_section(const SystemParams& p, const std::vector<State>& seeds, const SectionSpec& spec, double dt,
                               double T, const SectionOptions& opt = {});

/// "u1".."um", "v1".."vm"
std::string coordinate_name(int m, int index);

void write_trajectory_csv(std::ostream& os, const SystemParams& p, const Trajectory& traj);
void write_section_csv(std::ostream& os, int m, const SectionSpec& spec, const SectionResult& r);
void to_json(nlohmann::json& j, const DriftReport& d);

}  // namespace critint::dynamics
