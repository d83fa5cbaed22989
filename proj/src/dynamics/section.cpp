#include "critint/dynamics.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace critint::dynamics {

void SectionSpec::validate(int m) const {
    auto in_range = [m](int i) { return i >= 0 && i < 2 * m; };
    if (!in_range(section) || !in_range(first) || !in_range(second))
        throw std::invalid_argument("section coordinates must index u1..um, v1..vm");
    if (section == first || section == second) throw std::invalid_argument("section coordinate cannot also be recorded");
    if (direction != 1 && direction != -1) throw std::invalid_argument("crossing direction must be +1 or -1");
}

std::string coordinate_name(int m, int index) {
    return (index < m ? "u" : "v") + std::to_string(index % m + 1);
}

namespace {

struct SeedOutcome {
    std::vector<SectionPoint> points;
    std::string error;
};

SeedOutcome run_seed(const SystemParams& p, const State& seed, int id, const SectionSpec& spec, double dt, double T,
                     const IntegrateOptions& opt) {
    SeedOutcome out;
    std::vector<double> prev;
    double prev_t = 0;
    try {
        integrate_visit(
            p, seed, dt, T,
            [&](const State& s) {
                std::vector<double> x = s.point();
                if (!prev.empty()) {
                    const auto si = static_cast<std::size_t>(spec.section);
                    const double a = spec.direction * prev[si], b = spec.direction * x[si];
                    if (a < 0 && b >= 0) {
                        const double alpha = a / (a - b);
                        const auto lerp = [&](int i) {
                            const auto k = static_cast<std::size_t>(i);
                            return prev[k] + alpha * (x[k] - prev[k]);
                        };
                        out.points.push_back({id, prev_t + alpha * (s.t - prev_t), lerp(spec.first), lerp(spec.second)});
                    }
                }
                prev = std::move(x);
                prev_t = s.t;
                return true;
            },
            opt);
    } catch (const IntegrationError& e) {
        out.error = e.what();
    }
    return out;
}

}  // namespace

SectionResult poincare_section(const SystemParams& p, const std::vector<State>& seeds, const SectionSpec& spec, double dt,
                               double T, const SectionOptions& opt) {
    p.validate();
    spec.validate(p.m());
    if (!seeds.empty()) {
        const PolyObservable h = critsys::hamiltonian(p);
        for (const auto& s : seeds)
            if (s.u.size() != static_cast<std::size_t>(p.m()) || s.v.size() != static_cast<std::size_t>(p.m()))
                throw std::invalid_argument("seed has wrong dimension");
        const double h0 = h.eval(seeds.front().point());
        for (std::size_t i = 1; i < seeds.size(); ++i)
            if (std::abs(h.eval(seeds[i].point()) - h0) > opt.energy_tol * std::max(1.0, std::abs(h0)))
                throw std::invalid_argument("seed " + std::to_string(i) + " is not on the energy level of seed 0");
    }

    std::vector<SeedOutcome> outcomes(seeds.size());
    auto job = [&](std::size_t i) { outcomes[i] = run_seed(p, seeds[i], static_cast<int>(i), spec, dt, T, opt.integrate); };
    const unsigned workers = opt.parallel ? std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                                           static_cast<unsigned>(seeds.size())))
                                          : 1u;
    if (workers <= 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) job(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next++) < seeds.size();) job(i);
            });
        for (auto& t : pool) t.join();
    }

    SectionResult r;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        r.points.insert(r.points.end(), outcomes[i].points.begin(), outcomes[i].points.end());
        if (!outcomes[i].error.empty()) r.errors.emplace_back(static_cast<int>(i), outcomes[i].error);
    }
    return r;
}

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const SystemParams& p, const Trajectory& traj) {
    const int m = p.m();
    os << "t";
    for (int i = 0; i < 2 * m; ++i) os << ',' << coordinate_name(m, i);
    os << ",H\n";
    const PolyObservable h = critsys::hamiltonian(p);
    for (const auto& s : traj.states) {
        const auto x = s.point();
        os << num(s.t);
        for (double c : x) os << ',' << num(c);
        os << ',' << num(h.eval(x)) << '\n';
    }
}

void write_section_csv(std::ostream& os, int m, const SectionSpec& spec, const SectionResult& r) {
    os << "seed,tcross," << coordinate_name(m, spec.first) << ',' << coordinate_name(m, spec.second) << '\n';
    for (const auto& pt : r.points) os << pt.seed << ',' << num(pt.tcross) << ',' << num(pt.c1) << ',' << num(pt.c2) << '\n';
}

void to_json(nlohmann::json& j, const DriftReport& d) {
    j = {{"observable", d.observable}, {"max_drift", d.max_drift}, {"relative", d.relative}, {"dt", d.dt}, {"T", d.T}};
}

}  // namespace critint::dynamics
