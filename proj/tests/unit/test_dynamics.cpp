#include "doctest.h"

#include "critint/dynamics.hpp"

#include <cmath>
#include <sstream>

using namespace critint;
using namespace critint::dynamics;

namespace {

SystemParams params(int k, int eps, std::vector<Rat> mu) { return {k, eps, std::move(mu)}; }

double h_drift(const SystemParams& p, const State& x0, double dt, double T) {
    return observable_drift(integrate(p, x0, dt, T), critsys::hamiltonian(p), "H").relative;
}

}  // namespace

TEST_CASE("equilibria stay put") {
    const auto origin = integrate(params(3, 1, {Rat(1), Rat(2)}), State{{0, 0}, {0, 0}, 0}, 0.01, 1.0);
    CHECK(origin.states.size() == 101);
    for (const auto& s : origin.states) CHECK(s.point() == std::vector<double>(4, 0.0));
    CHECK(origin.states.back().t == doctest::Approx(1.0));

    const auto rest = integrate(params(3, 1, {Rat(1)}), State{{1}, {0}, 0}, 0.01, 1.0);
    for (const auto& s : rest.states) CHECK(s.point() == std::vector<double>{1.0, 0.0});
}

TEST_CASE("energy behaviour of the leapfrog") {
    const auto p = params(2, -1, {Rat(1), Rat(1)});
    const State x0{{1, 0}, {0, 1}, 0};
    const double d1 = h_drift(p, x0, 1e-3, 100), d2 = h_drift(p, x0, 5e-4, 100);
    CHECK(d1 <= 1e-6);
    CHECK(d1 / d2 >= 3.0);
    CHECK(d1 / d2 <= 5.0);

    const auto traj = integrate(p, x0, 1e-3, 100);
    CHECK(observable_drift(traj, critsys::angular_momentum(2, 0, 1)).relative <= 1e-6);

    const auto q = params(3, -1, {Rat(1), Rat(2)});
    const auto t2 = integrate(q, State{{0.8, 0.3}, {0.1, 0.5}, 0}, 1e-3, 50);
    CHECK(observable_drift(t2, critsys::angular_momentum(2, 0, 1)).max_drift > 1e-2);
    CHECK(observable_drift(t2, critsys::hamiltonian(q)).relative < 1e-5);
}

TEST_CASE("time reversal") {
    const auto p = params(3, -1, {Rat(1), Rat(3, 2)});
    const State x0{{0.4, -0.7}, {0.2, 0.1}, 0};
    const double dt = 1e-2;
    const auto fwd = integrate(p, x0, dt, 20);
    State back = fwd.states.back();
    for (auto& v : back.v) v = -v;
    back.t = 0;
    State end = integrate(p, back, dt, 20).states.back();
    for (auto& v : end.v) v = -v;
    double err = 0, norm = 0;
    for (std::size_t i = 0; i < 2; ++i) {
        err = std::max({err, std::abs(end.u[i] - x0.u[i]), std::abs(end.v[i] - x0.v[i])});
        norm = std::max({norm, std::abs(x0.u[i]), std::abs(x0.v[i])});
    }
    CHECK(err / norm <= 10 * dt * dt);
}

TEST_CASE("escape guard") {
    const auto p = params(3, 1, {Rat(1)});
    try {
        integrate(p, State{{2}, {0}, 0}, 1e-3, 10, {1e3});
        FAIL("expected an escape");
    } catch (const IntegrationError& e) {
        CHECK(e.kind() == IntegrationError::Kind::Escape);
        CHECK(std::abs(e.state().u[0]) > 1e3);
        CHECK_FALSE(e.partial().states.empty());
        CHECK(e.partial().states.back().t < e.state().t);
    }
    CHECK_THROWS_AS(integrate(p, State{{0}, {0}, 0}, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(integrate(p, State{{0}, {0}, 0}, 0.1, 0.05), std::invalid_argument);
}

TEST_CASE("variational residual") {
    const auto p = params(3, 1, {Rat(1), Rat(2)});
    const auto rest = integrate(p, State{{0, 0}, {0, 0}, 0}, 0.01, 1);
    CHECK(ve_residual(p, 0, rest).max_residual == 0.0);

    const State x0{{0.5, 0}, {0, 0}, 0};
    const auto r1 = ve_residual(p, 0, integrate(p, x0, 1e-2, 10));
    const auto r2 = ve_residual(p, 0, integrate(p, x0, 5e-3, 10));
    CHECK(r1.max_residual / r2.max_residual >= 3.0);
    CHECK(r1.max_residual / r2.max_residual <= 5.0);
    CHECK(r1.scaled == doctest::Approx(r1.max_residual / 1e-4));

    const auto off = integrate(p, State{{0.5, 0.1}, {0, 0}, 0}, 1e-2, 1);
    CHECK_THROWS_AS(ve_residual(p, 0, off), OffManifold);
}

TEST_CASE("time of flight") {
    const critsys::RestrictedSystem rs{params(3, 1, {Rat(1)}), 0};
    CHECK(time_of_flight(rs, 1.0 / 3, 0.4, 0.4) == 0.0);

    SUBCASE("agrees with the integrated transit time") {
        const double tof = time_of_flight(rs, 1.0 / 3, 0.0, 0.9);
        const double ode = transit_time(rs, 0.0, std::sqrt(2.0 / 3), 0.9, 1e-4, 10);
        CHECK(std::abs(tof - ode) / tof <= 1e-6);
    }
    SUBCASE("even integrand") {
        const double half = time_of_flight(rs, 0.2, 0.0, 0.5);
        CHECK(time_of_flight(rs, 0.2, -0.5, 0.5) == doctest::Approx(2 * half).epsilon(1e-12));
        CHECK(time_of_flight(rs, 0.2, 0.5, 0.0) == doctest::Approx(half).epsilon(1e-14));
    }
    SUBCASE("turning point endpoint") {
        // bounded oscillation: from the turning point to u = 0 is a quarter period
        const critsys::RestrictedSystem soft{params(2, -1, {Rat(1)}), 0};
        const double h = 0.3;
        // 2h - u^2 - u^4/2 = 0
        const double ut = std::sqrt(-1 + std::sqrt(1 + 4 * h));
        const double tof = time_of_flight(soft, h, 0.0, ut);
        const double ode = transit_time(soft, ut, 0.0, 0.0, 1e-4, 10);
        CHECK(std::abs(tof - ode) / tof <= 1e-6);
        CHECK(time_of_flight(soft, h, -ut, ut) == doctest::Approx(2 * tof).epsilon(1e-10));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(time_of_flight(rs, 0.1, 0.0, 2.0), InteriorTurningPoint);
        CHECK_THROWS_AS(time_of_flight(rs, 1.0 / 3, 0.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(time_of_flight(rs, 0.1, 0.0, 0.9), std::domain_error);
    }
}

TEST_CASE("Poincare sections") {
    const auto p = params(2, -1, {Rat(1), Rat(1)});
    const SectionSpec spec{0, 1, 1, 3};
    CHECK(poincare_section(p, {State{{0, 0}, {0, 0}, 0}}, spec, 1e-2, 10).points.empty());
    CHECK(poincare_section(p, {}, spec, 1e-2, 10).points.empty());

    const State a{{0, 0.3}, {0.5, 0.0}, 0};
    const double ha = critsys::hamiltonian(p).eval(a.point());
    // second seed on the same level: same u2, solve for v1
    const double rest = ha - (0.3 * 0.3 / 2 + 0.3 * 0.3 * 0.3 * 0.3 / 4);
    const State b{{0, 0.3}, {std::sqrt(2 * rest) * 0.6, std::sqrt(2 * rest) * 0.8}, 0};
    SectionOptions serial;
    serial.parallel = false;
    const auto r1 = poincare_section(p, {a, b}, spec, 1e-2, 50, serial);
    const auto r2 = poincare_section(p, {a, b}, spec, 1e-2, 50);
    REQUIRE(r1.points.size() == r2.points.size());
    CHECK_FALSE(r1.points.empty());
    for (std::size_t i = 0; i < r1.points.size(); ++i) {
        CHECK(r1.points[i].seed == r2.points[i].seed);
        CHECK(r1.points[i].tcross == r2.points[i].tcross);
        CHECK(r1.points[i].c1 == r2.points[i].c1);
    }

    const State off{{0, 0.9}, {0.5, 0}, 0};
    CHECK_THROWS_AS(poincare_section(p, {a, off}, spec, 1e-2, 10), std::invalid_argument);
    CHECK_THROWS_AS(poincare_section(p, {a}, SectionSpec{0, 1, 0, 3}, 1e-2, 10), std::invalid_argument);

    std::ostringstream os;
    write_section_csv(os, 2, spec, {});
    CHECK(os.str() == "seed,tcross,u2,v2\n");

    SUBCASE("escaping seeds keep their crossings") {
        const auto hot = params(3, 1, {Rat(1), Rat(1)});
        SectionOptions opt;
        opt.integrate.escape_bound = 1e3;
        const auto r = poincare_section(hot, {State{{-0.2, 0}, {3, 0}, 0}}, spec, 1e-3, 10, opt);
        REQUIRE(r.errors.size() == 1);
        CHECK(r.errors[0].first == 0);
        CHECK(r.points.size() == 1);
    }
}

TEST_CASE("csv and json output") {
    const auto p = params(2, 1, {Rat(1), Rat(2)});
    const auto traj = integrate(p, State{{0.1, 0}, {0, 0.1}, 0}, 0.5, 1.0);
    std::ostringstream os;
    write_trajectory_csv(os, p, traj);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,u1,u2,v1,v2,H");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 3);

    nlohmann::json j = observable_drift(traj, critsys::hamiltonian(p), "H");
    CHECK(j["observable"] == "H");
    CHECK(j.contains("max_drift"));
    CHECK(j["dt"] == 0.5);
    CHECK(j["T"] == 1.0);
    CHECK(traj.params_digest == "k=2;eps=1;mu=1,2");
}
