#include "critint/dynamics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace critint::dynamics {

namespace {

using Coeffs = std::vector<double>;

double horner(const Coeffs& c, double x) {
    double r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

// Size of the terms of c at x, for relative zero tests.
double magnitude(const Coeffs& c, double x) {
    double r = 0, p = 1;
    for (double a : c) {
        r += std::abs(a) * p;
        p *= std::abs(x);
    }
    return r;
}

// c(x) / (x - a), remainder dropped.
Coeffs deflate(const Coeffs& c, double a) {
    Coeffs q(c.size() - 1);
    double carry = 0;
    for (std::size_t i = c.size() - 1; i >= 1; --i) {
        carry = c[i] + carry * a;
        q[i - 1] = carry;
    }
    return q;
}

double gk(const std::function<double(double)>& f, double lo, double hi) {
    if (hi <= lo) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 20, 1e-14);
}

}  // namespace

double time_of_flight(const critsys::RestrictedSystem& rs, double h, double u_a, double u_b) {
    if (!std::isfinite(h) || !std::isfinite(u_a) || !std::isfinite(u_b)) throw std::invalid_argument("non-finite input");
    if (u_a == u_b) return 0.0;
    const double a = std::min(u_a, u_b), b = std::max(u_a, u_b);

    const Poly shape = rs.radicand_shape();
    Coeffs r(static_cast<std::size_t>(shape.degree() + 1));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = shape.coeff(static_cast<int>(i)).to_double();
    r[0] += 2 * h;

    constexpr double zero_tol = 1e-12;
    auto endpoint_zero = [&](double x) {
        const double v = horner(r, x);
        if (v < -zero_tol * magnitude(r, x)) throw std::domain_error("radicand is negative at an endpoint");
        return std::abs(v) <= zero_tol * magnitude(r, x);
    };
    const bool turn_a = endpoint_zero(a), turn_b = endpoint_zero(b);

    constexpr int samples = 4096;
    for (int i = 0; i < samples; ++i) {
        const double x = a + (b - a) * (i + 0.5) / samples;
        if (horner(r, x) <= 0) throw InteriorTurningPoint("radicand vanishes inside the interval near u=" + std::to_string(x));
    }

    auto check_simple = [&](const Coeffs& q, double x) {
        if (std::abs(horner(q, x)) <= 1e-8 * magnitude(q, x))
            throw std::domain_error("multiple zero of the radicand at an endpoint; the time of flight diverges");
    };

    if (!turn_a && !turn_b) return gk([&](double u) { return 1.0 / std::sqrt(horner(r, u)); }, a, b);

    const double mid = turn_a && turn_b ? 0.5 * (a + b) : (turn_a ? b : a);
    double total = 0;
    if (turn_a) {
        // u = a + s^2, R = (u - a) Q
        const Coeffs q = deflate(r, a);
        check_simple(q, a);
        total += gk([&](double s) { return 2.0 / std::sqrt(horner(q, a + s * s)); }, 0.0, std::sqrt(mid - a));
    } else {
        total += gk([&](double u) { return 1.0 / std::sqrt(horner(r, u)); }, a, mid);
    }
    if (turn_b) {
        // u = b - s^2, R = (u - b) Q with Q < 0 near b
        const Coeffs q = deflate(r, b);
        check_simple(q, b);
        total += gk([&](double s) { return 2.0 / std::sqrt(-horner(q, b - s * s)); }, 0.0, std::sqrt(b - mid));
    } else {
        total += gk([&](double u) { return 1.0 / std::sqrt(horner(r, u)); }, mid, b);
    }
    return total;
}

double transit_time(const critsys::RestrictedSystem& rs, double u0, double v0, double target, double dt, double t_max) {
    const SystemParams one{rs.params.k, rs.params.eps, {rs.mu()}};
    if (u0 == target) return 0.0;
    double result = -1;
    State prev;
    integrate_visit(one, State{{u0}, {v0}, 0.0}, dt, t_max, [&](const State& s) {
        if (s.t > 0 && (prev.u[0] - target) * (s.u[0] - target) <= 0) {
            // cubic Hermite interpolant of u on [prev.t, s.t]; bisect for the target
            const double y0 = prev.u[0], y1 = s.u[0], m0 = prev.v[0] * dt, m1 = s.v[0] * dt;
            auto hermite = [&](double x) {
                const double x2 = x * x, x3 = x2 * x;
                return (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * m0 + (-2 * x3 + 3 * x2) * y1 + (x3 - x2) * m1 - target;
            };
            double lo = 0, hi = 1;
            const double flo = hermite(lo);
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((hermite(mid) > 0) == (flo > 0)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            result = prev.t + 0.5 * (lo + hi) * dt;
            return false;
        }
        prev = s;
        return true;
    });
    if (result < 0) throw std::runtime_error("target coordinate not reached before t_max");
    return result;
}

}  // namespace critint::dynamics
