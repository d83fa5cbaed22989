// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include "critint/critsys.hpp"
#include "critint/dynamics.hpp"
#include "critint/kovacic.hpp"
#include "support/bracket_oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace critint;
using critsys::SystemParams;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// 1. Integrable exactly when k = 2 or all mu are equal.
Outcome truth_table() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Rat> pool{Rat(-2), Rat(-1), Rat(0), Rat(1, 2), Rat(1), Rat(2), Rat(3), Rat(4), Rat(9)};
    const auto n = pool.size();
    std::vector<std::vector<Rat>> tuples;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            tuples.push_back({pool[a], pool[b]});
            for (std::size_t c = b; c < n; ++c) tuples.push_back({pool[a], pool[b], pool[c]});
        }
    int instances = 0, mismatches = 0, discrepancies = 0;
    std::string first_bad;
    for (int k = 2; k <= 8; ++k)
        for (int eps : {1, -1})
            for (const auto& mu : tuples) {
                const SystemParams p{k, eps, mu};
                const bool all_equal = std::all_of(mu.begin(), mu.end(), [&](const Rat& x) { return x == mu.front(); });
                const bool expected = k == 2 || all_equal;
                const auto cert = critsys::classify_integrability(p);
                ++instances;
                if ((cert.verdict == critsys::Verdict::Integrable) != expected) {
                    ++mismatches;
                    if (first_bad.empty()) first_bad = critsys::certificate_json(cert).dump();
                }
                if (cert.discrepancy) ++discrepancies;
            }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Outcome o;
    o.pass = instances >= 500 && mismatches == 0 && discrepancies == 0 && secs < 300;
    o.detail = std::to_string(instances) + " instances, " + std::to_string(mismatches) + " verdict mismatches, " +
               std::to_string(discrepancies) + " evidence discrepancies, " + fmt(secs) + " s";
    if (!first_bad.empty()) o.detail += "; first mismatch " + first_bad.substr(0, 200);
    return o;
}

// 2. Degenerate-pivot pipeline: E_0 = {3}, E_inf = {0,2,4} or {2}, no
// nonnegative integer d, TypeIV.
Outcome degenerate_regression() {
    Outcome o{true, ""};
    for (int k = 3; k <= 12; ++k) {
        const SystemParams p{k, 1, {Rat(0), Rat(1)}};
        const auto n = kovacic::reduce_to_normal(critsys::anve_degenerate(p, 0, 1, 1));
        const auto v = kovacic::classify_galois(n);
        const std::vector<int> inf = k == 3 ? std::vector<int>{0, 2, 4} : std::vector<int>{2};
        bool ok = v.families.at_poles == std::vector<std::vector<int>>{{3}} && v.families.at_infinity == inf &&
                  v.type == kovacic::GaloisType::TypeIV && !v.certificate;
        for (const auto& c : v.candidates) ok = ok && !c.candidate.retained && !(c.candidate.d.is_integer() && c.candidate.d.sign() >= 0);
        if (!ok) {
            o.pass = false;
            o.detail += "k=" + std::to_string(k) + " ";
        }
    }
    o.detail = o.pass ? "k=3..12 all TypeIV with the stated families" : "failing " + o.detail;
    return o;
}

// 3. sqrt(1 + 4b) at infinity equals (k+1)/(2(k-1)).
Outcome infinity_data() {
    Outcome o{true, ""};
    for (long k = 4; k <= 12; ++k) {
        const long km1sq = (k - 1) * (k - 1);
        // r = -((k-3)(3k-1)/(16 (k-1)^2 z^2) + k/(8 (k-1)^2 z^3))
        const RatFunc r = RatFunc::pole_term(Rat(-(k - 3) * (3 * k - 1), 16 * km1sq), Rat(0), 2) +
                          RatFunc::pole_term(Rat(-k, 8 * km1sq), Rat(0), 3);
        const auto n = kovacic::normal_form(r);
        const auto pipeline = kovacic::reduce_to_normal(critsys::anve_degenerate({static_cast<int>(k), -1, {Rat(0), Rat(3)}}, 0, 1, 1));
        const auto root = n.infinity.laurent_b ? (Rat(1) + Rat(4) * *n.infinity.laurent_b).exact_sqrt() : std::nullopt;
        if (!(pipeline.r == r) || !root || *root != Rat(k + 1, 2 * (k - 1))) {
            o.pass = false;
            o.detail += "k=" + std::to_string(k) + " ";
        }
    }
    o.detail = o.pass ? "k=4..12 exact" : "failing " + o.detail;
    return o;
}

// 4. Never Kimura-solvable on both planes for q != 1.
Outcome two_manifold_scan() {
    Outcome o{true, ""};
    long checked = 0, counterexamples = 0;
    std::string listing;
    for (int k = 3; k <= 12; ++k) {
        std::map<Rat, bool> memo;
        auto solvable = [&](const Rat& q) {
            auto it = memo.find(q);
            if (it != memo.end()) return it->second;
            const auto eq = critsys::anve({k, 1, {Rat(1), q}}, 0, 1);
            const bool s = hypergeom::identity_component_solvable(eq).solvable;
            memo.emplace(q, s);
            return s;
        };
        for (long a = 1; a <= 60; ++a)
            for (long b = 1; b <= 60; ++b) {
                const Rat q(a, b);
                if (q == Rat(1)) continue;
                ++checked;
                if (solvable(q) && solvable(q.inverse())) {
                    ++counterexamples;
                    if (listing.size() < 200) listing += " (k=" + std::to_string(k) + ", q=" + q.str() + ")";
                }
            }
    }
    o.pass = counterexamples == 0;
    o.detail = std::to_string(checked) + " (k, q) pairs, " + std::to_string(counterexamples) + " counterexamples" + listing;
    return o;
}

// 5. Ratio condition versus condition (i) or a row-1 match on the forward ANVE.
Outcome necessary_set() {
    long checked = 0, disagreements = 0;
    std::string listing;
    for (int k = 3; k <= 8; ++k) {
        std::map<Rat, bool> seen;
        for (long a = -20; a <= 200; ++a)
            for (long b = 1; b <= 16; ++b) {
                const Rat q(a, b);
                if (!seen.emplace(q, true).second) continue;
                ++checked;
                const auto d = hypergeom::exponent_differences(critsys::anve({k, 1, {Rat(1), q}}, 0, 1));
                const bool kimura = hypergeom::kimura_condition_i(d).has_value() || !hypergeom::schwarz_row1_match(d).empty();
                if (kimura != critsys::necessary_ratio_condition(k, q)) {
                    ++disagreements;
                    if (listing.size() < 200) listing += " (k=" + std::to_string(k) + ", q=" + q.str() + ")";
                }
            }
    }
    return {disagreements == 0, std::to_string(checked) + " distinct (k, q), q = a/b with -20<=a<=200, 1<=b<=16; " +
                                    std::to_string(disagreements) + " disagreements" + listing};
}

// 6. r = 1/(4 z^2): d = 0, P = 1, theta = 1/z, omega^2 - omega/z - 1/(4z^2).
Outcome case2_control() {
    const auto n = kovacic::normal_form(RatFunc::pole_term(Rat(1, 4), Rat(0), 2));
    const auto v = kovacic::classify_galois(n);
    if (!v.certificate) return {false, "no certificate"};
    const auto& c = *v.certificate;
    const RatFunc inv_z = RatFunc::pole_term(Rat(1), Rat(0), 1);
    const bool ok = v.type == kovacic::GaloisType::TypeII && c.d == 0 && c.p == Poly(Rat(1)) && c.theta == inv_z &&
                    kovacic::step3_residual(n, c.theta, c.p).is_zero() && c.omega_linear == -inv_z &&
                    c.omega_constant == RatFunc::pole_term(Rat(-1, 4), Rat(0), 2) && kovacic::verify_certificate(n, c);
    return {ok, "d=" + std::to_string(c.d) + ", P=" + c.p.str() + ", theta=" + c.theta.str() + ", omega^2 + (" +
                    c.omega_linear.str() + ") omega + (" + c.omega_constant.str() + ")"};
}

// 7. {L12, H} = (mu2 - mu1) u1 u2 and {H, H} = 0.
Outcome bracket_oracle() {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> kd(2, 6), md(2, 4), num(-9, 9), den(1, 5), sgn(0, 1);
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SystemParams p;
        p.k = kd(rng);
        p.eps = sgn(rng) ? 1 : -1;
        const int m = md(rng);
        for (int i = 0; i < m; ++i) p.mu.emplace_back(num(rng), den(rng));
        const auto h = critsys::hamiltonian(p);
        const auto l12 = critsys::angular_momentum(m, 0, 1);
        const auto expected = (p.mu[1] - p.mu[0]) * (PolyObservable::u(m, 0) * PolyObservable::u(m, 1));
        const bool ok = critsys::poisson_bracket(l12, h) == expected && testing::brute_force_bracket(l12, h) == expected &&
                        critsys::poisson_bracket(h, h).is_zero() && testing::brute_force_bracket(h, h).is_zero();
        if (!ok) ++failures;
    }
    return {failures == 0, "100 random instances (k<=6, m<=4), " + std::to_string(failures) + " failures"};
}

// 8. Energy and L12 conservation with step-halving.
Outcome conservation() {
    const SystemParams p{2, -1, {Rat(1), Rat(1)}};
    const dynamics::State x0{{1, 0}, {0, 1}, 0};
    const auto t1 = dynamics::integrate(p, x0, 1e-3, 100);
    const auto t2 = dynamics::integrate(p, x0, 5e-4, 100);
    const auto h = critsys::hamiltonian(p);
    const double dh1 = dynamics::observable_drift(t1, h).relative, dh2 = dynamics::observable_drift(t2, h).relative;
    const double dl = dynamics::observable_drift(t1, critsys::angular_momentum(2, 0, 1)).relative;
    const double ratio = dh1 / dh2;
    return {dh1 <= 1e-6 && dl <= 1e-6 && ratio >= 3 && ratio <= 5,
            "relative H drift " + fmt(dh1) + ", relative L12 drift " + fmt(dl) + ", halving ratio " + fmt(ratio)};
}

// 9. Quadrature against the integrated transit time.
Outcome quadrature_cross() {
    const critsys::RestrictedSystem rs{{3, 1, {Rat(1)}}, 0};
    const double h = 1.0 / 3;
    const double tof = dynamics::time_of_flight(rs, h, 0.0, 0.9);
    const double ode = dynamics::transit_time(rs, 0.0, std::sqrt(2 * h), 0.9, 1e-4, 20);
    const double dev = std::abs(tof - ode) / tof;
    return {dev <= 1e-6, "u: 0 -> 0.9 at h=1/3, quadrature " + fmt(tof) + ", leapfrog " + fmt(ode) + ", relative deviation " + fmt(dev)};
}

// 10. Variational residual of xi = u' scales as dt^2.
Outcome ve_scaling() {
    const SystemParams p{3, 1, {Rat(1), Rat(2)}};
    const dynamics::State x0{{0.5, 0}, {0, 0}, 0};
    const auto r1 = dynamics::ve_residual(p, 0, dynamics::integrate(p, x0, 1e-2, 10));
    const auto r2 = dynamics::ve_residual(p, 0, dynamics::integrate(p, x0, 5e-3, 10));
    const double ratio = r1.max_residual / r2.max_residual;
    return {ratio >= 3 && ratio <= 5, "bounded arc from u1=0.5, residuals " + fmt(r1.max_residual) + " / " +
                                          fmt(r2.max_residual) + ", ratio " + fmt(ratio)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"integrability truth table", truth_table},
        {"degenerate-pivot Kovacic regression", degenerate_regression},
        {"exact infinity data", infinity_data},
        {"two-plane Kimura contradiction scan", two_manifold_scan},
        {"ratio condition equivalence", necessary_set},
        {"Kovacic type (ii) positive control", case2_control},
        {"symbolic bracket oracle", bracket_oracle},
        {"numeric conservation", conservation},
        {"quadrature / ODE cross-check", quadrature_cross},
        {"variational residual scaling", ve_scaling},
    };
    int failed = 0, index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
