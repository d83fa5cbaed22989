#include "critint/kovacic.hpp"

#include "critint/json_exact.hpp"
#include "critint/surd.hpp"

#include <algorithm>
#include <set>

namespace critint::kovacic {

NormalODE normal_form(const RatFunc& r) {
    NormalODE n;
    n.r = r;
    std::vector<RootMult> roots;
    try {
        roots = rational_poles(r);
    } catch (const std::invalid_argument& e) {
        throw UnsupportedInput(std::string("pole locations must be rational: ") + e.what());
    }
    const PartialFractions pf = partial_fractions(r, roots);
    for (std::size_t i = 0; i < roots.size(); ++i)
        n.poles.push_back({roots[i].root, roots[i].multiplicity, pf.poles[i].coeffs});
    if (!r.is_zero()) {
        n.infinity.order = order_at_infinity(r);
        if (n.infinity.order == 2) n.infinity.laurent_b = r.num().leading() / r.den().leading();
    }
    return n;
}

NormalODE reduce_to_normal(const SLODE& eq) {
    return normal_form(eq.a1 * eq.a1 * RatFunc(Rat(1, 4)) - eq.a1.derivative() * RatFunc(Rat(1, 2)) + eq.a2);
}

namespace {

bool has_rational_sqrt(const Rat& x) { return x.exact_sqrt().has_value(); }

std::string at(const Rat& c) { return "pole at z=" + c.str(); }

}  // namespace

CaseScreen screen_cases(const NormalODE& n) {
    CaseScreen s;
    const int oinf = n.infinity.order;
    const std::string oinf_text = oinf == InfinityData::kInfinite ? "inf" : std::to_string(oinf);

    for (const auto& p : n.poles)
        if (p.order != 1 && p.order % 2 != 0) {
            s.type_i.possible = false;
            s.type_i.reasons.push_back(at(p.location) + " has odd order " + std::to_string(p.order) + " > 1");
        }
    if (oinf != InfinityData::kInfinite && oinf % 2 != 0 && oinf <= 2) {
        s.type_i.possible = false;
        s.type_i.reasons.push_back("order at infinity " + oinf_text + " is odd and not greater than 2");
    }

    const bool qualifying = std::any_of(n.poles.begin(), n.poles.end(),
                                        [](const Pole& p) { return p.order == 2 || (p.order > 2 && p.order % 2 != 0); });
    if (!qualifying) {
        s.type_ii.possible = false;
        s.type_ii.reasons.push_back("no pole of order 2 or of odd order greater than 2");
    }

    Rat sum_beta(0), delta(0);
    for (const auto& p : n.poles) {
        if (p.order > 2) {
            s.type_iii.possible = false;
            s.type_iii.reasons.push_back(at(p.location) + " has order " + std::to_string(p.order) + " > 2");
            continue;
        }
        const Rat alpha = p.order == 2 ? p.coeffs[1] : Rat(0);
        const Rat beta = p.coeffs[0];
        if (p.order == 2 && !has_rational_sqrt(Rat(1) + Rat(4) * alpha)) {
            s.type_iii.possible = false;
            s.type_iii.reasons.push_back(at(p.location) + ": sqrt(1+4*" + alpha.str() + ") is irrational");
        }
        sum_beta += beta;
        delta += alpha + beta * p.location;
    }
    if (oinf < 2) {
        s.type_iii.possible = false;
        s.type_iii.reasons.push_back("order at infinity " + oinf_text + " is less than 2");
    }
    if (s.type_iii.possible) {
        if (!sum_beta.is_zero()) {
            s.type_iii.possible = false;
            s.type_iii.reasons.push_back("simple-pole residues sum to " + sum_beta.str() + ", not 0");
        } else if (!has_rational_sqrt(Rat(1) + Rat(4) * delta)) {
            s.type_iii.possible = false;
            s.type_iii.reasons.push_back("sqrt(1+4*" + delta.str() + ") is irrational for the 1/z^2 term at infinity");
        }
    }
    return s;
}

namespace {

// {2 + l*sqrt(1+4b) | l = 0, +-2} intersected with Z
std::vector<int> order_two_family(const Rat& b) {
    const Surd root = Surd::sqrt(Rat(1) + Rat(4) * b);
    std::set<int> out;
    for (int l : {-2, 0, 2}) {
        const Surd v = Surd(2) + Surd(l) * root;
        if (v.is_integer())
            if (const auto x = v.rational_part().to_long()) out.insert(static_cast<int>(*x));
    }
    return {out.begin(), out.end()};
}

}  // namespace

Families case2_families(const NormalODE& n) {
    Families f;
    for (const auto& p : n.poles) {
        if (p.order == 1) {
            f.at_poles.push_back({4});
        } else if (p.order == 2) {
            f.at_poles.push_back(order_two_family(p.coeffs[1]));
        } else {
            f.at_poles.push_back({p.order});
        }
    }
    const int oinf = n.infinity.order;
    if (oinf > 2) {
        f.at_infinity = {0, 2, 4};
    } else if (oinf == 2) {
        f.at_infinity = order_two_family(*n.infinity.laurent_b);
    } else {
        f.at_infinity = {oinf};
    }
    return f;
}

std::vector<Candidate> case2_candidates(const Families& f) {
    std::vector<Candidate> out;
    for (const auto& e : f.at_poles)
        if (e.empty()) return out;
    std::vector<std::size_t> idx(f.at_poles.size(), 0);
    for (;;) {
        std::vector<int> choice(f.at_poles.size());
        long pole_sum = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            choice[i] = f.at_poles[i][idx[i]];
            pole_sum += choice[i];
        }
        for (int w : f.at_infinity) {
            Candidate c{choice, w, Rat(w - pole_sum, 2), false};
            c.retained = c.d.is_integer() && c.d.sign() >= 0;
            out.push_back(std::move(c));
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == f.at_poles[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

RatFunc case2_theta(const NormalODE& n, const std::vector<int>& at_poles) {
    RatFunc theta;
    for (std::size_t i = 0; i < n.poles.size(); ++i)
        theta += RatFunc::pole_term(Rat(at_poles[i], 2), n.poles[i].location, 1);
    return theta;
}

namespace {

struct Step3Coefficients {
    RatFunc a, b, c;  // L(P) = P''' + a P'' + b P' + c P
};

Step3Coefficients step3_coefficients(const NormalODE& n, const RatFunc& theta) {
    const RatFunc& r = n.r;
    const RatFunc dtheta = theta.derivative();
    const RatFunc ddtheta = dtheta.derivative();
    const RatFunc three(3), four(4), two(2);
    return {three * theta, three * theta * theta + three * dtheta - four * r,
            ddtheta + three * theta * dtheta + theta * theta * theta - four * r * theta - two * r.derivative()};
}

RatFunc apply(const Step3Coefficients& k, const Poly& p) {
    const Poly d1 = p.derivative(), d2 = d1.derivative(), d3 = d2.derivative();
    return RatFunc(d3) + k.a * RatFunc(d2) + k.b * RatFunc(d1) + k.c * RatFunc(p);
}

Poly lcm(const Poly& a, const Poly& b) { return (a * b).divmod(gcd(a, b)).first.monic(); }

// Solves A x = rhs over Q; free unknowns are set to zero.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> rhs, std::size_t cols) {
    const std::size_t rows = a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        std::swap(rhs[sel], rhs[r]);
        const Rat inv = a[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Rat f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!rhs[i].is_zero()) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = rhs[i];
    return x;
}

}  // namespace

RatFunc step3_residual(const NormalODE& n, const RatFunc& theta, const Poly& p) {
    return apply(step3_coefficients(n, theta), p);
}

std::optional<Case2Certificate> case2_solve(const NormalODE& n, const Candidate& cand) {
    if (!cand.retained) return std::nullopt;
    const long d = *cand.d.to_long();
    const RatFunc theta = case2_theta(n, cand.at_poles);
    const Step3Coefficients k = step3_coefficients(n, theta);

    // Images of the monomials z^0..z^d, brought to one denominator.
    std::vector<RatFunc> images;
    Poly common(Rat(1));
    for (long i = 0; i <= d; ++i) {
        images.push_back(apply(k, Poly::monomial(Rat(1), static_cast<int>(i))));
        common = lcm(common, images.back().den());
    }
    std::vector<Poly> cleared;
    int max_degree = 0;
    for (const auto& img : images) {
        cleared.push_back(img.num() * common.divmod(img.den()).first);
        max_degree = std::max(max_degree, cleared.back().degree());
    }
    const auto unknowns = static_cast<std::size_t>(d);
    std::vector<std::vector<Rat>> a(static_cast<std::size_t>(max_degree) + 1, std::vector<Rat>(unknowns, Rat(0)));
    std::vector<Rat> rhs(static_cast<std::size_t>(max_degree) + 1, Rat(0));
    for (int row = 0; row <= max_degree; ++row) {
        for (std::size_t i = 0; i < unknowns; ++i) a[static_cast<std::size_t>(row)][i] = cleared[i].coeff(row);
        rhs[static_cast<std::size_t>(row)] = -cleared[unknowns].coeff(row);
    }
    const auto x = solve_linear(std::move(a), std::move(rhs), unknowns);
    if (!x) return std::nullopt;

    std::vector<Rat> coeffs = *x;
    coeffs.push_back(Rat(1));
    Case2Certificate cert;
    cert.at_poles = cand.at_poles;
    cert.at_infinity = cand.at_infinity;
    cert.d = d;
    cert.theta = theta;
    cert.p = Poly(std::move(coeffs));
    cert.phi = theta + RatFunc(cert.p.derivative(), cert.p);
    cert.omega_linear = -cert.phi;
    cert.omega_constant =
        cert.phi.derivative() * RatFunc(Rat(1, 2)) + cert.phi * cert.phi * RatFunc(Rat(1, 2)) - n.r;
    if (!verify_certificate(n, cert)) return std::nullopt;
    return cert;
}

bool verify_certificate(const NormalODE& n, const Case2Certificate& cert) {
    if (cert.p.degree() != cert.d || cert.p.leading() != Rat(1)) return false;
    if (!step3_residual(n, cert.theta, cert.p).is_zero()) return false;
    const RatFunc& phi = cert.phi;
    const RatFunc dphi = phi.derivative();
    const RatFunc riccati = dphi.derivative() + RatFunc(3) * phi * dphi + phi * phi * phi -
                            RatFunc(4) * n.r * phi - RatFunc(2) * n.r.derivative();
    if (!riccati.is_zero()) return false;
    const RatFunc expected_constant = dphi * RatFunc(Rat(1, 2)) + phi * phi * RatFunc(Rat(1, 2)) - n.r;
    return cert.omega_linear == -phi && cert.omega_constant == expected_constant;
}

std::string to_string(GaloisType t) {
    switch (t) {
        case GaloisType::TypeII: return "TypeII";
        case GaloisType::TypeIV: return "TypeIV";
        case GaloisType::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

GaloisVerdict classify_galois(const NormalODE& n) {
    GaloisVerdict v;
    v.screen = screen_cases(n);
    v.families = case2_families(n);
    for (auto& c : case2_candidates(v.families)) {
        // stop solving at the first success; later candidates are listed only
        CandidateOutcome o{c, c.retained && !v.certificate, false};
        if (o.attempted) {
            if (auto cert = case2_solve(n, c)) {
                o.solved = true;
                v.certificate = std::move(cert);
            }
        }
        v.candidates.push_back(std::move(o));
    }
    if (v.certificate) {
        v.type = GaloisType::TypeII;
    } else if (!v.screen.type_i.possible && !v.screen.type_iii.possible) {
        v.type = GaloisType::TypeIV;
    } else {
        v.type = GaloisType::Indeterminate;
    }
    return v;
}

namespace {

nlohmann::json screen_json(const ScreenResult& s) { return {{"possible", s.possible}, {"reasons", s.reasons}}; }

}  // namespace

void to_json(nlohmann::json& j, const NormalODE& n) {
    nlohmann::json poles = nlohmann::json::array();
    for (const auto& p : n.poles) poles.push_back({{"location", p.location}, {"order", p.order}, {"coeffs", p.coeffs}});
    nlohmann::json inf;
    inf["order"] = n.infinity.order == InfinityData::kInfinite ? nlohmann::json("inf") : nlohmann::json(n.infinity.order);
    if (n.infinity.laurent_b) inf["laurent_b"] = *n.infinity.laurent_b;
    j = {{"r", n.r}, {"poles", poles}, {"infinity", inf}};
}

void to_json(nlohmann::json& j, const CaseScreen& s) {
    j = {{"type_i", screen_json(s.type_i)}, {"type_ii", screen_json(s.type_ii)}, {"type_iii", screen_json(s.type_iii)}};
}

void to_json(nlohmann::json& j, const Case2Certificate& c) {
    j = {{"at_poles", c.at_poles}, {"at_infinity", c.at_infinity}, {"d", c.d},
         {"theta", c.theta},       {"P", c.p.str()},                {"P_coeffs", c.p},
         {"phi", c.phi},           {"omega_linear", c.omega_linear}, {"omega_constant", c.omega_constant}};
}

void to_json(nlohmann::json& j, const GaloisVerdict& v) {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& o : v.candidates)
        cands.push_back({{"at_poles", o.candidate.at_poles},
                         {"at_infinity", o.candidate.at_infinity},
                         {"d", o.candidate.d},
                         {"retained", o.candidate.retained},
                         {"attempted", o.attempted},
                         {"solved", o.solved}});
    j = {{"verdict", to_string(v.type)},
         {"screen", v.screen},
         {"families", {{"at_poles", v.families.at_poles}, {"at_infinity", v.families.at_infinity}}},
         {"candidates", cands}};
    j["certificate"] = v.certificate ? nlohmann::json(*v.certificate) : nlohmann::json(nullptr);
}

}  // namespace critint::kovacic
