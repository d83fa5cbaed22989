#include "critint/hypergeom.hpp"

#include <algorithm>

namespace critint::hypergeom {

namespace {

ExponentPair solve_indicial(const Rat& sum, const Rat& product) {
    // x = sum/2 +- sqrt(sum^2 - 4 product)/2
    const Surd half_root = Surd::sqrt(sum * sum - Rat(4) * product) * Surd(Rat(1, 2));
    const Surd centre(sum * Rat(1, 2));
    return {centre + half_root, centre - half_root, sum, product};
}

void require_one_extension(const std::array<const ExponentPair*, 3>& pairs) {
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            if (!pairs[i]->first.same_field(pairs[j]->first))
                throw RadicandMismatch("exponents need two quadratic extensions: " + pairs[i]->first.str() +
                                       " and " + pairs[j]->first.str());
}

Rat coefficient_at(const PartialFractions& pf, const Rat& pole, int order) {
    for (const auto& p : pf.poles)
        if (p.pole == pole) return order <= static_cast<int>(p.coeffs.size()) ? p.coeffs[order - 1] : Rat(0);
    return Rat(0);
}

PartialFractions decompose_on_0_1(const RatFunc& f, int max_order, const char* name) {
    const auto poles = rational_poles(f);
    for (const auto& p : poles) {
        if (p.root != Rat(0) && p.root != Rat(1))
            throw std::invalid_argument(std::string(name) + " has a pole outside {0, 1}: " + f.str());
        if (p.multiplicity > max_order)
            throw std::invalid_argument(std::string(name) + " has a pole of order " +
                                        std::to_string(p.multiplicity) + ": " + f.str());
    }
    PartialFractions pf = partial_fractions(f, poles);
    if (!pf.polynomial_part.is_zero())
        throw std::invalid_argument(std::string(name) + " has a polynomial part: " + f.str());
    return pf;
}

}  // namespace

HGEquation HGEquation::from_indicial(const Rat& sum0, const Rat& prod0, const Rat& sum1, const Rat& prod1,
                                     const Rat& sum_inf, const Rat& prod_inf) {
    const Rat total = sum0 + sum1 + sum_inf;
    if (total != Rat(1))
        throw FuchsViolation("exponents sum to " + total.str() + ", not 1");
    HGEquation eq;
    eq.zero_ = solve_indicial(sum0, prod0);
    eq.one_ = solve_indicial(sum1, prod1);
    eq.inf_ = solve_indicial(sum_inf, prod_inf);
    require_one_extension({&eq.zero_, &eq.one_, &eq.inf_});
    return eq;
}

HGEquation HGEquation::from_coefficients(const RatFunc& p, const RatFunc& q) {
    const PartialFractions pp = decompose_on_0_1(p, 1, "p");
    const PartialFractions qq = decompose_on_0_1(q, 2, "q");
    const Rat sum0 = Rat(1) - coefficient_at(pp, Rat(0), 1);
    const Rat sum1 = Rat(1) - coefficient_at(pp, Rat(1), 1);
    const Rat prod0 = coefficient_at(qq, Rat(0), 2);
    const Rat prod1 = coefficient_at(qq, Rat(1), 2);
    // B/(z(z-1)) = B/(z-1) - B/z
    const Rat mixed = coefficient_at(qq, Rat(1), 1);
    if (coefficient_at(qq, Rat(0), 1) + mixed != Rat(0))
        throw std::invalid_argument("q has residues that do not cancel at infinity: " + q.str());
    return from_indicial(sum0, prod0, sum1, prod1, Rat(1) - sum0 - sum1, mixed + prod0 + prod1);
}

RatFunc HGEquation::p_coefficient() const {
    return RatFunc::pole_term(Rat(1) - zero_.sum, Rat(0), 1) + RatFunc::pole_term(Rat(1) - one_.sum, Rat(1), 1);
}

RatFunc HGEquation::q_coefficient() const {
    const RatFunc z_zm1(Poly(Rat(1)), Poly{Rat(0), Rat(-1), Rat(1)});
    return RatFunc::pole_term(zero_.product, Rat(0), 2) + RatFunc::pole_term(one_.product, Rat(1), 2) +
           RatFunc(inf_.product - zero_.product - one_.product) * z_zm1;
}

Surd HGEquation::exponent_sum() const {
    return zero_.first + zero_.second + one_.first + one_.second + inf_.first + inf_.second;
}

ExpDiffs exponent_differences(const HGEquation& eq) {
    return {(eq.at_zero().first - eq.at_zero().second).normalized(),
            (eq.at_infinity().first - eq.at_infinity().second).normalized(),
            (eq.at_one().first - eq.at_one().second).normalized()};
}

const std::array<std::string, 4>& combo_labels() {
    static const std::array<std::string, 4> labels{"rho+tau+sigma", "-rho+tau+sigma", "rho-tau+sigma",
                                                   "rho+tau-sigma"};
    return labels;
}

std::optional<ConditionIWitness> kimura_condition_i(const ExpDiffs& d) {
    static constexpr std::array<std::array<int, 3>, 4> signs{{{1, 1, 1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}}};
    for (int i = 0; i < 4; ++i) {
        const auto& s = signs[static_cast<std::size_t>(i)];
        try {
            const Surd v = Surd(s[0]) * d.rho + Surd(s[1]) * d.tau + Surd(s[2]) * d.sigma;
            if (v.is_odd_integer()) return ConditionIWitness{i, v, v.rational_part().num()};
        } catch (const RadicandMismatch&) {
            // independent irrationalities never sum to a rational
        }
    }
    return std::nullopt;
}

const std::array<SchwarzRow, 15>& schwarz_table() {
    static const std::array<SchwarzRow, 15> table{{
        {1, {Rat(1, 2), Rat(1, 2), Rat(0)}, true, false},
        {2, {Rat(1, 2), Rat(1, 3), Rat(1, 3)}, false, false},
        {3, {Rat(2, 3), Rat(1, 3), Rat(1, 3)}, false, true},
        {4, {Rat(1, 2), Rat(1, 3), Rat(1, 4)}, false, false},
        {5, {Rat(2, 3), Rat(1, 4), Rat(1, 4)}, false, true},
        {6, {Rat(1, 2), Rat(1, 3), Rat(1, 5)}, false, false},
        {7, {Rat(2, 5), Rat(1, 3), Rat(1, 3)}, false, true},
        {8, {Rat(2, 3), Rat(1, 5), Rat(1, 5)}, false, true},
        {9, {Rat(1, 2), Rat(2, 5), Rat(1, 5)}, false, true},
        {10, {Rat(3, 5), Rat(1, 3), Rat(1, 5)}, false, true},
        {11, {Rat(2, 5), Rat(2, 5), Rat(2, 5)}, false, true},
        {12, {Rat(2, 3), Rat(1, 3), Rat(1, 5)}, false, true},
        {13, {Rat(4, 5), Rat(1, 5), Rat(1, 5)}, false, true},
        {14, {Rat(1, 2), Rat(2, 5), Rat(1, 3)}, false, true},
        {15, {Rat(3, 5), Rat(2, 5), Rat(1, 3)}, false, true},
    }};
    return table;
}

namespace {

// Fractional part and floor of +-value, when value is rational.
struct Placed {
    bool rational = false;
    Rat frac;
    mpz_class whole;
};

std::vector<SchwarzMatch> scan(const ExpDiffs& d, bool row1_only) {
    const std::array<const Surd*, 3> values{&d.rho, &d.tau, &d.sigma};
    std::array<std::array<Placed, 2>, 3> placed;  // [difference][0: +, 1: -]
    for (std::size_t i = 0; i < 3; ++i) {
        const auto r = values[i]->as_rational();
        if (!r) continue;
        for (std::size_t s = 0; s < 2; ++s) {
            const Rat v = s == 0 ? *r : -*r;
            const mpz_class f = v.floor();
            placed[i][s] = {true, v - Rat(f), f};
        }
    }

    std::vector<SchwarzMatch> matches;
    for (const auto& row : schwarz_table()) {
        if (row1_only && row.number != 1) break;
        std::array<int, 3> perm{0, 1, 2};
        do {
            const int third_signs = row.arbitrary_third ? 1 : 2;
            for (int s0 = 0; s0 < 2; ++s0)
                for (int s1 = 0; s1 < 2; ++s1)
                    for (int s2 = 0; s2 < third_signs; ++s2) {
                        const std::array<int, 3> sidx{s0, s1, s2};
                        SchwarzMatch m;
                        m.row = row.number;
                        m.slot = perm;
                        m.parity_required = row.parity_even;
                        bool ok = true;
                        for (std::size_t c = 0; c < 3 && ok; ++c) {
                            m.sign[c] = sidx[c] == 0 ? 1 : -1;
                            if (c == 2 && row.arbitrary_third) break;
                            const Placed& p = placed[static_cast<std::size_t>(perm[c])][static_cast<std::size_t>(sidx[c])];
                            ok = p.rational && p.frac == row.cosets[c];
                            if (ok) m.params[c] = p.whole;
                        }
                        if (!ok) continue;
                        if (row.parity_even) {
                            const mpz_class total = m.params[0] + m.params[1] + m.params[2];
                            if (mpz_odd_p(total.get_mpz_t())) continue;
                        }
                        matches.push_back(std::move(m));
                    }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return matches;
}

}  // namespace

std::vector<SchwarzMatch> schwarz_table_match(const ExpDiffs& d) { return scan(d, false); }
std::vector<SchwarzMatch> schwarz_row1_match(const ExpDiffs& d) { return scan(d, true); }

std::string KimuraVerdict::via() const {
    if (condition_i) return "condition_i";
    if (!schwarz.empty()) return "schwarz_row_" + std::to_string(schwarz.front().row);
    return "none";
}

KimuraVerdict identity_component_solvable(const ExpDiffs& d) {
    KimuraVerdict v;
    v.condition_i = kimura_condition_i(d);
    v.schwarz = schwarz_table_match(d);
    v.solvable = v.condition_i.has_value() || !v.schwarz.empty();
    return v;
}

KimuraVerdict identity_component_solvable(const HGEquation& eq) {
    return identity_component_solvable(exponent_differences(eq));
}

void to_json(nlohmann::json& j, const ExponentPair& e) {
    j = {{"exponents", {e.first.str(), e.second.str()}}, {"sum", e.sum.str()}, {"product", e.product.str()}};
}

void to_json(nlohmann::json& j, const HGEquation& eq) {
    j = {{"at_zero", eq.at_zero()},
         {"at_one", eq.at_one()},
         {"at_infinity", eq.at_infinity()},
         {"p", eq.p_coefficient().str()},
         {"q", eq.q_coefficient().str()}};
}

void to_json(nlohmann::json& j, const ExpDiffs& d) {
    j = {{"rho", d.rho.str()}, {"tau", d.tau.str()}, {"sigma", d.sigma.str()}};
}

ExpDiffs exp_diffs_from_json(const nlohmann::json& j) {
    return {Surd::parse(j.at("rho").get<std::string>()), Surd::parse(j.at("tau").get<std::string>()),
            Surd::parse(j.at("sigma").get<std::string>())};
}

void to_json(nlohmann::json& j, const SchwarzMatch& m) {
    static const std::array<std::string, 3> names{"rho", "tau", "sigma"};
    nlohmann::json columns = nlohmann::json::array();
    for (std::size_t c = 0; c < 3; ++c)
        columns.push_back({{"difference", names[static_cast<std::size_t>(m.slot[c])]},
                           {"sign", m.sign[c]},
                           {"param", m.params[c].get_str()}});
    j = {{"row", m.row}, {"columns", columns}, {"parity_required", m.parity_required}};
}

void to_json(nlohmann::json& j, const KimuraVerdict& v) {
    j = {{"solvable", v.solvable}, {"via", v.via()}};
    if (v.condition_i) {
        j["witness"] = {{"combo", combo_labels()[static_cast<std::size_t>(v.condition_i->combo)]},
                        {"value", v.condition_i->odd_integer.get_str()}};
    } else if (!v.schwarz.empty()) {
        j["witness"] = v.schwarz.front();
    } else {
        j["witness"] = nullptr;
    }
    std::vector<int> rows;
    for (const auto& m : v.schwarz) rows.push_back(m.row);
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    j["schwarz_rows"] = rows;
}

}  // namespace critint::hypergeom
