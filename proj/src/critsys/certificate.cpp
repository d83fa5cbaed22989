#include "critint/critsys.hpp"
#include "critint/json_exact.hpp"

namespace critint::critsys {

namespace {

using nlohmann::json;

json manifold_json(const ManifoldEvidence& e) {
    return {{"pivot", e.pivot + 1},
            {"other", e.other + 1},
            {"anve", {{"p", e.equation.p_coefficient()}, {"q", e.equation.q_coefficient()}, {"scheme", e.equation}}},
            {"exp_diffs", e.diffs},
            {"kimura", e.kimura}};
}

json degenerate_json(const DegenerateEvidence& d) {
    return {{"pivot", d.pivot + 1},
            {"reference", d.reference + 1},
            {"equation", {{"a1", d.equation.a1}, {"a2", d.equation.a2}}},
            {"normal", d.normal},
            {"galois", d.galois}};
}

SystemParams params_from_json(const json& j) {
    SystemParams p;
    p.k = j.at("k").get<int>();
    p.eps = j.at("eps").get<int>();
    for (const auto& x : j.at("mu")) p.mu.push_back(Rat::parse(x.get<std::string>()));
    p.validate();
    return p;
}

// Re-runs one manifold record; returns its Kimura verdict.
bool replay_manifold(const SystemParams& p, const json& e, const std::string& label, std::vector<std::string>& problems) {
    const int pivot = e.at("pivot").get<int>() - 1, other = e.at("other").get<int>() - 1;
    const RatFunc pc = e.at("anve").at("p").get<RatFunc>(), qc = e.at("anve").at("q").get<RatFunc>();
    const hypergeom::HGEquation eq = hypergeom::HGEquation::from_coefficients(pc, qc);
    const hypergeom::ExpDiffs diffs = hypergeom::exponent_differences(eq);
    if (!(diffs == hypergeom::exp_diffs_from_json(e.at("exp_diffs"))))
        problems.push_back(label + ": recorded exponent differences do not match the recorded equation");
    const hypergeom::HGEquation fresh = anve(p, pivot, other);
    if (!(fresh.p_coefficient() == pc && fresh.q_coefficient() == qc))
        problems.push_back(label + ": recorded equation differs from the one derived from the parameters");
    const bool solvable = hypergeom::identity_component_solvable(diffs).solvable;
    if (solvable != e.at("kimura").at("solvable").get<bool>())
        problems.push_back(label + ": Kimura verdict does not replay");
    return solvable;
}

}  // namespace

json certificate_json(const Certificate& c) {
    json mu = json::array();
    for (const auto& x : c.params.mu) mu.push_back(x.str());
    json j = {{"schema", 1},
              {"verdict", to_string(c.verdict)},
              {"reason", to_string(c.reason)},
              {"k", c.params.k},
              {"eps", c.params.eps},
              {"mu", mu}};
    j["pair"] = c.pair ? json::array({c.pair->first + 1, c.pair->second + 1}) : json(nullptr);
    if (c.forward) j["forward"] = manifold_json(*c.forward);
    if (c.reverse) j["reverse"] = manifold_json(*c.reverse);
    if (c.degenerate) j["kovacic_trace"] = degenerate_json(*c.degenerate);
    j["subcase"] = c.negative_ratio ? json("negative_ratio") : json(nullptr);
    j["discrepancy"] = c.discrepancy;
    return j;
}

ReplayResult replay_certificate(const json& j) {
    ReplayResult r;
    if (j.value("schema", 0) != 1) {
        r.consistent = false;
        r.problems.push_back("unsupported certificate schema");
        return r;
    }
    const SystemParams p = params_from_json(j);
    r.verdict = closed_form_verdict(p);
    if (to_string(r.verdict) != j.at("verdict").get<std::string>())
        r.problems.push_back("recorded verdict disagrees with the closed-form test");

    bool establishes = false;
    if (j.contains("forward") && j.contains("reverse")) {
        const bool fwd = replay_manifold(p, j["forward"], "forward", r.problems);
        const bool rev = replay_manifold(p, j["reverse"], "reverse", r.problems);
        establishes = !(fwd && rev);
    }
    if (j.contains("kovacic_trace")) {
        const json& t = j["kovacic_trace"];
        const kovacic::SLODE eq{t.at("equation").at("a1").get<RatFunc>(), t.at("equation").at("a2").get<RatFunc>()};
        const kovacic::NormalODE n = kovacic::reduce_to_normal(eq);
        if (!(n.r == t.at("normal").at("r").get<RatFunc>()))
            r.problems.push_back("kovacic: recorded normal form does not match the recorded equation");
        const kovacic::SLODE fresh = anve_degenerate(p, t.at("pivot").get<int>() - 1, t.at("reference").get<int>() - 1,
                                                     t.at("reference").get<int>() - 1);
        if (!(fresh.a1 == eq.a1 && fresh.a2 == eq.a2))
            r.problems.push_back("kovacic: recorded equation differs from the one derived from the parameters");
        const kovacic::GaloisVerdict g = kovacic::classify_galois(n);
        if (kovacic::to_string(g.type) != t.at("galois").at("verdict").get<std::string>())
            r.problems.push_back("kovacic: Galois verdict does not replay");
        establishes = g.type == kovacic::GaloisType::TypeIV;
    }
    if (r.verdict == Verdict::NonIntegrable && !establishes && !j.value("discrepancy", false))
        r.problems.push_back("evidence does not establish non-integrability but no discrepancy is flagged");
    if (r.verdict == Verdict::NonIntegrable && establishes && j.value("discrepancy", false))
        r.problems.push_back("discrepancy flagged although the evidence establishes the verdict");
    r.consistent = r.problems.empty();
    return r;
}

}  // namespace critint::critsys
