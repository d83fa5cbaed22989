#pragma once

// JSON forms of exact values. Rationals travel as "p/q" strings so no
// precision is lost; polynomials as coefficient lists, lowest degree first.

#include "critint/ratfunc.hpp"

#include <json.hpp>

namespace critint {

inline void to_json(nlohmann::json& j, const Rat& r) { j = r.str(); }
inline void from_json(const nlohmann::json& j, Rat& r) { r = Rat::parse(j.get<std::string>()); }

inline void to_json(nlohmann::json& j, const Poly& p) {
    j = nlohmann::json::array();
    for (const auto& c : p.coeffs()) j.push_back(c.str());
}
inline void from_json(const nlohmann::json& j, Poly& p) { p = Poly(j.get<std::vector<Rat>>()); }

inline void to_json(nlohmann::json& j, const RatFunc& f) {
    j = {{"text", f.str()}, {"num", f.num()}, {"den", f.den()}};
}
inline void from_json(const nlohmann::json& j, RatFunc& f) {
    f = RatFunc(j.at("num").get<Poly>(), j.at("den").get<Poly>());
}

}  // namespace critint
