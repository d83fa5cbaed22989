#pragma once

// Poisson bracket computed monomial by monomial from the exponent vectors,
// without going through PolyObservable::derivative. Same sign convention:
// {F, G} = sum_l dF/dv_l dG/du_l - dF/du_l dG/dv_l.

#include "critint/observable.hpp"

namespace critint::testing {

inline PolyObservable brute_force_bracket(const PolyObservable& f, const PolyObservable& g) {
    const int m = f.m();
    PolyObservable out(m);
    for (const auto& [ef, cf] : f.terms())
        for (const auto& [eg, cg] : g.terms())
            for (int l = 0; l < m; ++l) {
                const auto ul = static_cast<std::size_t>(l), vl = static_cast<std::size_t>(m + l);
                auto product = ef;
                for (std::size_t i = 0; i < product.size(); ++i) product[i] += eg[i];
                if (product[ul] == 0 || product[vl] == 0) continue;
                --product[ul];
                --product[vl];
                if (ef[vl] > 0 && eg[ul] > 0) out.add_term(product, cf * cg * Rat(ef[vl]) * Rat(eg[ul]));
                if (ef[ul] > 0 && eg[vl] > 0) out.add_term(product, -cf * cg * Rat(ef[ul]) * Rat(eg[vl]));
            }
    return out;
}

}  // namespace critint::testing
