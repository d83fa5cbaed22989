#include "critint/ratfunc.hpp"

#include <stdexcept>

namespace critint {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(Rat(1));
        return;
    }
    const Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    const Rat lc = den_.leading();
    if (lc != Rat(1)) {
        const Poly inv(lc.inverse());
        num_ *= inv;
        den_ *= inv;
    }
}

RatFunc RatFunc::pole_term(const Rat& c, const Rat& pole, int order) {
    return RatFunc(Poly(c), pow(Poly::linear_factor(pole), static_cast<unsigned>(order)));
}

RatFunc RatFunc::parse(std::string_view text) {
    const auto semi = text.find(';');
    if (semi == std::string_view::npos) return RatFunc(Poly::parse(text));
    return RatFunc(Poly::parse(text.substr(0, semi)), Poly::parse(text.substr(semi + 1)));
}

RatFunc RatFunc::derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rat RatFunc::eval(const Rat& x) const {
    const Rat d = den_.eval(x);
    if (d.is_zero()) throw std::domain_error("RatFunc: evaluation at a pole");
    return num_.eval(x) / d;
}

double RatFunc::eval(double x) const { return num_.eval(x) / den_.eval(x); }

std::string RatFunc::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (den_ == o.den_) return *this = RatFunc(num_ + o.num_, den_);
    return *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    return *this = RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.is_zero()) throw std::domain_error("RatFunc: division by the zero function");
    return *this = RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc PartialFractions::recompose() const {
    RatFunc acc(polynomial_part);
    for (const auto& p : poles)
        for (std::size_t j = 0; j < p.coeffs.size(); ++j)
            if (!p.coeffs[j].is_zero()) acc += RatFunc::pole_term(p.coeffs[j], p.pole, static_cast<int>(j) + 1);
    return acc;
}

PartialFractions partial_fractions(const RatFunc& f, const std::vector<RootMult>& roots) {
    Poly product(Rat(1));
    for (const auto& r : roots) {
        if (r.multiplicity < 1) throw std::invalid_argument("partial_fractions: multiplicity must be positive");
        product *= pow(Poly::linear_factor(r.root), static_cast<unsigned>(r.multiplicity));
    }
    if (product != f.den())
        throw std::invalid_argument("partial_fractions: supplied roots do not factor the denominator " +
                                    f.den().str());

    auto [quot, rem] = f.num().divmod(f.den());
    PartialFractions out;
    out.polynomial_part = quot;
    for (const auto& r : roots) {
        const Poly cofactor =
            f.den().divmod(pow(Poly::linear_factor(r.root), static_cast<unsigned>(r.multiplicity))).first;
        // Laurent coefficients of rem/cofactor around r.root, t = z - root.
        const Poly rs = rem.taylor_shift(r.root);
        const Poly es = cofactor.taylor_shift(r.root);
        const auto m = static_cast<std::size_t>(r.multiplicity);
        std::vector<Rat> g(m, Rat(0));
        for (std::size_t n = 0; n < m; ++n) {
            Rat acc = rs.coeff(static_cast<int>(n));
            for (std::size_t i = 1; i <= n; ++i) acc -= es.coeff(static_cast<int>(i)) * g[n - i];
            g[n] = acc / es.coeff(0);
        }
        PoleTerms terms{r.root, std::vector<Rat>(m, Rat(0))};
        for (std::size_t j = 1; j <= m; ++j) terms.coeffs[j - 1] = g[m - j];
        out.poles.push_back(std::move(terms));
    }
    return out;
}

std::vector<RootMult> rational_poles(const RatFunc& f) {
    std::vector<RootMult> out;
    if (f.den().degree() == 0) return out;
    int total = 0;
    for (const auto& [root, mult] : rational_roots(f.den())) {
        out.push_back({root, mult});
        total += mult;
    }
    if (total != f.den().degree())
        throw std::invalid_argument("denominator " + f.den().str() + " has irrational or complex roots");
    return out;
}

int order_at(const RatFunc& f, const Rat& c) {
    if (f.is_zero()) throw std::domain_error("order_at: the zero function has no finite order");
    return f.den().multiplicity(c) - f.num().multiplicity(c);
}

int order_at_infinity(const RatFunc& f) {
    if (f.is_zero()) throw std::domain_error("order_at_infinity: the zero function has no finite order");
    return f.den().degree() - f.num().degree();
}

}  // namespace critint
