#pragma once

// Reduced rational functions in one variable over Q, plus the partial
// fraction and pole-order machinery the Kovacic code relies on.

#include "critint/poly.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace critint {

/// num / den with gcd(num, den) = 1 and den monic.
class RatFunc {
public:
    RatFunc() : den_(Rat(1)) {}
    RatFunc(const Poly& p) : num_(p), den_(Rat(1)) {}  // NOLINT
    RatFunc(const Rat& c) : RatFunc(Poly(c)) {}          // NOLINT
    RatFunc(long c) : RatFunc(Rat(c)) {}                 // NOLINT
    RatFunc(int c) : RatFunc(Rat(c)) {}                  // NOLINT
    RatFunc(Poly num, Poly den);

    /// c / (z - pole)^order
    static RatFunc pole_term(const Rat& c, const Rat& pole, int order);
    /// "num;den" where each side is a coefficient list or an expression in z.
    static RatFunc parse(std::string_view text);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc derivative() const;
    Rat eval(const Rat& x) const;
    double eval(double x) const;

    /// "num / den" with caret powers; just "num" when den == 1.
    std::string str() const;

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
    friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

private:
    Poly num_;
    Poly den_;
};

/// A rational point of multiplicity `multiplicity`.
struct RootMult {
    Rat root;
    int multiplicity = 1;
};

struct PoleTerms {
    Rat pole;
    /// coeffs[j-1] multiplies (z - pole)^-j
    std::vector<Rat> coeffs;
};

struct PartialFractions {
    Poly polynomial_part;
    std::vector<PoleTerms> poles;

    RatFunc recompose() const;
};

/// Partial fraction decomposition of f over the supplied factorization of
/// its denominator. Throws std::invalid_argument if the roots do not
/// exactly factor den(f).
PartialFractions partial_fractions(const RatFunc& f, const std::vector<RootMult>& roots);

/// Rational roots of den(f) with multiplicities; throws
/// std::invalid_argument if den(f) does not split over Q.
std::vector<RootMult> rational_poles(const RatFunc& f);

/// Signed order at a finite point: multiplicity of c in den minus its
/// multiplicity in num. Poles are positive, zeros negative.
int order_at(const RatFunc& f, const Rat& c);
/// deg den - deg num.
int order_at_infinity(const RatFunc& f);

}  // namespace critint
