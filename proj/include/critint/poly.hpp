#pragma once

// Dense univariate polynomials with exact rational coefficients.
//
// Coefficients are stored lowest degree first with no trailing zeros; the
// zero polynomial is the empty sequence and has degree -1.

#include "critint/rat.hpp"

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace critint {

class Poly {
public:
    Poly() = default;
    Poly(const Rat& c);  // NOLINT: constants embed implicitly
    Poly(long c) : Poly(Rat(c)) {}  // NOLINT
    Poly(int c) : Poly(Rat(c)) {}   // NOLINT
    explicit Poly(std::vector<Rat> coeffs);
    Poly(std::initializer_list<Rat> coeffs) : Poly(std::vector<Rat>(coeffs)) {}

    static Poly monomial(const Rat& c, int degree);
    static Poly z() { return monomial(Rat(1), 1); }
    /// (z - root)
    static Poly linear_factor(const Rat& root) { return Poly{-root, Rat(1)}; }

    /// Parses a comma separated coefficient list (lowest degree first) or
    /// an expression in z such as "z^3 - 3/2*z + 1".
    static Poly parse(std::string_view text);

    const std::vector<Rat>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rat coeff(int i) const;
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }
    Poly monic() const;

    Poly derivative() const;
    Rat eval(const Rat& x) const;
    double eval(double x) const;
    /// p(z + shift)
    Poly taylor_shift(const Rat& shift) const;

    /// Quotient and remainder; throws on a zero divisor.
    std::pair<Poly, Poly> divmod(const Poly& d) const;

    /// Multiplicity of root as a zero of this polynomial (0 if not a root).
    int multiplicity(const Rat& root) const;

    std::string str(std::string_view var = "z") const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) = default;

private:
    void trim();
    std::vector<Rat> c_;
};

Poly pow(const Poly& p, unsigned e);
/// Monic greatest common divisor (zero if both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);

/// Rational roots with multiplicities, in increasing order.
std::vector<std::pair<Rat, int>> rational_roots(const Poly& p);

}  // namespace critint
