#pragma once

// Exact quadratic surds a + b*sqrt(r) over the rationals.
//
// Canonical form: r is a square-free positive integer, square rational
// factors of the radicand are folded into b, and b == 0 forces r == 1.
// A negative radicand is stored as its absolute value with the imaginary
// flag set, i.e. the value is a + b*i*sqrt(r). When the flag is set and
// r == 1 the value is a + b*i.
//
// Arithmetic is closed inside one field Q(sqrt(r)) (or Q(i*sqrt(r))).
// Mixing two different radicands is a RadicandMismatch error; this type
// does not build towers.

#include "critint/rat.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace critint {

class RadicandMismatch : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class Surd {
public:
    Surd() = default;
    Surd(const Rat& a) : a_(a) {}  // NOLINT: rationals embed implicitly
    Surd(long a) : a_(a) {}        // NOLINT
    Surd(int a) : a_(a) {}         // NOLINT

    /// Canonical surd equal to a + b*sqrt(r).
    static Surd make(const Rat& a, const Rat& b, const Rat& radicand);
    /// sqrt(x) for rational x; imaginary when x < 0.
    static Surd sqrt(const Rat& x);
    /// Parses the form produced by str(): "a", "a + b*sqrt(r)",
    /// "b*sqrt(r)", "a - sqrt(r)", with r possibly negative.
    static Surd parse(std::string_view text);

    const Rat& rational_part() const { return a_; }
    const Rat& radical_coeff() const { return b_; }
    const Rat& radicand() const { return r_; }
    bool imaginary() const { return imag_; }

    bool is_rational() const { return b_.is_zero(); }
    bool is_real() const { return b_.is_zero() || !imag_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    std::optional<Rat> as_rational() const;
    bool is_integer() const { return is_rational() && a_.is_integer(); }
    bool is_odd_integer() const;

    /// Some d in Z with *this == q + d, if one exists.
    std::optional<mpz_class> coset_witness(const Rat& q) const;
    bool in_coset(const Rat& q) const { return coset_witness(q).has_value(); }

    /// Sign used for normalization: sign of b if b != 0, else sign of a.
    int leading_sign() const;
    /// *this or -*this, whichever has nonnegative leading sign.
    Surd normalized() const { return leading_sign() < 0 ? -*this : *this; }

    /// Squared radical as a rational: r, or -r for imaginary surds.
    Rat square_of_unit() const { return imag_ ? -r_ : r_; }
    bool same_field(const Surd& o) const;

    double real_approx() const;
    double imag_approx() const;

    std::string str() const;

    Surd& operator+=(const Surd& o);
    Surd& operator-=(const Surd& o);
    Surd& operator*=(const Surd& o);
    Surd& operator/=(const Surd& o);
    friend Surd operator+(Surd x, const Surd& y) { return x += y; }
    friend Surd operator-(Surd x, const Surd& y) { return x -= y; }
    friend Surd operator*(Surd x, const Surd& y) { return x *= y; }
    friend Surd operator/(Surd x, const Surd& y) { return x /= y; }
    friend Surd operator-(const Surd& x);
    friend bool operator==(const Surd& x, const Surd& y) = default;

private:
    void adopt_field(const Surd& o);
    void canonicalize();

    Rat a_{0};
    Rat b_{0};
    Rat r_{1};
    bool imag_ = false;
};

std::ostream& operator<<(std::ostream& os, const Surd& s);

}  // namespace critint
