#pragma once

// Arbitrary-precision rational numbers.
//
// Thin value type over GMP's mpq_class. Every instance is kept in lowest
// terms with a positive denominator; zero is 0/1.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace critint {

class Rat {
public:
    Rat() = default;
    Rat(long n) : q_(n) {}  // NOLINT: implicit from integers is intended
    Rat(int n) : q_(n) {}   // NOLINT
    Rat(long n, long d);
    explicit Rat(const mpz_class& n) : q_(n) {}
    Rat(const mpz_class& n, const mpz_class& d);
    explicit Rat(mpq_class q);

    /// Parses "p", "-p", "p/q". Decimal points and exponents are rejected.
    static Rat parse(std::string_view text);

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    Rat abs() const { return Rat(::abs(q_)); }
    Rat inverse() const;
    /// Largest integer not exceeding the value.
    mpz_class floor() const;
    double to_double() const { return q_.get_d(); }
    /// Integer value if this is an integer that fits in a long.
    std::optional<long> to_long() const;

    /// Exact square root when the value is the square of a rational.
    std::optional<Rat> exact_sqrt() const;

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    mpq_class q_{0};
};

Rat pow(const Rat& base, unsigned exponent);

/// Splits a nonzero integer n into s and f with |n| = s^2 * f and f
/// square-free. Returns {s, f}; the sign of n is discarded.
std::pair<mpz_class, mpz_class> square_free_split(const mpz_class& n);

}  // namespace critint
