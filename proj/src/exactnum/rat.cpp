#include "critint/rat.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace critint {

Rat::Rat(long n, long d) : q_(n, d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
}

Rat::Rat(const mpz_class& n, const mpz_class& d) : q_(n, d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.find_first_of(".eE") != std::string::npos)
        throw std::invalid_argument("'" + std::string(text) +
                                    "' is not an exact rational; write it as p/q (e.g. 1/2 instead of 0.5)");
    std::string_view body = s;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view n = body.substr(0, slash);
    const std::string_view d = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d))
        throw std::invalid_argument("cannot parse rational '" + std::string(text) + "'");
    mpz_class num{std::string(n)}, den{std::string(d)};
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (negative) num = -num;
    return Rat(num, den);
}

Rat Rat::inverse() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(mpq_class(1 / q_));
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    q_ /= o.q_;
    return *this;
}

mpz_class Rat::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::optional<long> Rat::to_long() const {
    if (!is_integer() || !q_.get_num().fits_slong_p()) return std::nullopt;
    return q_.get_num().get_si();
}

std::optional<Rat> Rat::exact_sqrt() const {
    if (sign() < 0) return std::nullopt;
    const mpz_class n = num(), d = den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    return Rat(mpz_class(sqrt(n)), mpz_class(sqrt(d)));
}

std::string Rat::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat pow(const Rat& base, unsigned exponent) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exponent);
    return Rat(n, d);
}

std::pair<mpz_class, mpz_class> square_free_split(const mpz_class& n) {
    if (n == 0) throw std::domain_error("square_free_split: zero");
    mpz_class rest = ::abs(n);
    mpz_class square = 1, free = 1;
    // Strip every prime up to the cube root; what remains has at most two
    // prime factors, so it is either a prime square or square-free.
    for (mpz_class p = 2; p * p * p <= rest; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) square *= p;
        if (e % 2) free *= p;
    }
    if (rest > 1 && mpz_perfect_square_p(rest.get_mpz_t())) {
        square *= sqrt(rest);
    } else {
        free *= rest;
    }
    return {square, free};
}

}  // namespace critint
