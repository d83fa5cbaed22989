#include "critint/surd.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace critint {

Surd Surd::make(const Rat& a, const Rat& b, const Rat& radicand) {
    Surd s(a);
    if (b.is_zero() || radicand.is_zero()) return s;
    const Rat mag = radicand.abs();
    // sqrt(p/q) = sqrt(p*q)/q
    const auto [square, free] = square_free_split(mag.num() * mag.den());
    s.b_ = b * Rat(square, mag.den());
    s.r_ = Rat(free);
    s.imag_ = radicand.sign() < 0;
    if (s.r_ == Rat(1) && !s.imag_) {
        s.a_ += s.b_;
        s.b_ = Rat(0);
    }
    s.canonicalize();
    return s;
}

Surd Surd::sqrt(const Rat& x) { return make(Rat(0), Rat(1), x); }

void Surd::canonicalize() {
    if (b_.is_zero()) {
        r_ = Rat(1);
        imag_ = false;
    }
}

std::optional<Rat> Surd::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return a_;
}

bool Surd::is_odd_integer() const {
    if (!is_integer()) return false;
    return mpz_odd_p(a_.num().get_mpz_t()) != 0;
}

std::optional<mpz_class> Surd::coset_witness(const Rat& q) const {
    if (!is_rational()) return std::nullopt;
    const Rat diff = a_ - q;
    if (!diff.is_integer()) return std::nullopt;
    return diff.num();
}

int Surd::leading_sign() const { return b_.is_zero() ? a_.sign() : b_.sign(); }

bool Surd::same_field(const Surd& o) const {
    if (is_rational() || o.is_rational()) return true;
    return r_ == o.r_ && imag_ == o.imag_;
}

void Surd::adopt_field(const Surd& o) {
    if (!same_field(o))
        throw RadicandMismatch("surd arithmetic across different radicands: " + str() + " and " + o.str());
    if (is_rational() && !o.is_rational()) {
        r_ = o.r_;
        imag_ = o.imag_;
    }
}

Surd& Surd::operator+=(const Surd& o) {
    adopt_field(o);
    a_ += o.a_;
    b_ += o.b_;
    canonicalize();
    return *this;
}

Surd& Surd::operator-=(const Surd& o) { return *this += -o; }

Surd& Surd::operator*=(const Surd& o) {
    adopt_field(o);
    const Rat unit = square_of_unit();
    const Rat a = a_ * o.a_ + b_ * o.b_ * unit;
    const Rat b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    canonicalize();
    return *this;
}

Surd& Surd::operator/=(const Surd& o) {
    if (o.is_zero()) throw std::domain_error("Surd: division by zero");
    adopt_field(o);
    Surd conj = o;
    conj.b_ = -conj.b_;
    const Rat norm = o.a_ * o.a_ - o.b_ * o.b_ * o.square_of_unit();
    *this *= conj;
    a_ /= norm;
    b_ /= norm;
    canonicalize();
    return *this;
}

Surd operator-(const Surd& x) {
    Surd n = x;
    n.a_ = -n.a_;
    n.b_ = -n.b_;
    return n;
}

double Surd::real_approx() const {
    double v = a_.to_double();
    if (!imag_) v += b_.to_double() * std::sqrt(r_.to_double());
    return v;
}

double Surd::imag_approx() const {
    return imag_ ? b_.to_double() * std::sqrt(r_.to_double()) : 0.0;
}

std::string Surd::str() const {
    if (is_rational()) return a_.str();
    const std::string radical = "sqrt(" + std::string(imag_ ? "-" : "") + r_.str() + ")";
    const Rat mag = b_.abs();
    const std::string term = mag == Rat(1) ? radical : mag.str() + "*" + radical;
    if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + term;
    return a_.str() + (b_.sign() < 0 ? " - " : " + ") + term;
}

std::ostream& operator<<(std::ostream& os, const Surd& s) { return os << s.str(); }

Surd Surd::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    const auto open = s.find("sqrt(");
    if (open == std::string::npos) return Surd(Rat::parse(s));
    const auto close = s.find(')', open);
    if (close == std::string::npos || close + 1 != s.size())
        throw std::invalid_argument("cannot parse surd '" + std::string(text) + "'");
    const Rat radicand = Rat::parse(s.substr(open + 5, close - open - 5));

    std::string prefix = s.substr(0, open);
    if (!prefix.empty() && prefix.back() == '*') prefix.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = prefix.size(); i-- > 1;) {
        if ((prefix[i] == '+' || prefix[i] == '-') && prefix[i - 1] != '/') {
            split = i;
            break;
        }
    }
    Rat a(0);
    std::string coeff = prefix;
    if (split != std::string::npos) {
        a = Rat::parse(prefix.substr(0, split));
        coeff = prefix.substr(split);
    }
    Rat b(1);
    if (coeff == "-") {
        b = Rat(-1);
    } else if (!coeff.empty() && coeff != "+") {
        b = Rat::parse(coeff);
    }
    return make(a, b, radicand);
}

}  // namespace critint
