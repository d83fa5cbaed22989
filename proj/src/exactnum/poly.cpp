#include "critint/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace critint {

Poly::Poly(const Rat& c) {
    if (!c.is_zero()) c_.push_back(c);
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monomial(const Rat& c, int degree) {
    if (degree < 0) throw std::invalid_argument("Poly::monomial: negative degree");
    std::vector<Rat> v(static_cast<std::size_t>(degree) + 1, Rat(0));
    v.back() = c;
    return Poly(std::move(v));
}

Rat Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
    return c_[static_cast<std::size_t>(i)];
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    const Rat lc = leading();
    std::vector<Rat> v = c_;
    for (auto& x : v) x /= lc;
    return Poly(std::move(v));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return Poly(std::move(v));
}

Rat Poly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Poly::eval(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
}

Poly Poly::taylor_shift(const Rat& shift) const {
    // Horner in the ring: p(z + s) = (...(c_n (z+s) + c_{n-1})(z+s) + ...)
    const Poly step{shift, Rat(1)};
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * step + Poly(*it);
    return acc;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    if (degree() < d.degree()) return {Poly(), *this};
    std::vector<Rat> rem = c_;
    std::vector<Rat> quot(static_cast<std::size_t>(degree() - d.degree() + 1), Rat(0));
    const Rat lc = d.leading();
    const auto dd = static_cast<std::size_t>(d.degree());
    for (std::size_t i = quot.size(); i-- > 0;) {
        const Rat f = rem[i + dd] / lc;
        quot[i] = f;
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= f * d.c_[j];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

int Poly::multiplicity(const Rat& root) const {
    if (is_zero()) throw std::domain_error("Poly::multiplicity of the zero polynomial");
    int m = 0;
    Poly p = *this;
    const Poly f = linear_factor(root);
    for (;;) {
        auto [q, r] = p.divmod(f);
        if (!r.is_zero()) return m;
        ++m;
        p = std::move(q);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly operator-(const Poly& a) {
    Poly n = a;
    for (auto& x : n.c_) x = -x;
    return n;
}

Poly pow(const Poly& p, unsigned e) {
    Poly result(Rat(1)), base = p;
    while (e) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e) base *= base;
    }
    return result;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

std::string Poly::str(std::string_view var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rat& c = c_[i];
        if (c.is_zero()) continue;
        const Rat mag = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag;
            continue;
        }
        if (mag != Rat(1)) os << mag << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

namespace {

std::vector<mpz_class> divisors(const mpz_class& n) {
    std::vector<std::pair<mpz_class, int>> factors;
    mpz_class rest = ::abs(n);
    for (mpz_class p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        if (e) factors.emplace_back(p, e);
    }
    if (rest > 1) factors.emplace_back(rest, 1);
    std::vector<mpz_class> out{1};
    for (const auto& [p, e] : factors) {
        const std::size_t n0 = out.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < n0; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

Poly parse_expression(const std::string& s) {
    Poly result;
    std::size_t i = 0;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        if (term.empty()) throw std::invalid_argument("malformed polynomial '" + s + "'");
        const auto zpos = term.find('z');
        Rat coeff(1);
        int degree = 0;
        if (zpos == std::string::npos) {
            coeff = Rat::parse(term);
        } else {
            std::string head = term.substr(0, zpos);
            if (!head.empty() && head.back() == '*') head.pop_back();
            if (!head.empty()) coeff = Rat::parse(head);
            const std::string tail = term.substr(zpos + 1);
            if (tail.empty()) {
                degree = 1;
            } else if (tail.front() == '^' && tail.size() > 1 &&
                       std::all_of(tail.begin() + 1, tail.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                degree = std::stoi(tail.substr(1));
            } else {
                throw std::invalid_argument("malformed term '" + term + "'");
            }
        }
        result += Poly::monomial(coeff * Rat(sign), degree);
    }
    return result;
}

}  // namespace

Poly Poly::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.find('z') != std::string::npos) return parse_expression(s);
    std::vector<Rat> coeffs;
    std::size_t start = 0;
    for (;;) {
        const auto comma = s.find(',', start);
        coeffs.push_back(Rat::parse(s.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return Poly(std::move(coeffs));
}

std::vector<std::pair<Rat, int>> rational_roots(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("rational_roots of the zero polynomial");
    std::vector<std::pair<Rat, int>> roots;
    Poly rest = p;
    int zero_mult = 0;
    while (!rest.is_zero() && rest.coeff(0).is_zero()) {
        rest = rest.divmod(Poly::z()).first;
        ++zero_mult;
    }
    if (zero_mult) roots.emplace_back(Rat(0), zero_mult);
    if (rest.degree() >= 1) {
        mpz_class scale = 1;
        for (const auto& c : rest.coeffs()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.den().get_mpz_t());
        const mpz_class a0 = (rest.coeff(0) * Rat(scale)).num();
        const mpz_class an = (rest.leading() * Rat(scale)).num();
        const auto ps = divisors(a0);
        const auto qs = divisors(an);
        std::vector<Rat> candidates;
        for (const auto& num : ps)
            for (const auto& den : qs) {
                candidates.emplace_back(num, den);
                candidates.emplace_back(-num, den);
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const auto& c : candidates) {
            if (rest.degree() < 1) break;
            if (!rest.eval(c).is_zero()) continue;
            const int m = rest.multiplicity(c);
            for (int k = 0; k < m; ++k) rest = rest.divmod(Poly::linear_factor(c)).first;
            roots.emplace_back(c, m);
        }
    }
    std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return roots;
}

}  // namespace critint
