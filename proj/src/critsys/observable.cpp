#include "critint/observable.hpp"

#include <cmath>
#include <stdexcept>

namespace critint {

PolyObservable::PolyObservable(int m) : m_(m) {
    if (m < 1) throw std::invalid_argument("observable needs at least one degree of freedom");
}

PolyObservable PolyObservable::constant(int m, const Rat& c) {
    PolyObservable p(m);
    p.add_term(Exponents(static_cast<std::size_t>(2 * m), 0), c);
    return p;
}

PolyObservable PolyObservable::u(int m, int i) {
    PolyObservable p(m);
    Exponents e(static_cast<std::size_t>(2 * m), 0);
    e.at(static_cast<std::size_t>(i)) = 1;
    p.add_term(e, Rat(1));
    return p;
}

PolyObservable PolyObservable::v(int m, int i) {
    PolyObservable p(m);
    Exponents e(static_cast<std::size_t>(2 * m), 0);
    e.at(static_cast<std::size_t>(m + i)) = 1;
    p.add_term(e, Rat(1));
    return p;
}

int PolyObservable::degree_in_u() const {
    int best = 0;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int i = 0; i < m_; ++i) d += e[static_cast<std::size_t>(i)];
        best = std::max(best, d);
    }
    return best;
}

void PolyObservable::add_term(const Exponents& e, const Rat& c) {
    if (e.size() != static_cast<std::size_t>(2 * m_)) throw std::invalid_argument("exponent vector has wrong length");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyObservable PolyObservable::derivative(int var) const {
    if (var < 0 || var >= 2 * m_) throw std::out_of_range("no such variable");
    PolyObservable out(m_);
    const auto idx = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponents f = e;
        --f[idx];
        out.add_term(f, c * Rat(e[idx]));
    }
    return out;
}

Rat PolyObservable::eval(const std::vector<Rat>& x) const {
    if (x.size() != static_cast<std::size_t>(2 * m_)) throw std::invalid_argument("point has wrong dimension");
    Rat total(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) t *= pow(x[i], static_cast<unsigned>(e[i]));
        total += t;
    }
    return total;
}

double PolyObservable::eval(const std::vector<double>& x) const {
    if (x.size() != static_cast<std::size_t>(2 * m_)) throw std::invalid_argument("point has wrong dimension");
    double total = 0;
    for (const auto& [e, c] : terms_) {
        double t = c.to_double();
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int p = 0; p < e[i]; ++p) t *= x[i];
        total += t;
    }
    return total;
}

std::string PolyObservable::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // highest total degree first reads more naturally
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (int i = 0; i < 2 * m_; ++i) {
            const int p = e[static_cast<std::size_t>(i)];
            if (!p) continue;
            if (!mono.empty()) mono += "*";
            mono += (i < m_ ? "u" : "v") + std::to_string(i % m_ + 1);
            if (p > 1) mono += "^" + std::to_string(p);
        }
        const Rat a = c.abs();
        std::string term;
        if (mono.empty()) {
            term = a.str();
        } else {
            term = a == Rat(1) ? mono : a.str() + "*" + mono;
        }
        if (out.empty()) {
            out = c.sign() < 0 ? "-" + term : term;
        } else {
            out += (c.sign() < 0 ? " - " : " + ") + term;
        }
    }
    return out;
}

PolyObservable operator+(const PolyObservable& a, const PolyObservable& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("observables over different phase spaces");
    PolyObservable out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

PolyObservable operator-(const PolyObservable& a) {
    PolyObservable out(a.m_);
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
    return out;
}

PolyObservable operator-(const PolyObservable& a, const PolyObservable& b) { return a + (-b); }

PolyObservable operator*(const PolyObservable& a, const PolyObservable& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("observables over different phase spaces");
    PolyObservable out(a.m_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            PolyObservable::Exponents e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

PolyObservable operator*(const Rat& c, const PolyObservable& a) {
    PolyObservable out(a.m_);
    if (c.is_zero()) return out;
    for (const auto& [e, x] : a.terms_) out.terms_.emplace(e, c * x);
    return out;
}

PolyObservable pow(const PolyObservable& p, unsigned n) {
    PolyObservable out = PolyObservable::constant(p.m(), Rat(1));
    PolyObservable base = p;
    while (n) {
        if (n & 1u) out = out * base;
        n >>= 1u;
        if (n) base = base * base;
    }
    return out;
}

}  // namespace critint
