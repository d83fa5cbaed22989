#pragma once

// Polynomials with exact coefficients in the 2m phase-space variables
// u_1..u_m, v_1..v_m. Variable index i < m is u_{i+1}; m + i is v_{i+1}.

#include "critint/rat.hpp"

#include <map>
#include <string>
#include <vector>

namespace critint {

class PolyObservable {
public:
    using Exponents = std::vector<int>;

    explicit PolyObservable(int m = 1);

    static PolyObservable constant(int m, const Rat& c);
    static PolyObservable u(int m, int i);
    static PolyObservable v(int m, int i);

    int m() const { return m_; }
    const std::map<Exponents, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Total degree in the u variables (0 for the zero polynomial).
    int degree_in_u() const;

    void add_term(const Exponents& e, const Rat& c);

    PolyObservable derivative(int var) const;
    PolyObservable du(int i) const { return derivative(i); }
    PolyObservable dv(int i) const { return derivative(m_ + i); }

    /// x holds u_1..u_m followed by v_1..v_m.
    Rat eval(const std::vector<Rat>& x) const;
    double eval(const std::vector<double>& x) const;

    std::string str() const;

    friend PolyObservable operator+(const PolyObservable& a, const PolyObservable& b);
    friend PolyObservable operator-(const PolyObservable& a, const PolyObservable& b);
    friend PolyObservable operator-(const PolyObservable& a);
    friend PolyObservable operator*(const PolyObservable& a, const PolyObservable& b);
    friend PolyObservable operator*(const Rat& c, const PolyObservable& a);
    friend bool operator==(const PolyObservable& a, const PolyObservable& b) = default;

private:
    int m_;
    std::map<Exponents, Rat> terms_;
};

PolyObservable pow(const PolyObservable& p, unsigned n);

}  // namespace critint
