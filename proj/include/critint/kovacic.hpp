#pragma once

// Kovacic machinery for chi'' = r(z) chi with r in Q(z):
//  - reduction of y'' = a1 y' + a2 y to normal form,
//  - pole and infinity data,
//  - necessary-condition screening for Galois types (i)-(iii),
//  - the full constructive search for type (ii) solutions
//    (families E_c, candidates d, and the monic polynomial P).
//
// Constructive searches for types (i) and (iii) are not implemented; when
// the screen leaves either of them open the verdict is Indeterminate
// rather than SL(2).

#include "critint/ratfunc.hpp"

#include <json.hpp>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace critint::kovacic {

/// Raised for inputs outside the supported class (poles off Q).
class UnsupportedInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// y'' = a1 y' + a2 y
struct SLODE {
    RatFunc a1;
    RatFunc a2;
};

struct Pole {
    Rat location;
    int order = 0;
    /// Partial-fraction coefficients: coeffs[j-1] multiplies (z - c)^-j.
    std::vector<Rat> coeffs;
};

struct InfinityData {
    static constexpr int kInfinite = std::numeric_limits<int>::max();
    /// deg den - deg num; kInfinite for r == 0.
    int order = kInfinite;
    /// Coefficient of 1/z^2 at infinity, present when order == 2.
    std::optional<Rat> laurent_b;
};

/// chi'' = r chi together with its singularity data.
struct NormalODE {
    RatFunc r;
    std::vector<Pole> poles;
    InfinityData infinity;
};

NormalODE normal_form(const RatFunc& r);
/// r = a1^2/4 - a1'/2 + a2, via y = exp(1/2 int a1) chi.
NormalODE reduce_to_normal(const SLODE& eq);

struct ScreenResult {
    bool possible = true;
    std::vector<std::string> reasons;
};

struct CaseScreen {
    ScreenResult type_i;
    ScreenResult type_ii;
    ScreenResult type_iii;
};

CaseScreen screen_cases(const NormalODE& n);

struct Families {
    /// E_c for each finite pole, in the order of NormalODE::poles.
    std::vector<std::vector<int>> at_poles;
    std::vector<int> at_infinity;
};

Families case2_families(const NormalODE& n);

struct Candidate {
    std::vector<int> at_poles;
    int at_infinity = 0;
    /// (at_infinity - sum at_poles) / 2
    Rat d;
    bool retained = false;
};

/// Full Cartesian product; `retained` marks d a nonnegative integer.
std::vector<Candidate> case2_candidates(const Families& f);

struct Case2Certificate {
    std::vector<int> at_poles;
    int at_infinity = 0;
    long d = 0;
    RatFunc theta;
    Poly p;
    /// phi = theta + P'/P
    RatFunc phi;
    /// omega^2 + omega_linear * omega + omega_constant = 0
    RatFunc omega_linear;
    RatFunc omega_constant;
};

/// theta = 1/2 sum_c w_c / (z - c)
RatFunc case2_theta(const NormalODE& n, const std::vector<int>& at_poles);

/// Left side of the third-order equation for P, as a rational function.
RatFunc step3_residual(const NormalODE& n, const RatFunc& theta, const Poly& p);

/// Solves for a monic P of degree d; nullopt when none exists.
std::optional<Case2Certificate> case2_solve(const NormalODE& n, const Candidate& c);

/// Re-checks a certificate: the P-equation vanishes identically and phi
/// satisfies phi'' + 3 phi phi' + phi^3 - 4 r phi - 2 r' = 0.
bool verify_certificate(const NormalODE& n, const Case2Certificate& cert);

enum class GaloisType { TypeII, TypeIV, Indeterminate };

std::string to_string(GaloisType t);

struct CandidateOutcome {
    Candidate candidate;
    bool attempted = false;
    bool solved = false;
};

struct GaloisVerdict {
    GaloisType type = GaloisType::Indeterminate;
    CaseScreen screen;
    Families families;
    std::vector<CandidateOutcome> candidates;
    std::optional<Case2Certificate> certificate;
};

GaloisVerdict classify_galois(const NormalODE& n);

void to_json(nlohmann::json& j, const NormalODE& n);
void to_json(nlohmann::json& j, const CaseScreen& s);
void to_json(nlohmann::json& j, const Case2Certificate& c);
void to_json(nlohmann::json& j, const GaloisVerdict& v);

}  // namespace critint::kovacic
