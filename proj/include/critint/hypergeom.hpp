#pragma once

// Gauss hypergeometric equations given by their Riemann scheme at
// {0, 1, infinity}, and Kimura's solvability test for the identity
// component of their differential Galois group.
//
//   zeta'' + ((1-a-a~)/z + (1-g-g~)/(z-1)) zeta'
//          + (a a~/z^2 + g g~/(z-1)^2 + (b b~ - a a~ - g g~)/(z(z-1))) zeta = 0
//
// with exponents (a, a~) at 0, (g, g~) at 1 and (b, b~) at infinity.

#include "critint/ratfunc.hpp"
#include "critint/surd.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace critint::hypergeom {

class FuchsViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Roots of x^2 - sum*x + product.
struct ExponentPair {
    Surd first;
    Surd second;
    Rat sum;
    Rat product;
};

class HGEquation {
public:
    /// Exponents from the indicial sums and products at 0, 1 and infinity.
    /// Throws FuchsViolation if the six exponents do not sum to 1 and
    /// RadicandMismatch if the discriminants need more than one
    /// quadratic extension.
    static HGEquation from_indicial(const Rat& sum0, const Rat& prod0, const Rat& sum1, const Rat& prod1,
                                    const Rat& sum_inf, const Rat& prod_inf);

    /// Reads the Riemann scheme off zeta'' + p zeta' + q zeta = 0. Throws
    /// std::invalid_argument when (p, q) is not of the form above.
    static HGEquation from_coefficients(const RatFunc& p, const RatFunc& q);

    const ExponentPair& at_zero() const { return zero_; }
    const ExponentPair& at_one() const { return one_; }
    const ExponentPair& at_infinity() const { return inf_; }

    RatFunc p_coefficient() const;
    RatFunc q_coefficient() const;

    /// Sum of all six exponents; 1 for every constructed equation.
    Surd exponent_sum() const;

private:
    ExponentPair zero_, one_, inf_;
};

/// Exponent differences at 0 (rho), infinity (tau) and 1 (sigma), each
/// normalized to a nonnegative leading coefficient.
struct ExpDiffs {
    Surd rho;
    Surd tau;
    Surd sigma;

    friend bool operator==(const ExpDiffs&, const ExpDiffs&) = default;
};

ExpDiffs exponent_differences(const HGEquation& eq);

struct ConditionIWitness {
    int combo = 0;          // index into combo_labels()
    Surd value;
    mpz_class odd_integer;
};

/// "rho+tau+sigma", "-rho+tau+sigma", "rho-tau+sigma", "rho+tau-sigma"
const std::array<std::string, 4>& combo_labels();

/// First of the four signed sums that is an odd integer, if any.
std::optional<ConditionIWitness> kimura_condition_i(const ExpDiffs& d);

/// One Schwarz-table row as three coset representatives; row 1 leaves the
/// third column unconstrained.
struct SchwarzRow {
    int number;
    std::array<Rat, 3> cosets;
    bool arbitrary_third;
    bool parity_even;
};

const std::array<SchwarzRow, 15>& schwarz_table();

struct SchwarzMatch {
    int row = 0;
    /// slot[c] is the difference placed in column c: 0 = rho, 1 = tau, 2 = sigma
    std::array<int, 3> slot{};
    /// sign[c] is the sign applied to that difference
    std::array<int, 3> sign{};
    /// (l, s, upsilon); the arbitrary column of row 1 carries 0
    std::array<mpz_class, 3> params{};
    bool parity_required = false;
};

/// Every placement of (+-rho, +-tau, +-sigma) into every row.
std::vector<SchwarzMatch> schwarz_table_match(const ExpDiffs& d);
/// Matches restricted to row 1.
std::vector<SchwarzMatch> schwarz_row1_match(const ExpDiffs& d);

struct KimuraVerdict {
    bool solvable = false;
    std::optional<ConditionIWitness> condition_i;
    std::vector<SchwarzMatch> schwarz;

    /// "condition_i", "schwarz_row_N" or "none"
    std::string via() const;
};

KimuraVerdict identity_component_solvable(const ExpDiffs& d);
KimuraVerdict identity_component_solvable(const HGEquation& eq);

void to_json(nlohmann::json& j, const ExponentPair& e);
void to_json(nlohmann::json& j, const HGEquation& eq);
void to_json(nlohmann::json& j, const ExpDiffs& d);
void to_json(nlohmann::json& j, const SchwarzMatch& m);
void to_json(nlohmann::json& j, const KimuraVerdict& v);
ExpDiffs exp_diffs_from_json(const nlohmann::json& j);

}  // namespace critint::hypergeom
