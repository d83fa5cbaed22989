#pragma once

// The Hamiltonian family
//
//   H = 1/2 sum (v_i^2 + mu_i u_i^2) - eps/(2k) (sum u_j^2)^k
//   u_i' = v_i,  v_i' = -mu_i u_i + eps (sum u_j^2)^(k-1) u_i
//
// its invariant planes, the variational equations along the zero-energy
// orbit in a plane, their reduction to rational-coefficient equations, and
// the integrability classifier with replayable certificates.

#include "critint/hypergeom.hpp"
#include "critint/kovacic.hpp"
#include "critint/observable.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace critint::critsys {

struct SystemParams {
    int k = 2;
    int eps = 1;  // +1 or -1
    std::vector<Rat> mu;

    int m() const { return static_cast<int>(mu.size()); }
    /// Throws std::invalid_argument unless k >= 2, eps = +-1, m >= 1.
    void validate() const;
};

PolyObservable hamiltonian(const SystemParams& p);
/// L_ij = u_i v_j - u_j v_i (0-based indices).
PolyObservable angular_momentum(int m, int i, int j);
/// {F, G} = sum_l dF/dv_l dG/du_l - dF/du_l dG/dv_l
PolyObservable poisson_bracket(const PolyObservable& f, const PolyObservable& g);

/// x = (u_1..u_m, v_1..v_m); returns (u', v') in the same layout.
std::vector<Rat> vector_field(const SystemParams& p, const std::vector<Rat>& x);
std::vector<double> vector_field(const SystemParams& p, const std::vector<double>& x);

/// The flow on the plane where every coordinate but (u_i, v_i) vanishes:
/// u' = v, v' = -mu_i u + eps u^(2k-1).
struct RestrictedSystem {
    SystemParams params;
    int pivot = 0;

    Rat mu() const { return params.mu.at(static_cast<std::size_t>(pivot)); }
    Rat energy(const Rat& u, const Rat& v) const;
    double energy(double u, double v) const;
    std::pair<double, double> field(double u, double v) const;
    /// 2h - mu u^2 + eps/k u^(2k) without the 2h term, as a polynomial in u.
    Poly radicand_shape() const;
    /// Real rest points: u = 0 and u^(2k-2) = mu/eps when that is positive.
    std::vector<double> equilibria() const;
    /// Nonzero real zeros of the zero-energy radicand, u^(2k-2) = k mu/eps.
    std::vector<double> zero_energy_turning_points() const;
};

/// Diagonal entry c(u) of the variational equation xi_l'' = c(u) xi_l along
/// the plane of `pivot`, as a polynomial in u = u_pivot. The off-diagonal
/// entries vanish on the plane; row l == pivot is the tangential one.
Poly variational_coefficient(const SystemParams& p, int pivot, int row);

/// Covering z = u^(2k-2) / lambda of the zero-energy orbit in the pivot plane.
struct YoshidaCover {
    Rat lambda;
    /// (dz/dt)^2 as a polynomial in z.
    Poly zdot_sq;
};

YoshidaCover yoshida_cover(const SystemParams& p, int pivot, const Rat& lambda);

/// Rational-coefficient normal equation xi'' + P xi' + Q xi = 0 for `row`.
std::pair<RatFunc, RatFunc> reduced_normal_equation(const SystemParams& p, int pivot, int row, const YoshidaCover& c);

/// ANVE for the pair (pivot, other); requires mu_pivot != 0, k >= 3.
hypergeom::HGEquation anve(const SystemParams& p, int pivot, int other);
/// Equation for `target` along the plane of a pivot with mu_pivot = 0, with
/// covering fixed by `reference` (mu_reference != 0). Returned as
/// y'' = a1 y' + a2 y.
kovacic::SLODE anve_degenerate(const SystemParams& p, int pivot, int reference, int target);

/// ratio in {((k-1)l +- 1)^2 : l >= 0} or {(k-1)^2 (2l+1)^2 / 4}.
bool necessary_ratio_condition(int k, const Rat& ratio);

enum class Verdict { Integrable, NonIntegrable };
enum class Reason { KEqualsTwo, SingleDegree, AllMuEqual, KimuraContradiction, KovacicTypeIV };

std::string to_string(Verdict v);
std::string to_string(Reason r);

struct ManifoldEvidence {
    int pivot = 0;
    int other = 0;
    hypergeom::HGEquation equation;
    hypergeom::ExpDiffs diffs;
    hypergeom::KimuraVerdict kimura;
};

struct DegenerateEvidence {
    int pivot = 0;
    int reference = 0;
    kovacic::SLODE equation;
    kovacic::NormalODE normal;
    kovacic::GaloisVerdict galois;
};

struct Certificate {
    SystemParams params;
    Verdict verdict = Verdict::Integrable;
    Reason reason = Reason::KEqualsTwo;
    std::optional<std::pair<int, int>> pair;
    std::optional<ManifoldEvidence> forward;
    std::optional<ManifoldEvidence> reverse;
    std::optional<DegenerateEvidence> degenerate;
    bool negative_ratio = false;
    /// The evidence does not by itself establish a NonIntegrable verdict.
    bool discrepancy = false;
};

/// Closed-form verdict: integrable iff k = 2 or all mu are equal.
Verdict closed_form_verdict(const SystemParams& p);
Certificate classify_integrability(const SystemParams& p);

/// Certificate JSON, "schema": 1. Pair indices are 1-based.
nlohmann::json certificate_json(const Certificate& c);

struct ReplayResult {
    bool consistent = true;
    Verdict verdict = Verdict::Integrable;
    std::vector<std::string> problems;
};

/// Re-derives the verdict from the parameters in a certificate and re-runs
/// the embedded Kimura and Kovacic inputs.
ReplayResult replay_certificate(const nlohmann::json& j);

}  // namespace critint::critsys
