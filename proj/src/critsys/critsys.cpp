#include "critint/critsys.hpp"

#include <cmath>
#include <stdexcept>

namespace critint::critsys {

void SystemParams::validate() const {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
    if (mu.empty()) throw std::invalid_argument("mu needs at least one entry");
}

PolyObservable hamiltonian(const SystemParams& p) {
    p.validate();
    const int m = p.m();
    PolyObservable h(m), r2(m);
    for (int i = 0; i < m; ++i) {
        const auto u = PolyObservable::u(m, i), v = PolyObservable::v(m, i);
        h = h + Rat(1, 2) * (v * v) + (p.mu[static_cast<std::size_t>(i)] / Rat(2)) * (u * u);
        r2 = r2 + u * u;
    }
    return h - Rat(p.eps, 2L * p.k) * pow(r2, static_cast<unsigned>(p.k));
}

PolyObservable angular_momentum(int m, int i, int j) {
    return PolyObservable::u(m, i) * PolyObservable::v(m, j) - PolyObservable::u(m, j) * PolyObservable::v(m, i);
}

PolyObservable poisson_bracket(const PolyObservable& f, const PolyObservable& g) {
    if (f.m() != g.m()) throw std::invalid_argument("bracket of observables over different phase spaces");
    PolyObservable out(f.m());
    for (int l = 0; l < f.m(); ++l) out = out + f.dv(l) * g.du(l) - f.du(l) * g.dv(l);
    return out;
}

namespace {

template <class T>
std::vector<T> field_impl(const SystemParams& p, const std::vector<T>& x, T one) {
    const auto m = static_cast<std::size_t>(p.m());
    if (x.size() != 2 * m) throw std::invalid_argument("point has wrong dimension");
    T r2 = one - one;
    for (std::size_t i = 0; i < m; ++i) r2 += x[i] * x[i];
    T s = one;
    for (int e = 0; e < p.k - 1; ++e) s *= r2;
    std::vector<T> out(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        T mu_i;
        if constexpr (std::is_same_v<T, double>) {
            mu_i = p.mu[i].to_double();
        } else {
            mu_i = p.mu[i];
        }
        out[i] = x[m + i];
        out[m + i] = -mu_i * x[i] + T(p.eps) * s * x[i];
    }
    return out;
}

// Part of f that survives on the pivot plane with v = 0, as a polynomial in u_pivot.
Poly restrict_to_plane(const PolyObservable& f, int pivot) {
    std::vector<Rat> coeffs;
    for (const auto& [e, c] : f.terms()) {
        bool on_plane = true;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != static_cast<std::size_t>(pivot) && e[i] != 0) on_plane = false;
        if (!on_plane) continue;
        const auto d = static_cast<std::size_t>(e[static_cast<std::size_t>(pivot)]);
        if (coeffs.size() <= d) coeffs.resize(d + 1);
        coeffs[d] += c;
    }
    return Poly(coeffs);
}

// u^((2k-2) n) -> (lambda z)^n; every exponent must be a multiple of 2k-2.
Poly to_cover_variable(const Poly& in_u, int k, const Rat& lambda) {
    const int step = 2 * k - 2;
    std::vector<Rat> out;
    for (int e = 0; e <= in_u.degree(); ++e) {
        const Rat& c = in_u.coeff(e);
        if (c.is_zero()) continue;
        if (e % step != 0) throw std::logic_error("polynomial is not a function of u^(2k-2)");
        const auto n = static_cast<std::size_t>(e / step);
        if (out.size() <= n) out.resize(n + 1);
        out[n] = c * pow(lambda, static_cast<unsigned>(n));
    }
    return Poly(out);
}

void check_index(const SystemParams& p, int i) {
    if (i < 0 || i >= p.m()) throw std::out_of_range("index " + std::to_string(i + 1) + " outside 1.." + std::to_string(p.m()));
}

}  // namespace

std::vector<Rat> vector_field(const SystemParams& p, const std::vector<Rat>& x) { return field_impl<Rat>(p, x, Rat(1)); }

std::vector<double> vector_field(const SystemParams& p, const std::vector<double>& x) {
    return field_impl<double>(p, x, 1.0);
}

Rat RestrictedSystem::energy(const Rat& u, const Rat& v) const {
    return Rat(1, 2) * v * v + mu() / Rat(2) * u * u - Rat(params.eps, 2L * params.k) * pow(u, static_cast<unsigned>(2 * params.k));
}

double RestrictedSystem::energy(double u, double v) const {
    return 0.5 * v * v + 0.5 * mu().to_double() * u * u - params.eps / (2.0 * params.k) * std::pow(u, 2 * params.k);
}

std::pair<double, double> RestrictedSystem::field(double u, double v) const {
    return {v, -mu().to_double() * u + params.eps * std::pow(u, 2 * params.k - 1)};
}

Poly RestrictedSystem::radicand_shape() const {
    return Poly::monomial(-mu(), 2) + Poly::monomial(Rat(params.eps, params.k), static_cast<unsigned>(2 * params.k));
}

std::vector<double> RestrictedSystem::equilibria() const {
    std::vector<double> out{0.0};
    const double s = mu().to_double() / params.eps;
    if (s > 0) {
        const double u = std::pow(s, 1.0 / (2 * params.k - 2));
        out.insert(out.begin(), -u);
        out.push_back(u);
    }
    return out;
}

std::vector<double> RestrictedSystem::zero_energy_turning_points() const {
    const double s = params.k * mu().to_double() / params.eps;
    if (s <= 0) return {};
    const double u = std::pow(s, 1.0 / (2 * params.k - 2));
    return {-u, u};
}

Poly variational_coefficient(const SystemParams& p, int pivot, int row) {
    check_index(p, pivot);
    check_index(p, row);
    const PolyObservable h = hamiltonian(p);
    const PolyObservable hr = h.du(row);
    for (int l = 0; l < p.m(); ++l) {
        if (l == row) continue;
        if (!restrict_to_plane(hr.du(l), pivot).is_zero())
            throw std::logic_error("variational equation is not diagonal on the invariant plane");
    }
    return -restrict_to_plane(hr.du(row), pivot);
}

YoshidaCover yoshida_cover(const SystemParams& p, int pivot, const Rat& lambda) {
    check_index(p, pivot);
    if (lambda.is_zero()) throw std::invalid_argument("covering scale must be nonzero");
    const Poly potential = restrict_to_plane(hamiltonian(p), pivot);
    // zero energy: v^2 = -2 V(u) = u^2 w(u)
    const Poly v_sq = Rat(-2) * potential;
    if (!v_sq.coeff(0).is_zero() || !v_sq.coeff(1).is_zero()) throw std::logic_error("potential does not vanish to second order");
    std::vector<Rat> w(v_sq.coeffs().begin() + 2, v_sq.coeffs().end());
    const int step = 2 * p.k - 2;
    // zdot = step u^(step-1) v / lambda, so zdot^2 = step^2 u^(2 step) w(u) / lambda^2
    const Poly scaled = Poly::monomial(Rat(1), static_cast<unsigned>(2 * step)) * Poly(w);
    return {lambda, Rat(step * step) / (lambda * lambda) * to_cover_variable(scaled, p.k, lambda)};
}

std::pair<RatFunc, RatFunc> reduced_normal_equation(const SystemParams& p, int pivot, int row, const YoshidaCover& c) {
    const Poly coeff = to_cover_variable(variational_coefficient(p, pivot, row), p.k, c.lambda);
    const RatFunc zdot_sq(c.zdot_sq);
    // xi_tt = zdot^2 xi_zz + (1/2) d(zdot^2)/dz xi_z
    return {zdot_sq.derivative() / (RatFunc(2) * zdot_sq), -RatFunc(coeff) / zdot_sq};
}

hypergeom::HGEquation anve(const SystemParams& p, int pivot, int other) {
    p.validate();
    check_index(p, pivot);
    check_index(p, other);
    if (p.k < 3) throw std::invalid_argument("the reduction needs k >= 3");
    if (pivot == other) throw std::invalid_argument("pivot and other must differ");
    const Rat mu_i = p.mu[static_cast<std::size_t>(pivot)];
    if (mu_i.is_zero()) throw std::invalid_argument("pivot mu is zero; use the degenerate reduction");
    const YoshidaCover cover = yoshida_cover(p, pivot, Rat(p.k) * mu_i / Rat(p.eps));
    const auto [pc, qc] = reduced_normal_equation(p, pivot, other, cover);
    return hypergeom::HGEquation::from_coefficients(pc, qc);
}

kovacic::SLODE anve_degenerate(const SystemParams& p, int pivot, int reference, int target) {
    p.validate();
    check_index(p, pivot);
    check_index(p, reference);
    check_index(p, target);
    if (p.k < 3) throw std::invalid_argument("the reduction needs k >= 3");
    if (!p.mu[static_cast<std::size_t>(pivot)].is_zero()) throw std::invalid_argument("pivot mu must be zero");
    if (target == pivot || reference == pivot) throw std::invalid_argument("reference and target must differ from the pivot");
    const Rat mu_j = p.mu[static_cast<std::size_t>(reference)];
    if (mu_j.is_zero()) throw std::invalid_argument("reference mu must be nonzero");
    const YoshidaCover cover = yoshida_cover(p, pivot, Rat(2) * mu_j / Rat(p.eps));
    const auto [pc, qc] = reduced_normal_equation(p, pivot, target, cover);
    return {-pc, -qc};
}

bool necessary_ratio_condition(int k, const Rat& ratio) {
    if (k < 3) throw std::invalid_argument("the ratio condition is stated for k >= 3");
    if (ratio.sign() < 0) return false;
    const auto s = ratio.exact_sqrt();
    if (!s) return false;
    const Rat km1(k - 1);
    auto natural = [](const Rat& x) { return x.is_integer() && x.sign() >= 0; };
    // ((k-1) l + 1)^2 and ((k-1) l - 1)^2 with l >= 0
    if (natural((*s - Rat(1)) / km1) || natural((*s + Rat(1)) / km1) || natural((Rat(1) - *s) / km1)) return true;
    // (k-1)^2 (2l+1)^2 / 4 with l any integer
    const Rat odd = Rat(2) * *s / km1;
    return odd.is_integer() && mpz_odd_p(odd.num().get_mpz_t());
}

std::string to_string(Verdict v) { return v == Verdict::Integrable ? "Integrable" : "NonIntegrable"; }

std::string to_string(Reason r) {
    switch (r) {
    case Reason::KEqualsTwo: return "k_equals_2";
    case Reason::SingleDegree: return "single_degree";
    case Reason::AllMuEqual: return "all_mu_equal";
    case Reason::KimuraContradiction: return "kimura_contradiction";
    case Reason::KovacicTypeIV: return "kovacic_type_iv";
    }
    return "unknown";
}

Verdict closed_form_verdict(const SystemParams& p) {
    p.validate();
    if (p.k == 2) return Verdict::Integrable;
    for (const auto& x : p.mu)
        if (x != p.mu.front()) return Verdict::NonIntegrable;
    return Verdict::Integrable;
}

namespace {

ManifoldEvidence manifold_evidence(const SystemParams& p, int pivot, int other) {
    ManifoldEvidence e;
    e.pivot = pivot;
    e.other = other;
    e.equation = anve(p, pivot, other);
    e.diffs = hypergeom::exponent_differences(e.equation);
    e.kimura = hypergeom::identity_component_solvable(e.diffs);
    return e;
}

}  // namespace

Certificate classify_integrability(const SystemParams& p) {
    p.validate();
    Certificate c;
    c.params = p;
    c.verdict = closed_form_verdict(p);
    if (p.k == 2) {
        c.reason = Reason::KEqualsTwo;
        return c;
    }
    if (p.m() == 1) {
        c.reason = Reason::SingleDegree;
        return c;
    }
    if (c.verdict == Verdict::Integrable) {
        c.reason = Reason::AllMuEqual;
        return c;
    }

    // first index whose mu differs from mu_1; at most one of the two is zero
    int j = 1;
    while (p.mu[static_cast<std::size_t>(j)] == p.mu[0]) ++j;
    const Rat& a = p.mu[0];
    const Rat& b = p.mu[static_cast<std::size_t>(j)];
    c.pair = std::make_pair(0, j);

    if (!a.is_zero() && !b.is_zero()) {
        c.reason = Reason::KimuraContradiction;
        c.negative_ratio = (b / a).sign() < 0;
        c.forward = manifold_evidence(p, 0, j);
        c.reverse = manifold_evidence(p, j, 0);
        c.discrepancy = c.forward->kimura.solvable && c.reverse->kimura.solvable;
        return c;
    }

    c.reason = Reason::KovacicTypeIV;
    const int pivot = a.is_zero() ? 0 : j;
    const int reference = a.is_zero() ? j : 0;
    DegenerateEvidence d;
    d.pivot = pivot;
    d.reference = reference;
    d.equation = anve_degenerate(p, pivot, reference, reference);
    d.normal = kovacic::reduce_to_normal(d.equation);
    d.galois = kovacic::classify_galois(d.normal);
    c.discrepancy = d.galois.type != kovacic::GaloisType::TypeIV;
    c.degenerate = std::move(d);
    return c;
}

}  // namespace critint::critsys
