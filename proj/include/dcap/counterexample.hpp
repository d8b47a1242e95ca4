#pragma once

/**
 * @file counterexample.hpp
 * @brief The family xi_alpha = prod_{beta <= alpha} (x - lambda_beta)^{alpha^2}
 * and exact checks of its two defining properties: the restrictions to every
 * tested subdisc and one-hole domain decay, while the family itself, scaled by
 * pi^alpha / (alpha! pi^{2 alpha}), does not.
 */

#include "dcap/detail/kronecker.hpp"
#include "dcap/diff_operator.hpp"
#include "dcap/domain.hpp"
#include "dcap/factorial.hpp"
#include "dcap/field.hpp"
#include "dcap/hahn.hpp"
#include "dcap/padic.hpp"
#include "dcap/polynomial.hpp"
#include "dcap/rapid_decrease.hpp"
#include "dcap/valuation.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace dcap {

namespace detail {

// Stern's diatomic sequence.
inline mpz_class fusc(const mpz_class& n0) {
    mpz_class n = n0, a = 1, b = 0;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) b += a;
        else a += b;
        n >>= 1;
    }
    return b;
}

// k-th term (k >= 1) of the Calkin-Wilf enumeration 1, 1/2, 2, 1/3, 3/2, ...
inline mpq_class calkin_wilf(const mpz_class& k) {
    mpq_class q(fusc(k), fusc(k + 1));
    q.canonicalize();
    return q;
}

// Position of q > 0 in the Calkin-Wilf enumeration.
inline mpz_class calkin_wilf_index(const mpq_class& q) {
    if (q <= 0) throw std::invalid_argument("calkin_wilf_index: needs q > 0");
    mpz_class a = q.get_num(), b = q.get_den();
    std::vector<std::pair<bool, mpz_class>> runs; // (right child?, length), leaf first
    while (a != b) {
        if (a < b) {
            mpz_class t = (b - 1) / a;
            runs.emplace_back(false, t);
            b -= t * a;
        } else {
            mpz_class t = (a - 1) / b;
            runs.emplace_back(true, t);
            a -= t * b;
        }
    }
    mpz_class k = 1;
    for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
        const unsigned long len = it->second.get_ui();
        k <<= len;
        if (it->first) k += (mpz_class(1) << len) - 1;
    }
    return k;
}

} // namespace detail

/// Coset representatives lambda_0, lambda_1, ... for the maximal ideal.
///  - hahn: 0, then +q_k, -q_k along the Calkin-Wilf enumeration of the positive rationals, so every
///    residue in Q occurs exactly once.
///  - padic: lambda_i = i mod p, which repeats residues.
class CosetRepScheme {
public:
    enum class Kind { hahn_calkin_wilf, padic_cycling };

    static CosetRepScheme hahn() { return CosetRepScheme(Kind::hahn_calkin_wilf, 0); }
    static CosetRepScheme padic(unsigned long p) { return CosetRepScheme(Kind::padic_cycling, p); }

    template <ValuedField F>
    static CosetRepScheme for_field(const F& field) {
        if constexpr (std::is_same_v<F, HahnField>) {
            (void)field;
            return hahn();
        } else {
            return padic(field.prime());
        }
    }

    Kind kind() const { return kind_; }
    std::string label() const {
        return kind_ == Kind::hahn_calkin_wilf ? "hahn-calkin-wilf" : "padic-cycling(p=" + std::to_string(p_) + ")";
    }

    mpq_class representative(std::uint64_t i) const {
        if (kind_ == Kind::padic_cycling) return mpq_class(static_cast<unsigned long>(i % p_));
        if (i == 0) return 0;
        mpq_class q = detail::calkin_wilf(mpz_class(static_cast<unsigned long>((i + 1) / 2)));
        return i % 2 ? q : mpq_class(-q);
    }

    /// The least index whose representative has the given residue.
    mpz_class index_of_residue(const mpq_class& residue) const {
        if (kind_ == Kind::padic_cycling) {
            mpz_class r = residue_mod_p(residue);
            return r;
        }
        if (residue == 0) return 0;
        mpz_class k = detail::calkin_wilf_index(residue > 0 ? residue : mpq_class(-residue));
        return residue > 0 ? mpz_class(2 * k - 1) : mpz_class(2 * k);
    }

    /// Residue class of an element with v >= 0: a rational for hahn, an integer in [0, p) for padic.
    template <ValuedField F>
    mpq_class residue(const F& field, const typename F::Element& a) const {
        if (field.valuation(a) < Valuation(0L)) throw std::invalid_argument("residue: element outside the unit disc");
        if constexpr (std::is_same_v<F, HahnField>) {
            return a.coefficient(0);
        } else {
            return mpq_class(residue_mod_p(a));
        }
    }

    template <ValuedField F>
    mpz_class matching_index(const F& field, const typename F::Element& a) const {
        return index_of_residue(residue(field, a));
    }

private:
    CosetRepScheme(Kind k, unsigned long p) : kind_(k), p_(p) {}

    mpz_class residue_mod_p(const mpq_class& q) const {
        mpz_class P(p_), inv, r;
        if (mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), P.get_mpz_t()) == 0)
            throw std::invalid_argument("residue: denominator divisible by p");
        r = q.get_num() * inv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), P.get_mpz_t());
        return r;
    }

    Kind kind_;
    unsigned long p_;
};

/// xi_alpha = prod_{beta=0}^{alpha} (x - lambda_beta)^{alpha^2}.
template <ValuedField F>
class XiFamily {
public:
    explicit XiFamily(F field) : field_(std::move(field)), scheme_(CosetRepScheme::for_field(field_)) {}
    XiFamily(F field, CosetRepScheme scheme) : field_(std::move(field)), scheme_(std::move(scheme)) {}

    const F& field() const { return field_; }
    const CosetRepScheme& scheme() const { return scheme_; }

    typename F::Element lambda(std::uint64_t beta) const { return field_.from_rational(scheme_.representative(beta)); }

    /// Expanded exactly. Factors (b x - a)^n are built by the binomial theorem, a root pair +-a/b
    /// as (b^2 x^2 - a^2)^n, and the factors are multiplied along a balanced product tree.
    Polynomial<F> xi(std::uint64_t alpha) const {
        if (alpha == 0) return Polynomial<F>::constant(field_, 1, field_.one());
        const unsigned long n = static_cast<unsigned long>(alpha * alpha);
        std::map<mpq_class, unsigned long> mult;
        for (std::uint64_t beta = 0; beta <= alpha; ++beta) mult[scheme_.representative(beta)] += n;

        std::vector<detail::IntPoly> even, odd;
        std::map<unsigned long, unsigned long> den; // prime -> exponent of the common denominator
        for (auto& [root, e] : mult) {
            if (root <= 0) continue;
            auto partner = mult.find(mpq_class(-root));
            if (partner == mult.end()) continue;
            const unsigned long k = std::min(e, partner->second);
            const mpz_class a = root.get_num(), b = root.get_den();
            even.push_back(detail::binomial_power(mpz_class(-a * a), mpz_class(b * b), 2, k));
            add_factor(den, b, 2 * k);
            e -= k;
            partner->second -= k;
        }
        unsigned long shift = 0;
        for (const auto& [root, e] : mult) {
            if (e == 0) continue;
            if (root == 0) {
                shift = e;
                continue;
            }
            const mpz_class a = root.get_num(), b = root.get_den();
            odd.push_back(detail::binomial_power(mpz_class(-a), b, 1, e));
            add_factor(den, b, e);
        }
        detail::IntPoly prod = detail::kronecker_multiply(detail::product_tree(std::move(even)),
                                                          detail::product_tree(std::move(odd)));
        prod.insert(prod.begin(), shift, mpz_class(0));
        return Polynomial<F>::from_int_poly(field_, prod,
                                            std::vector<std::pair<unsigned long, unsigned long>>(den.begin(), den.end()));
    }

    /// Number of beta <= alpha with v(a - lambda_beta) > 0.
    std::uint64_t matching_count(const typename F::Element& a, std::uint64_t alpha) const {
        std::uint64_t m = 0;
        for (std::uint64_t beta = 0; beta <= alpha; ++beta)
            if (field_.valuation(a - lambda(beta)) > Valuation(0L)) ++m;
        return m;
    }

private:
    static void add_factor(std::map<unsigned long, unsigned long>& den, const mpz_class& b, unsigned long e) {
        auto f = detail::small_factorization(b, ~0UL);
        for (const auto& [p, k] : *f) den[p] += k * e;
    }

    F field_;
    CosetRepScheme scheme_;
};

struct ClaimRow {
    std::string kind;
    std::uint64_t alpha = 0;
    std::optional<std::uint64_t> beta;
    std::optional<std::uint64_t> delta;
    Valuation valuation_lhs;
    Valuation valuation_rhs;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> extra;
};

struct ClaimReport {
    std::string scheme;
    std::string claim;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<ClaimRow> rows;
    std::optional<std::string> stabilization_index;
    std::optional<Valuation> constant_C;
    std::optional<Classification> classification;
    bool pass = true;
};

namespace detail {

inline void add_row(ClaimReport& rep, ClaimRow row) {
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(std::move(row));
}

// Valuation of mpz in the residue characteristic of the field (0 for hahn).
template <ValuedField F>
Valuation integer_valuation(const F& field, const mpz_class& z) {
    return field.valuation(field.from_integer(z));
}

} // namespace detail

/// Bound on a closed disc Z = D(a, |rho|), |rho| < 1:
/// v(xi_alpha|_Z) >= m(alpha) alpha^2 min(v(a - lambda_gamma), v(rho)), m counting the matching beta <= alpha,
/// and the family alpha -> xi_alpha|_Z pi^alpha is classified with the bound min(v(eps), v(rho)) n^2 + v(pi) n.
template <ValuedField F>
ClaimReport verify_claim1_disc(const XiFamily<F>& fam, const typename F::Element& a, const mpq_class& radius_valuation,
                               std::uint64_t alpha_max, std::uint64_t r_max = 4) {
    const F& field = fam.field();
    if (radius_valuation <= 0) throw InvalidDomain("claim1 disc: radius valuation must be positive");
    if (field.valuation(a) < Valuation(0L)) throw InvalidDomain("claim1 disc: centre outside the unit disc");
    const mpq_class vpi = field.uniformizer_valuation();
    Polydisc<F> Z{{a}, {mpq_class(radius_valuation / vpi)}};

    ClaimReport rep;
    rep.scheme = fam.scheme().label();
    rep.claim = "claim1-disc";
    const mpz_class gamma = fam.scheme().matching_index(field, a);
    const Valuation v_eps = field.valuation(a - field.from_rational(fam.scheme().residue(field, a)));
    const bool gamma_small = gamma.fits_ulong_p();
    const mpq_class mu = v_eps.is_infinite() ? radius_valuation : std::min(v_eps.value(), radius_valuation);
    rep.params = {{"center", field.to_string(a)},
                  {"radius_valuation", radius_valuation.get_str()},
                  {"alpha_max", std::to_string(alpha_max)},
                  {"gamma", gamma.get_str()},
                  {"v_eps", v_eps.str()}};

    std::vector<Valuation> scaled(alpha_max + 1);
    for (std::uint64_t alpha = 0; alpha <= alpha_max; ++alpha) {
        const Polynomial<F> x = fam.xi(alpha);
        const Valuation vz = sup_norm(x, Z);
        const std::uint64_t m = fam.matching_count(a, alpha);
        const mpq_class rhs = mpq_class(m * alpha * alpha) * mu;
        scaled[alpha] = vz + Valuation(mpq_class(vpi * alpha));
        ClaimRow row{"disc", alpha, {}, {}, vz, Valuation(rhs), vz >= Valuation(rhs), {}};
        row.extra = {{"matching", std::to_string(m)},
                     {"scaled_valuation", scaled[alpha].str()},
                     {"operator_upper", (scaled[alpha] - Valuation(mpq_class(radius_valuation * alpha))).str()}};
        detail::add_row(rep, std::move(row));
    }

    SymbolFamily restricted;
    restricted.dim = 1;
    restricted.uniformizer_valuation = vpi;
    restricted.label = "xi|Z pi^alpha";
    restricted.valuation = [scaled](const MultiIndex& idx) { return scaled.at(idx[0]); };
    if (gamma_small) restricted.bound = ValuationBound{mu, vpi, 0, gamma.get_ui()};
    Classification c = classify_rapid_decrease(restricted, r_max, alpha_max);
    rep.pass = rep.pass && c.verdict == Verdict::decreasing_witnessed;
    rep.classification = std::move(c);
    return rep;
}

/// One-hole domain Y = closed unit disc minus the open disc B(a, |tau|).
///  (i)   monomials: v(xi_alpha d^(alpha) x^delta |_Y) >= 0;
///  (ii)  hole basis z_beta = (tau/(x-a))^{beta+1}: the exact value of v(z_beta^{-1} xi_alpha d^(alpha) z_beta |_Y)
///        against alpha min(alpha v(rho) - v(tau), 0) for alpha >= gamma, rho = a - lambda_gamma;
///  (iii) the operator norm of xi_alpha pi^alpha d^(alpha) on the tested basis grows like alpha v(pi) once
///        alpha passes the stabilization index.
/// The supremum over Y of g (x-a)^{-alpha}, g a polynomial, is attained at the Gauss point or on the
/// circle |x - a| = |tau|; this gives min(v_gauss(g), v_{D(a,|tau|)}(g) - alpha v(tau)).
template <ValuedField F>
ClaimReport verify_claim1_laurent(const XiFamily<F>& fam, const Hole<F>& hole, std::uint64_t alpha_max,
                                  std::uint64_t beta_max, std::uint64_t delta_max) {
    const F& field = fam.field();
    const HoledDisc<F> Y{{hole}};
    validate(field, Y);
    const mpq_class vpi = field.uniformizer_valuation();
    const mpq_class vtau = hole.radius_valuation;
    Polydisc<F> D{{hole.center}, {mpq_class(vtau / vpi)}};

    ClaimReport rep;
    rep.scheme = fam.scheme().label();
    rep.claim = "claim1-laurent";
    const mpz_class gamma = fam.scheme().matching_index(field, hole.center);
    const std::uint64_t gamma_u = gamma.fits_ulong_p() ? gamma.get_ui() : UINT64_MAX;
    const Valuation v_rho = field.valuation(hole.center - field.from_rational(fam.scheme().residue(field, hole.center)));
    rep.params = {{"hole_center", field.to_string(hole.center)},
                  {"tau_valuation", vtau.get_str()},
                  {"alpha_max", std::to_string(alpha_max)},
                  {"beta_max", std::to_string(beta_max)},
                  {"delta_max", std::to_string(delta_max)},
                  {"gamma", gamma.get_str()},
                  {"v_rho", v_rho.str()}};

    // alpha_0 = max(gamma, ceil(v(tau)/v(rho))): from there on the hole bound is 0.
    mpz_class alpha0 = gamma;
    if (!v_rho.is_infinite()) {
        mpz_class need = detail::ceil_q(mpq_class(vtau / v_rho.value()));
        if (need > alpha0) alpha0 = need;
    }
    rep.stabilization_index = alpha0.get_str();

    Valuation C(0L);
    for (std::uint64_t alpha = 0; alpha <= alpha_max; ++alpha) {
        const Polynomial<F> x = fam.xi(alpha);
        DiffOperator<F> op(field, 1, alpha, Normalization::divided);
        op.add_term(MultiIndex{static_cast<std::uint32_t>(alpha)}, x);

        Valuation mono_min = Valuation::infinity();
        for (std::uint64_t delta = 0; delta <= delta_max; ++delta) {
            Polynomial<F> image = apply(op, Polynomial<F>::monomial(field, MultiIndex{static_cast<std::uint32_t>(delta)}));
            Valuation v = sup_norm(image, Y);
            mono_min = dcap::min(mono_min, v);
            ClaimRow row{"monomial", alpha, {}, delta, v, Valuation(0L), v >= Valuation(0L), {}};
            detail::add_row(rep, std::move(row));
        }

        const Valuation v_disc = sup_norm(x, D);
        const Valuation on_circle = v_disc - Valuation(mpq_class(vtau * alpha));
        const Valuation shape = dcap::min(gauss_norm(x), on_circle); // sup_Y of xi_alpha (x-a)^{-alpha}
        Valuation rhs;
        if (alpha >= gamma_u) {
            rhs = v_rho.is_infinite() ? Valuation(0L)
                                      : Valuation(mpq_class(alpha * std::min(mpq_class(alpha * v_rho.value() - vtau),
                                                                             mpq_class(0))));
        } else {
            rhs = Valuation(mpq_class(-vtau * alpha));
        }
        Valuation hole_min = Valuation::infinity();
        for (std::uint64_t beta = 0; beta <= beta_max; ++beta) {
            LaurentDerivative<F> ld = laurent_basis_derivative(field, static_cast<std::uint32_t>(alpha),
                                                               static_cast<std::uint32_t>(beta), hole);
            Valuation v = field.valuation(ld.factor) + shape;
            hole_min = dcap::min(hole_min, v);
            C = dcap::min(C, v);
            ClaimRow row{"hole", alpha, beta, {}, v, rhs, v >= rhs, {}};
            row.extra = {{"binomial_valuation", field.valuation(ld.factor).str()},
                         {"disc_valuation", v_disc.str()},
                         {"pole_order", std::to_string(ld.pole_order)}};
            detail::add_row(rep, std::move(row));
        }

        const Valuation tail = Valuation(mpq_class(vpi * alpha)) + dcap::min(mono_min, hole_min);
        const bool stable = mpz_class(static_cast<unsigned long>(alpha)) >= alpha0;
        ClaimRow row{"tail", alpha, {}, {}, tail, Valuation(mpq_class(vpi * alpha)), false, {}};
        row.extra = {{"stable", stable ? "true" : "false"}};
        if (!stable) row.valuation_rhs = row.valuation_rhs + dcap::min(C, Valuation(0L));
        row.pass = tail >= row.valuation_rhs;
        detail::add_row(rep, std::move(row));
    }
    rep.constant_C = C;
    return rep;
}

/// v(xi_alpha pi^alpha / (alpha! pi^{2 alpha})) <= -alpha v(pi), with gauss valuation of xi_alpha exactly 0,
/// and the family is classified from its exact valuations.
template <ValuedField F>
ClaimReport verify_claim2(const XiFamily<F>& fam, std::uint64_t alpha_max, std::uint64_t r_max = 4) {
    const F& field = fam.field();
    const mpq_class vpi = field.uniformizer_valuation();
    ClaimReport rep;
    rep.scheme = fam.scheme().label();
    rep.claim = "claim2";
    rep.params = {{"alpha_max", std::to_string(alpha_max)}};
    std::vector<Valuation> lhs_values(alpha_max + 1);
    for (std::uint64_t alpha = 0; alpha <= alpha_max; ++alpha) {
        const Polynomial<F> x = fam.xi(alpha);
        const Valuation g = gauss_norm(x);
        const Valuation fact = field.factorial_valuation(alpha);
        const Valuation lhs = g + Valuation(mpq_class(vpi * alpha)) - fact - Valuation(mpq_class(2 * vpi * alpha));
        const Valuation rhs(mpq_class(-vpi * alpha));
        lhs_values[alpha] = lhs;
        ClaimRow row{"divergence", alpha, {}, {}, lhs, rhs, lhs <= rhs && g == Valuation(0L), {}};
        row.extra = {{"gauss_valuation", g.str()},
                     {"factorial_valuation", fact.str()},
                     {"degree", std::to_string(x.total_degree())}};
        detail::add_row(rep, std::move(row));
    }
    SymbolFamily family;
    family.dim = 1;
    family.uniformizer_valuation = vpi;
    family.label = "xi pi^alpha / (alpha! pi^(2 alpha))";
    family.valuation = [lhs_values](const MultiIndex& idx) { return lhs_values.at(idx[0]); };
    Classification c = classify_rapid_decrease(family, r_max, alpha_max);
    rep.pass = rep.pass && c.verdict == Verdict::non_decreasing_witnessed;
    rep.classification = std::move(c);
    return rep;
}

} // namespace dcap
