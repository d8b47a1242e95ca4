#pragma once

/**
 * @file domain.hpp
 * @brief Affinoid domains inside the closed unit polydisc and exact supremum
 * norms of polynomials on them.
 *
 * Two kinds of domain are supported:
 *  - a polydisc with centre c (v(c_i) >= 0) and radii |pi|^{n_i}, n_i >= 0
 *    rational, i.e. { x : v(x_i - c_i) >= n_i * v(pi) };
 *  - the closed unit disc (d = 1) with finitely many pairwise disjoint open
 *    discs B(a_j, |tau_j|) removed; holes are given by a_j and v(tau_j).
 *
 * On a polydisc the supremum norm of f is the Gauss norm of
 * y -> f(c + pi^n y). On a holed disc the supremum norm of a polynomial is its
 * Gauss norm, since the removed discs have radius <= 1 and miss the Gauss
 * point.
 */

#include "dcap/factorial.hpp"
#include "dcap/field.hpp"
#include "dcap/polynomial.hpp"
#include "dcap/valuation.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace dcap {

struct InvalidDomain : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <ValuedField F>
struct Polydisc {
    std::vector<typename F::Element> center;
    std::vector<mpq_class> radii; // in units of v(pi)

    static Polydisc unit(const F& field, std::size_t dim) {
        return {std::vector<typename F::Element>(dim, field.zero()), std::vector<mpq_class>(dim, 0)};
    }
};

template <ValuedField F>
struct Hole {
    typename F::Element center;
    mpq_class radius_valuation; // v(tau)
};

template <ValuedField F>
struct HoledDisc {
    std::vector<Hole<F>> holes;
};

template <ValuedField F>
using Domain = std::variant<Polydisc<F>, HoledDisc<F>>;

template <ValuedField F>
std::size_t domain_dim(const Domain<F>& dom) {
    if (auto* pd = std::get_if<Polydisc<F>>(&dom)) return pd->center.size();
    return 1;
}

template <ValuedField F>
void validate(const F& field, const Polydisc<F>& pd) {
    if (pd.center.size() != pd.radii.size()) throw InvalidDomain("polydisc: centre and radii differ in length");
    if (pd.center.empty()) throw InvalidDomain("polydisc: dimension must be positive");
    for (const auto& c : pd.center)
        if (field.valuation(c) < Valuation(0L)) throw InvalidDomain("polydisc: centre outside the unit polydisc");
    for (const auto& r : pd.radii)
        if (r < 0) throw InvalidDomain("polydisc: radius valuations must be >= 0");
}

template <ValuedField F>
void validate(const F& field, const HoledDisc<F>& hd) {
    for (const auto& h : hd.holes) {
        if (field.valuation(h.center) < Valuation(0L)) throw InvalidDomain("hole centre outside the unit disc");
        if (h.radius_valuation < 0) throw InvalidDomain("hole radius valuation must be >= 0");
    }
    for (std::size_t i = 0; i < hd.holes.size(); ++i)
        for (std::size_t j = i + 1; j < hd.holes.size(); ++j) {
            // |a_i - a_j| >= max(|tau_i|, |tau_j|)
            Valuation gap = field.valuation(hd.holes[i].center - hd.holes[j].center);
            Valuation bound(dcap::min(Valuation(hd.holes[i].radius_valuation), Valuation(hd.holes[j].radius_valuation)));
            if (gap > bound) throw InvalidDomain("holes " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
        }
}

template <ValuedField F>
void validate(const F& field, const Domain<F>& dom) {
    std::visit([&](const auto& d) { validate(field, d); }, dom);
}

/// Weighted Gauss valuation: min over terms of v(c) + sum_i e_i * weights_i.
template <ValuedField F>
Valuation weighted_gauss(const Polynomial<F>& g, const std::vector<mpq_class>& weights) {
    Valuation v = Valuation::infinity();
    for (const auto& [m, c] : g.terms()) {
        mpq_class shift = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) shift += weights[i] * m[i];
        v = dcap::min(v, g.field().valuation(c) + Valuation(shift));
    }
    return v;
}

namespace detail {

// Univariate polynomial with constant (Q) coefficients, disc centred at
// lambda + eps with lambda in Q and eps = c t^q a single monomial, q > 0. After
// translating by lambda to h(w) = sum h_k w^k, the coefficient of y^j in
// h(eps + t^R y) is t^{Rj} sum_{k>=j} h_k binom(k,j) c^{k-j} t^{q(k-j)}, whose
// summands have pairwise distinct exponents; its valuation is therefore
// R j + q (k_min(j) - j) with k_min(j) the least k >= j with h_k != 0.
inline std::optional<Valuation> hahn_monomial_offset_sup(const Polynomial<HahnField>& f, const HahnSeries& center,
                                                         const mpq_class& radius) {
    if (f.dim() != 1) return std::nullopt;
    for (const auto& [m, c] : f.terms())
        if (!(c.is_zero() || (c.is_monomial() && c.leading_term().first == 0))) return std::nullopt;
    mpq_class lambda = center.coefficient(0);
    HahnSeries eps = center - HahnSeries(lambda);
    if (!eps.is_monomial() || eps.leading_term().first <= 0) return std::nullopt;
    const mpq_class q = eps.leading_term().first;

    Polynomial<HahnField> h = f.translate({HahnSeries(lambda)});
    if (h.is_zero()) return Valuation::infinity();
    const std::uint32_t n = h.degree_in(0);
    std::vector<bool> nonzero(n + 1, false);
    for (const auto& [m, c] : h.terms()) nonzero[m[0]] = true;
    Valuation best = Valuation::infinity();
    std::int64_t next = -1; // least k >= j with h_k != 0
    for (std::int64_t j = n; j >= 0; --j) {
        if (nonzero[static_cast<std::size_t>(j)]) next = j;
        if (next < 0) continue;
        mpq_class v = radius * j + q * (next - j);
        best = dcap::min(best, Valuation(v));
    }
    return best;
}

} // namespace detail

/// Supremum norm (as a valuation) of f on a polydisc.
template <ValuedField F>
Valuation sup_norm(const Polynomial<F>& f, const Polydisc<F>& pd) {
    const F& field = f.field();
    validate(field, pd);
    if (pd.center.size() != f.dim()) throw std::invalid_argument("sup_norm: dimension mismatch");
    std::vector<mpq_class> weights(pd.radii.size());
    std::vector<typename F::Element> center(pd.center.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] = pd.radii[i] * field.uniformizer_valuation();
        // Any point of a closed disc is a centre of it.
        center[i] = field.recenter(pd.center[i], weights[i]);
    }
    if constexpr (std::is_same_v<F, HahnField>) {
        if (auto fast = detail::hahn_monomial_offset_sup(f, center[0], weights[0])) return *fast;
    }
    return weighted_gauss(f.translate(center), weights);
}

template <ValuedField F>
Valuation sup_norm(const Polynomial<F>& f, const HoledDisc<F>& hd) {
    validate(f.field(), hd);
    if (f.dim() != 1) throw std::invalid_argument("sup_norm: holed discs are one-dimensional");
    return gauss_norm(f);
}

template <ValuedField F>
Valuation sup_norm(const Polynomial<F>& f, const Domain<F>& dom) {
    return std::visit([&](const auto& d) { return sup_norm(f, d); }, dom);
}

/// g(y) = f(center + pi^{radii} y), expanded exactly.
template <ValuedField F>
Polynomial<F> rescale_to_subdisc(const Polynomial<F>& f, const std::vector<typename F::Element>& center,
                                 const std::vector<mpq_class>& radii) {
    if (center.size() != f.dim() || radii.size() != f.dim())
        throw std::invalid_argument("rescale_to_subdisc: dimension mismatch");
    validate(f.field(), Polydisc<F>{center, radii});
    std::vector<typename F::Element> scale;
    scale.reserve(radii.size());
    for (const auto& r : radii) scale.push_back(f.field().uniformizer_power(r));
    return f.translate(center).scale(scale);
}

template <ValuedField F>
struct LaurentDerivative {
    typename F::Element factor;
    std::uint32_t pole_order;
};

/// Closed form of z_beta^{-1} d^{(alpha)}(z_beta) for z_beta = (tau/(x-a))^{beta+1}:
/// (-1)^alpha binom(alpha+beta, alpha) (x-a)^{-alpha}.
template <ValuedField F>
LaurentDerivative<F> laurent_basis_derivative(const F& field, std::uint32_t alpha, std::uint32_t beta,
                                              const Hole<F>& hole) {
    validate(field, HoledDisc<F>{{hole}});
    mpz_class b = binomial(alpha + beta, alpha);
    if (alpha % 2) b = -b;
    return {field.from_integer(b), alpha};
}

} // namespace dcap
