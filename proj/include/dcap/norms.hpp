#pragma once

/**
 * @file norms.hpp
 * @brief Operator norms of differential operators on polydiscs, and the
 * symbol decay estimate on the shrinking discs X_n.
 *
 * On a polydisc with centre c and radii |pi|^{n_i} the functions
 * e_delta = (x - c)^delta form an orthogonal basis with |e_delta| = |pi|^{n.delta}.
 * So sup_delta |P e_delta| / |e_delta| over |delta| <= cap is a certified
 * lower bound for the operator norm of P, and it is exact in the limit. For
 * the upper bound, ||d^alpha|| = |alpha!| |pi|^{-n.alpha} on that basis and
 * ||a f|| <= |a| ||f||.
 */

#include "dcap/diff_operator.hpp"
#include "dcap/domain.hpp"
#include "dcap/field.hpp"
#include "dcap/multi_index.hpp"
#include "dcap/polynomial.hpp"
#include "dcap/valuation.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

namespace dcap {

/// Operator norm bracket lower <= ||P|| <= upper, both as valuations
/// (so lower.valuation >= upper.valuation).
struct NormBracket {
    Valuation lower;
    Valuation upper;
};

namespace detail {

template <ValuedField F>
Polydisc<F> as_polydisc(const F& field, const Domain<F>& dom, std::size_t dim) {
    if (auto* pd = std::get_if<Polydisc<F>>(&dom)) return *pd;
    const auto& hd = std::get<HoledDisc<F>>(dom);
    if (!hd.holes.empty()) throw std::invalid_argument("operator norms are computed on polydiscs only");
    return Polydisc<F>::unit(field, dim);
}

template <ValuedField F>
mpq_class radius_weight(const F& field, const Polydisc<F>& pd, const MultiIndex& m) {
    mpq_class w = 0;
    for (std::size_t i = 0; i < m.dim(); ++i) w += pd.radii[i] * m[i];
    return w * field.uniformizer_valuation();
}

} // namespace detail

template <ValuedField F>
Valuation multi_factorial_valuation(const F& field, const MultiIndex& alpha) {
    Valuation v(0L);
    for (std::size_t i = 0; i < alpha.dim(); ++i) v += field.factorial_valuation(alpha[i]);
    return v;
}

template <ValuedField F>
NormBracket operator_norm_bracket(const DiffOperator<F>& P, const Domain<F>& dom, std::uint64_t degree_cap) {
    const F& field = P.field();
    const Polydisc<F> pd = detail::as_polydisc(field, dom, P.dim());
    validate(field, pd);
    if (pd.center.size() != P.dim()) throw std::invalid_argument("operator_norm_bracket: dimension mismatch");

    std::vector<typename F::Element> minus_c;
    for (const auto& c : pd.center) minus_c.push_back(-c);

    Valuation lower = Valuation::infinity();
    for (const auto& delta : indices_up_to(P.dim(), degree_cap)) {
        Polynomial<F> e = Polynomial<F>::monomial(field, delta).translate(minus_c);
        Polynomial<F> image = apply(P, e);
        if (image.is_zero()) continue;
        lower = dcap::min(lower, sup_norm(image, pd) - Valuation(detail::radius_weight(field, pd, delta)));
    }

    Valuation upper = Valuation::infinity();
    const DiffOperator<F> plain = P.to_plain();
    for (const auto& [alpha, a] : plain.coefficients()) {
        Valuation bound = sup_norm(a, pd) + multi_factorial_valuation(field, alpha) -
                          Valuation(detail::radius_weight(field, pd, alpha));
        upper = dcap::min(upper, bound);
    }
    return {lower, upper};
}

struct DecayRow {
    MultiIndex index;
    Valuation gauss;      // |a_alpha|_X
    Valuation at_origin;  // |a_alpha(0)|
    Valuation on_subdisc; // |a_alpha|_{X_n}
    Valuation bound;      // lower.valuation + n|alpha| v(pi) - v(alpha!)
    bool pass;
};

struct DecayReport {
    std::uint64_t n;
    NormBracket norm_on_subdisc;
    std::vector<DecayRow> rows;
    bool pass = true;
};

/// Checks |a_alpha|_{X_n} <= ||P||_{X_n} |pi|^{n|alpha|} / |alpha!| for every stored alpha, where X_n is
/// the polydisc of radius |pi|^n about the origin and the operator norm is replaced by its certified
/// lower bound over basis elements of degree <= the truncation order.
template <ValuedField F>
DecayReport symbol_decay_estimate(const DiffOperator<F>& P, std::uint64_t n) {
    const F& field = P.field();
    Polydisc<F> Xn{std::vector<typename F::Element>(P.dim(), field.zero()),
                   std::vector<mpq_class>(P.dim(), mpq_class(n))};
    DecayReport report{n, operator_norm_bracket(P, Domain<F>(Xn), P.truncation_order()), {}, true};
    const Valuation norm = report.norm_on_subdisc.lower;
    const std::vector<typename F::Element> origin(P.dim(), field.zero());
    const DiffOperator<F> plain = P.to_plain();
    for (const auto& [alpha, a] : plain.coefficients()) {
        DecayRow row{alpha, gauss_norm(a), field.valuation(a.evaluate(origin)), sup_norm(a, Xn), {}, false};
        row.bound = norm + Valuation(mpq_class(field.uniformizer_valuation() * n * alpha.total())) -
                    multi_factorial_valuation(field, alpha);
        row.pass = row.on_subdisc >= row.bound && row.at_origin >= row.on_subdisc;
        report.pass = report.pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace dcap
