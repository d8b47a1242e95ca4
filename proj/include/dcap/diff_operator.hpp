#pragma once

/**
 * @file diff_operator.hpp
 * @brief Truncated differential operators sum_{|alpha| <= N} a_alpha d^alpha
 * with polynomial coefficients, their action on polynomials, composition and
 * the R-seminorms sup_alpha |a_alpha| R^{|alpha|}.
 *
 * The action on a polynomial is exact: only finitely many d^alpha act
 * non-trivially on a polynomial, so truncation loses nothing there.
 */

#include "dcap/field.hpp"
#include "dcap/multi_index.hpp"
#include "dcap/polynomial.hpp"
#include "dcap/valuation.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace dcap {

/// Plain d^alpha, or divided powers d^(alpha) = d^alpha / alpha!.
enum class Normalization { plain, divided };

inline const char* to_string(Normalization n) { return n == Normalization::plain ? "plain" : "divided"; }

template <ValuedField F>
class DiffOperator {
public:
    using Element = typename F::Element;
    using CoefficientMap = std::map<MultiIndex, Polynomial<F>>;

    DiffOperator(F field, std::size_t dim, std::uint64_t truncation_order,
                 Normalization normalization = Normalization::plain)
        : field_(std::move(field)), dim_(dim), order_(truncation_order), norm_(normalization) {}

    const F& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::uint64_t truncation_order() const { return order_; }
    Normalization normalization() const { return norm_; }
    const CoefficientMap& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Polynomial<F> coefficient(const MultiIndex& alpha) const {
        auto it = coeffs_.find(alpha);
        return it == coeffs_.end() ? Polynomial<F>(field_, dim_) : it->second;
    }

    /// Adds a * d^alpha (in this operator's normalization).
    void add_term(const MultiIndex& alpha, const Polynomial<F>& a) {
        if (alpha.dim() != dim_ || a.dim() != dim_) throw std::invalid_argument("operator term dimension mismatch");
        if (!(a.field() == field_)) throw std::invalid_argument("operator term backend mismatch");
        if (alpha.total() > order_)
            throw std::invalid_argument("operator term " + alpha.str() + " exceeds truncation order " +
                                        std::to_string(order_));
        if (a.is_zero()) return;
        auto [it, inserted] = coeffs_.try_emplace(alpha, a);
        if (!inserted) {
            it->second += a;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    /// The same operator written with plain d^alpha.
    DiffOperator to_plain() const {
        if (norm_ == Normalization::plain) return *this;
        DiffOperator r(field_, dim_, order_, Normalization::plain);
        for (const auto& [alpha, a] : coeffs_)
            r.add_term(alpha, field_.from_rational(mpq_class(mpz_class(1), alpha.factorial())) * a);
        return r;
    }

    /// The same operator written with divided powers d^(alpha).
    DiffOperator to_divided() const {
        if (norm_ == Normalization::divided) return *this;
        DiffOperator r(field_, dim_, order_, Normalization::divided);
        for (const auto& [alpha, a] : coeffs_) r.add_term(alpha, field_.from_integer(alpha.factorial()) * a);
        return r;
    }

    DiffOperator with_normalization(Normalization n) const {
        return n == Normalization::plain ? to_plain() : to_divided();
    }

    friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
        return a.dim_ == b.dim_ && a.field_ == b.field_ && a.norm_ == b.norm_ && a.coeffs_ == b.coeffs_;
    }

private:
    F field_;
    std::size_t dim_;
    std::uint64_t order_;
    Normalization norm_;
    CoefficientMap coeffs_;
};

/// d^(alpha) f = d^alpha f / alpha!.
template <ValuedField F>
Polynomial<F> divided_derivative(const Polynomial<F>& f, const MultiIndex& alpha) {
    Polynomial<F> r(f.field(), f.dim());
    for (const auto& [m, c] : f.terms()) {
        if (!alpha.leq(m)) continue;
        r.add_term(m - alpha, typename F::Element(f.field().from_integer(m.binomial(alpha)) * c));
    }
    return r;
}

/// The action P(f) = sum a_alpha d^alpha f.
template <ValuedField F>
Polynomial<F> apply(const DiffOperator<F>& P, const Polynomial<F>& f) {
    if (f.dim() != P.dim()) throw std::invalid_argument("apply: dimension mismatch");
    if (!(f.field() == P.field())) throw std::invalid_argument("apply: backend mismatch");
    Polynomial<F> out(f.field(), f.dim());
    for (const auto& [alpha, a] : P.coefficients()) {
        Polynomial<F> d =
            P.normalization() == Normalization::plain ? f.derivative(alpha) : divided_derivative(f, alpha);
        if (!d.is_zero()) out += a * d;
    }
    return out;
}

/// P o Q, via the Leibniz rule d^alpha b = sum_{mu <= alpha} binom(alpha, mu) d^mu(b) d^{alpha - mu}.
template <ValuedField F>
DiffOperator<F> compose(const DiffOperator<F>& P, const DiffOperator<F>& Q) {
    if (P.dim() != Q.dim()) throw std::invalid_argument("compose: dimension mismatch");
    if (!(P.field() == Q.field())) throw std::invalid_argument("compose: backend mismatch");
    const F& field = P.field();
    DiffOperator<F> p = P.to_plain(), q = Q.to_plain();
    DiffOperator<F> r(field, P.dim(), P.truncation_order() + Q.truncation_order(), Normalization::plain);
    for (const auto& [alpha, a] : p.coefficients())
        for (const auto& [gamma, b] : q.coefficients())
            for_each_below(alpha, [&](const MultiIndex& mu) {
                Polynomial<F> db = b.derivative(mu);
                if (db.is_zero()) return;
                r.add_term(alpha - mu + gamma, field.from_integer(alpha.binomial(mu)) * (a * db));
            });
    return r.with_normalization(P.normalization());
}

/// The seminorm |P|_R = sup |a_alpha| R^{|alpha|} on plain coefficients, with R = c^{-R_valuation}:
/// min over alpha of gauss(a_alpha) + |alpha| * R_valuation.
template <ValuedField F>
Valuation seminorm_R(const DiffOperator<F>& P, const mpq_class& R_valuation) {
    Valuation v = Valuation::infinity();
    const DiffOperator<F> plain = P.to_plain();
    for (const auto& [alpha, a] : plain.coefficients())
        v = dcap::min(v, gauss_norm(a) + Valuation(mpq_class(R_valuation * alpha.total())));
    return v;
}

} // namespace dcap
