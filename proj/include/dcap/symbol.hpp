#pragma once

/**
 * @file symbol.hpp
 * @brief The symbol map: recovering operator coefficients from the action of
 * a linear endomorphism on monomials.
 *
 * For a K-linear map psi and a multi-index alpha,
 *
 *     eta_alpha(psi) = (1/alpha!) sum_{beta <= alpha} psi(x^beta) binom(alpha, beta) (-x)^{alpha - beta}.
 *
 * When psi is the action of sum a_alpha d^alpha, eta_alpha(psi) = a_alpha
 * (plain normalization). The identity behind this is
 *
 *     sum_{alpha <= beta <= gamma} beta!/(beta - alpha)! binom(gamma, beta) (-1)^{|gamma - beta|} = gamma! [alpha = gamma].
 */

#include "dcap/diff_operator.hpp"
#include "dcap/field.hpp"
#include "dcap/multi_index.hpp"
#include "dcap/polynomial.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcap {

struct CapExceeded : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// A K-linear endomorphism known through its values on monomials x^beta with |beta| <= degree_cap.
/// Linearity is a contract of the query function, not something checked here.
template <ValuedField F>
class EndoOracle {
public:
    using Query = std::function<Polynomial<F>(const MultiIndex&)>;

    EndoOracle(F field, std::size_t dim, std::uint64_t degree_cap, Query query)
        : field_(std::move(field)), dim_(dim), cap_(degree_cap), query_(std::move(query)) {}

    /// psi = apply(P, .).
    static EndoOracle from_operator(const DiffOperator<F>& P, std::uint64_t degree_cap) {
        auto op = std::make_shared<const DiffOperator<F>>(P);
        return EndoOracle(P.field(), P.dim(), degree_cap, [op](const MultiIndex& beta) {
            return apply(*op, Polynomial<F>::monomial(op->field(), beta));
        });
    }

    /// psi = apply(P, .) with every image up to the cap computed once.
    static EndoOracle tabulated(const DiffOperator<F>& P, std::uint64_t degree_cap) {
        auto table = std::make_shared<std::map<MultiIndex, Polynomial<F>>>();
        for (const auto& beta : indices_up_to(P.dim(), degree_cap))
            table->emplace(beta, apply(P, Polynomial<F>::monomial(P.field(), beta)));
        return EndoOracle(P.field(), P.dim(), degree_cap,
                          [table](const MultiIndex& beta) { return table->at(beta); });
    }

    static EndoOracle identity(const F& field, std::size_t dim, std::uint64_t degree_cap) {
        return EndoOracle(field, dim, degree_cap,
                          [field](const MultiIndex& beta) { return Polynomial<F>::monomial(field, beta); });
    }

    const F& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::uint64_t degree_cap() const { return cap_; }

    Polynomial<F> operator()(const MultiIndex& beta) const {
        if (beta.dim() != dim_) throw std::invalid_argument("oracle query has the wrong dimension");
        if (beta.total() > cap_)
            throw CapExceeded("oracle queried at " + beta.str() + " beyond its degree cap " + std::to_string(cap_));
        return query_(beta);
    }

    /// psi(f) by linearity.
    Polynomial<F> apply_linear(const Polynomial<F>& f) const {
        Polynomial<F> out(field_, dim_);
        for (const auto& [m, c] : f.terms()) out += c * (*this)(m);
        return out;
    }

private:
    F field_;
    std::size_t dim_;
    std::uint64_t cap_;
    Query query_;
};

namespace detail {

// (-1)^{|alpha - beta|} binom(alpha, beta) x^{alpha - beta}
template <ValuedField F>
Polynomial<F> eta_weight(const F& field, const MultiIndex& alpha, const MultiIndex& beta) {
    mpz_class c = alpha.binomial(beta);
    if ((alpha - beta).total() % 2) c = -c;
    return Polynomial<F>::monomial(field, field.from_integer(c), alpha - beta);
}

} // namespace detail

/// eta_alpha(psi).
template <ValuedField F>
Polynomial<F> eta(const EndoOracle<F>& psi, const MultiIndex& alpha) {
    if (alpha.dim() != psi.dim()) throw std::invalid_argument("eta: dimension mismatch");
    if (alpha.total() > psi.degree_cap())
        throw CapExceeded("eta: |alpha| = " + std::to_string(alpha.total()) + " exceeds the oracle cap");
    const F& field = psi.field();
    Polynomial<F> sum(field, psi.dim());
    for_each_below(alpha, [&](const MultiIndex& beta) { sum += psi(beta) * detail::eta_weight(field, alpha, beta); });
    return field.from_rational(mpq_class(mpz_class(1), alpha.factorial())) * sum;
}

/// T(psi) = sum_{|alpha| <= cap} eta_alpha(psi) zeta^alpha in 2d variables (x_1..x_d, zeta_1..zeta_d).
template <ValuedField F>
Polynomial<F> total_symbol(const EndoOracle<F>& psi, std::uint64_t cap) {
    if (cap > psi.degree_cap()) throw CapExceeded("total_symbol: cap exceeds the oracle cap");
    const std::size_t d = psi.dim();
    Polynomial<F> T(psi.field(), 2 * d);
    for (const auto& alpha : indices_up_to(d, cap)) {
        Polynomial<F> e = eta(psi, alpha);
        for (const auto& [m, c] : e.terms()) {
            MultiIndex lifted(2 * d);
            for (std::size_t i = 0; i < d; ++i) {
                lifted[i] = m[i];
                lifted[d + i] = alpha[i];
            }
            T.add_term(lifted, c);
        }
    }
    return T;
}

/// sum_{alpha <= beta <= gamma} beta!/(beta-alpha)! binom(gamma, beta) (-1)^{|gamma-beta|}, by direct summation.
inline mpz_class combinatorial_delta(const MultiIndex& alpha, const MultiIndex& gamma) {
    if (!alpha.leq(gamma)) throw std::invalid_argument("combinatorial_delta: needs alpha <= gamma");
    mpz_class sum = 0;
    for_each_in_box(alpha, gamma, [&](const MultiIndex& beta) {
        mpz_class t = beta.falling(alpha) * gamma.binomial(beta);
        if ((gamma - beta).total() % 2) sum -= t;
        else sum += t;
    });
    return sum;
}

/// gamma! * [alpha == gamma], the closed form the summation must reproduce.
inline mpz_class combinatorial_delta_expected(const MultiIndex& alpha, const MultiIndex& gamma) {
    return alpha == gamma ? gamma.factorial() : mpz_class(0);
}

template <ValuedField F>
struct CoefficientCheck {
    MultiIndex index;
    Polynomial<F> expected;
    Polynomial<F> got;
    bool pass;
};

template <ValuedField F>
struct RoundtripReport {
    std::string operator_id;
    std::vector<CoefficientCheck<F>> checks;
    bool pass = true;
};

/// Rebuilds P from its action: eta_gamma(apply(P, .)) for every |gamma| <= truncation order,
/// compared exactly with P's plain coefficients.
template <ValuedField F>
RoundtripReport<F> roundtrip(const DiffOperator<F>& P, std::string operator_id = "operator") {
    RoundtripReport<F> report{std::move(operator_id), {}, true};
    const DiffOperator<F> plain = P.to_plain();
    const auto psi = EndoOracle<F>::tabulated(P, P.truncation_order());
    for (const auto& gamma : indices_up_to(P.dim(), P.truncation_order())) {
        Polynomial<F> got = eta(psi, gamma);
        Polynomial<F> expected = plain.coefficient(gamma);
        bool ok = got == expected;
        report.pass = report.pass && ok;
        report.checks.push_back({gamma, std::move(expected), std::move(got), ok});
    }
    return report;
}

/// Whether the eta summand is unchanged when x is replaced by y = x - c.
template <ValuedField F>
bool translation_check(const EndoOracle<F>& psi, const std::vector<typename F::Element>& c, const MultiIndex& alpha) {
    const F& field = psi.field();
    const std::size_t d = psi.dim();
    if (c.size() != d || alpha.dim() != d) throw std::invalid_argument("translation_check: dimension mismatch");
    for (const auto& ci : c)
        if (field.valuation(ci) < Valuation(0L))
            throw std::invalid_argument("translation_check: centre must satisfy v(c_i) >= 0");
    if (alpha.total() > psi.degree_cap()) throw CapExceeded("translation_check: alpha beyond the oracle cap");

    // y^beta = (x - c)^beta as a polynomial in x.
    std::vector<typename F::Element> minus_c;
    for (const auto& ci : c) minus_c.push_back(-ci);
    auto y_power = [&](const MultiIndex& beta) { return Polynomial<F>::monomial(field, beta).translate(minus_c); };

    Polynomial<F> lhs(field, d), rhs(field, d);
    for_each_below(alpha, [&](const MultiIndex& beta) {
        lhs += psi(beta) * detail::eta_weight(field, alpha, beta);
        rhs += psi.apply_linear(y_power(beta)) * detail::eta_weight(field, alpha, beta).translate(minus_c);
    });
    return lhs == rhs;
}

} // namespace dcap
