#pragma once

/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials over a valued field: the
 * truncation-level representation of functions on the closed unit polydisc.
 *
 * No zero coefficient is ever stored. The Gauss norm is the largest
 * coefficient norm, i.e. the least coefficient valuation.
 */

#include "dcap/detail/kronecker.hpp"
#include "dcap/field.hpp"
#include "dcap/multi_index.hpp"
#include "dcap/valuation.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dcap {

template <ValuedField F>
class Polynomial {
public:
    using Field = F;
    using Element = typename F::Element;
    using TermMap = std::map<MultiIndex, Element>;

    Polynomial(F field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

    static Polynomial constant(const F& field, std::size_t dim, const Element& c) {
        return monomial(field, c, MultiIndex(dim));
    }

    static Polynomial monomial(const F& field, const Element& c, const MultiIndex& exponent) {
        Polynomial p(field, exponent.dim());
        p.add_term(exponent, c);
        return p;
    }

    /// x^exponent with coefficient one.
    static Polynomial monomial(const F& field, const MultiIndex& exponent) {
        return monomial(field, field.one(), exponent);
    }

    static Polynomial variable(const F& field, std::size_t dim, std::size_t i) {
        return monomial(field, MultiIndex::unit(dim, i));
    }

    const F& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Element coefficient(const MultiIndex& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    /// Adds c * x^m to this polynomial.
    void add_term(const MultiIndex& m, const Element& c) {
        if (m.dim() != dim_) throw std::invalid_argument("term dimension mismatch");
        if (field_.is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total());
        return d;
    }

    std::uint32_t degree_in(std::size_t i) const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
        return d;
    }

    Valuation gauss_valuation() const {
        Valuation v = Valuation::infinity();
        for (const auto& [m, c] : terms_) v = dcap::min(v, field_.valuation(c));
        return v;
    }

    Polynomial operator-() const {
        Polynomial r(field_, dim_);
        for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, Element(-c));
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        Polynomial r(a);
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_compatible(b);
        if (a.is_zero() || b.is_zero()) return Polynomial(a.field_, a.dim_);
        if (a.dim_ == 1 && a.size() >= 16 && b.size() >= 16) {
            if (auto fast = a.integral_product(b)) return std::move(*fast);
        }
        Polynomial r(a.field_, a.dim_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, Element(ca * cb));
        return r;
    }

    friend Polynomial operator*(const Element& s, const Polynomial& p) {
        Polynomial r(p.field_, p.dim_);
        if (p.field_.is_zero(s)) return r;
        for (const auto& [m, c] : p.terms_) r.terms_.emplace_hint(r.terms_.end(), m, Element(s * c));
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.field_ == b.field_ && a.terms_ == b.terms_;
    }

    Polynomial pow(unsigned long n) const {
        Polynomial result = constant(field_, dim_, field_.one());
        Polynomial base = *this;
        while (n > 0) {
            if (n & 1) result *= base;
            n >>= 1;
            if (n) base *= base;
        }
        return result;
    }

    /// x^shift * this
    Polynomial shifted_by(const MultiIndex& shift) const {
        Polynomial r(field_, dim_);
        for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m + shift, c);
        return r;
    }

    /// The plain derivative d^alpha.
    Polynomial derivative(const MultiIndex& alpha) const {
        Polynomial r(field_, dim_);
        for (const auto& [m, c] : terms_) {
            if (!alpha.leq(m)) continue;
            r.add_term(m - alpha, Element(field_.from_integer(m.falling(alpha)) * c));
        }
        return r;
    }

    /// g(x) = f(x + center), exactly.
    Polynomial translate(const std::vector<Element>& center) const {
        if (center.size() != dim_) throw std::invalid_argument("translate: dimension mismatch");
        Polynomial r = *this;
        for (std::size_t i = 0; i < dim_; ++i)
            if (!field_.is_zero(center[i])) r = r.translate_variable(i, center[i]);
        return r;
    }

    /// g(x) = f(s_1 x_1, ..., s_d x_d).
    Polynomial scale(const std::vector<Element>& s) const {
        if (s.size() != dim_) throw std::invalid_argument("scale: dimension mismatch");
        Polynomial r(field_, dim_);
        for (const auto& [m, c] : terms_) {
            Element k = c;
            for (std::size_t i = 0; i < dim_; ++i)
                for (std::uint32_t e = 0; e < m[i]; ++e) k = k * s[i];
            r.add_term(m, k);
        }
        return r;
    }

    Element evaluate(const std::vector<Element>& point) const {
        if (point.size() != dim_) throw std::invalid_argument("evaluate: dimension mismatch");
        Element acc = field_.zero();
        for (const auto& [m, c] : terms_) {
            Element t = c;
            for (std::size_t i = 0; i < dim_; ++i)
                for (std::uint32_t e = 0; e < m[i]; ++e) t = t * point[i];
            acc = acc + t;
        }
        return acc;
    }

    /// Dense integer coefficients when this is univariate with integral coefficients.
    std::optional<detail::IntPoly> as_int_poly() const {
        if (dim_ != 1) return std::nullopt;
        detail::IntPoly out(terms_.empty() ? 0 : terms_.rbegin()->first[0] + 1);
        for (const auto& [m, c] : terms_) {
            auto z = field_.as_integer(c);
            if (!z) return std::nullopt;
            out[m[0]] = std::move(*z);
        }
        return out;
    }

    /// sum a_i x^i / den, with den given by its prime factorization.
    static Polynomial from_int_poly(const F& field, const detail::IntPoly& a,
                                    const std::vector<std::pair<unsigned long, unsigned long>>& den) {
        Polynomial p(field, 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0) p.terms_.emplace_hint(p.terms_.end(), MultiIndex{static_cast<std::uint32_t>(i)},
                                                 field.from_canonical(detail::reduced_fraction(a[i], den)));
        return p;
    }

    static Polynomial from_int_poly(const F& field, const detail::IntPoly& a) {
        Polynomial p(field, 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0) p.terms_.emplace_hint(p.terms_.end(), MultiIndex{static_cast<std::uint32_t>(i)},
                                                 field.from_integer(a[i]));
        return p;
    }

    void check_compatible(const Polynomial& o) const {
        if (o.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
        if (!(o.field_ == field_)) throw std::invalid_argument("polynomial backend mismatch");
    }

private:
    std::optional<Polynomial> integral_product(const Polynomial& b) const {
        auto ia = as_int_poly();
        if (!ia) return std::nullopt;
        auto ib = b.as_int_poly();
        if (!ib) return std::nullopt;
        return from_int_poly(field_, detail::kronecker_multiply(*ia, *ib));
    }

    // Taylor shift in variable i, grouped by the remaining exponents.
    Polynomial translate_variable(std::size_t i, const Element& c) const {
        std::map<MultiIndex, std::vector<Element>> groups;
        for (const auto& [m, coeff] : terms_) {
            MultiIndex rest = m;
            rest[i] = 0;
            auto& dense = groups[rest];
            if (dense.size() <= m[i]) dense.resize(m[i] + 1, field_.zero());
            dense[m[i]] = coeff;
        }
        Polynomial r(field_, dim_);
        const auto qc = field_.as_rational(c);
        for (auto& [rest, dense] : groups) {
            const std::size_t n = dense.size();
            // Rational case: f(y + a/b) = (D b^N)^{-1} H(b y) with H(z) = sum D f_k b^{N-k} (z + a)^k.
            std::optional<detail::IntPoly> ints;
            mpz_class D = 1;
            if (qc) {
                std::vector<mpq_class> q(n);
                bool rational = true;
                for (std::size_t k = 0; k < n && rational; ++k) {
                    auto v = field_.as_rational(dense[k]);
                    if (v) {
                        q[k] = std::move(*v);
                        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), q[k].get_den_mpz_t());
                    } else {
                        rational = false;
                    }
                }
                if (rational) {
                    const mpz_class& b = qc->get_den();
                    ints.emplace(n);
                    mpz_class bp = 1;
                    for (std::size_t k = n; k-- > 0;) {
                        (*ints)[k] = q[k].get_num() * (D / q[k].get_den()) * bp;
                        bp *= b;
                    }
                }
            }
            if (ints) {
                detail::IntPoly H = detail::taylor_shift(*ints, qc->get_num());
                H.resize(n);
                const mpz_class& b = qc->get_den();
                mpz_class scale = D;
                for (std::size_t j = n; j-- > 0;) {
                    dense[j] = field_.from_rational(mpq_class(H[j], scale));
                    scale *= b;
                }
            } else {
                for (std::size_t s = 0; s + 1 < n; ++s)
                    for (std::size_t j = n - 1; j-- > s;) dense[j] = dense[j] + Element(c * dense[j + 1]);
            }
            for (std::size_t k = 0; k < n; ++k) {
                MultiIndex m = rest;
                m[i] = static_cast<std::uint32_t>(k);
                r.add_term(m, dense[k]);
            }
        }
        return r;
    }

    F field_;
    std::size_t dim_;
    TermMap terms_;
};

/// Gauss norm of f as a valuation: min over coefficients; +inf for f = 0.
template <ValuedField F>
Valuation gauss_norm(const Polynomial<F>& f) {
    return f.gauss_valuation();
}

} // namespace dcap
