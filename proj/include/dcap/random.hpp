#pragma once

// Seeded generators for fuzzed scalars, polynomials and operators. Uniform
// draws are done by rejection on top of mt19937_64 so that a seed gives the
// same stream with every standard library.

#include "dcap/diff_operator.hpp"
#include "dcap/field.hpp"
#include "dcap/hahn.hpp"
#include "dcap/multi_index.hpp"
#include "dcap/padic.hpp"
#include "dcap/polynomial.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <type_traits>
#include <vector>

namespace dcap {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(engine_());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    bool chance(std::uint64_t num, std::uint64_t den) { return static_cast<std::uint64_t>(uniform(0, den - 1)) < num; }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// A random element of valuation >= 0 when `integral`, otherwise of any small valuation.
template <ValuedField F>
typename F::Element random_scalar(const F& field, Rng& rng, bool integral = false) {
    if constexpr (std::is_same_v<F, HahnField>) {
        const int terms = static_cast<int>(rng.uniform(1, 2));
        HahnSeries s;
        for (int i = 0; i < terms; ++i) {
            static const mpq_class exps[] = {mpq_class(0), mpq_class(1, 2), mpq_class(1), mpq_class(2), mpq_class(-1)};
            const int pick = static_cast<int>(rng.uniform(0, integral ? 3 : 4));
            mpq_class c(rng.uniform(-9, 9), rng.uniform(1, 4));
            c.canonicalize();
            s = s + HahnSeries::monomial(c, exps[pick]);
        }
        return s;
    } else {
        const unsigned long p = field.prime();
        mpz_class num(static_cast<long>(rng.uniform(-30, 30)));
        mpz_class den(static_cast<long>(rng.uniform(1, 6)));
        while (mpz_divisible_ui_p(den.get_mpz_t(), p)) den /= p;
        if (!integral && rng.chance(1, 4)) den *= p;
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
}

/// An integer element (valuation >= 0) in [-range, range].
template <ValuedField F>
typename F::Element random_integer(const F& field, Rng& rng, long range = 9) {
    return field.from_integer(mpz_class(static_cast<long>(rng.uniform(-range, range))));
}

template <ValuedField F>
Polynomial<F> random_polynomial(const F& field, Rng& rng, std::size_t dim, std::uint64_t max_degree,
                                std::size_t max_terms = 4, bool integral = false) {
    Polynomial<F> p(field, dim);
    const auto indices = indices_up_to(dim, max_degree);
    const std::size_t terms = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(max_terms)));
    for (std::size_t i = 0; i < terms; ++i) {
        const auto& m = indices[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(indices.size()) - 1))];
        p.add_term(m, random_scalar(field, rng, integral));
    }
    return p;
}

template <ValuedField F>
DiffOperator<F> random_operator(const F& field, Rng& rng, std::size_t dim, std::uint64_t max_order,
                                std::uint64_t max_coeff_degree, Normalization norm = Normalization::plain) {
    const std::uint64_t order = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(max_order)));
    DiffOperator<F> P(field, dim, order, norm);
    for (const auto& alpha : indices_up_to(dim, order))
        if (rng.chance(2, 3)) P.add_term(alpha, random_polynomial(field, rng, dim, max_coeff_degree, 3));
    return P;
}

} // namespace dcap
