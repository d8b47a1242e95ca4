#pragma once

/**
 * @file rapid_decrease.hpp
 * @brief Classification of coefficient families (a_alpha) as rapidly
 * decreasing, i.e. v(a_alpha) - r|alpha|v(pi) -> infinity for every natural r.
 *
 * A positive verdict needs a symbolic lower bound on v(a_alpha) as a function
 * of |alpha|. Finite data can only ever witness failure.
 */

#include "dcap/multi_index.hpp"
#include "dcap/valuation.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcap {

/// v(a_alpha) >= A n^2 + B n + C for n = |alpha| >= start.
struct ValuationBound {
    mpq_class A = 0, B = 0, C = 0;
    std::uint64_t start = 0;

    mpq_class operator()(std::uint64_t n) const { return A * n * n + B * n + C; }
    std::string str() const {
        return A.get_str() + "*n^2 + " + B.get_str() + "*n + " + C.get_str() + " for n >= " + std::to_string(start);
    }
};

/// A family alpha -> a_alpha seen through its valuations.
struct SymbolFamily {
    std::size_t dim = 1;
    std::function<Valuation(const MultiIndex&)> valuation;
    std::optional<ValuationBound> bound;
    mpq_class uniformizer_valuation = 1;
    std::string label;
};

enum class Verdict { decreasing_witnessed, non_decreasing_witnessed, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::decreasing_witnessed: return "decreasing-witnessed";
    case Verdict::non_decreasing_witnessed: return "non-decreasing-witnessed";
    default: return "inconclusive";
    }
}

/// For a given r and M: beyond |alpha| >= threshold, v(a_alpha) - r|alpha|v(pi) >= M.
struct LimitCertificate {
    std::uint64_t r;
    mpq_class M;
    std::uint64_t threshold;
};

/// For a given r: v(a_alpha) - r|alpha|v(pi) >= infimum for every alpha.
struct BoundedBelowCertificate {
    std::uint64_t r;
    mpq_class infimum;
};

struct BoundViolation {
    MultiIndex index;
    Valuation actual;
    mpq_class bound;
};

struct Classification {
    Verdict verdict = Verdict::inconclusive;
    std::vector<LimitCertificate> path_a;
    std::vector<BoundedBelowCertificate> path_c;
    std::vector<BoundViolation> violations;
    std::optional<std::uint64_t> witness_r;
    std::vector<Valuation> witness_sequence; // s_n for the witnessing r, n = 0..index_cap
    std::string reason;
};

namespace detail {

inline mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// g(n) = A n^2 + b n + c with A > 0: an n >= lo with g(m) >= M for every m >= n.
inline std::uint64_t quadratic_threshold(const mpq_class& A, const mpq_class& b, const mpq_class& c,
                                         const mpq_class& M, std::uint64_t lo) {
    mpq_class vertex = -b / (2 * A);
    mpz_class past = ceil_q(vertex);
    std::uint64_t n = lo;
    if (past > 0 && past > n) n = past.get_ui();
    while (A * n * n + b * n + c < M) ++n;
    return n;
}

// Exact min over integers n >= lo of A n^2 + b n + c, A > 0.
inline mpq_class quadratic_infimum(const mpq_class& A, const mpq_class& b, const mpq_class& c, std::uint64_t lo) {
    auto g = [&](const mpz_class& n) { return mpq_class(A * n * n + b * n + c); };
    mpq_class vertex = -b / (2 * A);
    mpz_class lo_z(static_cast<unsigned long>(lo));
    if (vertex <= lo_z) return g(lo_z);
    mpz_class f = floor_q(vertex), ce = ceil_q(vertex);
    if (f < lo_z) f = lo_z;
    mpq_class gf = g(f), gc = g(ce);
    return gf < gc ? gf : gc;
}

} // namespace detail

/// Decides whether the family is rapidly decreasing.
///  - decreasing-witnessed: a quadratic bound with positive leading term holds on every queried index
///    and both certificate paths succeed for r = 0..r_max.
///  - non-decreasing-witnessed: for some r <= r_max, s_n = min_{|alpha| = n} v(a_alpha) - r n v(pi) is
///    strictly decreasing over the upper half of 0..index_cap.
///  - inconclusive otherwise.
inline Classification classify_rapid_decrease(const SymbolFamily& fam, std::uint64_t r_max, std::uint64_t index_cap,
                                              const std::vector<mpq_class>& targets = {0, 10, 100}) {
    if (!fam.valuation) throw std::invalid_argument("classify_rapid_decrease: family has no valuation function");
    if (fam.uniformizer_valuation <= 0) throw std::invalid_argument("classify_rapid_decrease: v(pi) must be positive");
    Classification out;
    const mpq_class vpi = fam.uniformizer_valuation;

    // s_n for r = 0, kept per total degree.
    std::vector<Valuation> level_min(index_cap + 1, Valuation::infinity());
    for (const auto& alpha : indices_up_to(fam.dim, index_cap)) {
        Valuation v = fam.valuation(alpha);
        const std::uint64_t n = alpha.total();
        level_min[n] = dcap::min(level_min[n], v);
        if (fam.bound && n >= fam.bound->start && v < Valuation((*fam.bound)(n)))
            out.violations.push_back({alpha, v, (*fam.bound)(n)});
    }

    if (fam.bound && out.violations.empty() && fam.bound->A > 0 && fam.bound->start <= index_cap + 1) {
        const ValuationBound& b = *fam.bound;
        for (std::uint64_t r = 0; r <= r_max; ++r) {
            const mpq_class lin = b.B - vpi * r;
            for (const auto& M : targets)
                out.path_a.push_back({r, M, detail::quadratic_threshold(b.A, lin, b.C, M, b.start)});
            mpq_class inf = detail::quadratic_infimum(b.A, lin, b.C, b.start);
            for (std::uint64_t n = 0; n < b.start; ++n)
                if (!level_min[n].is_infinite()) {
                    mpq_class s = level_min[n].value() - vpi * r * n;
                    if (s < inf) inf = s;
                }
            out.path_c.push_back({r, inf});
        }
        out.verdict = Verdict::decreasing_witnessed;
        out.reason = "quadratic bound " + b.str();
        return out;
    }

    if (index_cap >= 4) {
        for (std::uint64_t r = 0; r <= r_max; ++r) {
            std::vector<Valuation> s(index_cap + 1);
            for (std::uint64_t n = 0; n <= index_cap; ++n)
                s[n] = level_min[n] - Valuation(mpq_class(vpi * r * n));
            bool decreasing = true;
            for (std::uint64_t n = index_cap / 2; n < index_cap; ++n)
                decreasing = decreasing && !s[n].is_infinite() && s[n + 1] < s[n];
            if (decreasing) {
                out.verdict = Verdict::non_decreasing_witnessed;
                out.witness_r = r;
                out.witness_sequence = std::move(s);
                out.reason = "strictly decreasing s_n at r = " + std::to_string(r);
                return out;
            }
        }
    }
    out.reason = !out.violations.empty()  ? "valuation bound violated on queried indices"
                 : fam.bound              ? "bound is not certifying and no failure witnessed"
                                          : "no certified bound and no failure witnessed";
    return out;
}

} // namespace dcap
