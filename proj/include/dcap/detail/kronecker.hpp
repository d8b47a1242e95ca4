#pragma once

// Dense integer polynomial multiplication by Kronecker substitution: pack both
// operands into one large integer each, multiply with GMP, unpack with a
// balanced (signed) digit extraction.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace dcap::detail {

/// Coefficient i is the coefficient of x^i.
using IntPoly = std::vector<mpz_class>;

inline void trim(IntPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline IntPoly schoolbook_multiply(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    trim(r);
    return r;
}

namespace kron {

inline std::size_t max_bits(const IntPoly& a) {
    std::size_t m = 0;
    for (const auto& c : a)
        if (c != 0) m = std::max(m, mpz_sizeinbase(c.get_mpz_t(), 2));
    return m;
}

inline mpz_class pack(const IntPoly& a, std::size_t slot_limbs) {
    const std::size_t total = a.size() * slot_limbs;
    mpz_class pos, neg;
    mp_limb_t* pp = mpz_limbs_write(pos.get_mpz_t(), static_cast<mp_size_t>(total));
    mp_limb_t* np = mpz_limbs_write(neg.get_mpz_t(), static_cast<mp_size_t>(total));
    std::fill(pp, pp + total, mp_limb_t{0});
    std::fill(np, np + total, mp_limb_t{0});
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int s = sgn(a[i]);
        if (s == 0) continue;
        const mp_limb_t* src = mpz_limbs_read(a[i].get_mpz_t());
        const std::size_t n = mpz_size(a[i].get_mpz_t());
        std::copy(src, src + n, (s > 0 ? pp : np) + i * slot_limbs);
    }
    mpz_limbs_finish(pos.get_mpz_t(), static_cast<mp_size_t>(total));
    mpz_limbs_finish(neg.get_mpz_t(), static_cast<mp_size_t>(total));
    return pos - neg;
}

inline IntPoly unpack(const mpz_class& r, std::size_t count, std::size_t slot_limbs) {
    IntPoly out(count);
    const int sign = sgn(r);
    if (sign == 0) return {};
    const mp_limb_t* limbs = mpz_limbs_read(r.get_mpz_t());
    const std::size_t size = mpz_size(r.get_mpz_t());
    mpz_class half = 1, full = 1;
    half <<= (slot_limbs * GMP_NUMB_BITS - 1);
    full <<= (slot_limbs * GMP_NUMB_BITS);
    int carry = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t start = i * slot_limbs;
        mpz_class v;
        if (start < size) {
            mpz_t view;
            const std::size_t n = std::min(slot_limbs, size - start);
            mpz_roinit_n(view, limbs + start, static_cast<mp_size_t>(n));
            v = mpz_class(view);
        }
        v += carry;
        if (v >= half) {
            v -= full;
            carry = 1;
        } else {
            carry = 0;
        }
        if (sign < 0) v = -v;
        out[i] = std::move(v);
    }
    trim(out);
    return out;
}

inline std::size_t exponent_gcd(const IntPoly& a) {
    std::size_t g = 0;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) g = std::gcd(g, i);
    return g;
}

inline IntPoly compress(const IntPoly& a, std::size_t g) {
    IntPoly r((a.size() - 1) / g + 1);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i * g];
    return r;
}

inline IntPoly expand(const IntPoly& a, std::size_t g) {
    if (a.empty()) return a;
    IntPoly r((a.size() - 1) * g + 1);
    for (std::size_t i = 0; i < a.size(); ++i) r[i * g] = a[i];
    return r;
}

} // namespace kron

/// Exact product of two dense integer polynomials.
inline IntPoly kronecker_multiply(const IntPoly& a0, const IntPoly& b0) {
    IntPoly a = a0, b = b0;
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return {};
    if (a.size() < 16 || b.size() < 16) return schoolbook_multiply(a, b);

    // Polynomials in x^g are multiplied as polynomials in x^g.
    std::size_t ga = kron::exponent_gcd(a), gb = kron::exponent_gcd(b);
    std::size_t g = std::gcd(ga == 0 ? gb : ga, gb == 0 ? ga : gb);
    if (g > 1) return kron::expand(kronecker_multiply(kron::compress(a, g), kron::compress(b, g)), g);

    std::size_t bits = kron::max_bits(a) + kron::max_bits(b) + 2;
    for (std::size_t n = std::min(a.size(), b.size()); n > 0; n >>= 1) ++bits;
    const std::size_t slot_limbs = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
    mpz_class pa = kron::pack(a, slot_limbs);
    mpz_class pb = kron::pack(b, slot_limbs);
    mpz_class pr = pa * pb;
    pa = 0;
    pb = 0;
    return kron::unpack(pr, a.size() + b.size() - 1, slot_limbs);
}

/// Product of many polynomials via a balanced product tree.
inline IntPoly product_tree(std::vector<IntPoly> factors) {
    if (factors.empty()) return IntPoly{mpz_class(1)};
    while (factors.size() > 1) {
        std::vector<IntPoly> next;
        next.reserve((factors.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < factors.size(); i += 2)
            next.push_back(kronecker_multiply(factors[i], factors[i + 1]));
        if (factors.size() % 2) next.push_back(std::move(factors.back()));
        factors = std::move(next);
    }
    return std::move(factors.front());
}

/// (c0 + c1 x^k)^n expanded with binomial coefficients.
inline IntPoly binomial_power(const mpz_class& c0, const mpz_class& c1, std::size_t k, unsigned long n) {
    IntPoly r(n * k + 1);
    std::vector<mpz_class> p0(n + 1);
    p0[0] = 1;
    for (unsigned long j = 1; j <= n; ++j) p0[j] = p0[j - 1] * c0;
    mpz_class p1 = 1, bin = 1;
    for (unsigned long j = 0; j <= n; ++j) {
        r[j * k] = bin * p0[n - j] * p1;
        p1 *= c1;
        bin *= n - j;
        mpz_divexact_ui(bin.get_mpz_t(), bin.get_mpz_t(), j + 1);
    }
    trim(r);
    return r;
}

/// g(x) = f(x + a), by splitting f = lo + x^m hi and shifting each half.
inline IntPoly taylor_shift(const IntPoly& f, const mpz_class& a) {
    const std::size_t n = f.size();
    if (a == 0 || n < 2) return f;
    if (n <= 48) {
        IntPoly g = f;
        for (std::size_t s = 0; s + 1 < n; ++s)
            for (std::size_t j = n - 1; j-- > s;) mpz_addmul(g[j].get_mpz_t(), a.get_mpz_t(), g[j + 1].get_mpz_t());
        return g;
    }
    const std::size_t m = n / 2;
    IntPoly lo = taylor_shift(IntPoly(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(m)), a);
    IntPoly hi = taylor_shift(IntPoly(f.begin() + static_cast<std::ptrdiff_t>(m), f.end()), a);
    IntPoly g = kronecker_multiply(binomial_power(a, mpz_class(1), 1, m), hi);
    if (g.size() < lo.size()) g.resize(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) g[i] += lo[i];
    g.resize(n);
    return g;
}

/// Prime factorization of n by trial division up to `limit`; nullopt if a larger factor remains.
inline std::optional<std::vector<std::pair<unsigned long, unsigned long>>> small_factorization(mpz_class n,
                                                                                                 unsigned long limit = 1000) {
    std::vector<std::pair<unsigned long, unsigned long>> out;
    for (unsigned long p = 2; p <= limit && n > 1; ++p) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
        mpz_class P(p);
        unsigned long e = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), P.get_mpz_t());
        out.emplace_back(p, e);
    }
    if (n != 1) return std::nullopt;
    return out;
}

/// num / den in lowest terms, given the factorization of den (cheaper than a gcd against a huge den).
inline mpq_class reduced_fraction(const mpz_class& num, const std::vector<std::pair<unsigned long, unsigned long>>& den) {
    mpq_class q;
    mpz_class n = num, d = 1, t, P;
    for (const auto& [p, e] : den) {
        P = p;
        unsigned long v = n == 0 ? 0 : mpz_remove(t.get_mpz_t(), n.get_mpz_t(), P.get_mpz_t());
        if (v == 0) {
            mpz_pow_ui(t.get_mpz_t(), P.get_mpz_t(), e);
            d *= t;
            continue;
        }
        const unsigned long k = std::min(v, e);
        mpz_class back;
        mpz_pow_ui(back.get_mpz_t(), P.get_mpz_t(), v - k);
        n = t * back;
        mpz_pow_ui(t.get_mpz_t(), P.get_mpz_t(), e - k);
        d *= t;
    }
    if (n == 0) d = 1;
    mpq_set_num(q.get_mpq_t(), n.get_mpz_t());
    mpq_set_den(q.get_mpq_t(), d.get_mpz_t());
    return q;
}

} // namespace dcap::detail
