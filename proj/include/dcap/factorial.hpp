#pragma once

// Valuations of integers, factorials and binomials.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>

namespace dcap {

/// v_p(n) for n != 0.
inline std::uint64_t padic_valuation(const mpz_class& n, unsigned long p) {
    if (n == 0) throw std::domain_error("v_p(0) is infinite");
    if (p == 2) return mpz_scan1(n.get_mpz_t(), 0);
    mpz_class rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t());
}

/// Legendre's formula: v_p(m!) = sum_{k>=1} floor(m / p^k).
inline std::uint64_t legendre_valuation(std::uint64_t m, unsigned long p) {
    if (p < 2) throw std::invalid_argument("legendre_valuation: p must be >= 2");
    std::uint64_t total = 0;
    while (m > 0) {
        m /= p;
        total += m;
    }
    return total;
}

inline mpz_class factorial(unsigned long m) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), m);
    return r;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// n! / (n-k)! (falling factorial), zero when k > n.
inline mpz_class falling_factorial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    mpz_class r = 1;
    for (unsigned long i = 0; i < k; ++i) r *= (n - i);
    return r;
}

inline bool is_prime(unsigned long p) {
    return p >= 2 && mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) > 0;
}

} // namespace dcap
