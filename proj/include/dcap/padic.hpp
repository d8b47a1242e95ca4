#pragma once

/**
 * @file padic.hpp
 * @brief The p-adic backend: exact rationals with the p-adic valuation.
 *
 * Elements are plain `mpq_class` values; the field object carries the prime
 * and the chosen uniformizer. Only the rational subfield of Q_p is
 * representable, which is all the operator calculus ever needs.
 */

#include "dcap/factorial.hpp"
#include "dcap/valuation.hpp"

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace dcap {

class PadicField {
public:
    using Element = mpq_class;

    static constexpr const char* backend_name = "padic";

    explicit PadicField(unsigned long p = 2) : PadicField(p, mpq_class(p)) {}

    PadicField(unsigned long p, const mpq_class& uniformizer) : p_(p), pi_(uniformizer) {
        if (!is_prime(p)) throw std::invalid_argument("PadicField: " + std::to_string(p) + " is not prime");
        pi_.canonicalize();
        if (pi_ == 0 || valuation(pi_) <= Valuation(0L))
            throw std::invalid_argument("PadicField: uniformizer must have positive valuation");
        pi_val_ = valuation(pi_).value();
    }

    unsigned long prime() const { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_integer(const mpz_class& n) const { return mpq_class(n); }
    Element from_rational(const mpq_class& q) const {
        mpq_class r(q);
        r.canonicalize();
        return r;
    }
    /// q must already be in lowest terms.
    Element from_canonical(const mpq_class& q) const { return q; }

    bool is_zero(const Element& a) const { return a == 0; }

    Valuation valuation(const Element& a) const {
        if (a == 0) return Valuation::infinity();
        long v = static_cast<long>(padic_valuation(a.get_num(), p_)) -
                 static_cast<long>(padic_valuation(a.get_den(), p_));
        return Valuation(v);
    }

    /// Integer value of `a`, when it is one.
    std::optional<mpz_class> as_integer(const Element& a) const {
        if (a.get_den() != 1) return std::nullopt;
        return a.get_num();
    }

    std::optional<mpq_class> as_rational(const Element& a) const { return a; }

    const Element& uniformizer() const { return pi_; }
    const mpq_class& uniformizer_valuation() const { return pi_val_; }

    /// pi^q; only integral exponents are representable in Q.
    Element uniformizer_power(const mpq_class& q) const {
        if (q.get_den() != 1)
            throw std::domain_error("p-adic backend: pi^" + q.get_str() + " is not a rational number");
        long e = q.get_num().get_si();
        mpq_class r = 1;
        mpq_class base = e >= 0 ? pi_ : mpq_class(1 / pi_);
        for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= base;
        return r;
    }

    Element divide(const Element& a, const Element& b) const {
        if (b == 0) throw std::domain_error("division by zero");
        return a / b;
    }

    Valuation factorial_valuation(std::uint64_t m) const {
        mpq_class v(mpz_class(legendre_valuation(m, p_)));
        // v(m!) is measured in units where v(p) = 1.
        return Valuation(v);
    }

    /// Valuation exponent of varpi = |p|^{1/(p-1)}.
    mpq_class varpi_exponent() const { return mpq_class(1, p_ - 1); }

    /// A point a' of the closed disc {x : v(x - a) >= radius} with small height.
    Element recenter(const Element& a, const mpq_class& radius) const {
        if (a == 0) return a;
        Valuation va = valuation(a);
        if (va >= Valuation(radius)) return 0;
        if (va < Valuation(0L)) return a;
        // a is p-integral here: reduce it modulo p^k with k = ceil(radius).
        mpz_class k_z;
        mpz_cdiv_q(k_z.get_mpz_t(), radius.get_num_mpz_t(), radius.get_den_mpz_t());
        unsigned long k = k_z.get_ui();
        mpz_class mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), p_, k);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), a.get_den_mpz_t(), mod.get_mpz_t());
        mpz_class r = a.get_num() * inv % mod;
        if (r < 0) r += mod;
        return mpq_class(r);
    }

    /// Canonical text form "num/den@p".
    std::string to_string(const Element& a) const {
        return a.get_num().get_str() + "/" + a.get_den().get_str() + "@" + std::to_string(p_);
    }

    /// Accepts "num/den@p", "num/den", "num@p" and "num".
    Element parse(const std::string& text) const {
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
        if (s.empty()) throw std::invalid_argument("empty p-adic scalar");
        auto at = s.find('@');
        if (at != std::string::npos) {
            std::string ps = s.substr(at + 1);
            if (ps.empty() || ps.find_first_not_of("0123456789") != std::string::npos || std::stoul(ps) != p_)
                throw std::invalid_argument("scalar '" + text + "' does not belong to the " + std::to_string(p_) +
                                            "-adic backend");
            s.resize(at);
        }
        if (s.front() == '+') s.erase(0, 1);
        mpq_class q;
        if (s.empty() || s.find_first_not_of("-0123456789/") != std::string::npos || q.set_str(s, 10) != 0 ||
            q.get_den() == 0)
            throw std::invalid_argument("malformed p-adic scalar '" + text + "'");
        q.canonicalize();
        return q;
    }

    friend bool operator==(const PadicField& a, const PadicField& b) { return a.p_ == b.p_ && a.pi_ == b.pi_; }

private:
    unsigned long p_;
    mpq_class pi_;
    mpq_class pi_val_;
};

} // namespace dcap
