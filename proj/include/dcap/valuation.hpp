#pragma once

/**
 * @file valuation.hpp
 * @brief Exact valuations standing in for non-Archimedean norms.
 *
 * A norm |x| = c^{-v(x)} is never materialised as a floating-point number.
 * Every norm comparison is carried out on the valuation v(x), which is an
 * exact rational or +infinity. The norm order is the reverse of the
 * valuation order: |x| <= |y| iff v(x) >= v(y).
 */

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dcap {

class Valuation {
public:
    Valuation() : infinite_(true) {}
    Valuation(const mpq_class& q) : infinite_(false), value_(q) { value_.canonicalize(); }
    Valuation(long n) : infinite_(false), value_(n) {}

    static Valuation infinity() { return Valuation(); }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    const mpq_class& value() const {
        if (infinite_) throw std::domain_error("valuation is +inf");
        return value_;
    }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Valuation(mpq_class(a.value_ + b.value_));
    }

    friend Valuation operator-(const Valuation& a, const Valuation& b) {
        if (b.infinite_) throw std::domain_error("subtracting an infinite valuation");
        if (a.infinite_) return infinity();
        return Valuation(mpq_class(a.value_ - b.value_));
    }

    Valuation operator-() const {
        if (infinite_) throw std::domain_error("negating an infinite valuation");
        return Valuation(mpq_class(-value_));
    }

    // k * v; 0 * inf is taken as 0 (the valuation of x^0 = 1).
    friend Valuation operator*(const mpq_class& k, const Valuation& v) {
        if (k < 0 && v.infinite_) throw std::domain_error("negative multiple of +inf");
        if (k == 0) return Valuation(0L);
        if (v.infinite_) return infinity();
        return Valuation(mpq_class(k * v.value_));
    }

    Valuation& operator+=(const Valuation& o) { return *this = *this + o; }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

    // Valuation order; +inf is the top element.
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
        if (a.infinite_) return std::strong_ordering::greater;
        if (b.infinite_) return std::strong_ordering::less;
        int c = cmp(a.value_, b.value_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // "inf", "3", "-1/2"
    std::string str() const { return infinite_ ? "inf" : value_.get_str(); }

    static Valuation parse(const std::string& s) {
        if (s == "inf" || s == "+inf") return infinity();
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad valuation '" + s + "'");
        return Valuation(q);
    }

    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

private:
    bool infinite_;
    mpq_class value_;
};

using NormValue = Valuation;

inline Valuation min(const Valuation& a, const Valuation& b) { return a <= b ? a : b; }
inline Valuation max(const Valuation& a, const Valuation& b) { return a >= b ? a : b; }

/// |a| <= |b| expressed on valuations.
inline bool norm_leq(const Valuation& a, const Valuation& b) { return a >= b; }

} // namespace dcap
