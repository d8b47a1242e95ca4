#pragma once

#include "dcap/factorial.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcap {

/// A multi-index alpha in N^d with the componentwise partial order.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t dim) : e_(dim, 0) {}
    MultiIndex(std::initializer_list<std::uint32_t> entries) : e_(entries) {}
    explicit MultiIndex(std::vector<std::uint32_t> entries) : e_(std::move(entries)) {}

    static MultiIndex unit(std::size_t dim, std::size_t i) {
        MultiIndex m(dim);
        m.e_.at(i) = 1;
        return m;
    }

    std::size_t dim() const { return e_.size(); }
    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    std::uint32_t& operator[](std::size_t i) { return e_[i]; }
    const std::vector<std::uint32_t>& entries() const { return e_; }

    std::uint64_t total() const { return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0}); }
    bool is_zero() const { return total() == 0; }

    /// Componentwise alpha <= beta.
    bool leq(const MultiIndex& o) const {
        check_dim(o);
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        a.check_dim(b);
        MultiIndex r(a);
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }

    /// a - b, requires b <= a.
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
        if (!b.leq(a)) throw std::invalid_argument("MultiIndex subtraction needs b <= a");
        MultiIndex r(a);
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
        return r;
    }

    // Lexicographic; only used as a container key.
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    /// alpha! = alpha_1! ... alpha_d!
    mpz_class factorial() const {
        mpz_class r = 1;
        for (auto a : e_) r *= dcap::factorial(a);
        return r;
    }

    /// binom(this, beta) = prod binom(alpha_i, beta_i)
    mpz_class binomial(const MultiIndex& beta) const {
        check_dim(beta);
        mpz_class r = 1;
        for (std::size_t i = 0; i < e_.size(); ++i) r *= dcap::binomial(e_[i], beta.e_[i]);
        return r;
    }

    /// this! / (this - alpha)!, zero unless alpha <= this.
    mpz_class falling(const MultiIndex& alpha) const {
        check_dim(alpha);
        mpz_class r = 1;
        for (std::size_t i = 0; i < e_.size(); ++i) r *= falling_factorial(e_[i], alpha.e_[i]);
        return r;
    }

    /// "(1,0,2)"
    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

    static MultiIndex parse(const std::string& text) {
        std::string s;
        for (char c : text)
            if (c != ' ' && c != '\t') s.push_back(c);
        if (s.size() < 2 || s.front() != '(' || s.back() != ')')
            throw std::invalid_argument("malformed multi-index '" + text + "'");
        std::vector<std::uint32_t> entries;
        std::string cur;
        for (std::size_t i = 1; i < s.size(); ++i) {
            char c = s[i];
            if (c == ',' || c == ')') {
                if (cur.empty() || cur.find_first_not_of("0123456789") != std::string::npos || cur.size() > 9)
                    throw std::invalid_argument("malformed multi-index '" + text + "'");
                entries.push_back(static_cast<std::uint32_t>(std::stoul(cur)));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        return MultiIndex(std::move(entries));
    }

private:
    void check_dim(const MultiIndex& o) const {
        if (o.e_.size() != e_.size()) throw std::invalid_argument("MultiIndex dimension mismatch");
    }

    std::vector<std::uint32_t> e_;
};

/// Calls fn(beta) for every beta with lower <= beta <= upper, in lexicographic order.
inline void for_each_in_box(const MultiIndex& lower, const MultiIndex& upper,
                            const std::function<void(const MultiIndex&)>& fn) {
    if (!lower.leq(upper)) return;
    MultiIndex cur = lower;
    const std::size_t d = cur.dim();
    while (true) {
        fn(cur);
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (cur[i] < upper[i]) {
                ++cur[i];
                for (std::size_t j = i + 1; j < d; ++j) cur[j] = lower[j];
                break;
            }
            if (i == 0) return;
        }
        if (d == 0) return;
    }
}

/// Calls fn(beta) for every beta <= alpha.
inline void for_each_below(const MultiIndex& alpha, const std::function<void(const MultiIndex&)>& fn) {
    for_each_in_box(MultiIndex(alpha.dim()), alpha, fn);
}

/// All multi-indices of dimension d with |alpha| <= n, sorted by total degree then lexicographically.
inline std::vector<MultiIndex> indices_up_to(std::size_t d, std::uint64_t n) {
    std::vector<MultiIndex> out;
    MultiIndex cur(d);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
        if (i == d) {
            out.push_back(cur);
            return;
        }
        for (std::uint64_t k = 0; k <= left; ++k) {
            cur[i] = static_cast<std::uint32_t>(k);
            rec(i + 1, left - k);
        }
        cur[i] = 0;
    };
    rec(0, n);
    std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return a < b;
    });
    return out;
}

} // namespace dcap
