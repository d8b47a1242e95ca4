#pragma once

/**
 * @file hahn.hpp
 * @brief Finite-support Hahn series over Q: the field Q((t^Q)) restricted to
 * finitely many terms.
 *
 * The valuation is the least exponent carrying a non-zero coefficient. The
 * residue field is Q, which is countably infinite; this is the backend on
 * which the counterexample family can use genuinely distinct coset
 * representatives. The valuation is trivial on Q, so v(m!) = 0.
 */

#include "dcap/valuation.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcap {

struct HahnCutoffError : std::domain_error {
    using std::domain_error::domain_error;
};

class HahnSeries {
public:
    using Term = std::pair<mpq_class, mpq_class>; // (exponent, coefficient)

    HahnSeries() = default;
    HahnSeries(long c) : HahnSeries(mpq_class(c)) {}
    HahnSeries(const mpq_class& c) {
        if (c != 0) terms_.emplace_back(mpq_class(0), c);
    }

    static HahnSeries monomial(const mpq_class& coeff, const mpq_class& exponent) {
        HahnSeries s;
        if (coeff != 0) s.terms_.emplace_back(exponent, coeff);
        return s;
    }

    /// Builds a series from arbitrary terms, merging equal exponents and dropping zeros.
    static HahnSeries from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        HahnSeries s;
        for (auto& t : terms) {
            if (!s.terms_.empty() && s.terms_.back().first == t.first)
                s.terms_.back().second += t.second;
            else
                s.terms_.push_back(std::move(t));
            if (s.terms_.back().second == 0) s.terms_.pop_back();
        }
        return s;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    const Term& leading_term() const {
        if (terms_.empty()) throw std::domain_error("zero series has no leading term");
        return terms_.front();
    }

    Valuation valuation() const { return terms_.empty() ? Valuation::infinity() : Valuation(terms_.front().first); }

    /// Coefficient of t^e.
    mpq_class coefficient(const mpq_class& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const mpq_class& x) { return t.first < x; });
        return (it != terms_.end() && it->first == e) ? it->second : mpq_class(0);
    }

    HahnSeries operator-() const {
        HahnSeries r(*this);
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend HahnSeries operator+(const HahnSeries& a, const HahnSeries& b) { return merge(a, b, false); }
    friend HahnSeries operator-(const HahnSeries& a, const HahnSeries& b) { return merge(a, b, true); }

    friend HahnSeries operator*(const HahnSeries& a, const HahnSeries& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_monomial() || b.is_monomial()) {
            const HahnSeries& m = a.is_monomial() ? a : b;
            const HahnSeries& s = a.is_monomial() ? b : a;
            HahnSeries r;
            r.terms_.reserve(s.terms_.size());
            const auto& [e, c] = m.terms_.front();
            for (const auto& [f, d] : s.terms_) r.terms_.emplace_back(mpq_class(e + f), mpq_class(c * d));
            return r;
        }
        std::map<mpq_class, mpq_class> acc;
        for (const auto& [e, c] : a.terms_)
            for (const auto& [f, d] : b.terms_) acc[e + f] += c * d;
        HahnSeries r;
        for (auto& [e, c] : acc)
            if (c != 0) r.terms_.emplace_back(e, std::move(c));
        return r;
    }

    HahnSeries& operator+=(const HahnSeries& o) { return *this = *this + o; }
    HahnSeries& operator-=(const HahnSeries& o) { return *this = *this - o; }
    HahnSeries& operator*=(const HahnSeries& o) { return *this = *this * o; }

    friend bool operator==(const HahnSeries& a, const HahnSeries& b) { return a.terms_ == b.terms_; }

private:
    static HahnSeries merge(const HahnSeries& a, const HahnSeries& b, bool subtract) {
        HahnSeries r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                r.terms_.emplace_back(b.terms_[j].first, subtract ? mpq_class(-b.terms_[j].second) : b.terms_[j].second);
                ++j;
            } else {
                mpq_class c = subtract ? mpq_class(a.terms_[i].second - b.terms_[j].second)
                                       : mpq_class(a.terms_[i].second + b.terms_[j].second);
                if (c != 0) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> terms_;
};

class HahnField {
public:
    using Element = HahnSeries;

    static constexpr const char* backend_name = "hahn";

    HahnField() : pi_(HahnSeries::monomial(1, 1)), pi_val_(1) {}

    explicit HahnField(const HahnSeries& uniformizer) : pi_(uniformizer) {
        if (pi_.is_zero() || pi_.valuation() <= Valuation(0L))
            throw std::invalid_argument("HahnField: uniformizer must have positive valuation");
        pi_val_ = pi_.valuation().value();
    }

    Element zero() const { return {}; }
    Element one() const { return HahnSeries(1L); }
    Element from_integer(const mpz_class& n) const { return HahnSeries(mpq_class(n)); }
    Element from_rational(const mpq_class& q) const {
        mpq_class r(q);
        r.canonicalize();
        return HahnSeries(r);
    }
    /// q must already be in lowest terms.
    Element from_canonical(const mpq_class& q) const { return HahnSeries(q); }

    bool is_zero(const Element& a) const { return a.is_zero(); }
    Valuation valuation(const Element& a) const { return a.valuation(); }

    std::optional<mpz_class> as_integer(const Element& a) const {
        if (a.is_zero()) return mpz_class(0);
        if (a.terms().size() != 1 || a.terms().front().first != 0 || a.terms().front().second.get_den() != 1)
            return std::nullopt;
        return a.terms().front().second.get_num();
    }

    /// The constant term when `a` is a constant series.
    std::optional<mpq_class> as_rational(const Element& a) const {
        if (a.is_zero()) return mpq_class(0);
        if (a.terms().size() != 1 || a.terms().front().first != 0) return std::nullopt;
        return a.terms().front().second;
    }

    const Element& uniformizer() const { return pi_; }
    const mpq_class& uniformizer_valuation() const { return pi_val_; }

    Element uniformizer_power(const mpq_class& q) const {
        if (pi_.is_monomial() && pi_.leading_term().second == 1)
            return HahnSeries::monomial(1, pi_.leading_term().first * q);
        if (q.get_den() != 1) throw std::domain_error("hahn backend: pi^" + q.get_str() + " needs a monomial pi");
        long e = q.get_num().get_si();
        HahnSeries base = pi_;
        if (e < 0) {
            if (!pi_.is_monomial()) throw std::domain_error("hahn backend: negative power of a non-monomial pi");
            const auto& [ex, c] = pi_.leading_term();
            base = HahnSeries::monomial(mpq_class(1 / c), mpq_class(-ex));
            e = -e;
        }
        HahnSeries r(1L);
        for (long i = 0; i < e; ++i) r *= base;
        return r;
    }

    /// Exact long division; throws HahnCutoffError once a quotient exponent
    /// would exceed `cutoff` (the quotient has infinite support).
    Element divide(const Element& a, const Element& b, const mpq_class& cutoff) const {
        if (b.is_zero()) throw std::domain_error("division by zero");
        HahnSeries q, r = a;
        const auto& [f, d] = b.leading_term();
        while (!r.is_zero()) {
            const auto& [e, c] = r.leading_term();
            mpq_class qe = e - f;
            if (qe > cutoff)
                throw HahnCutoffError("hahn division: quotient exceeds exponent cutoff " + cutoff.get_str());
            HahnSeries term = HahnSeries::monomial(mpq_class(c / d), qe);
            q += term;
            r -= term * b;
        }
        return q;
    }

    Element divide(const Element& a, const Element& b) const {
        if (b.is_zero()) throw std::domain_error("division by zero");
        if (a.is_zero()) return {};
        mpq_class cutoff = a.valuation().value() - b.valuation().value() + default_cutoff_span;
        return divide(a, b, cutoff);
    }

    Valuation factorial_valuation(std::uint64_t) const { return Valuation(0L); }
    mpq_class varpi_exponent() const { return 0; }

    /// Truncation of `a` below exponent `radius`; lies in the same closed disc.
    Element recenter(const Element& a, const mpq_class& radius) const {
        std::vector<HahnSeries::Term> kept;
        for (const auto& t : a.terms())
            if (t.first < radius) kept.push_back(t);
        return HahnSeries::from_terms(std::move(kept));
    }

    /// Canonical text form: "c*t^(q)" terms in increasing exponent joined by " + "; zero is "0".
    std::string to_string(const Element& a) const {
        if (a.is_zero()) return "0";
        std::string s;
        for (const auto& [e, c] : a.terms()) {
            if (!s.empty()) s += " + ";
            s += c.get_str() + "*t^(" + e.get_str() + ")";
        }
        return s;
    }

    Element parse(const std::string& text) const;

    friend bool operator==(const HahnField& a, const HahnField& b) { return a.pi_ == b.pi_; }

    static constexpr long default_cutoff_span = 256;

private:
    HahnSeries pi_;
    mpq_class pi_val_;
};

namespace detail {

inline mpq_class parse_rational(const std::string& s, const std::string& context) {
    std::string t = s;
    if (!t.empty() && t.front() == '+') t.erase(0, 1);
    mpq_class q;
    if (t.empty() || t.find_first_not_of("-0123456789/") != std::string::npos || q.set_str(t, 10) != 0 ||
        q.get_den() == 0)
        throw std::invalid_argument("malformed rational '" + s + "' in '" + context + "'");
    q.canonicalize();
    return q;
}

} // namespace detail

/// Accepts the canonical form plus shorthands: "3/2", "t", "t^(1/2)", "-2*t".
inline HahnField::Element HahnField::parse(const std::string& text) const {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty hahn scalar");
    if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);

    std::vector<std::string> pieces;
    int depth = 0;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        // a '-' right after '^(' or '*' or at the start belongs to a number
        bool split_minus = c == '-' && depth == 0 && i > 0 && s[i - 1] != '*' && s[i - 1] != '^';
        if ((c == '+' && depth == 0) || split_minus) {
            if (!cur.empty()) pieces.push_back(cur);
            cur.clear();
            if (c == '-') cur.push_back('-');
            continue;
        }
        cur.push_back(c);
    }
    if (depth != 0) throw std::invalid_argument("unbalanced parentheses in '" + text + "'");
    if (!cur.empty()) pieces.push_back(cur);

    std::vector<HahnSeries::Term> terms;
    for (const auto& piece : pieces) {
        auto tpos = piece.find('t');
        mpq_class coeff = 1, expo = 0;
        if (tpos == std::string::npos) {
            coeff = detail::parse_rational(piece, text);
        } else {
            std::string cpart = piece.substr(0, tpos);
            std::string epart = piece.substr(tpos + 1);
            if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
            if (cpart.empty() || cpart == "+") coeff = 1;
            else if (cpart == "-") coeff = -1;
            else coeff = detail::parse_rational(cpart, text);
            if (epart.empty()) {
                expo = 1;
            } else {
                if (epart.front() != '^') throw std::invalid_argument("malformed hahn term '" + piece + "'");
                epart.erase(0, 1);
                if (!epart.empty() && epart.front() == '(' && epart.back() == ')')
                    epart = epart.substr(1, epart.size() - 2);
                expo = detail::parse_rational(epart, text);
            }
        }
        terms.emplace_back(expo, coeff);
    }
    return HahnSeries::from_terms(std::move(terms));
}

} // namespace dcap
