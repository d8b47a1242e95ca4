#pragma once

/**
 * @file io.hpp
 * @brief Text formats for polynomials and operators.
 *
 * Polynomials are written as terms sorted by exponent vector,
 *
 *     (3/1@5) * x1^2*x2^0 + (1/2@5) * x1^0*x2^1
 *
 * with every variable listed; the zero polynomial is "0". The parser also
 * accepts the looser hand-written form "3*x1^2 - x2 + 1/2" and "x" for "x1".
 *
 * Operator files hold one coefficient per line, "alpha-tuple : polynomial",
 * plus optional directives "dim = d", "order = N" and
 * "normalization = plain|divided". Lines starting with '#' are comments.
 */

#include "dcap/diff_operator.hpp"
#include "dcap/field.hpp"
#include "dcap/multi_index.hpp"
#include "dcap/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace dcap {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& msg)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
    std::size_t line;
};

template <ValuedField F>
std::string to_string(const Polynomial<F>& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : p.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + p.field().to_string(c) + ") *";
        for (std::size_t i = 0; i < m.dim(); ++i)
            s += (i ? "*x" : " x") + std::to_string(i + 1) + "^" + std::to_string(m[i]);
    }
    return s;
}

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Splits on c at parenthesis depth zero.
inline std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw std::invalid_argument("unbalanced parentheses");
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (depth != 0) throw std::invalid_argument("unbalanced parentheses");
    out.push_back(cur);
    return out;
}

// Splits a sum into signed terms at depth zero.
inline std::vector<std::pair<bool, std::string>> split_terms(const std::string& s) {
    std::vector<std::pair<bool, std::string>> out;
    std::string cur;
    bool negative = false;
    int depth = 0;
    char prev = 0;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw std::invalid_argument("unbalanced parentheses");
        bool boundary = depth == 0 && (c == '+' || c == '-') && prev != '^' && prev != '*' && prev != '@';
        if (boundary) {
            if (!cur.empty()) {
                out.emplace_back(negative, cur);
                negative = c == '-';
                cur.clear();
            } else if (c == '-') {
                negative = !negative;
            }
        } else {
            cur.push_back(c);
        }
        prev = c;
    }
    if (depth != 0) throw std::invalid_argument("unbalanced parentheses");
    if (cur.empty()) throw std::invalid_argument("dangling sign");
    out.emplace_back(negative, cur);
    return out;
}

} // namespace detail

/// Parses a polynomial in `dim` variables.
template <ValuedField F>
Polynomial<F> parse_polynomial(const F& field, const std::string& text, std::size_t dim) {
    Polynomial<F> p(field, dim);
    std::string body = detail::strip(text);
    if (body.empty()) throw std::invalid_argument("empty polynomial");
    for (const auto& [negative, term] : detail::split_terms(body)) {
        typename F::Element coeff = negative ? typename F::Element(-field.one()) : field.one();
        MultiIndex exponent(dim);
        for (const auto& raw : detail::split_top(term, '*')) {
            std::string factor = detail::strip(raw);
            if (factor.empty()) throw std::invalid_argument("empty factor in term '" + term + "'");
            if (factor.front() == 'x') {
                auto caret = factor.find('^');
                std::string var = factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
                std::size_t idx = 1;
                if (!var.empty()) {
                    if (var.find_first_not_of("0123456789") != std::string::npos)
                        throw std::invalid_argument("bad variable '" + factor + "'");
                    idx = std::stoul(var);
                } else if (dim != 1) {
                    throw std::invalid_argument("bare 'x' needs a one-variable polynomial");
                }
                if (idx < 1 || idx > dim)
                    throw std::invalid_argument("variable x" + std::to_string(idx) + " out of range for dimension " +
                                                std::to_string(dim));
                std::uint32_t e = 1;
                if (caret != std::string::npos) {
                    std::string es = factor.substr(caret + 1);
                    if (es.empty() || es.find_first_not_of("0123456789") != std::string::npos || es.size() > 9)
                        throw std::invalid_argument("bad exponent in '" + factor + "'");
                    e = static_cast<std::uint32_t>(std::stoul(es));
                }
                exponent[idx - 1] += e;
            } else {
                if (factor.front() == '(' && factor.back() == ')') factor = factor.substr(1, factor.size() - 2);
                coeff = coeff * field.parse(factor);
            }
        }
        p.add_term(exponent, coeff);
    }
    return p;
}

template <ValuedField F>
std::string to_string(const DiffOperator<F>& P) {
    std::ostringstream os;
    os << "dim = " << P.dim() << "\n";
    os << "order = " << P.truncation_order() << "\n";
    os << "normalization = " << to_string(P.normalization()) << "\n";
    for (const auto& [alpha, a] : P.coefficients()) os << alpha.str() << " : " << to_string(a) << "\n";
    return os.str();
}

/// Parses the operator text format; errors carry 1-based line numbers.
template <ValuedField F>
DiffOperator<F> parse_operator(const F& field, const std::string& text) {
    std::optional<std::size_t> dim;
    std::optional<std::uint64_t> order;
    Normalization norm = Normalization::plain;
    std::vector<std::tuple<std::size_t, MultiIndex, std::string>> entries;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::strip(line);
        if (s.empty() || s.front() == '#') continue;
        auto colon = s.find(':');
        auto eq = s.find('=');
        if (colon == std::string::npos && eq != std::string::npos) {
            std::string key = detail::strip(s.substr(0, eq)), value = detail::strip(s.substr(eq + 1));
            try {
                if (key == "dim") {
                    dim = std::stoul(value);
                    if (*dim == 0) throw std::invalid_argument("dimension must be positive");
                } else if (key == "order") {
                    order = std::stoull(value);
                } else if (key == "normalization") {
                    if (value == "plain") norm = Normalization::plain;
                    else if (value == "divided") norm = Normalization::divided;
                    else throw std::invalid_argument("normalization must be plain or divided");
                } else {
                    throw std::invalid_argument("unknown directive '" + key + "'");
                }
            } catch (const std::logic_error& e) {
                throw ParseError(lineno, e.what());
            }
            continue;
        }
        if (colon == std::string::npos) throw ParseError(lineno, "expected 'alpha : polynomial'");
        try {
            MultiIndex alpha = MultiIndex::parse(s.substr(0, colon));
            if (dim && alpha.dim() != *dim) throw std::invalid_argument("multi-index has the wrong dimension");
            if (!dim) dim = alpha.dim();
            if (alpha.dim() == 0) throw std::invalid_argument("empty multi-index");
            entries.emplace_back(lineno, alpha, s.substr(colon + 1));
        } catch (const std::logic_error& e) {
            throw ParseError(lineno, e.what());
        }
    }
    const std::size_t d = dim.value_or(1);
    std::uint64_t n = order.value_or(0);
    if (!order)
        for (const auto& [ln, alpha, poly] : entries) n = std::max(n, alpha.total());
    DiffOperator<F> P(field, d, n, norm);
    for (const auto& [ln, alpha, poly] : entries) {
        try {
            if (alpha.dim() != d) throw std::invalid_argument("multi-index has the wrong dimension");
            P.add_term(alpha, parse_polynomial(field, poly, d));
        } catch (const std::logic_error& e) {
            throw ParseError(ln, e.what());
        }
    }
    return P;
}

template <ValuedField F>
DiffOperator<F> load_operator(const F& field, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open operator file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_operator(field, buf.str());
}

} // namespace dcap
