#pragma once

// The backend contract shared by PadicField and HahnField.

#include "dcap/hahn.hpp"
#include "dcap/padic.hpp"
#include "dcap/valuation.hpp"

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

namespace dcap {

template <class F>
concept ValuedField = requires(const F& f, const typename F::Element& a, const mpz_class& n, const mpq_class& q,
                               const std::string& s, std::uint64_t m) {
    { f.zero() } -> std::convertible_to<typename F::Element>;
    { f.one() } -> std::convertible_to<typename F::Element>;
    { f.from_integer(n) } -> std::convertible_to<typename F::Element>;
    { f.from_rational(q) } -> std::convertible_to<typename F::Element>;
    { f.from_canonical(q) } -> std::convertible_to<typename F::Element>;
    { f.as_rational(a) } -> std::same_as<std::optional<mpq_class>>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.valuation(a) } -> std::same_as<Valuation>;
    { f.as_integer(a) } -> std::same_as<std::optional<mpz_class>>;
    { f.uniformizer() } -> std::convertible_to<typename F::Element>;
    { f.uniformizer_valuation() } -> std::convertible_to<mpq_class>;
    { f.uniformizer_power(q) } -> std::convertible_to<typename F::Element>;
    { f.divide(a, a) } -> std::convertible_to<typename F::Element>;
    { f.factorial_valuation(m) } -> std::same_as<Valuation>;
    { f.varpi_exponent() } -> std::convertible_to<mpq_class>;
    { f.recenter(a, q) } -> std::convertible_to<typename F::Element>;
    { f.to_string(a) } -> std::convertible_to<std::string>;
    { f.parse(s) } -> std::convertible_to<typename F::Element>;
    { F::backend_name } -> std::convertible_to<const char*>;
    { a + a } -> std::convertible_to<typename F::Element>;
    { a - a } -> std::convertible_to<typename F::Element>;
    { a * a } -> std::convertible_to<typename F::Element>;
    { f == f } -> std::convertible_to<bool>;
};

static_assert(ValuedField<PadicField>);
static_assert(ValuedField<HahnField>);

/// Human-readable backend label used in reports, e.g. "p=2" or "hahn".
inline std::string backend_label(const PadicField& f) { return "p=" + std::to_string(f.prime()); }
inline std::string backend_label(const HahnField&) { return "hahn"; }

} // namespace dcap
