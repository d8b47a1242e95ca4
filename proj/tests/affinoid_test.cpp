#include "dcap/detail/kronecker.hpp"
#include "dcap/domain.hpp"
#include "dcap/hahn.hpp"
#include "dcap/io.hpp"
#include "dcap/padic.hpp"
#include "dcap/polynomial.hpp"
#include "dcap/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace dcap;

namespace {

detail::IntPoly random_int_poly(Rng& rng, std::size_t len, long range) {
    detail::IntPoly a(len);
    for (auto& c : a) c = static_cast<long>(rng.uniform(-range, range));
    detail::trim(a);
    return a;
}

oracle::Dense to_dense(const detail::IntPoly& a) { return {a.begin(), a.end()}; }

template <ValuedField F>
oracle::Dense to_dense(const Polynomial<F>& p) {
    oracle::Dense d(p.is_zero() ? 0 : p.total_degree() + 1, 0);
    for (const auto& [m, c] : p.terms()) d[m[0]] = *p.field().as_rational(c);
    return d;
}

template <ValuedField F>
Polynomial<F> from_dense(const F& field, const oracle::Dense& d) {
    Polynomial<F> p(field, 1);
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) p.add_term(MultiIndex{static_cast<std::uint32_t>(i)}, field.from_rational(d[i]));
    return p;
}

void strip_zeros(oracle::Dense& d) {
    while (!d.empty() && d.back() == 0) d.pop_back();
}

} // namespace

TEST(Kronecker, MatchesSchoolbook) {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_int_poly(rng, static_cast<std::size_t>(rng.uniform(0, 40)), trial % 2 ? 5 : 1000000007);
        auto b = random_int_poly(rng, static_cast<std::size_t>(rng.uniform(0, 40)), trial % 3 ? 3 : 1L << 40);
        ASSERT_EQ(detail::kronecker_multiply(a, b), detail::schoolbook_multiply(a, b)) << "trial " << trial;
    }
}

TEST(Kronecker, SparseExponentGcd) {
    // (1 - x^4)(1 + x^4) keeps the compressed exponents right.
    detail::IntPoly a{1, 0, 0, 0, -1}, b{1, 0, 0, 0, 1};
    detail::IntPoly want{1, 0, 0, 0, 0, 0, 0, 0, -1};
    EXPECT_EQ(detail::kronecker_multiply(a, b), want);
}

TEST(Kronecker, BinomialPowerAgainstRepeatedProduct) {
    for (long c0 : {-3L, 0L, 2L})
        for (long c1 : {1L, -5L})
            for (std::size_t k : {1UL, 2UL})
                for (unsigned long n = 0; n <= 9; ++n) {
                    detail::IntPoly f(k + 1);
                    f[0] = c0;
                    f[k] = c1;
                    detail::IntPoly want{1};
                    for (unsigned long i = 0; i < n; ++i) want = detail::schoolbook_multiply(want, f);
                    detail::trim(want);
                    EXPECT_EQ(detail::binomial_power(c0, c1, k, n), want) << c0 << " " << c1 << " " << k << " " << n;
                }
}

TEST(Kronecker, TaylorShiftAgainstHorner) {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto f = random_int_poly(rng, static_cast<std::size_t>(rng.uniform(1, 130)), 50);
        mpz_class a = static_cast<long>(rng.uniform(-7, 7));
        auto got = to_dense(detail::taylor_shift(f, a));
        auto want = oracle::taylor_shift(to_dense(f), mpq_class(a));
        strip_zeros(got);
        strip_zeros(want);
        ASSERT_EQ(got, want) << "trial " << trial;
    }
}

TEST(Kronecker, ReducedFraction) {
    std::vector<std::pair<unsigned long, unsigned long>> den{{2, 5}, {3, 2}};
    EXPECT_EQ(detail::reduced_fraction(96, den), mpq_class(1, 3));
    EXPECT_EQ(detail::reduced_fraction(-7, den), mpq_class(-7, 288)); // already coprime
    EXPECT_EQ(detail::reduced_fraction(0, den), mpq_class(0));
    auto f = detail::small_factorization(mpz_class(360));
    ASSERT_TRUE(f);
    EXPECT_EQ(f->size(), 3u);
    EXPECT_FALSE(detail::small_factorization(mpz_class(1009 * 2), 1000));
}

template <class F>
class PolynomialTyped : public ::testing::Test {};
using Backends = ::testing::Types<PadicField, HahnField>;
TYPED_TEST_SUITE(PolynomialTyped, Backends);

template <class F>
F make_field() {
    if constexpr (std::is_same_v<F, PadicField>) return PadicField(3);
    else return HahnField();
}

TYPED_TEST(PolynomialTyped, RingAxioms) {
    const TypeParam K = make_field<TypeParam>();
    Rng rng(3);
    for (int i = 0; i < 60; ++i) {
        const std::size_t d = 1 + i % 3;
        auto a = random_polynomial(K, rng, d, 3), b = random_polynomial(K, rng, d, 3), c = random_polynomial(K, rng, d, 2);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
        // Gauss norm is multiplicative.
        EXPECT_EQ(gauss_norm(a * b), gauss_norm(a) + gauss_norm(b));
    }
}

TYPED_TEST(PolynomialTyped, TranslateMatchesHorner) {
    const TypeParam K = make_field<TypeParam>();
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        auto f = random_polynomial(K, rng, 1, 8, 6, true);
        // Rational centres go through the integer Taylor shift.
        mpq_class a(rng.uniform(-9, 9), rng.uniform(1, 4));
        a.canonicalize();
        if constexpr (std::is_same_v<TypeParam, HahnField>) {
            bool rational = true;
            for (const auto& [m, c] : f.terms()) rational = rational && K.as_rational(c).has_value();
            if (!rational) continue;
        }
        auto want = from_dense(K, oracle::taylor_shift(to_dense(f), a));
        EXPECT_EQ(f.translate({K.from_rational(a)}), want);
    }
}

TYPED_TEST(PolynomialTyped, TranslateRoundTripAndEvaluate) {
    const TypeParam K = make_field<TypeParam>();
    Rng rng(9);
    for (int i = 0; i < 40; ++i) {
        const std::size_t d = 1 + i % 2;
        auto f = random_polynomial(K, rng, d, 4);
        std::vector<typename TypeParam::Element> c, minus_c, pt, shifted;
        for (std::size_t j = 0; j < d; ++j) {
            c.push_back(random_scalar(K, rng, true));
            minus_c.push_back(-c.back());
            pt.push_back(random_scalar(K, rng));
            shifted.push_back(pt.back() + c.back());
        }
        EXPECT_EQ(f.translate(c).translate(minus_c), f);
        EXPECT_EQ(f.translate(c).evaluate(pt), f.evaluate(shifted));
    }
}

TYPED_TEST(PolynomialTyped, DerivativeLeibniz) {
    const TypeParam K = make_field<TypeParam>();
    Rng rng(13);
    for (int i = 0; i < 40; ++i) {
        auto f = random_polynomial(K, rng, 2, 4), g = random_polynomial(K, rng, 2, 4);
        for (const MultiIndex& e : {MultiIndex{1, 0}, MultiIndex{0, 1}})
            EXPECT_EQ((f * g).derivative(e), f.derivative(e) * g + f * g.derivative(e));
    }
}

TYPED_TEST(PolynomialTyped, PrintParseRoundTrip) {
    const TypeParam K = make_field<TypeParam>();
    Rng rng(17);
    for (int i = 0; i < 60; ++i) {
        const std::size_t d = 1 + i % 3;
        auto f = random_polynomial(K, rng, d, 4);
        EXPECT_EQ(parse_polynomial(K, to_string(f), d), f) << to_string(f);
    }
    EXPECT_EQ(parse_polynomial(K, "3*x^2 - x + 1/2", 1).size(), 3u);
    EXPECT_THROW(parse_polynomial(K, "x3", 2), std::invalid_argument);
    EXPECT_THROW(parse_polynomial(K, "x^", 1), std::invalid_argument);
    EXPECT_THROW(parse_polynomial(K, "", 1), std::invalid_argument);
}

// sup over a polydisc, two ways: the library's recentred weighted Gauss norm and
// the Gauss norm of the explicit substitution x = c + pi^r y.
TYPED_TEST(PolynomialTyped, SupNormMatchesExplicitRescale) {
    const TypeParam K = make_field<TypeParam>();
    Rng rng(19);
    for (int i = 0; i < 80; ++i) {
        const std::size_t d = 1 + i % 2;
        auto f = random_polynomial(K, rng, d, 5, 5);
        Polydisc<TypeParam> pd;
        for (std::size_t j = 0; j < d; ++j) {
            pd.center.push_back(random_scalar(K, rng, true));
            pd.radii.push_back(mpq_class(rng.uniform(0, 3)));
        }
        EXPECT_EQ(sup_norm(f, pd), gauss_norm(rescale_to_subdisc(f, pd.center, pd.radii))) << to_string(f);
    }
}

// Every point of the disc is bounded by the sup norm.
TYPED_TEST(PolynomialTyped, SupNormBoundsPointValues) {
    const TypeParam K = make_field<TypeParam>();
    Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        auto f = random_polynomial(K, rng, 1, 6, 5);
        Polydisc<TypeParam> pd{{random_scalar(K, rng, true)}, {mpq_class(rng.uniform(0, 2))}};
        const Valuation s = sup_norm(f, pd);
        for (int k = 0; k < 10; ++k) {
            const typename TypeParam::Element z = pd.center[0] + K.uniformizer_power(pd.radii[0]) * random_scalar(K, rng, true);
            EXPECT_GE(K.valuation(f.evaluate({z})), s);
        }
    }
}

TYPED_TEST(PolynomialTyped, HoledSupIsGauss) {
    const TypeParam K = make_field<TypeParam>();
    Rng rng(29);
    HoledDisc<TypeParam> hd{{{K.one(), 2}}};
    for (int i = 0; i < 20; ++i) {
        auto f = random_polynomial(K, rng, 1, 5);
        EXPECT_EQ(sup_norm(f, hd), gauss_norm(f));
    }
}

TYPED_TEST(PolynomialTyped, DomainValidation) {
    const TypeParam K = make_field<TypeParam>();
    auto far = K.divide(K.one(), K.uniformizer());
    EXPECT_THROW(validate(K, Polydisc<TypeParam>{{far}, {1}}), InvalidDomain);
    EXPECT_THROW(validate(K, Polydisc<TypeParam>{{K.zero()}, {-1}}), InvalidDomain);
    EXPECT_THROW(validate(K, Polydisc<TypeParam>{{K.zero()}, {}}), InvalidDomain);
    EXPECT_THROW(validate(K, HoledDisc<TypeParam>{{{far, 1}}}), InvalidDomain);
    // Two holes around points closer than either radius overlap.
    auto near = K.uniformizer_power(3);
    EXPECT_THROW(validate(K, HoledDisc<TypeParam>{{{K.zero(), 1}, {near, 1}}}), InvalidDomain);
    EXPECT_NO_THROW(validate(K, HoledDisc<TypeParam>{{{K.zero(), 1}, {K.one(), 1}}}));
}

TYPED_TEST(PolynomialTyped, LaurentDerivativeMatchesRepeatedDifferentiation) {
    const TypeParam K = make_field<TypeParam>();
    Hole<TypeParam> h{K.one(), 2};
    for (std::uint32_t beta = 0; beta <= 10; ++beta) {
        // d/dx (x-a)^{-k} = -k (x-a)^{-k-1}; start from (x-a)^{-(beta+1)}, divide by alpha! at the end.
        mpz_class coeff = 1;
        for (std::uint32_t alpha = 0; alpha <= 10; ++alpha) {
            if (alpha > 0) coeff *= -static_cast<long>(beta + alpha);
            mpq_class want(coeff, factorial(alpha));
            auto got = laurent_basis_derivative(K, alpha, beta, h);
            EXPECT_EQ(got.factor, K.from_rational(want));
            EXPECT_EQ(got.pole_order, alpha);
        }
    }
}
