#include "dcap/counterexample.hpp"
#include "dcap/hahn.hpp"
#include "dcap/padic.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace dcap;

namespace {

template <ValuedField F>
oracle::Dense to_dense(const Polynomial<F>& p) {
    oracle::Dense d(p.is_zero() ? 0 : p.total_degree() + 1, 0);
    for (const auto& [m, c] : p.terms()) d[m[0]] = *p.field().as_rational(c);
    return d;
}

// v(a - lambda_beta) for beta <= alpha.
template <ValuedField F>
std::vector<Valuation> root_distances(const XiFamily<F>& fam, const typename F::Element& a, std::uint64_t alpha) {
    std::vector<Valuation> out;
    for (std::uint64_t b = 0; b <= alpha; ++b) out.push_back(fam.field().valuation(a - fam.lambda(b)));
    return out;
}

// On the circle v(x - a) = s with generic residue, v(x - lambda) = min(v(a - lambda), s), so
// v(xi_alpha) = alpha^2 sum min(v(a - lambda_beta), s).
mpq_class xi_on_circle(const std::vector<Valuation>& dist, std::uint64_t alpha, const mpq_class& s) {
    mpq_class total = 0;
    for (const auto& v : dist) total += v.is_infinite() ? s : std::min(v.value(), s);
    return total * alpha * alpha;
}

template <ValuedField F>
F make_field() {
    if constexpr (std::is_same_v<F, PadicField>) return PadicField(2);
    else return HahnField();
}

ClaimRow find_row(const ClaimReport& r, const std::string& kind, std::uint64_t alpha) {
    for (const auto& row : r.rows)
        if (row.kind == kind && row.alpha == alpha) return row;
    throw std::logic_error("row not found");
}

std::string extra(const ClaimRow& row, const std::string& key) {
    for (const auto& [k, v] : row.extra)
        if (k == key) return v;
    throw std::logic_error("extra not found");
}

} // namespace

TEST(CalkinWilf, MatchesTreeWalk) {
    const auto seq = oracle::calkin_wilf_prefix(2000);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        ASSERT_EQ(detail::calkin_wilf(mpz_class(static_cast<unsigned long>(i + 1))), seq[i]) << i;
        ASSERT_EQ(detail::calkin_wilf_index(seq[i]), mpz_class(static_cast<unsigned long>(i + 1))) << seq[i];
    }
}

TEST(CosetScheme, HahnRepresentatives) {
    auto s = CosetRepScheme::hahn();
    const std::vector<mpq_class> head{0, 1, -1, mpq_class(1, 2), mpq_class(-1, 2), 2, -2, mpq_class(1, 3)};
    for (std::size_t i = 0; i < head.size(); ++i) EXPECT_EQ(s.representative(i), head[i]);
    // Distinct residues: every pair differs by a unit.
    HahnField K;
    std::vector<mpq_class> seen;
    for (std::uint64_t i = 0; i <= 300; ++i) seen.push_back(s.representative(i));
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());
    for (std::uint64_t i = 0; i <= 300; ++i) EXPECT_EQ(s.index_of_residue(s.representative(i)), i);
    EXPECT_EQ(s.matching_index(K, K.parse("3/2 + t")), 9);
    EXPECT_EQ(s.label(), "hahn-calkin-wilf");
}

TEST(CosetScheme, PadicCycling) {
    auto s = CosetRepScheme::padic(3);
    PadicField K(3);
    for (std::uint64_t i = 0; i < 12; ++i) EXPECT_EQ(s.representative(i), mpq_class(static_cast<unsigned long>(i % 3)));
    EXPECT_EQ(s.matching_index(K, mpq_class(7)), 1);
    EXPECT_EQ(s.matching_index(K, mpq_class(1, 2)), 2); // 1/2 = 2 mod 3
    EXPECT_THROW(s.residue(K, mpq_class(1, 3)), std::invalid_argument);
}

template <class F>
class XiTyped : public ::testing::Test {};
using Backends = ::testing::Types<PadicField, HahnField>;
TYPED_TEST_SUITE(XiTyped, Backends);

TYPED_TEST(XiTyped, ExpansionMatchesNaiveProduct) {
    XiFamily<TypeParam> fam(make_field<TypeParam>());
    for (std::uint64_t alpha = 0; alpha <= 6; ++alpha) {
        std::vector<mpq_class> roots;
        for (std::uint64_t b = 0; b <= alpha; ++b) roots.push_back(fam.scheme().representative(b));
        auto got = to_dense(fam.xi(alpha));
        EXPECT_EQ(got, oracle::product_of_powers(roots, static_cast<unsigned long>(alpha * alpha))) << alpha;
        EXPECT_EQ(fam.xi(alpha).total_degree(), (alpha + 1) * alpha * alpha);
    }
}

TYPED_TEST(XiTyped, SmallExamples) {
    XiFamily<TypeParam> fam(make_field<TypeParam>());
    const auto& K = fam.field();
    EXPECT_EQ(fam.xi(0), Polynomial<TypeParam>::constant(K, 1, K.one()));
    auto x = Polynomial<TypeParam>::variable(K, 1, 0);
    EXPECT_EQ(fam.xi(1), x * x - x);
    for (std::uint64_t alpha = 0; alpha <= 10; ++alpha) EXPECT_EQ(gauss_norm(fam.xi(alpha)), Valuation(0L));
}

TEST(XiFamily, AlternateSchemeOnHahn) {
    // Cycling representatives on the Hahn field still expand exactly.
    XiFamily<HahnField> fam(HahnField(), CosetRepScheme::padic(3));
    std::vector<mpq_class> roots{0, 1, 2, 0};
    EXPECT_EQ(to_dense(fam.xi(3)), oracle::product_of_powers(roots, 9));
}

TEST(Claim2, FrozenValues) {
    XiFamily<PadicField> f2(PadicField(2));
    auto r2 = verify_claim2(f2, 12);
    EXPECT_TRUE(r2.pass);
    EXPECT_EQ(find_row(r2, "divergence", 3).valuation_lhs, Valuation(-4L));
    EXPECT_EQ(find_row(r2, "divergence", 0).valuation_lhs, Valuation(0L));
    for (std::uint64_t a = 0; a <= 12; ++a)
        EXPECT_EQ(find_row(r2, "divergence", a).valuation_lhs,
                  Valuation(-static_cast<long>(a) - static_cast<long>(oracle::factorial_valuation(a, 2))));
    ASSERT_TRUE(r2.classification);
    EXPECT_EQ(r2.classification->verdict, Verdict::non_decreasing_witnessed);

    XiFamily<HahnField> fh{HahnField()};
    auto rh = verify_claim2(fh, 8);
    EXPECT_TRUE(rh.pass);
    EXPECT_EQ(find_row(rh, "divergence", 5).valuation_lhs, Valuation(-5L));
    EXPECT_EQ(find_row(rh, "divergence", 5).valuation_rhs, Valuation(-5L));
    EXPECT_EQ(rh.classification->verdict, Verdict::non_decreasing_witnessed);
}

TYPED_TEST(XiTyped, DiscSupMatchesRootDistances) {
    XiFamily<TypeParam> fam(make_field<TypeParam>());
    const auto& K = fam.field();
    // Centres whose matching index is at most alpha_max + 1, so the quadratic bound can be certified.
    std::vector<std::pair<std::string, mpq_class>> discs{{"0", 1}, {"1", 2}, {"-1", 1}};
    if constexpr (std::is_same_v<TypeParam, HahnField>) {
        discs.insert(discs.end(), {{"1/2", 2}, {"1+t", 2}, {"2+t^(1/2)", 1}});
    } else {
        discs.insert(discs.end(), {{"3", 1}, {"1/3", 2}, {"6", 3}});
    }
    for (const auto& [c, r] : discs) {
        auto a = K.parse(c);
        auto rep = verify_claim1_disc(fam, a, r, 6);
        EXPECT_TRUE(rep.pass) << c;
        for (std::uint64_t alpha = 0; alpha <= 6; ++alpha)
            EXPECT_EQ(find_row(rep, "disc", alpha).valuation_lhs,
                      Valuation(xi_on_circle(root_distances(fam, a, alpha), alpha, r)))
                << c << " alpha=" << alpha;
        EXPECT_EQ(rep.classification->verdict, Verdict::decreasing_witnessed);
    }
}

TEST(Claim1Disc, LateMatchingIndexIsNotCertified) {
    // 3 is the 13th Hahn representative; with alpha <= 6 no factor matches yet, the window shows
    // v = alpha only, and the finite-window witness reads that as failure.
    XiFamily<HahnField> fam{HahnField()};
    auto rep = verify_claim1_disc(fam, HahnField().parse("3"), 1, 6);
    for (const auto& row : rep.rows) EXPECT_TRUE(row.pass);
    EXPECT_EQ(rep.classification->verdict, Verdict::non_decreasing_witnessed);
    EXPECT_FALSE(rep.pass);
    EXPECT_TRUE(verify_claim1_disc(fam, HahnField().parse("3"), 1, 12).pass);
}

TEST(Claim1Disc, FrozenValues) {
    XiFamily<HahnField> fh{HahnField()};
    auto rh = verify_claim1_disc(fh, HahnField().zero(), 1, 2);
    EXPECT_EQ(find_row(rh, "disc", 1).valuation_lhs, Valuation(1L));
    EXPECT_EQ(find_row(rh, "disc", 0).valuation_lhs, Valuation(0L));

    XiFamily<PadicField> f2(PadicField(2));
    auto r2 = verify_claim1_disc(f2, mpq_class(0), 1, 4);
    auto row = find_row(r2, "disc", 4);
    EXPECT_EQ(extra(row, "matching"), "3");
    EXPECT_EQ(row.valuation_rhs, Valuation(48L));
    EXPECT_GE(row.valuation_lhs, Valuation(48L));

    EXPECT_THROW(verify_claim1_disc(f2, mpq_class(0), 0, 4), InvalidDomain);
    EXPECT_THROW(verify_claim1_disc(f2, mpq_class(1, 2), 1, 4), InvalidDomain);
}

// The hole rows use sup_Y xi_alpha (x-a)^{-alpha} = min over circles s in [0, v(tau)] of
// alpha^2 sum min(v(a - lambda), s) - alpha s; the minimum sits at a breakpoint.
TYPED_TEST(XiTyped, HoleShapeMatchesCircleMinimum) {
    XiFamily<TypeParam> fam(make_field<TypeParam>());
    const auto& K = fam.field();
    std::vector<std::pair<std::string, mpq_class>> holes{{"0", 1}, {"1", 2}, {"5", 3}};
    if constexpr (std::is_same_v<TypeParam, HahnField>) holes.push_back({"1+t", 3});
    for (const auto& [c, tau] : holes) {
        Hole<TypeParam> h{K.parse(c), tau};
        auto rep = verify_claim1_laurent(fam, h, 6, 3, 8);
        EXPECT_TRUE(rep.pass) << c;
        for (std::uint64_t alpha = 0; alpha <= 6; ++alpha) {
            auto dist = root_distances(fam, h.center, alpha);
            std::vector<mpq_class> breaks{0, tau};
            for (const auto& v : dist)
                if (v.is_finite() && v.value() < tau) breaks.push_back(v.value());
            mpq_class best;
            bool first = true;
            for (const auto& s : breaks) {
                mpq_class val = xi_on_circle(dist, alpha, s) - alpha * s;
                if (first || val < best) best = val;
                first = false;
            }
            for (const auto& row : rep.rows) {
                if (row.kind != "hole" || row.alpha != alpha) continue;
                Valuation shape = row.valuation_lhs - Valuation::parse(extra(row, "binomial_valuation"));
                EXPECT_EQ(shape, Valuation(best)) << c << " alpha=" << alpha;
            }
        }
    }
}

TEST(Claim1Laurent, FrozenValues) {
    XiFamily<HahnField> fh{HahnField()};
    HahnField K;
    auto r = verify_claim1_laurent(fh, Hole<HahnField>{K.zero(), 1}, 4, 2, 6);
    EXPECT_TRUE(r.pass);
    for (const auto& row : r.rows)
        if (row.kind == "hole" && row.alpha == 1 && row.beta == 0u) {
            EXPECT_GE(row.valuation_lhs, Valuation(0L));
        }
    for (const auto& row : r.rows)
        if (row.kind == "hole" && row.alpha == 0) {
            EXPECT_EQ(row.valuation_lhs, Valuation(0L));
        }

    auto r2 = verify_claim1_laurent(fh, Hole<HahnField>{K.parse("1+t"), 3}, 6, 4, 10);
    EXPECT_TRUE(r2.pass);
    EXPECT_EQ(r2.stabilization_index, "3");
    EXPECT_EQ(r2.constant_C, Valuation(-2L));

    XiFamily<PadicField> f2(PadicField(2));
    auto r3 = verify_claim1_laurent(f2, Hole<PadicField>{mpq_class(5), 3}, 6, 4, 10);
    EXPECT_TRUE(r3.pass);
    EXPECT_EQ(r3.stabilization_index, "2");
    EXPECT_EQ(r3.constant_C, Valuation(-1L));

    // p = 2, hole (1, v(tau) = 2), alpha = 3: rho = 0 so the bound exponent is 0.
    auto r4 = verify_claim1_laurent(f2, Hole<PadicField>{mpq_class(1), 2}, 3, 1, 4);
    EXPECT_TRUE(r4.pass);
    for (const auto& row : r4.rows)
        if (row.kind == "hole" && row.alpha == 3) {
            EXPECT_EQ(row.valuation_rhs, Valuation(0L));
        }

    EXPECT_THROW(verify_claim1_laurent(f2, Hole<PadicField>{mpq_class(1, 2), 1}, 2, 1, 2), InvalidDomain);
}
