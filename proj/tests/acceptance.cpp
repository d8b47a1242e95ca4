// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "dcap/cli.hpp"
#include "dcap/counterexample.hpp"
#include "dcap/diff_operator.hpp"
#include "dcap/factorial.hpp"
#include "dcap/hahn.hpp"
#include "dcap/padic.hpp"
#include "dcap/random.hpp"
#include "dcap/symbol.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace dcap;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what) {
    if (!ok) {
        o.pass = false;
        if (o.detail.size() < 400) o.detail += (o.detail.empty() ? "" : "; ") + what;
    }
}

void append(Outcome& o, const std::string& s) { o.detail += (o.detail.empty() ? "" : ", ") + s; }

template <ValuedField F>
void roundtrip_fuzz(const F& K, const std::string& label, Outcome& o) {
    Rng rng(2024);
    std::size_t checks = 0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t d = 1 + i % 3;
        auto P = random_operator(K, rng, d, 4, 3, i % 2 ? Normalization::divided : Normalization::plain);
        auto rep = roundtrip(P);
        checks += rep.checks.size();
        note(o, rep.pass, label + " operator " + std::to_string(i));
    }
    append(o, label + ": 500 operators, " + std::to_string(checks) + " coefficients");
}

Outcome criterion1() {
    Outcome o;
    roundtrip_fuzz(PadicField(2), "p=2", o);
    roundtrip_fuzz(PadicField(5), "p=5", o);
    roundtrip_fuzz(HahnField(), "hahn", o);
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::size_t cases = 0;
    for (std::size_t d = 1; d <= 3; ++d)
        for (const auto& gamma : indices_up_to(d, 8))
            for_each_below(gamma, [&](const MultiIndex& alpha) {
                ++cases;
                note(o, combinatorial_delta(alpha, gamma) == combinatorial_delta_expected(alpha, gamma),
                     alpha.str() + " <= " + gamma.str());
            });
    append(o, std::to_string(cases) + " pairs alpha <= gamma, |gamma| <= 8, d <= 3");
    return o;
}

template <ValuedField F>
void translation(const F& K, const std::string& label, Outcome& o, std::size_t& count) {
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        const std::size_t d = 1 + i % 3;
        auto P = random_operator(K, rng, d, 3, 2);
        const std::uint64_t cap = 3;
        auto psi = EndoOracle<F>::tabulated(P, cap);
        std::vector<typename F::Element> c;
        for (std::size_t j = 0; j < d; ++j) c.push_back(random_scalar(K, rng, true));
        for (const auto& alpha : indices_up_to(d, cap)) {
            ++count;
            note(o, translation_check(psi, c, alpha), label + " case " + std::to_string(i));
        }
    }
}

Outcome criterion3() {
    Outcome o;
    std::size_t count = 0;
    translation(PadicField(3), "p=3", o, count);
    translation(HahnField(), "hahn", o, count);
    append(o, "2 x 200 cases, " + std::to_string(count) + " (case, alpha) checks");
    return o;
}

Outcome criterion4() {
    Outcome o;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
        for (std::uint64_t m = 0; m <= 10000; ++m)
            note(o, legendre_valuation(m, p) * (p - 1) <= m, "bound m=" + std::to_string(m) + " p=" + std::to_string(p));
        // Direct factorization of every factor of m!.
        std::uint64_t direct = 0;
        for (std::uint64_t m = 0; m <= 200; ++m) {
            if (m >= 2)
                for (std::uint64_t x = m; x % p == 0; x /= p) ++direct;
            note(o, legendre_valuation(m, p) == direct, "legendre m=" + std::to_string(m) + " p=" + std::to_string(p));
        }
    }
    append(o, "bound for m <= 10^4, cross-check for m <= 200, p in {2,3,5,7}");
    return o;
}

template <ValuedField F>
void algebra(const F& K, const std::string& label, Outcome& o, std::size_t& count) {
    for (std::size_t d = 1; d <= 2; ++d) {
        // Weyl monomials x^mu d^alpha with |mu| + |alpha| <= 4, applied to monomials of degree <= 4.
        std::vector<DiffOperator<F>> ops;
        for (const auto& joint : indices_up_to(2 * d, 4)) {
            MultiIndex mu(d), alpha(d);
            for (std::size_t i = 0; i < d; ++i) mu[i] = joint[i], alpha[i] = joint[d + i];
            DiffOperator<F> P(K, d, alpha.total());
            P.add_term(alpha, Polynomial<F>::monomial(K, mu));
            ops.push_back(std::move(P));
        }
        const auto tests = indices_up_to(d, 4);
        for (const auto& P : ops)
            for (const auto& Q : ops) {
                auto PQ = compose(P, Q);
                for (const auto& m : tests) {
                    auto f = Polynomial<F>::monomial(K, m);
                    ++count;
                    if (!(apply(PQ, f) == apply(P, apply(Q, f)))) note(o, false, label + " exhaustive d=" + std::to_string(d));
                }
            }
    }
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const std::size_t d = 1 + i % 3;
        auto P = random_operator(K, rng, d, 3, 2, i % 2 ? Normalization::divided : Normalization::plain);
        auto Q = random_operator(K, rng, d, 3, 2);
        auto f = random_polynomial(K, rng, d, 4);
        ++count;
        note(o, apply(compose(P, Q), f) == apply(P, apply(Q, f)), label + " fuzz " + std::to_string(i));
    }
}

Outcome criterion5() {
    Outcome o;
    std::size_t count = 0;
    algebra(PadicField(2), "p=2", o, count);
    algebra(HahnField(), "hahn", o, count);
    append(o, std::to_string(count) + " (P, Q, f) checks");
    return o;
}

template <ValuedField F>
void claim2(const F& K, Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    XiFamily<F> fam(K);
    auto rep = verify_claim2(fam, 30);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string degree;
    for (const auto& row : rep.rows) {
        note(o, row.pass, fam.scheme().label() + " alpha=" + std::to_string(row.alpha));
        if (row.alpha == 30)
            for (const auto& [k, v] : row.extra)
                if (k == "degree") degree = v;
    }
    note(o, degree == "27900", "degree of xi_30 is " + degree);
    note(o, rep.classification && rep.classification->verdict == Verdict::non_decreasing_witnessed,
         fam.scheme().label() + " classification");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    append(o, fam.scheme().label() + " " + buf);
}

Outcome criterion6() {
    Outcome o;
    claim2(PadicField(2), o);
    claim2(PadicField(3), o);
    claim2(HahnField(), o);
    append(o, "alpha <= 30");
    return o;
}

template <ValuedField F>
void claim1(const F& K, Outcome& o, std::size_t& discs) {
    XiFamily<F> fam(K);
    for (const auto& [c, r] : cli::DefaultCases<F>::discs()) {
        auto rep = verify_claim1_disc(fam, K.parse(c), detail::parse_rational(r, "radius"), 12);
        ++discs;
        note(o, rep.pass, fam.scheme().label() + " disc " + c);
    }
}

Outcome criterion7() {
    Outcome o;
    std::size_t p = 0, h = 0;
    claim1(PadicField(2), o, p);
    claim1(HahnField(), o, h);
    note(o, p >= 5 && h >= 5, "fewer than 5 discs");
    append(o, std::to_string(p) + " p-adic and " + std::to_string(h) + " hahn discs, alpha <= 12");
    return o;
}

template <ValuedField F>
void laurent(const F& K, const std::string& label, Outcome& o) {
    XiFamily<F> fam(K);
    for (const auto& [c, t] : cli::DefaultCases<F>::holes()) {
        auto rep = verify_claim1_laurent(fam, Hole<F>{K.parse(c), detail::parse_rational(t, "tau")}, 10, 10, 20);
        note(o, rep.pass, label + " hole " + c);
        const bool finite = rep.constant_C && rep.constant_C->is_finite() && rep.stabilization_index;
        note(o, finite, label + " hole " + c + " has no finite C");
        if (finite) append(o, label + " (" + c + ", " + t + "): C=" + rep.constant_C->str() + " a0=" + *rep.stabilization_index);
    }
}

Outcome criterion8() {
    Outcome o;
    laurent(PadicField(2), "p=2", o);
    laurent(HahnField(), "hahn", o);
    return o;
}

Outcome criterion9() {
    Outcome o;
    for (const mpq_class& vpi : {mpq_class(1), mpq_class(1, 2)})
        for (std::size_t d = 1; d <= 2; ++d)
            for (const auto& [fam, expected] : cli::reference_families(vpi, d)) {
                auto c = classify_rapid_decrease(fam, 4, 12);
                note(o, c.verdict == expected, fam.label + " got " + to_string(c.verdict));
                note(o, cli::paths_agree(c, 4), fam.label + " certificate paths disagree");
            }
    append(o, "3 families, v(pi) in {1, 1/2}, d in {1, 2}");
    return o;
}

Outcome criterion10() {
    Outcome o;
    for (const char* backend : {"p=2", "hahn"}) {
        RunConfig cfg;
        cfg.command = "suite";
        cfg.backend = backend;
        cfg.seed = 7;
        std::ostringstream a, b, err;
        const int sa = execute(cfg, a, err), sb = execute(cfg, b, err);
        note(o, sa == 0 && sb == 0, std::string(backend) + " suite status " + std::to_string(sa) + " " + err.str());
        note(o, a.str() == b.str(), std::string(backend) + " reports differ");
        append(o, std::string(backend) + " " + std::to_string(a.str().size()) + " bytes");
    }
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 round-trip identity", criterion1},
        {"2 combinatorial identity", criterion2},
        {"3 translation invariance", criterion3},
        {"4 factorial bounds", criterion4},
        {"5 algebra action", criterion5},
        {"6 claim 2 divergence", criterion6},
        {"7 claim 1 disc bound", criterion7},
        {"8 claim 1 Laurent bounds", criterion8},
        {"9 rapid-decrease classifier", criterion9},
        {"10 determinism", criterion10},
    };
    bool all = true;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << o.detail << ")" << std::endl;
    }
    return all ? 0 : 1;
}
