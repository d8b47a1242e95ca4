#pragma once

/**
 * @file cli.hpp
 * @brief The command dispatcher behind the dcapctl tool. `execute` runs one
 * command and writes a single JSON (or CSV) document; the return value is the
 * process exit status: 0 when every check passes, 1 when one fails, 2 on
 * usage, parse, domain or cap errors.
 */

#include "dcap/counterexample.hpp"
#include "dcap/diff_operator.hpp"
#include "dcap/domain.hpp"
#include "dcap/hahn.hpp"
#include "dcap/io.hpp"
#include "dcap/norms.hpp"
#include "dcap/padic.hpp"
#include "dcap/random.hpp"
#include "dcap/rapid_decrease.hpp"
#include "dcap/report.hpp"
#include "dcap/symbol.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcap {

struct RunConfig {
    std::string backend = "p=2";
    std::string command;
    std::string subcommand;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> alpha_max, gamma_cap, degree_cap, count, r_max, beta_max, delta_max, n;
    std::optional<std::size_t> d;
    std::string domain;        // JSON descriptor
    std::string operator_path; // operator text file
    std::string r_valuation = "-1";
    std::string format = "json";
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace cli {

inline std::uint64_t get(const std::optional<std::uint64_t>& v, std::uint64_t dflt) { return v.value_or(dflt); }

template <ValuedField F>
Domain<F> parse_domain(const F& field, const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw InvalidDomain(std::string("domain descriptor is not valid JSON: ") + e.what());
    }
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "polydisc") {
            Polydisc<F> pd;
            for (const auto& c : j.at("center")) pd.center.push_back(field.parse(c.get<std::string>()));
            for (const auto& r : j.at("radii")) pd.radii.push_back(detail::parse_rational(r.get<std::string>(), "radius"));
            validate(field, pd);
            return pd;
        }
        if (type == "holed") {
            HoledDisc<F> hd;
            for (const auto& h : j.at("holes"))
                hd.holes.push_back({field.parse(h.at("center").get<std::string>()),
                                    detail::parse_rational(h.at("tau_valuation").get<std::string>(), "tau_valuation")});
            validate(field, hd);
            return hd;
        }
        throw InvalidDomain("unknown domain type '" + type + "'");
    } catch (const Json::exception& e) {
        throw InvalidDomain(std::string("malformed domain descriptor: ") + e.what());
    }
}

inline Json summary(const std::string& title) {
    Json j;
    j["title"] = title;
    return j;
}

template <ValuedField F>
Json roundtrip_reports(const F& field, const RunConfig& cfg) {
    Json reports = Json::array();
    if (!cfg.operator_path.empty()) {
        auto P = load_operator(field, cfg.operator_path);
        Json j = to_json(roundtrip(P, cfg.operator_path));
        j["title"] = "roundtrip " + cfg.operator_path;
        reports.push_back(j);
        return reports;
    }
    Rng rng(cfg.seed);
    const std::uint64_t count = get(cfg.count, 500);
    Json failures = Json::array();
    std::uint64_t checked = 0;
    bool pass = true;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::size_t d = cfg.d ? *cfg.d : 1 + i % 3;
        auto P = random_operator(field, rng, d, get(cfg.degree_cap, 4), 3,
                                 i % 2 ? Normalization::divided : Normalization::plain);
        auto rep = roundtrip(P, "fuzz-" + std::to_string(i));
        checked += rep.checks.size();
        if (!rep.pass) {
            pass = false;
            Json f = to_json(rep, true);
            f["operator"] = to_string(P);
            failures.push_back(f);
        }
    }
    Json j = summary("roundtrip fuzz");
    j["operators"] = count;
    j["coefficients_checked"] = checked;
    j["failures"] = failures;
    j["pass"] = pass;
    reports.push_back(j);
    return reports;
}

inline Json identity_reports(const RunConfig& cfg) {
    Json reports = Json::array();
    const std::uint64_t cap = get(cfg.gamma_cap, 8);
    const std::size_t lo = cfg.d.value_or(1), hi = cfg.d.value_or(3);
    for (std::size_t d = lo; d <= hi; ++d) {
        std::uint64_t cases = 0;
        Json failures = Json::array();
        for (const auto& gamma : indices_up_to(d, cap))
            for_each_below(gamma, [&](const MultiIndex& alpha) {
                ++cases;
                mpz_class got = combinatorial_delta(alpha, gamma), want = combinatorial_delta_expected(alpha, gamma);
                if (got != want)
                    failures.push_back({{"alpha", alpha.str()}, {"gamma", gamma.str()}, {"got", got.get_str()},
                                        {"expected", want.get_str()}});
            });
        Json j = summary("identity d=" + std::to_string(d));
        j["d"] = d;
        j["gamma_cap"] = cap;
        j["cases"] = cases;
        j["failures"] = failures;
        j["pass"] = failures.empty();
        reports.push_back(j);
    }
    return reports;
}

/// The three reference families: pi^{|alpha|^2}, 1, and pi^{2|alpha|}.
inline std::vector<std::pair<SymbolFamily, Verdict>> reference_families(const mpq_class& vpi, std::size_t d) {
    std::vector<std::pair<SymbolFamily, Verdict>> out;
    SymbolFamily sq;
    sq.dim = d;
    sq.uniformizer_valuation = vpi;
    sq.label = "pi^(|alpha|^2)";
    sq.valuation = [vpi](const MultiIndex& a) { return Valuation(mpq_class(vpi * a.total() * a.total())); };
    sq.bound = ValuationBound{vpi, 0, 0, 0};
    out.emplace_back(sq, Verdict::decreasing_witnessed);

    SymbolFamily one;
    one.dim = d;
    one.uniformizer_valuation = vpi;
    one.label = "1";
    one.valuation = [](const MultiIndex&) { return Valuation(0L); };
    out.emplace_back(one, Verdict::non_decreasing_witnessed);

    SymbolFamily lin;
    lin.dim = d;
    lin.uniformizer_valuation = vpi;
    lin.label = "pi^(2|alpha|)";
    lin.valuation = [vpi](const MultiIndex& a) { return Valuation(mpq_class(2 * vpi * a.total())); };
    lin.bound = ValuationBound{0, 2 * vpi, 0, 0};
    out.emplace_back(lin, Verdict::non_decreasing_witnessed);
    return out;
}

// Both certificate paths must agree: every r gets a finite threshold (a) and a finite infimum (c).
inline bool paths_agree(const Classification& c, std::uint64_t r_max) {
    if (c.verdict != Verdict::decreasing_witnessed) return c.path_a.empty() && c.path_c.empty();
    for (std::uint64_t r = 0; r <= r_max; ++r) {
        bool a = false, cc = false;
        for (const auto& x : c.path_a) a = a || x.r == r;
        for (const auto& x : c.path_c) cc = cc || x.r == r;
        if (!a || !cc) return false;
    }
    return true;
}

template <ValuedField F>
Json classify_reports(const F& field, const RunConfig& cfg) {
    const std::uint64_t r_max = get(cfg.r_max, 4), cap = get(cfg.alpha_max, 12);
    Json rows = Json::array(), details = Json::array();
    bool pass = true;
    for (const auto& [fam, expected] : reference_families(field.uniformizer_valuation(), cfg.d.value_or(1))) {
        Classification c = classify_rapid_decrease(fam, r_max, cap);
        const bool ok = c.verdict == expected && paths_agree(c, r_max);
        pass = pass && ok;
        rows.push_back({{"family", fam.label},
                        {"verdict", to_string(c.verdict)},
                        {"expected", to_string(expected)},
                        {"pass", ok}});
        Json dj = to_json(c);
        dj["family"] = fam.label;
        details.push_back(dj);
    }
    Json j = summary("classify");
    j["r_max"] = r_max;
    j["index_cap"] = cap;
    j["rows"] = rows;
    j["families"] = details;
    j["pass"] = pass;
    return Json::array({j});
}

template <ValuedField F>
Polynomial<F> poly(const F& field, const std::string& text, std::size_t d = 1) {
    return parse_polynomial(field, text, d);
}

template <ValuedField F>
Json norms_reports(const F& field, const RunConfig& cfg) {
    Json reports = Json::array();
    const std::uint64_t cap = get(cfg.degree_cap, 8);
    const mpq_class Rv = detail::parse_rational(cfg.r_valuation, "r-valuation");
    if (!cfg.operator_path.empty()) {
        auto P = load_operator(field, cfg.operator_path);
        Domain<F> dom = cfg.domain.empty() ? Domain<F>(Polydisc<F>::unit(field, P.dim())) : parse_domain(field, cfg.domain);
        if (domain_dim(dom) != P.dim()) throw InvalidDomain("domain dimension differs from the operator's");
        Json rows = Json::array();
        for (const auto& [alpha, a] : P.coefficients())
            rows.push_back({{"index", alpha.str()}, {"gauss", a.gauss_valuation().str()}, {"sup", sup_norm(a, dom).str()}});
        Json j = summary("norms " + cfg.operator_path);
        j["rows"] = rows;
        j["seminorm_R"] = seminorm_R(P, Rv).str();
        j["r_valuation"] = Rv.get_str();
        bool pass = true;
        if (std::holds_alternative<Polydisc<F>>(dom) || std::get<HoledDisc<F>>(dom).holes.empty()) {
            Json brackets = Json::array();
            Valuation prev = Valuation::infinity();
            for (std::uint64_t c = 0; c <= cap; ++c) {
                NormBracket b = operator_norm_bracket(P, dom, c);
                const bool ok = b.lower >= b.upper && b.lower <= prev;
                pass = pass && ok;
                prev = b.lower;
                brackets.push_back({{"degree_cap", c}, {"lower", b.lower.str()}, {"upper", b.upper.str()}, {"pass", ok}});
            }
            j["brackets"] = brackets;
        }
        j["pass"] = pass;
        reports.push_back(j);
        return reports;
    }

    // Reference values.
    Json rows = Json::array();
    bool pass = true;
    auto check = [&](const std::string& name, const Valuation& got, const Valuation& want) {
        const bool ok = got == want;
        pass = pass && ok;
        rows.push_back({{"case", name}, {"got", got.str()}, {"expected", want.str()}, {"pass", ok}});
    };
    const Domain<F> unit = Polydisc<F>::unit(field, 1);
    const MultiIndex one{1}, two{2};
    {
        DiffOperator<F> P(field, 1, 2, Normalization::divided);
        P.add_term(two, Polynomial<F>::constant(field, 1, field.one()));
        NormBracket b = operator_norm_bracket(P, unit, cap);
        check("bracket lower, divided d^2, unit disc", b.lower, Valuation(0L));
        check("bracket upper, divided d^2, unit disc", b.upper, Valuation(0L));
    }
    {
        DiffOperator<F> P(field, 1, 1);
        P.add_term(one, Polynomial<F>::constant(field, 1, field.one()));
        NormBracket b = operator_norm_bracket(P, unit, cap);
        check("bracket lower, d, unit disc", b.lower, Valuation(0L));
        check("bracket upper, d, unit disc", b.upper, Valuation(0L));
        check("seminorm d at R_valuation -3", seminorm_R(P, mpq_class(-3)), Valuation(-3L));
    }
    {
        DiffOperator<F> P(field, 1, 0);
        NormBracket b = operator_norm_bracket(P, unit, cap);
        check("bracket lower, zero", b.lower, Valuation::infinity());
        check("bracket upper, zero", b.upper, Valuation::infinity());
        check("seminorm zero", seminorm_R(P, Rv), Valuation::infinity());
    }
    {
        DiffOperator<F> P(field, 1, 1);
        P.add_term(one, Polynomial<F>::constant(field, 1, field.uniformizer_power(2)));
        P.add_term(MultiIndex{0}, Polynomial<F>::constant(field, 1, field.one()));
        check("seminorm pi^2 d + 1 at R_valuation -1", seminorm_R(P, mpq_class(-1)),
              Valuation(dcap::min(Valuation(0L), Valuation(mpq_class(2 * field.uniformizer_valuation() - 1)))));
    }
    Json j = summary("norms reference");
    j["rows"] = rows;
    j["pass"] = pass;
    reports.push_back(j);
    return reports;
}

template <ValuedField F>
struct DefaultCases;

template <>
struct DefaultCases<HahnField> {
    static std::vector<std::pair<std::string, std::string>> discs() {
        return {{"0", "1"}, {"1", "1/2"}, {"-1", "3"}, {"1/2", "1"}, {"1+t", "2"}, {"2+t^(1/2)", "1"}};
    }
    static std::vector<std::pair<std::string, std::string>> holes() { return {{"1+t", "3"}, {"0", "1"}, {"1/2", "2"}}; }
};

template <>
struct DefaultCases<PadicField> {
    static std::vector<std::pair<std::string, std::string>> discs() {
        return {{"0", "1"}, {"1", "2"}, {"6", "3"}, {"3", "1"}, {"1/3", "2"}};
    }
    static std::vector<std::pair<std::string, std::string>> holes() { return {{"5", "3"}, {"1", "2"}, {"0", "1"}}; }
};

template <ValuedField F>
Json counterexample_reports(const F& field, const RunConfig& cfg, const std::string& which) {
    Json reports = Json::array();
    XiFamily<F> fam(field);
    auto titled = [](Json j, const std::string& t) {
        j["title"] = t;
        return j;
    };
    if (which == "claim2") {
        reports.push_back(titled(to_json(verify_claim2(fam, get(cfg.alpha_max, 30), get(cfg.r_max, 4))), "claim2"));
        return reports;
    }
    if (which == "claim1") {
        std::vector<std::pair<typename F::Element, mpq_class>> discs;
        if (!cfg.domain.empty()) {
            Domain<F> dom = parse_domain(field, cfg.domain);
            const auto* pd = std::get_if<Polydisc<F>>(&dom);
            if (!pd || pd->center.size() != 1) throw InvalidDomain("claim1 needs a one-dimensional polydisc");
            discs.emplace_back(pd->center[0], mpq_class(pd->radii[0] * field.uniformizer_valuation()));
        } else {
            for (const auto& [c, r] : DefaultCases<F>::discs())
                discs.emplace_back(field.parse(c), detail::parse_rational(r, "radius"));
        }
        for (const auto& [a, r] : discs)
            reports.push_back(titled(to_json(verify_claim1_disc(fam, a, r, get(cfg.alpha_max, 12), get(cfg.r_max, 4))),
                                     "claim1 disc " + field.to_string(a) + " r=" + r.get_str()));
        return reports;
    }
    if (which == "laurent") {
        std::vector<Hole<F>> holes;
        if (!cfg.domain.empty()) {
            Domain<F> dom = parse_domain(field, cfg.domain);
            const auto* hd = std::get_if<HoledDisc<F>>(&dom);
            if (!hd || hd->holes.size() != 1) throw InvalidDomain("laurent needs a domain with exactly one hole");
            holes = hd->holes;
        } else {
            for (const auto& [c, t] : DefaultCases<F>::holes())
                holes.push_back({field.parse(c), detail::parse_rational(t, "tau_valuation")});
        }
        for (const auto& h : holes)
            reports.push_back(titled(to_json(verify_claim1_laurent(fam, h, get(cfg.alpha_max, 10), get(cfg.beta_max, 10),
                                                                   get(cfg.delta_max, 20))),
                                     "claim1 laurent " + field.to_string(h.center) + " v(tau)=" +
                                         h.radius_valuation.get_str()));
        return reports;
    }
    throw UsageError("counterexample needs claim1, claim2 or laurent");
}

template <ValuedField F>
DiffOperator<F> operator_or_default(const F& field, const RunConfig& cfg, const std::function<DiffOperator<F>()>& dflt) {
    return cfg.operator_path.empty() ? dflt() : load_operator(field, cfg.operator_path);
}

template <ValuedField F>
Json symbol_reports(const F& field, const RunConfig& cfg) {
    auto P = operator_or_default<F>(field, cfg, [&] {
        DiffOperator<F> x_d(field, 1, 1);
        x_d.add_term(MultiIndex{1}, Polynomial<F>::variable(field, 1, 0));
        return x_d;
    });
    const std::uint64_t cap = get(cfg.degree_cap, P.truncation_order());
    if (cap < P.truncation_order())
        throw CapExceeded("symbol: degree cap below the operator's truncation order loses coefficients");
    auto psi = EndoOracle<F>::tabulated(P, cap);
    Polynomial<F> T = total_symbol(psi, cap);
    // The zeta^alpha slice of T must be the plain coefficient a_alpha.
    const std::size_t d = P.dim();
    const DiffOperator<F> plain = P.to_plain();
    bool pass = true;
    for (const auto& alpha : indices_up_to(d, cap)) {
        Polynomial<F> slice(field, d);
        for (const auto& [m, c] : T.terms()) {
            bool match = true;
            for (std::size_t i = 0; i < d; ++i) match = match && m[d + i] == alpha[i];
            if (!match) continue;
            MultiIndex x(d);
            for (std::size_t i = 0; i < d; ++i) x[i] = m[i];
            slice.add_term(x, c);
        }
        pass = pass && slice == plain.coefficient(alpha);
    }
    Json j = summary("symbol");
    j["operator"] = to_string(P);
    j["cap"] = cap;
    j["variables"] = "x1..x" + std::to_string(d) + ", then zeta1..zeta" + std::to_string(d) + " as x" +
                     std::to_string(d + 1) + "..x" + std::to_string(2 * d);
    j["total_symbol"] = to_string(T);
    j["pass"] = pass;
    return Json::array({j});
}

template <ValuedField F>
Json decay_reports(const F& field, const RunConfig& cfg) {
    auto P = operator_or_default<F>(field, cfg, [&] {
        DiffOperator<F> Q(field, 1, 3);
        for (std::uint32_t a = 0; a <= 3; ++a)
            Q.add_term(MultiIndex{a}, Polynomial<F>::constant(field, 1, field.uniformizer_power(mpq_class(a * a))));
        return Q;
    });
    Json j = to_json(symbol_decay_estimate(P, get(cfg.n, 2)));
    j["title"] = "decay";
    j["operator"] = to_string(P);
    return Json::array({j});
}

template <ValuedField F>
Json run(const F& field, const RunConfig& cfg) {
    const std::string& c = cfg.command;
    if (c == "roundtrip") return roundtrip_reports(field, cfg);
    if (c == "identity") return identity_reports(cfg);
    if (c == "classify") return classify_reports(field, cfg);
    if (c == "norms") return norms_reports(field, cfg);
    if (c == "counterexample") return counterexample_reports(field, cfg, cfg.subcommand);
    if (c == "symbol") return symbol_reports(field, cfg);
    if (c == "decay") return decay_reports(field, cfg);
    if (c == "suite") {
        Json all = Json::array();
        auto append = [&](const Json& reps) {
            for (const auto& r : reps) all.push_back(r);
        };
        RunConfig base = cfg;
        base.operator_path.clear();
        base.domain.clear();
        append(roundtrip_reports(field, base));
        append(identity_reports(base));
        append(classify_reports(field, base));
        append(norms_reports(field, base));
        for (const char* w : {"claim1", "claim2", "laurent"}) append(counterexample_reports(field, base, w));
        append(symbol_reports(field, base));
        append(decay_reports(field, base));
        return all;
    }
    throw UsageError("unknown command '" + c + "'");
}

} // namespace cli

/// Runs one command; see the file comment for exit statuses.
inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.format != "json" && cfg.format != "csv") throw UsageError("format must be json or csv");
        Json reports;
        if (cfg.backend == "hahn") {
            reports = cli::run(HahnField(), cfg);
        } else if (cfg.backend.rfind("p=", 0) == 0) {
            unsigned long p = 0;
            try {
                p = std::stoul(cfg.backend.substr(2));
            } catch (const std::exception&) {
                throw UsageError("backend must be hahn or p=<prime>");
            }
            reports = cli::run(PadicField(p), cfg);
        } else {
            throw UsageError("backend must be hahn or p=<prime>");
        }
        bool pass = true;
        for (const auto& r : reports) pass = pass && r.value("pass", false);
        Json doc;
        doc["command"] = cfg.command + (cfg.subcommand.empty() ? "" : " " + cfg.subcommand);
        doc["backend"] = cfg.backend;
        doc["seed"] = cfg.seed;
        doc["reports"] = reports;
        doc["pass"] = pass;
        out << (cfg.format == "json" ? doc.dump(2) + "\n" : to_csv(doc));
        return pass ? 0 : 1;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
    } catch (const InvalidDomain& e) {
        err << "invalid domain: " << e.what() << "\n";
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

} // namespace dcap
