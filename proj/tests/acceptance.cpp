// Runs the ten acceptance criteria and prints one PASS/FAIL line each.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "support.hpp"
#include "tsc/apfun.hpp"
#include "tsc/audit.hpp"
#include "tsc/cli.hpp"
#include "tsc/delta.hpp"
#include "tsc/error.hpp"
#include "tsc/periodicity.hpp"

using namespace tsc;
using namespace tsc::testing;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double kQuadratureTolerance = 1e-9;
constexpr double kExample31Seconds = 10.0;
constexpr std::uint64_t kSeed = 7;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Gap-lattice sub-scales ---------------------------------------------------

std::optional<bool> sub_member(const SubScaleSpec& s, std::int64_t x) {
    if (x % 2 == 0) {
        if (x >= 0) return false;
        if (-x > 2 * s.left.back()) return std::nullopt;
        return std::count(s.left.begin(), s.left.end(), -x / 2) == 1;
    }
    if (x <= 1) return false;
    if (x > 2 * s.right.back() + 1) return std::nullopt;
    return std::count(s.right.begin(), s.right.end(), (x - 1) / 2) == 1;
}

void replay_cases(Outcome& o, const SubScaleSpec& s, const AuditVerdict& v, std::int64_t bound) {
    std::set<std::int64_t> covered;
    for (const Witness& w : v.witnesses) {
        if (w.label.rfind("case ", 0) != 0 || w.label.rfind("case 1", 0) == 0) continue;
        const std::int64_t tau = w.values.at(0).num(), t = w.values.at(1).num();
        o.require(w.values[0].is_integer() && w.values[1].is_integer(), "non-integer witness");
        o.require(sub_member(s, t) == std::optional<bool>(true), "witness " + std::to_string(t) + " not in sub-scale");
        o.require(sub_member(s, t - tau) == std::optional<bool>(false),
                  "witness " + std::to_string(t) + " still in shift by " + std::to_string(tau));
        covered.insert(tau);
    }
    for (std::int64_t tau = -bound; tau <= bound; ++tau)
        if (tau) o.require(covered.count(tau) == 1, "no witness for tau = " + std::to_string(tau));
}

Outcome criterion_example31() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const TimeScaleDesc full = example31_scale();
    const auto smu = sup_mu(full, {Rat(-1000000), Rat(1000000)});
    o.require(smu == Rat(5), "sup mu over [-1e6, 1e6] is " + (smu ? smu->str() : std::string("undefined")));

    std::vector<SubScaleSpec> specs = {SubScaleSpec::canonical(50, 50)};
    const auto rnd = random_subscale_specs(kSeed, 20, 50, 50);
    specs.insert(specs.end(), rnd.begin(), rnd.end());
    for (const SubScaleSpec& s : specs) {
        const AuditVerdict v = verify_example31(s, 50, ScanWindow{});
        o.require(v.status == AuditStatus::Confirmed, "sub-scale verdict " + std::string(audit_status_name(v.status)));
        replay_cases(o, s, v, 50);
        // Non-integer shifts: every component is integer-valued, so T̂ ⊂ Z.
        const TimeScaleDesc sub = subscale(s);
        for (const Component& c : sub.components()) {
            if (const auto* p = std::get_if<PointSet>(&c)) {
                for (const Rat& x : p->points) o.require(x.is_integer(), "non-integer point");
            } else {
                o.require(false, "unexpected component in sub-scale");
            }
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < kExample31Seconds, "took " + std::to_string(secs) + " s");
    if (o.pass) o.detail = "21 sub-scales, 100 shifts each, " + std::to_string(secs).substr(0, 4) + " s";
    return o;
}

Outcome criterion_theorem() {
    Outcome o;
    const AuditVerdict v = refute_theorem_wa1({}, 50, ScanWindow{}, kSeed);
    o.require(v.status == AuditStatus::Confirmed, "verdict " + std::string(audit_status_name(v.status)));
    const auto [inf, sup] = extremes(example31_scale());
    o.require(inf == ExtRat::neg_inf() && sup == ExtRat::pos_inf(), "extremes not infinite");
    o.require(sup_mu(example31_scale(), ScanWindow{}) == Rat(5), "graininess bound");
    std::ostringstream out, err;
    const char* argv[] = {"tsc-analyze", "audit", "--claim", "theorem-wa1", "--seed", "7"};
    const int code = run_cli(6, argv, out, err);
    o.require(code == 0, "harness exit code " + std::to_string(code));
    if (o.pass) o.detail = "hypotheses hold, no invariant sub-scale among 21, exit 0";
    return o;
}

// Classification ----------------------------------------------------------

struct OracleVerdicts {
    bool periodic, nonempty, group, tilde;
};

OracleVerdicts oracle_classify(const Member& in, const ScanWindow& w, const Rat& bound, std::int64_t den, const Rat& L) {
    const std::vector<Rat> taus = grid(-bound, bound, den);
    const std::vector<Rat> ts = grid(w.lo, w.hi, 2 * den);
    OracleVerdicts v{false, false, false, false};
    for (const Rat& tau : taus) {
        if (tau.sign() == 0) continue;
        const Rat a = tau.sign() < 0 ? -tau : tau;
        bool ok = true;
        for (const Rat& t : ts)
            if (t >= w.lo + a && t <= w.hi - a && in(t) && !(in(t + tau) && in(t - tau))) {
                ok = false;
                break;
            }
        v.periodic = v.periodic || ok;
    }
    std::set<Rat> meet;
    for (const Rat& tau : taus)
        for (const Rat& t : ts)
            if (in(t) && in(t + tau)) {
                meet.insert(tau);
                break;
            }
    Rat gap(0), prev = -bound;
    for (const Rat& m : meet) {
        gap = max(gap, m - prev);
        prev = m;
    }
    gap = max(gap, bound - prev);
    v.nonempty = !meet.empty() && gap <= L;
    bool closed = meet.size() > 1;
    for (const Rat& a : meet)
        for (const Rat& b : meet)
            for (const Rat& s : {a + b, a - b})
                if (s <= bound && -bound <= s && !meet.count(s)) closed = false;
    v.group = closed;
    bool some = false;
    for (const Rat& t : ts)
        if (in(t) && std::all_of(meet.begin(), meet.end(), [&](const Rat& tau) { return in(t + tau); })) some = true;
    v.tilde = v.group && some;
    return v;
}

Outcome criterion_classification() {
    Outcome o;
    ScanParams p;
    p.scan = {Rat(-40), Rat(40)};
    p.tau_bound = Rat(10);
    p.denom_bound = 4;
    const std::vector<std::tuple<std::string, TimeScaleDesc, Member>> family = {
        {"R", R(), member_R()},           {"Z", Z(), member_Z()},
        {"HalfZ", HalfZ(), member_HalfZ()}, {"ZHalf", ZHalf(), member_ZHalf()},
        {"Ex31", Ex31(), member_Ex31()}};
    std::string table;
    for (const auto& [name, t, in] : family) {
        const OracleVerdicts want = oracle_classify(in, p.scan, p.tau_bound, p.denom_bound, p.inclusion_length);
        const ClassificationReport c = classify(t, p);
        auto cmp = [&](const char* def, const Certification& got, bool expect) {
            o.require(got.holds() == expect, name + " " + def + ": got " + std::string(cert_level_name(got.level)));
            table += got.holds() ? '+' : '-';
        };
        cmp("periodic", c.periodic, want.periodic);
        cmp("meeting", c.ap_nonempty, want.nonempty);
        cmp("group", c.ap_group, want.group);
        cmp("tilde", c.ap_tilde, want.tilde);
        o.require(c.implications_consistent, name + ": implication check failed");
        table += ' ';
    }
    // Same verdicts at the default parameters.
    for (const auto& [name, t, in] : family) {
        const ClassificationReport c = classify(t);
        o.require(c.implications_consistent, name + ": implication check failed at defaults");
    }
    if (o.pass) o.detail = "R Z HalfZ ZHalf Ex31 = " + table;
    return o;
}

Outcome criterion_forms() {
    Outcome o;
    const ScanWindow w{Rat(-30), Rat(30)};
    std::vector<TimeScaleDesc> family = {R(), Z(), HalfZ(), ZHalf(), ZplusHalf(), Ex31(), Unit(),
                                         scale_of("scale Q = pattern(1; 0, 1/4)")};
    Gen g(kSeed);
    for (int i = 0; i < 30; ++i) family.push_back(random_scale(g));
    std::size_t scanned = 0;
    for (const TimeScaleDesc& t : family) {
        const TranslationSetReport r = pi_invariance(t, w, Rat(6), 8);
        o.require(r.form_discrepancies == 0, t.name() + ": " + std::to_string(r.form_discrepancies) + " discrepancies");
        scanned += r.candidates.size();
    }
    if (o.pass) o.detail = std::to_string(family.size()) + " scales, " + std::to_string(scanned) + " shifts, 0 discrepancies";
    return o;
}

Outcome criterion_dichotomy() {
    Outcome o;
    const ScanWindow w{Rat(-100), Rat(100)};
    for (const auto& [t, in, zero] : {std::tuple{Z(), member_Z(), true}, std::tuple{R(), member_R(), true},
                                      std::tuple{ZplusHalf(), member_ZplusHalf(), false}}) {
        const TranslationSetReport pi = pi_invariance(t, w, Rat(50), 16);
        const DichotomyVerdict d = lemma_mo1_check(t, pi, w);
        o.require(d.zero_in_scale == zero, t.name() + ": membership of 0");
        o.require(d.certification.holds(), t.name() + ": " + std::string(cert_level_name(d.certification.level)));
        for (const Rat& tau : pi.members) o.require(in(tau) == zero, t.name() + ": member " + tau.str());
        o.require(pi.members.size() > 1, t.name() + ": trivial report");
    }
    if (o.pass) o.detail = "Z, R within T; Z+1/2 disjoint";
    return o;
}

// Delta calculus ----------------------------------------------------------

GridFunction fn(const TimeScaleDesc& t, const std::string& body) {
    return GridFunction(t, parse("fn f(t) = " + body).functions[0].body);
}

Outcome criterion_delta() {
    Outcome o;
    Gen g(kSeed);
    const TimeScaleDesc z = Z();
    for (int round = 0; round < 100; ++round) {
        std::vector<Rat> c;
        std::string body;
        for (int k = 0, n = static_cast<int>(g.range(1, 4)); k < n; ++k) {
            c.push_back(g.rat(-3, 3, 5));
            body += (k ? " + (" : "(") + c.back().str() + ")*t^" + std::to_string(k);
        }
        auto p = [&](const Rat& t) {
            Rat acc(0);
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
            return acc;
        };
        const GridFunction f = fn(z, body);
        const std::int64_t a = g.range(-10, 5), b = a + g.range(1, 10), m = g.range(a, b);
        SampleTable y;
        Rat run(0);
        for (std::int64_t s = a; s <= b; ++s) {
            const DeltaResult r = delta_integral(f, Rat(a), Rat(s));
            o.require(r.exact() && *r.value.exact == run, "integral differs from the scattered sum");
            y.emplace_back(Rat(s), r.value);
            run = run + p(Rat(s));
        }
        const GridFunction Y(z, y);
        for (std::int64_t s = a; s < b; ++s) {
            const DeltaResult d = delta_derivative(Y, Rat(s));
            o.require(d.exact() && *d.value.exact == p(Rat(s)), "FTC fails at " + std::to_string(s));
        }
        const DeltaResult ab = delta_integral(f, Rat(a), Rat(b));
        const DeltaResult am = delta_integral(f, Rat(a), Rat(m));
        const DeltaResult mb = delta_integral(f, Rat(m), Rat(b));
        o.require(*am.value.exact + *mb.value.exact == *ab.value.exact, "additivity");
    }
    const DeltaResult unit = delta_integral(fn(Unit(), "t"), Rat(0), Rat(1));
    o.require(std::fabs(unit.approx() - 0.5) < kQuadratureTolerance, "dense quadrature off by " +
                                                                          std::to_string(std::fabs(unit.approx() - 0.5)));
    const DeltaResult rho = delta_integral(fn(z, "t"), Rat(0), Rat(5, 2));
    o.require(rho.rule == EndpointRule::BackwardJump && rho.endpoint == Rat(2) && *rho.value.exact == Rat(1), "rho rule");
    const DeltaResult sig = delta_integral(fn(z, "t"), Rat(3), Rat(1, 2));
    o.require(sig.rule == EndpointRule::ForwardJump && sig.endpoint == Rat(1) && *sig.value.exact == Rat(-3), "sigma rule");
    const DeltaResult sh = delta_integral_shifted(fn(z, "1"), Rat(0), Rat(5, 2));
    o.require(sh.endpoint == Rat(2) && *sh.value.exact == Rat(2), "shifted rule");
    if (o.pass) o.detail = "100 polynomials exact; |quadrature - 1/2| < 1e-9; rho/sigma endpoints exact";
    return o;
}

// Translation sets ---------------------------------------------------------

EpsTranslationReport eps_set(const TimeScaleDesc& t, const std::string& body, const Rat& eps, const ScanWindow& w,
                             std::vector<Rat> c) {
    return eps_translation_set(EpsTranslationQuery{fn(t, body), eps, w, std::move(c)});
}

Outcome criterion_monotone() {
    Outcome o;
    Gen g(kSeed);
    const std::vector<std::string> bodies = {"cos(t)", "sin(pi*t/3) + t/50", "t^2/40", "abs(t - 1/2)", "cos(t) + cos(t*7/5)"};
    const ScanWindow w{Rat(-40), Rat(40)};
    const std::vector<Rat> c = grid(Rat(-15), Rat(15), 1);
    for (int i = 0; i < 50; ++i) {
        const Rat e1 = g.rat(0, 2, 20) + Rat(1, 100);
        const Rat e2 = e1 + g.rat(0, 1, 10) + Rat(1, 100);
        const std::string& body = bodies[i % bodies.size()];
        const EpsTranslationReport a = eps_set(i % 2 ? Z() : HalfZ(), body, e1, w, c);
        const EpsTranslationReport b = eps_set(i % 2 ? Z() : HalfZ(), body, e2, w, c);
        for (const Rat& x : a.accepted)
            o.require(std::binary_search(b.accepted.begin(), b.accepted.end(), x), body + ": lost " + x.str());
    }
    for (int i = 0; i < 20; ++i) {
        const Rat eps = g.rat(0, 1, 50);
        if (eps.sign() <= 0 || eps >= Rat(1)) continue;
        const EpsTranslationReport r = eps_set(Z(), "t", eps, w, c);
        o.require(r.accepted == std::vector<Rat>{Rat(0)}, "f = t accepted more than 0 at eps " + eps.str());
    }
    if (o.pass) o.detail = "50 pairs nested; f = t gives {0}";
    return o;
}

Outcome criterion_flaws() {
    Outcome o;
    const AuditVerdict v = def62_emptiness_demo(Rat(1, 5), Rat(9, 10), ScanWindow{});
    o.require(v.status == AuditStatus::Confirmed, "band demo " + std::string(audit_status_name(v.status)));
    const Rat tau = v.witnesses.at(0).values.at(0);
    const Rat d = hausdorff_window(Z(), translate(Z(), tau), ScanWindow{});
    o.require(Rat(1, 5) < d && d < Rat(9, 10), "distance " + d.str() + " outside the band");
    o.require(!tau.is_integer(), "integer shift meets Z");
    o.require(intersect_window(Z(), translate(Z(), tau), Rat(-100), Rat(100)).empty(), "intersection not empty");

    const ScanWindow w{Rat(-100), Rat(100)};
    const TranslationSetReport pi = pi_invariance(ZplusHalf(), w, Rat(50), 1);
    const EpsTranslationReport r = eps_set(ZplusHalf(), "0", Rat(1, 10), w, pi.members);
    const DensityComparison cmp = density_in_T_vs_Pi_vs_R(r, ZplusHalf(), pi);
    o.require(cmp.in_scale.label == DensityLabel::FalseByDisjointness, "in-T reading is not false-by-disjointness");
    o.require(cmp.in_reals.dense(), "in-R reading is not dense");
    if (o.pass) o.detail = "tau = " + tau.str() + ", d = " + d.str() + "; Z+1/2: in T false by disjointness, in R dense";
    return o;
}

Outcome criterion_parser() {
    Outcome o;
    const fs::path corpus = TSC_CORPUS_DIR;
    std::size_t scripts = 0, fixtures = 0;
    for (const auto& e : fs::directory_iterator(corpus)) {
        if (e.path().extension() != ".tsc") continue;
        ++scripts;
        const ScaleScript a = parse(slurp(e.path()));
        const std::string text = serialize(a);
        const ScaleScript b = parse(text);
        o.require(serialize(b) == text, e.path().filename().string() + ": serialization not idempotent");
        o.require(a.scales.size() == b.scales.size(), "scale count changed");
        for (std::size_t i = 0; i < a.scales.size() && i < b.scales.size(); ++i)
            o.require(window(a.scales[i], Rat(-50), Rat(50)) == window(b.scales[i], Rat(-50), Rat(50)),
                      e.path().filename().string() + ": window changed");
    }
    o.require(scripts >= 20, "corpus has " + std::to_string(scripts) + " scripts");
    for (const auto& e : fs::directory_iterator(corpus / "errors")) {
        if (e.path().extension() != ".tsc") continue;
        ++fixtures;
        const std::string text = slurp(e.path());
        std::size_t line = 0, col = 0;
        o.require(std::sscanf(text.c_str(), "# expect %zu:%zu", &line, &col) == 2, "fixture header");
        try {
            parse(text);
            o.require(false, e.path().filename().string() + " parsed");
        } catch (const SyntaxError& err) {
            o.require(err.line() == line && err.column() == col,
                      e.path().filename().string() + ": diagnostic at " + std::to_string(err.line()) + ":" +
                          std::to_string(err.column()));
        }
    }
    if (o.pass) o.detail = std::to_string(scripts) + " scripts round-trip, " + std::to_string(fixtures) +
                           " fixtures positioned";
    return o;
}

std::string capture(const std::string& cmd) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    pclose(p);
    return out;
}

Outcome criterion_determinism() {
    Outcome o;
    const std::string cmd = std::string("\"") + TSC_ANALYZE_PATH + "\" audit --all --seed 7 --format json";
    const std::string a = capture(cmd), b = capture(cmd);
    o.require(!a.empty(), "no output");
    o.require(a == b, "outputs differ");
    if (o.pass) o.detail = std::to_string(a.size()) + " bytes, identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"gap-lattice five-case reproduction", criterion_example31},
        {"theorem refutation harness", criterion_theorem},
        {"classification matrix", criterion_classification},
        {"translation set forms agree", criterion_forms},
        {"membership dichotomy", criterion_dichotomy},
        {"delta calculus properties", criterion_delta},
        {"eps-translation monotonicity", criterion_monotone},
        {"flaw demonstrations", criterion_flaws},
        {"parser corpus", criterion_parser},
        {"audit determinism", criterion_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].first << ": " << o.detail
                  << std::endl;
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
