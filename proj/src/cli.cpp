#include "tsc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tsc/apfun.hpp"
#include "tsc/audit.hpp"
#include "tsc/delta.hpp"
#include "tsc/dsl.hpp"
#include "tsc/error.hpp"
#include "tsc/periodicity.hpp"

namespace tsc {

std::string_view builtin_script() {
    return R"(# built-in scales
scale R = pattern(1; interval(0, 1))
scale Z = latticeZ(0, 1)
scale HalfZ = latticeZ(0, 1/2)
scale ZHalf = latticeZ(0, 1) | points(1/2)
scale ZplusHalf = latticeZ(1/2, 1)
scale Ex31 = latticeLeft(-2, 2) | latticeRight(3, 2)
scale Unit = interval(0, 1)
fn zero(t) = 0
fn one(t) = 1
fn id(t) = t
fn sq(t) = t^2
fn cosine(t) = cos(t)
fn sinpi(t) = sin(pi*t)
)";
}

namespace {

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string scale;
    std::vector<std::string> window;
    std::string tau_bound = "50";
    std::int64_t denom_bound = 16;
    std::string format = "text";
    std::uint64_t seed = 7;
    std::string fn;
    std::string mode;
    std::string from, to, at, length;
    std::string eps, eps_star = "1/5", eps1 = "9/10";
    std::string claim;
    bool all = false;
    std::string other, tau = "0";
    std::string definition = "all";
    bool two_sided = false;
    std::string inclusion = "5";
    std::vector<std::string> parts;
    std::string periods;
    std::string remainder;
    std::string r0 = "auto";
    bool ambiguity = false;
};

Rat parse_rat(const std::string& s, const char* flag) {
    const auto r = Rat::parse(s);
    if (!r) throw UsageError(std::string("invalid rational '") + s + "' for " + flag);
    return *r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Library {
    ScaleScript user;
    ScaleScript builtin;

    const TimeScaleDesc& scale(const std::string& name) const {
        if (name.empty()) throw UsageError("--scale is required");
        if (const auto* t = user.find_scale(name)) return *t;
        if (const auto* t = builtin.find_scale(name)) return *t;
        throw Error(Errc::UnknownName, "unknown scale '" + name + "'");
    }
    const FunctionDecl& function(const std::string& name) const {
        if (name.empty()) throw UsageError("--fn is required");
        if (const auto* f = user.find_function(name)) return *f;
        if (const auto* f = builtin.find_function(name)) return *f;
        throw Error(Errc::UnknownName, "unknown function '" + name + "'");
    }
};

ScanWindow scan_of(const Options& o) {
    if (o.window.empty()) return {};
    if (o.window.size() != 2) throw UsageError("--window takes two values");
    ScanWindow w{parse_rat(o.window[0], "--window"), parse_rat(o.window[1], "--window")};
    if (!(w.lo < w.hi)) throw UsageError("--window bounds must satisfy lo < hi");
    return w;
}

Rat positive(const std::string& s, const char* flag) {
    const Rat r = parse_rat(s, flag);
    if (r.sign() <= 0) throw UsageError(std::string(flag) + " must be positive");
    return r;
}

nlohmann::ordered_json value_json(const DeltaResult& r, double tolerance) {
    nlohmann::ordered_json j;
    if (r.exact())
        j["value"] = r.value.exact->str();
    else
        j["value"] = r.approx();
    j["exact"] = r.exact();
    if (!r.exact() && r.value.exact) j["rational_value"] = r.value.exact->str();
    std::ostringstream cert;
    if (r.exact())
        cert << "exact";
    else if (r.numeric)
        cert << "numeric, tolerance " << tolerance;
    else
        cert << "floating point";
    j["certification"] = cert.str();
    j["endpoint"] = r.endpoint.str();
    j["endpoint_rule"] = endpoint_rule_name(r.rule);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::vector<std::vector<Rat>> parse_periods(const std::string& s, std::size_t parts) {
    std::vector<std::vector<Rat>> out;
    std::stringstream groups(s);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<Rat> g;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            item.erase(0, item.find_first_not_of(' '));
            item.erase(item.find_last_not_of(' ') + 1);
            if (!item.empty()) g.push_back(parse_rat(item, "--periods"));
        }
        out.push_back(std::move(g));
    }
    if (out.size() != parts) throw UsageError("--periods needs one ';'-separated group per part");
    return out;
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    int dispatch(const std::string& cmd) {
        lib_.builtin = parse(builtin_script());
        if (!o_.input.empty()) lib_.user = parse(read_file(o_.input));
        if (o_.format != "text" && o_.format != "json") throw UsageError("--format must be text or json");
        if (o_.denom_bound < 1) throw UsageError("--denom-bound must be at least 1");
        scan_ = scan_of(o_);
        tau_bound_ = positive(o_.tau_bound, "--tau-bound");

        nlohmann::ordered_json report;
        int code = kExitOk;
        if (cmd == "classify") report = classify_cmd();
        else if (cmd == "pi") report = pi_cmd();
        else if (cmd == "calc") report = calc_cmd();
        else if (cmd == "eps-set") report = eps_cmd();
        else if (cmd == "audit") report = audit_cmd(code);
        else if (cmd == "distance") report = distance_cmd();
        else if (cmd == "check-decomposition") report = decomposition_cmd();

        nlohmann::ordered_json root;
        root["schema_version"] = kSchemaVersion;
        root["command"] = cmd;
        for (auto it = report.begin(); it != report.end(); ++it) root[it.key()] = it.value();
        if (o_.format == "json")
            out_ << root.dump(2) << "\n";
        else
            out_ << render_text(root);
        return code;
    }

private:
    ScanParams params() const {
        ScanParams p;
        p.scan = scan_;
        p.tau_bound = tau_bound_;
        p.denom_bound = o_.denom_bound;
        p.inclusion_length = positive(o_.inclusion, "--inclusion-length");
        return p;
    }

    nlohmann::ordered_json classify_cmd() {
        const TimeScaleDesc& t = lib_.scale(o_.scale);
        return to_json(classify(t, params()));
    }

    nlohmann::ordered_json pi_cmd() {
        const TimeScaleDesc& t = lib_.scale(o_.scale);
        const ScanParams p = params();
        nlohmann::ordered_json j;
        j["scale"] = t.name();
        const bool all = o_.definition == "all";
        if (!all && o_.definition != "invariance" && o_.definition != "intersection" && o_.definition != "epsilon")
            throw UsageError("--definition must be invariance, intersection, epsilon or all");
        if (all || o_.definition == "invariance")
            j["invariance"] = to_json(pi_invariance(t, p.scan, p.tau_bound, p.denom_bound));
        if (all || o_.definition == "intersection") {
            const auto r = pi_nonempty_intersection(t, p.scan, p.tau_bound, p.denom_bound, o_.two_sided,
                                                    p.inclusion_length);
            j["intersection"] = to_json(r);
            j["group"] = to_json(check_group_property(r, p.tau_bound, &t));
        }
        if (all || o_.definition == "epsilon")
            j["epsilon"] = to_json(epsilon_translation_set_of_T(t, positive(o_.eps1, "--eps1"), p.scan, p.tau_bound,
                                                                p.denom_bound, p.inclusion_length));
        return j;
    }

    nlohmann::ordered_json calc_cmd() {
        const TimeScaleDesc& t = lib_.scale(o_.scale);
        const FunctionDecl& f = lib_.function(o_.fn);
        const GridFunction g(t, f.body);
        const QuadratureConfig cfg;
        nlohmann::ordered_json j;
        j["scale"] = t.name();
        j["function"] = f.name + "(t) = " + to_string(*f.body);
        j["mode"] = o_.mode;
        DeltaResult r;
        if (o_.mode == "deriv") {
            if (o_.at.empty()) throw UsageError("calc deriv needs --at");
            j["at"] = o_.at;
            r = delta_derivative(g, parse_rat(o_.at, "--at"), cfg);
        } else if (o_.mode == "integral") {
            if (o_.from.empty() || o_.to.empty()) throw UsageError("calc integral needs --from and --to");
            j["from"] = o_.from;
            j["to"] = o_.to;
            r = delta_integral(g, parse_rat(o_.from, "--from"), parse_rat(o_.to, "--to"), cfg);
        } else if (o_.mode == "shifted") {
            if (o_.from.empty() || o_.length.empty()) throw UsageError("calc shifted needs --from and --length");
            j["from"] = o_.from;
            j["length"] = o_.length;
            r = delta_integral_shifted(g, parse_rat(o_.from, "--from"), parse_rat(o_.length, "--length"), cfg);
        } else {
            throw UsageError("calc mode must be integral, deriv or shifted");
        }
        j["result"] = value_json(r, cfg.tolerance);
        return j;
    }

    nlohmann::ordered_json eps_cmd() {
        const TimeScaleDesc& t = lib_.scale(o_.scale);
        const FunctionDecl& f = lib_.function(o_.fn);
        if (o_.eps.empty()) throw UsageError("eps-set needs --eps");
        const ScanParams p = params();
        const TranslationSetReport pi = pi_invariance(t, p.scan, p.tau_bound, p.denom_bound);
        std::vector<Rat> candidates;
        if (pi.certification.holds()) candidates = pi.members;
        if (candidates.empty()) throw Error(Errc::CandidateNotInvariant, t.name() + " is not invariant under any shift");
        EpsTranslationQuery q{GridFunction(t, f.body), positive(o_.eps, "--eps"), p.scan, candidates};
        q.inclusion_length = p.inclusion_length;
        const EpsTranslationReport r = eps_translation_set(q);
        nlohmann::ordered_json j;
        j["scale"] = t.name();
        j["function"] = f.name + "(t) = " + to_string(*f.body);
        j["pi"] = pi.structural ? *pi.structural : std::string("scanned");
        j["translation_set"] = to_json(r);
        const DensityComparison c = density_in_T_vs_Pi_vs_R(r, t, pi, p.inclusion_length);
        j["comparison"] = c.lines;
        j["dichotomy"] = to_json(lemma_mo1_check(t, pi, p.scan));
        return j;
    }

    nlohmann::ordered_json audit_cmd(int& code) {
        BatteryConfig cfg;
        cfg.seed = o_.seed;
        if (!tau_bound_.is_integer()) throw UsageError("--tau-bound must be an integer for audit");
        cfg.tau_bound = tau_bound_.num();
        cfg.denom_bound = o_.denom_bound;
        cfg.scan = scan_;
        cfg.eps_star = parse_rat(o_.eps_star, "--eps-star");
        cfg.eps1 = parse_rat(o_.eps1, "--eps1");
        if (o_.all == !o_.claim.empty()) throw UsageError("audit needs exactly one of --all or --claim");
        const auto entries = o_.all ? run_battery(cfg) : run_claim(o_.claim, cfg);
        for (const auto& e : entries)
            if (!e.met()) code = kExitAudit;
        return to_json(entries, cfg);
    }

    nlohmann::ordered_json distance_cmd() {
        const TimeScaleDesc& a = lib_.scale(o_.scale);
        const TimeScaleDesc& b = lib_.scale(o_.other.empty() ? o_.scale : o_.other);
        const Rat tau = parse_rat(o_.tau, "--tau");
        nlohmann::ordered_json j;
        j["scale"] = a.name();
        j["other"] = b.name();
        j["tau"] = tau.str();
        j["window"] = {scan_.lo.str(), scan_.hi.str()};
        j["interpretation"] = "windowed Hausdorff distance to the shifted other scale";
        j["distance"] = hausdorff_window(a, translate(b, tau), scan_).str();
        j["intersection_empty"] = intersect_window(a, translate(b, tau), scan_.lo, scan_.hi).empty();
        return j;
    }

    nlohmann::ordered_json decomposition_cmd() {
        const TimeScaleDesc& t = lib_.scale(o_.scale);
        if (o_.parts.empty()) throw UsageError("check-decomposition needs --parts");
        DecompositionProposal p;
        for (const auto& name : o_.parts) p.parts.push_back(lib_.scale(name));
        p.periods = parse_periods(o_.periods, p.parts.size());
        if (!o_.remainder.empty()) p.remainder = lib_.scale(o_.remainder);
        if (o_.r0 == "auto")
            p.remainder_periods_zero = p.remainder.has_value();
        else if (o_.r0 == "zero" || o_.r0 == "empty")
            p.remainder_periods_zero = o_.r0 == "zero";
        else
            throw UsageError("--r0 must be zero, empty or auto");
        nlohmann::ordered_json j;
        j["scale"] = t.name();
        j["decomposition"] = to_json(check_decomposition(t, p, scan_));
        if (o_.ambiguity) j["index_ambiguity"] = to_json(index_ambiguity(p, scan_));
        return j;
    }

    const Options& o_;
    std::ostream& out_;
    Library lib_;
    ScanWindow scan_;
    Rat tau_bound_;
};

int exit_code_for(Errc c) {
    switch (c) {
        case Errc::SyntaxError:
        case Errc::InvalidInterval:
        case Errc::DuplicateName: return kExitParse;
        case Errc::UnknownName: return kExitName;
        default: return kExitPrecondition;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Analyze symbolic time scales: translation sets, periodicity notions, delta calculus, audits."};
    app.name("tsc-analyze");
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--input,-i", o.input, "script file (.tsc)");
        sub->add_option("--window", o.window, "scan window lo hi")->expected(2);
        sub->add_option("--tau-bound", o.tau_bound, "largest |tau| scanned");
        sub->add_option("--denom-bound", o.denom_bound, "largest denominator of grid shifts");
        sub->add_option("--format", o.format, "text or json");
        sub->add_option("--inclusion-length", o.inclusion, "gap bound for relative density on a window");
    };
    auto scale_opt = [&](CLI::App* sub) { sub->add_option("--scale,-s", o.scale, "scale name"); };

    auto* classify = app.add_subcommand("classify", "classify a scale under every periodicity notion");
    common(classify);
    scale_opt(classify);

    auto* pi = app.add_subcommand("pi", "translation sets of a scale");
    common(pi);
    scale_opt(pi);
    pi->add_option("--definition", o.definition, "invariance, intersection, epsilon or all");
    pi->add_option("--eps1", o.eps1, "distance bound for the epsilon notion");
    pi->add_flag("--two-sided", o.two_sided, "also require T and T + tau to meet");

    auto* calc = app.add_subcommand("calc", "delta derivative or integral");
    common(calc);
    scale_opt(calc);
    calc->add_option("mode", o.mode, "integral, deriv or shifted")->required();
    calc->add_option("--fn,-f", o.fn, "function name");
    calc->add_option("--from", o.from, "lower limit");
    calc->add_option("--to", o.to, "upper limit");
    calc->add_option("--at", o.at, "derivative point");
    calc->add_option("--length", o.length, "length of a shifted integral");

    auto* eps = app.add_subcommand("eps-set", "epsilon-translation set of a function");
    common(eps);
    scale_opt(eps);
    eps->add_option("--fn,-f", o.fn, "function name");
    eps->add_option("--eps", o.eps, "epsilon")->required();

    auto* audit = app.add_subcommand("audit", "run audit claims");
    common(audit);
    audit->add_flag("--all", o.all, "run every claim");
    audit->add_option("--claim", o.claim, "one claim id");
    audit->add_option("--seed", o.seed, "seed for random sub-scales");
    audit->add_option("--eps-star", o.eps_star, "lower end of the distance band");
    audit->add_option("--eps1", o.eps1, "upper end of the distance band");

    auto* distance = app.add_subcommand("distance", "windowed Hausdorff distance between two scales");
    common(distance);
    scale_opt(distance);
    distance->add_option("--other", o.other, "second scale (defaults to --scale)");
    distance->add_option("--tau", o.tau, "shift applied to the second scale");

    auto* decomp = app.add_subcommand("check-decomposition", "check a piecewise-periodic decomposition proposal");
    common(decomp);
    scale_opt(decomp);
    decomp->add_option("--parts", o.parts, "part scale names")->delimiter(',');
    decomp->add_option("--periods", o.periods, "period lists per part, e.g. '1,2;3'");
    decomp->add_option("--remainder", o.remainder, "remainder scale name");
    decomp->add_option("--r0", o.r0, "remainder periods: zero, empty or auto");
    decomp->add_flag("--index-ambiguity", o.ambiguity, "also look for points in two parts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        Runner runner(o, out);
        return runner.dispatch(cmd);
    } catch (const SyntaxError& e) {
        err << (o.input.empty() ? std::string("<builtin>") : o.input) << ":" << e.what() << "\n";
        return kExitParse;
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
}

}  // namespace tsc
