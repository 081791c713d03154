#include "tsc/audit.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "tsc/apfun.hpp"
#include "tsc/error.hpp"

namespace tsc {

std::string_view audit_status_name(AuditStatus s) noexcept {
    switch (s) {
        case AuditStatus::Confirmed: return "Confirmed";
        case AuditStatus::Refuted: return "Refuted";
        case AuditStatus::NotDecidableAtScale: return "NotDecidableAtScale";
    }
    return "NotDecidableAtScale";
}

void SubScaleSpec::validate() const {
    auto check = [](const std::vector<std::int64_t>& v, const char* what) {
        if (v.empty()) throw Error(Errc::InvalidArgument, std::string(what) + " index sequence is empty");
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 1) throw Error(Errc::InvalidArgument, std::string(what) + " indices must be positive");
            if (i && v[i] <= v[i - 1])
                throw Error(Errc::InvalidArgument, std::string(what) + " indices must be strictly increasing");
        }
    };
    check(left, "left");
    check(right, "right");
}

SubScaleSpec SubScaleSpec::canonical(std::size_t n, std::size_t m) {
    SubScaleSpec s;
    for (std::size_t i = 1; i <= n; ++i) s.left.push_back(static_cast<std::int64_t>(i));
    for (std::size_t i = 1; i <= m; ++i) s.right.push_back(static_cast<std::int64_t>(i));
    return s;
}

TimeScaleDesc example31_scale() {
    return TimeScaleDesc("Ex31", {make_lattice_left(Rat(-2), Rat(2)), make_lattice_right(Rat(3), Rat(2))});
}

TimeScaleDesc subscale(const SubScaleSpec& spec) {
    spec.validate();
    std::vector<Rat> pts;
    for (auto k : spec.left) pts.emplace_back(-2 * k);
    for (auto l : spec.right) pts.emplace_back(2 * l + 1);
    return TimeScaleDesc("subscale", {make_points(std::move(pts))});
}

std::vector<SubScaleSpec> random_subscale_specs(std::uint64_t seed, std::size_t count, std::size_t n, std::size_t m) {
    std::mt19937_64 eng(seed);
    auto sequence = [&](std::size_t len) {
        std::vector<std::int64_t> v;
        std::int64_t cur = 0;
        for (std::size_t i = 0; i < len; ++i) {
            cur += 1 + static_cast<std::int64_t>(eng() % 3);
            v.push_back(cur);
        }
        return v;
    };
    std::vector<SubScaleSpec> out;
    for (std::size_t i = 0; i < count; ++i) {
        SubScaleSpec s;
        s.left = sequence(n);
        s.right = sequence(m);
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

// Membership in the untruncated sub-scale where the truncation decides it:
// evens of the sub-scale are <= -2 and odds >= 3.
std::optional<bool> known_member(const SubScaleSpec& s, const Rat& y) {
    if (!y.is_integer()) return false;
    const std::int64_t v = y.num();
    if (v % 2 == 0) {
        if (v >= 0) return false;
        if (v < -2 * s.left.back()) return std::nullopt;
        return std::binary_search(s.left.begin(), s.left.end(), -v / 2);
    }
    if (v <= 1) return false;
    if (v > 2 * s.right.back() + 1) return std::nullopt;
    return std::binary_search(s.right.begin(), s.right.end(), (v - 1) / 2);
}

bool in_scan(const ScanWindow& w, const Rat& x) { return w.lo <= x && x <= w.hi; }

struct CaseTally {
    std::size_t shifts = 0;
    std::optional<Witness> first;
    std::vector<Witness> all;
};

}  // namespace

AuditVerdict verify_example31(const SubScaleSpec& spec, std::int64_t tau_bound, const ScanWindow& scan) {
    spec.validate();
    if (tau_bound < 1) throw Error(Errc::InvalidArgument, "tau bound must be at least 1");
    AuditVerdict v;
    v.claim = "example31";
    const TimeScaleDesc full = example31_scale();
    const TimeScaleDesc sub = subscale(spec);

    const auto smu = sup_mu(full, scan);
    const bool mu_ok = smu && *smu == Rat(5);
    v.witnesses.push_back({"sup mu of the full scale over the scan", {smu.value_or(Rat(0))}});
    v.narrative.push_back("sup mu over [" + scan.lo.str() + ", " + scan.hi.str() + "] = " +
                          (smu ? smu->str() : std::string("undefined")));

    // Case 1: every point is an integer, so a non-integer shift meets nothing.
    const Rat half(1, 2);
    const bool case1 = intersect_window(sub, translate(sub, half), scan.lo, scan.hi).empty();
    v.witnesses.push_back({"case 1: sub-scale within Z; intersection with shift 1/2 empty on scan", {half}});
    v.narrative.push_back(std::string("case 1 (tau not in Z): structural, sub-scale is a subset of Z; tau = 1/2 demo ") +
                          (case1 ? "empty" : "NONEMPTY"));

    if (spec.left.size() < 2 || spec.right.size() < 2) {
        v.status = AuditStatus::NotDecidableAtScale;
        v.narrative.push_back("too few points on each side for the parity-count cases");
        return v;
    }

    std::vector<Rat> odds, evens;  // odds ascending, evens descending
    for (auto l : spec.right)
        if (in_scan(scan, Rat(2 * l + 1))) odds.emplace_back(2 * l + 1);
    for (auto k : spec.left)
        if (in_scan(scan, Rat(-2 * k))) evens.emplace_back(-2 * k);

    std::array<CaseTally, 6> tally{};
    std::size_t undecided = 0;
    bool verified = true;
    const TimeScaleDesc sub_trunc = sub;
    for (std::int64_t step = 2; step <= 2 * tau_bound + 1; ++step) {
        // 1, -1, 2, -2, ...
        const std::int64_t tv = step % 2 ? -(step / 2) : step / 2;
        const Rat tau(tv);
        const bool even = tv % 2 == 0;
        const int which = even ? (tv > 0 ? 2 : 3) : (tv > 0 ? 4 : 5);
        std::optional<Rat> x;
        std::vector<Rat> extra;
        auto absent = [&](const Rat& c) { return known_member(spec, c - tau) == std::optional<bool>(false); };
        if (which == 2 || which == 3) {
            const Rat c = which == 2 ? Rat(2 * spec.right.front() + 1) : Rat(-2 * spec.left.front());
            if (!in_scan(scan, c))
                throw Error(Errc::WindowTooSmall, "witness " + c.str() + " lies outside the scan window");
            if (absent(c)) x = c;
        } else {
            // Parity count: members of the needed parity in T̂ against T̂ + τ.
            const std::vector<Rat>& pool = which == 4 ? odds : evens;
            std::size_t in_shift = 0;
            const auto& source = which == 4 ? spec.left : spec.right;
            for (auto idx : source) {
                const Rat y = (which == 4 ? Rat(-2 * idx) : Rat(2 * idx + 1)) + tau;
                if (in_scan(scan, y)) ++in_shift;
            }
            for (const Rat& c : pool)
                if (absent(c)) {
                    x = c;
                    break;
                }
            if (!x) {
                const auto& all = which == 4 ? spec.right : spec.left;
                for (auto idx : all) {
                    const Rat c = which == 4 ? Rat(2 * idx + 1) : Rat(-2 * idx);
                    if (!in_scan(scan, c) && absent(c))
                        throw Error(Errc::WindowTooSmall, "witness " + c.str() + " lies outside the scan window");
                }
            }
            extra = {Rat(static_cast<std::int64_t>(pool.size())), Rat(static_cast<std::int64_t>(in_shift))};
        }
        ++tally[which].shifts;
        if (!x) {
            ++undecided;
            continue;
        }
        // Replay through the generic membership routines.
        if (!contains(sub_trunc, *x) || contains(translate(sub_trunc, tau), *x)) verified = false;
        Witness w{"case " + std::to_string(which) + ": t in sub-scale, t not in shift by tau", {tau, *x}};
        w.values.insert(w.values.end(), extra.begin(), extra.end());
        if (!tally[which].first) tally[which].first = w;
        tally[which].all.push_back(std::move(w));
    }

    static const std::array<const char*, 6> names = {"", "", "tau > 0 even", "tau < 0 even", "tau > 0 odd",
                                                     "tau < 0 odd"};
    for (int c = 2; c <= 5; ++c) {
        std::string line = "case " + std::to_string(c) + " (" + names[c] + "): " + std::to_string(tally[c].shifts) +
                           " shifts";
        if (tally[c].first) {
            line += ", first witness t = " + tally[c].first->values[1].str() + " at tau = " +
                    tally[c].first->values[0].str();
            v.witnesses.insert(v.witnesses.end(), tally[c].all.begin(), tally[c].all.end());
        }
        v.narrative.push_back(line);
    }
    if (undecided) v.narrative.push_back(std::to_string(undecided) + " shifts without a decidable witness");

    if (!mu_ok || !case1 || !verified)
        v.status = AuditStatus::Refuted;
    else if (undecided)
        v.status = AuditStatus::NotDecidableAtScale;
    else
        v.status = AuditStatus::Confirmed;
    return v;
}

AuditVerdict refute_theorem_wa1(std::vector<SubScaleSpec> configs, std::int64_t tau_bound, const ScanWindow& scan,
                                std::uint64_t seed) {
    AuditVerdict v;
    v.claim = "theorem-wa1";
    if (configs.empty()) {
        configs.push_back(SubScaleSpec::canonical(50, 50));
        auto rnd = random_subscale_specs(seed, 20, 50, 50);
        configs.insert(configs.end(), rnd.begin(), rnd.end());
        v.seed = seed;
    }
    const TimeScaleDesc full = example31_scale();
    const auto [inf, sup] = extremes(full);
    const bool unbounded = inf.kind == ExtRat::Kind::NegInf && sup.kind == ExtRat::Kind::PosInf;
    const auto smu = sup_mu(full, scan);
    const bool bounded_mu = smu && *smu == Rat(5);
    v.narrative.push_back(std::string("hypotheses: extremes (") + inf.str() + ", " + sup.str() + "), sup mu = " +
                          (smu ? smu->str() : std::string("undefined")));
    v.witnesses.push_back({"sup mu", {smu.value_or(Rat(0))}});

    std::size_t confirmed = 0, undecided = 0, refuted = 0;
    bool subsets = true;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const SubScaleSpec& spec = configs[i];
        spec.validate();
        for (auto k : spec.left) subsets = subsets && contains(full, Rat(-2 * k));
        for (auto l : spec.right) subsets = subsets && contains(full, Rat(2 * l + 1));
        const AuditVerdict r = verify_example31(spec, tau_bound, scan);
        switch (r.status) {
            case AuditStatus::Confirmed: ++confirmed; break;
            case AuditStatus::Refuted: ++refuted; break;
            case AuditStatus::NotDecidableAtScale: ++undecided; break;
        }
        if (i == 0)
            for (std::size_t w = 2; w < r.witnesses.size(); ++w) v.witnesses.push_back(r.witnesses[w]);
    }
    v.witnesses.push_back({"configs non-invariant for every scanned shift",
                           {Rat(static_cast<std::int64_t>(confirmed)), Rat(static_cast<std::int64_t>(configs.size()))}});
    v.narrative.push_back(std::to_string(confirmed) + " of " + std::to_string(configs.size()) +
                          " sub-scales fail invariance for every shift with |tau| <= " + std::to_string(tau_bound) +
                          " and every non-integer shift");
    if (v.seed) v.narrative.push_back("random sub-scales drawn with seed " + std::to_string(*v.seed));

    if (!unbounded || !bounded_mu || !subsets || refuted)
        v.status = AuditStatus::Refuted;
    else if (undecided)
        v.status = AuditStatus::NotDecidableAtScale;
    else
        v.status = AuditStatus::Confirmed;
    return v;
}

namespace {

std::string part_name(std::size_t i) { return "T" + std::to_string(i + 1); }

Witness interval_witness(const std::string& label, const Atom& a) { return {label, {a.lo, a.hi}}; }

bool is_interval_union(const TimeScaleDesc& t) {
    return std::all_of(t.components().begin(), t.components().end(),
                       [](const Component& c) { return std::holds_alternative<ClosedInterval>(c); });
}

}  // namespace

AuditVerdict check_decomposition(const TimeScaleDesc& t, const DecompositionProposal& p, const ScanWindow& scan) {
    if (p.parts.empty()) throw Error(Errc::InvalidArgument, "proposal has no parts");
    if (p.periods.size() != p.parts.size()) throw Error(Errc::InvalidArgument, "one period list per part is required");
    AuditVerdict v;
    v.claim = "decomposition";
    const std::size_t n = p.parts.size();
    std::vector<CanonicalWindow> w;
    for (const auto& part : p.parts) w.push_back(window(part, scan.lo, scan.hi));

    // (a) cover and well-connectedness; connected points per pair.
    ConditionResult a;
    a.id = "a";
    {
        TimeScaleDesc u = p.parts.front();
        for (std::size_t i = 1; i < n; ++i) u = unite(u, p.parts[i], "U");
        if (p.remainder) u = unite(u, *p.remainder, "U");
        const CanonicalWindow wt = window(t, scan.lo, scan.hi);
        const CanonicalWindow wu = window(u, scan.lo, scan.hi);
        if (auto x = first_uncovered(wt, wu)) {
            a.holds = false;
            a.witnesses.push_back({"point of T in no part", {*x}});
        }
        if (auto x = first_uncovered(wu, wt)) {
            a.holds = false;
            a.witnesses.push_back({"point of a part outside T", {*x}});
        }
        if (p.remainder && !is_interval_union(*p.remainder)) {
            a.holds = false;
            a.note = "remainder is not a finite union of closed intervals";
        }
    }
    std::vector<std::vector<std::vector<Rat>>> connected(n, std::vector<std::vector<Rat>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            for (const Atom& at : intersect(w[i], w[j]).atoms) {
                if (at.is_point()) {
                    connected[i][j].push_back(at.lo);
                    connected[j][i].push_back(at.lo);
                } else if (a.holds || a.witnesses.size() < 4) {
                    a.holds = false;
                    a.witnesses.push_back(
                        interval_witness(part_name(i) + " and " + part_name(j) + " share an interval", at));
                }
            }
        }
    v.conditions.push_back(a);

    // (b)
    ConditionResult b;
    b.id = "b";
    for (std::size_t i = 0; i < n; ++i) {
        if (p.periods[i].empty()) {
            b.holds = false;
            b.note = "periods set of " + part_name(i) + " is empty";
        }
        if (std::find(p.periods[i].begin(), p.periods[i].end(), Rat(0)) != p.periods[i].end()) {
            b.holds = false;
            b.witnesses.push_back({"0 in periods set of " + part_name(i), {Rat(0)}});
        }
    }
    v.conditions.push_back(b);

    // (c)
    ConditionResult c;
    c.id = "c";
    for (std::size_t i = 0; i < n; ++i)
        for (const Rat& om : p.periods[i]) {
            if (om.sign() == 0) continue;
            const Certification cert = is_invariant_under(p.parts[i], om, scan);
            if (cert.refuted()) {
                c.holds = false;
                Witness wt = cert.witnesses.front();
                wt.label = part_name(i) + ", omega = " + om.str() + ": " + wt.label;
                wt.values.insert(wt.values.begin(), om);
                c.witnesses.push_back(wt);
            }
        }
    v.conditions.push_back(c);

    // (d) t in T_i off the connected points, ω in S_j: t + ω ∉ T.
    ConditionResult d;
    d.id = "d";
    d.vacuous = n < 2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto& conn = connected[i][j];
            for (const Rat& om : p.periods[j]) {
                const Rat s = abs(om);
                if (scan.hi - scan.lo <= s) continue;
                const Rat lo = om.sign() < 0 ? scan.lo + s : scan.lo;
                const Rat hi = om.sign() > 0 ? scan.hi - s : scan.hi;
                const CanonicalWindow x = intersect(window(p.parts[i], lo, hi), window(translate(t, -om), lo, hi));
                for (const Atom& at : x.atoms) {
                    Rat pt = at.lo;
                    if (std::find(conn.begin(), conn.end(), pt) != conn.end()) {
                        if (at.is_point()) continue;
                        pt = (at.lo + at.hi) / Rat(2);
                    }
                    d.holds = false;
                    d.witnesses.push_back(
                        {"t in " + part_name(i) + ", omega in S" + std::to_string(j + 1) + ", t + omega in T", {pt, om}});
                    break;
                }
            }
        }
    v.conditions.push_back(d);

    // (e)
    ConditionResult e;
    e.id = "e";
    if (!p.remainder) {
        if (p.remainder_periods_zero) {
            e.holds = false;
            e.note = "R0 = {0} but the remainder is empty";
        }
    } else {
        const auto [inf, sup] = extremes(*p.remainder);
        bool zero_periodic = inf.is_finite() || sup.is_finite();
        if (zero_periodic) {
            e.note = "remainder has a finite extreme, so no nonzero shift leaves it invariant";
        } else {
            const Rat bound = (scan.hi - scan.lo) / Rat(4);
            const TranslationSetReport r = pi_invariance(*p.remainder, scan, bound, 4);
            auto it = std::find_if(r.members.begin(), r.members.end(), [](const Rat& x) { return x.sign() != 0; });
            zero_periodic = it == r.members.end();
            if (!zero_periodic) e.witnesses.push_back({"remainder invariant under nonzero shift", {*it}});
        }
        if (!p.remainder_periods_zero) {
            e.holds = false;
            e.note = "R0 is empty but the remainder is not";
        } else if (!zero_periodic) {
            e.holds = false;
            e.note = "R0 = {0} but the remainder is not zero-periodic";
        }
    }
    v.conditions.push_back(e);

    bool all = true;
    for (const ConditionResult& r : v.conditions) {
        std::string line = "(" + r.id + ") " + (r.vacuous ? "vacuous" : r.holds ? "holds" : "violated");
        if (!r.note.empty()) line += ": " + r.note;
        v.narrative.push_back(line);
        if (!r.holds) {
            all = false;
            v.witnesses.insert(v.witnesses.end(), r.witnesses.begin(), r.witnesses.end());
            if (r.witnesses.empty()) v.witnesses.push_back({"condition (" + r.id + ") violated", {}});
        }
    }
    if (all) {
        v.status = AuditStatus::Confirmed;
        v.witnesses.push_back({"all conditions hold on scan", {scan.lo, scan.hi}});
    } else {
        v.status = AuditStatus::Refuted;
    }
    return v;
}

AuditVerdict index_ambiguity(const DecompositionProposal& p, const ScanWindow& scan) {
    AuditVerdict v;
    v.claim = "index-ambiguity";
    std::vector<std::pair<std::string, CanonicalWindow>> named;
    for (std::size_t i = 0; i < p.parts.size(); ++i) named.emplace_back(part_name(i), window(p.parts[i], scan.lo, scan.hi));
    if (p.remainder) named.emplace_back("Tr", window(*p.remainder, scan.lo, scan.hi));
    for (std::size_t i = 0; i < named.size(); ++i)
        for (std::size_t j = i + 1; j < named.size(); ++j) {
            const CanonicalWindow x = intersect(named[i].second, named[j].second);
            if (x.empty()) continue;
            const Rat t = x.atoms.front().lo;
            v.witnesses.push_back({"t in " + named[i].first + " and " + named[j].first, {t}});
            v.narrative.push_back("t = " + t.str() + " belongs to " + named[i].first + " and " + named[j].first +
                                  "; the index of t is not unique");
        }
    if (v.witnesses.empty()) {
        v.status = AuditStatus::NotDecidableAtScale;
        v.narrative.push_back("no point of the scan lies in two parts");
    } else {
        v.status = AuditStatus::Confirmed;
    }
    return v;
}

AuditVerdict def62_emptiness_demo(const Rat& eps_star, const Rat& eps1, const ScanWindow& scan) {
    if (!(Rat(0) < eps_star && eps_star < eps1 && eps1 < Rat(1)))
        throw Error(Errc::InvalidBand, "need 0 < eps* < eps1 < 1, got eps* = " + eps_star.str() + ", eps1 = " + eps1.str());
    AuditVerdict v;
    v.claim = "def62";
    const TimeScaleDesc z("Z", {make_lattice_z(Rat(0), Rat(1))});
    auto in_band = [&](const Rat& d) { return eps_star < d && d < eps1; };

    Rat tau = (eps_star + eps1) / Rat(2);
    Rat d = hausdorff_window(z, translate(z, tau), scan);
    if (!in_band(d)) {
        // Coset distances never exceed 1/2.
        if (eps_star >= Rat(1, 2)) {
            v.status = AuditStatus::NotDecidableAtScale;
            v.narrative.push_back("the band lies above 1/2, the largest distance between Z and a shift of Z");
            return v;
        }
        tau = (eps_star + min(eps1, Rat(1, 2))) / Rat(2);
        d = hausdorff_window(z, translate(z, tau), scan);
        v.narrative.push_back("midpoint of the band adjusted to stay below 1/2");
    }
    const bool empty = intersect_window(z, translate(z, tau), scan.lo, scan.hi).empty();
    v.witnesses.push_back({"tau, d(Z, Z + tau)", {tau, d}});
    v.narrative.push_back("tau = " + tau.str() + ", d = " + d.str() + " in (" + eps_star.str() + ", " + eps1.str() +
                          "), Z and Z + tau " + (empty ? "disjoint" : "MEET") + " on the scan");
    v.status = in_band(d) && empty ? AuditStatus::Confirmed : AuditStatus::Refuted;
    return v;
}

AuditVerdict def55_support_check(const TimeScaleDesc& t, const Rat& eps1, const ScanWindow& scan, const Rat& tau_bound,
                                 std::int64_t denom_bound, const Rat& inclusion_length) {
    if (eps1.sign() <= 0) throw Error(Errc::InvalidArgument, "eps1 must be positive");
    AuditVerdict v;
    v.claim = "def55";
    const TranslationSetReport e = epsilon_translation_set_of_T(t, eps1, scan, tau_bound, denom_bound, inclusion_length);
    std::vector<Rat> meeting;
    std::optional<Rat> empty_tau;
    for (const Rat& tau : e.members) {
        if (!intersect_window(t, translate(t, tau), scan.lo, scan.hi).empty())
            meeting.push_back(tau);
        else if (!empty_tau || abs(tau) < abs(*empty_tau))
            empty_tau = tau;
    }
    const ScanWindow dom{-tau_bound, tau_bound};
    const DensityResult de = relative_density(e.members, inclusion_length, dom);
    const DensityResult dm = relative_density(meeting, inclusion_length, dom);
    auto gap = [](const DensityResult& r) { return r.max_gap ? r.max_gap->str() : std::string("none"); };
    v.narrative.push_back("translation set: " + std::to_string(e.members.size()) + " of " +
                          std::to_string(e.candidates.size()) + " scanned shifts, max gap " + gap(de));
    v.narrative.push_back("with nonempty intersection: " + std::to_string(meeting.size()) + ", max gap " + gap(dm) +
                          (dm.dense ? ", relatively dense" : ", NOT relatively dense") + " for L = " +
                          inclusion_length.str());
    v.witnesses.push_back({"max gaps (all, meeting)", {de.max_gap.value_or(Rat(0)), dm.max_gap.value_or(Rat(0))}});
    if (empty_tau) {
        v.witnesses.push_back({"tau in the translation set with empty intersection", {*empty_tau}});
        v.status = AuditStatus::Confirmed;
    } else if (!dm.dense) {
        v.status = AuditStatus::Confirmed;
    } else {
        v.status = AuditStatus::NotDecidableAtScale;
        v.narrative.push_back("every scanned member meets T; the flaw does not show on this scale");
    }
    return v;
}

AuditVerdict dichotomy_audit(const TimeScaleDesc& t, const ScanWindow& scan, const Rat& tau_bound,
                             std::int64_t denom_bound) {
    AuditVerdict v;
    v.claim = "lemma27";
    const TranslationSetReport pi = pi_invariance(t, scan, tau_bound, denom_bound);
    const DichotomyVerdict d = lemma_mo1_check(t, pi, scan);
    v.narrative.push_back(t.name() + ": 0 " + (d.zero_in_scale ? "in" : "not in") + " T, " +
                          std::to_string(d.members_in_scale) + " of " + std::to_string(d.members_checked) +
                          " members in T");
    if (d.certification.holds()) {
        v.status = AuditStatus::Confirmed;
        v.witnesses.push_back({d.zero_in_scale ? "Pi within T" : "Pi disjoint from T",
                               {Rat(static_cast<std::int64_t>(d.members_checked))}});
    } else if (d.certification.refuted()) {
        v.status = AuditStatus::Refuted;
        v.witnesses = d.certification.witnesses;
    } else {
        v.status = AuditStatus::NotDecidableAtScale;
    }
    return v;
}

const std::vector<std::string>& battery_claims() {
    static const std::vector<std::string> claims = {"example31", "theorem-wa1",     "lemma27",      "def62",
                                                    "def55",     "index-ambiguity", "decomposition"};
    return claims;
}

namespace {

TimeScaleDesc named(std::string name, std::vector<Component> c) { return TimeScaleDesc(std::move(name), std::move(c)); }

TimeScaleDesc integers() { return named("Z", {make_lattice_z(Rat(0), Rat(1))}); }
TimeScaleDesc reals() { return named("R", {make_pattern(Rat(1), {Atom::interval(Rat(0), Rat(1))})}); }
TimeScaleDesc half_shift() { return named("Z+1/2", {make_lattice_z(Rat(1, 2), Rat(1))}); }

}  // namespace

std::vector<BatteryEntry> run_claim(const std::string& claim, const BatteryConfig& cfg) {
    std::vector<BatteryEntry> out;
    const auto ok = AuditStatus::Confirmed;
    if (claim == "example31") {
        out.push_back({verify_example31(SubScaleSpec::canonical(50, 50), cfg.tau_bound, cfg.scan), ok});
    } else if (claim == "theorem-wa1") {
        out.push_back({refute_theorem_wa1({}, cfg.tau_bound, cfg.scan, cfg.seed), ok});
    } else if (claim == "lemma27") {
        for (const TimeScaleDesc& t : {integers(), reals(), half_shift()})
            out.push_back({dichotomy_audit(t, cfg.scan, Rat(cfg.tau_bound), cfg.denom_bound), ok});
    } else if (claim == "def62") {
        out.push_back({def62_emptiness_demo(cfg.eps_star, cfg.eps1, cfg.scan), ok});
    } else if (claim == "def55") {
        out.push_back({def55_support_check(integers(), Rat(2, 5), cfg.scan, Rat(cfg.tau_bound), cfg.denom_bound), ok});
    } else if (claim == "index-ambiguity") {
        DecompositionProposal shared;
        shared.parts = {named("2Z", {make_lattice_z(Rat(0), Rat(2))}),
                        named("0+odd", {make_points({Rat(0)}), make_lattice_z(Rat(1), Rat(2))})};
        shared.periods = {{Rat(2)}, {Rat(2)}};
        out.push_back({index_ambiguity(shared, cfg.scan), ok});

        DecompositionProposal remainder;
        remainder.parts = {integers()};
        remainder.periods = {{Rat(1)}};
        remainder.remainder = named("[0,1]", {make_interval(Rat(0), Rat(1))});
        remainder.remainder_periods_zero = true;
        out.push_back({index_ambiguity(remainder, cfg.scan), ok});

        DecompositionProposal disjoint;
        disjoint.parts = {named("2Z", {make_lattice_z(Rat(0), Rat(2))}), named("2Z+1", {make_lattice_z(Rat(1), Rat(2))})};
        disjoint.periods = {{Rat(2)}, {Rat(2)}};
        out.push_back({index_ambiguity(disjoint, cfg.scan), AuditStatus::NotDecidableAtScale});
    } else if (claim == "decomposition") {
        DecompositionProposal z;
        z.parts = {integers()};
        z.periods = {{Rat(1)}};
        out.push_back({check_decomposition(integers(), z, cfg.scan), ok});

        DecompositionProposal r;
        r.parts = {reals(), reals()};
        r.periods = {{Rat(1)}, {Rat(1)}};
        out.push_back({check_decomposition(reals(), r, cfg.scan), AuditStatus::Refuted});

        DecompositionProposal zero = z;
        zero.periods = {{Rat(0), Rat(1)}};
        out.push_back({check_decomposition(integers(), zero, cfg.scan), AuditStatus::Refuted});
    } else {
        throw Error(Errc::UnknownName, "unknown audit claim '" + claim + "'");
    }
    return out;
}

std::vector<BatteryEntry> run_battery(const BatteryConfig& cfg) {
    std::vector<BatteryEntry> out;
    for (const std::string& c : battery_claims()) {
        auto part = run_claim(c, cfg);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

namespace {

nlohmann::ordered_json witness_json(const Witness& w) {
    nlohmann::ordered_json j;
    j["label"] = w.label;
    auto& vals = j["values"] = nlohmann::ordered_json::array();
    for (const Rat& x : w.values) vals.push_back(x.str());
    return j;
}

}  // namespace

nlohmann::ordered_json to_json(const AuditVerdict& v) {
    nlohmann::ordered_json j;
    j["claim"] = v.claim;
    j["status"] = audit_status_name(v.status);
    if (v.seed) j["seed"] = *v.seed;
    auto& ws = j["witnesses"] = nlohmann::ordered_json::array();
    for (const Witness& w : v.witnesses) ws.push_back(witness_json(w));
    j["narrative"] = v.narrative;
    if (!v.conditions.empty()) {
        auto& cs = j["conditions"] = nlohmann::ordered_json::array();
        for (const ConditionResult& c : v.conditions) {
            nlohmann::ordered_json cj;
            cj["id"] = c.id;
            cj["holds"] = c.holds;
            cj["vacuous"] = c.vacuous;
            if (!c.note.empty()) cj["note"] = c.note;
            auto& cw = cj["witnesses"] = nlohmann::ordered_json::array();
            for (const Witness& w : c.witnesses) cw.push_back(witness_json(w));
            cs.push_back(cj);
        }
    }
    return j;
}

nlohmann::ordered_json to_json(const std::vector<BatteryEntry>& entries, const BatteryConfig& cfg) {
    nlohmann::ordered_json j;
    j["seed"] = cfg.seed;
    j["tau_bound"] = cfg.tau_bound;
    j["denom_bound"] = cfg.denom_bound;
    j["scan"] = {cfg.scan.lo.str(), cfg.scan.hi.str()};
    auto& arr = j["verdicts"] = nlohmann::ordered_json::array();
    bool all = true;
    for (const BatteryEntry& e : entries) {
        nlohmann::ordered_json ej = to_json(e.verdict);
        ej["expected"] = audit_status_name(e.expected);
        ej["met"] = e.met();
        all = all && e.met();
        arr.push_back(ej);
    }
    j["all_expectations_met"] = all;
    return j;
}

}  // namespace tsc
