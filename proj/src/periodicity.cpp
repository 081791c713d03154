#include "tsc/periodicity.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tsc/error.hpp"

namespace tsc {

namespace {

struct PeriodicStructure {
    Rat period;
    CanonicalWindow cell;  // T ∩ [0, period]
    bool full = false;     // T = ℝ
    bool points_only = false;
};

std::optional<PeriodicStructure> periodic_structure(const TimeScaleDesc& t) {
    const auto p = structural_period(t);
    if (!p) return std::nullopt;
    PeriodicStructure s;
    s.period = *p;
    s.cell = window(t, Rat(0), *p);
    s.full = s.cell.atoms.size() == 1 && s.cell.atoms[0] == Atom::interval(Rat(0), *p);
    s.points_only = !s.cell.has_interval();
    return s;
}

bool same_on_period(const TimeScaleDesc& t, const Rat& tau, const PeriodicStructure& s) {
    return window(translate(t, tau), Rat(0), s.period) == s.cell;
}

std::string lattice_name(const Rat& q) {
    if (q == Rat(1)) return "Z";
    return "(" + q.str() + ")Z";
}

// Smallest positive shift leaving a periodic scale invariant.
Rat fundamental_period(const TimeScaleDesc& t, const PeriodicStructure& s) {
    const CanonicalWindow w = window(t, -s.period, s.period * Rat(2));
    std::set<Rat> diffs;
    for (const Atom& a : w.atoms)
        for (const Atom& b : w.atoms) {
            const Rat d = b.lo - a.lo;
            if (d.sign() > 0 && d <= s.period) diffs.insert(d);
        }
    for (const Rat& d : diffs)
        if (same_on_period(t, d, s)) return d;
    return s.period;
}

// Representatives in [0, P) of (cell - cell) mod P, for point-only cells.
std::vector<Rat> difference_classes(const PeriodicStructure& s) {
    std::set<Rat> out;
    for (const Atom& a : s.cell.atoms)
        for (const Atom& b : s.cell.atoms) out.insert(mod(a.lo - b.lo, s.period));
    return {out.begin(), out.end()};
}

Witness shift_witness(const Rat& t, const Rat& shifted, bool minus) {
    return {minus ? "t in T, t - tau not in T" : "t in T, t + tau not in T", {t, shifted}};
}

// Pointwise test of t ± τ ∈ T over the atoms of `a`.
bool pointwise_invariant(const TimeScaleDesc& t, const CanonicalWindow& a, const CanonicalWindow& plus,
                         const CanonicalWindow& minus, const Rat& tau) {
    CanonicalWindow intervals{a.lo, a.hi, {}};
    for (const Atom& atom : a.atoms) {
        if (atom.is_point()) {
            if (!contains(t, atom.lo + tau) || !contains(t, atom.lo - tau)) return false;
        } else {
            intervals.atoms.push_back(atom);
        }
    }
    return !first_uncovered(intervals, plus) && !first_uncovered(intervals, minus);
}

void harvest_differences(const CanonicalWindow& w, const Rat& bound, std::set<Rat>& out) {
    std::vector<Rat> ends;
    for (const Atom& a : w.atoms) {
        ends.push_back(a.lo);
        if (!a.is_point()) ends.push_back(a.hi);
    }
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = i + 1; j < ends.size(); ++j) {
            const Rat d = ends[j] - ends[i];
            if (d > bound) break;
            out.insert(d);
            out.insert(-d);
        }
}

ScanWindow domain_of(const Rat& tau_bound) { return {-tau_bound, tau_bound}; }

}  // namespace

std::string_view cert_level_name(CertLevel level) noexcept {
    switch (level) {
        case CertLevel::StructurallyProved: return "StructurallyProved";
        case CertLevel::WindowCertified: return "WindowCertified";
        case CertLevel::Refuted: return "Refuted";
        case CertLevel::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string_view pi_definition_tag(PiDefinition d) noexcept {
    switch (d) {
        case PiDefinition::Invariance: return "invariance";
        case PiDefinition::NonemptyIntersection: return "nonempty-intersection";
        case PiDefinition::EpsilonDistance: return "epsilon-distance";
    }
    return "unknown";
}

Certification Certification::proved(std::string note) {
    Certification c;
    c.level = CertLevel::StructurallyProved;
    c.note = std::move(note);
    return c;
}

Certification Certification::certified(ScanWindow w, std::string note) {
    Certification c;
    c.level = CertLevel::WindowCertified;
    c.window = w;
    c.note = std::move(note);
    return c;
}

Certification Certification::refuted_by(Witness w, std::string note) {
    Certification c;
    c.level = CertLevel::Refuted;
    c.witnesses.push_back(std::move(w));
    c.note = std::move(note);
    return c;
}

std::vector<Rat> tau_candidates(const TimeScaleDesc& t, const ScanWindow& scan, const Rat& tau_bound,
                                std::int64_t denom_bound) {
    if (tau_bound.sign() <= 0) throw Error(Errc::InvalidArgument, "tau_bound must be positive");
    if (denom_bound < 1) throw Error(Errc::InvalidArgument, "denom_bound must be at least 1");
    std::set<Rat> out;
    for (std::int64_t q = 1; q <= denom_bound; ++q) {
        const std::int64_t pmax = (tau_bound * Rat(q)).floor();
        for (std::int64_t p = -pmax; p <= pmax; ++p) out.insert(Rat(p, q));
    }
    harvest_differences(window(t, scan.lo, scan.hi), tau_bound, out);
    return {out.begin(), out.end()};
}

Certification is_invariant_under(const TimeScaleDesc& t, const Rat& tau, const ScanWindow& scan) {
    const Rat shift = abs(tau);
    if (scan.hi - scan.lo <= shift * Rat(2))
        throw Error(Errc::WindowTooSmall, "scan window must be wider than 2|tau| = " + (shift * Rat(2)).str());
    if (tau.sign() == 0) return Certification::proved("identity shift");

    const auto [inf, sup] = extremes(t);
    if (inf.is_finite())
        return Certification::refuted_by(shift_witness(inf.value, inf.value - shift, true),
                                         "inf T is finite; an invariant scale is unbounded on both sides");
    if (sup.is_finite())
        return Certification::refuted_by(shift_witness(sup.value, sup.value + shift, false),
                                         "sup T is finite; an invariant scale is unbounded on both sides");

    if (const auto s = periodic_structure(t)) {
        const CanonicalWindow plus = window(translate(t, tau), Rat(0), s->period);
        const CanonicalWindow minus = window(translate(t, -tau), Rat(0), s->period);
        if (plus == s->cell && minus == s->cell)
            return Certification::proved("periodic description with period " + s->period.str());
        if (auto x = first_uncovered(s->cell, plus)) return Certification::refuted_by(shift_witness(*x, *x - tau, true));
        if (auto x = first_uncovered(s->cell, minus))
            return Certification::refuted_by(shift_witness(*x, *x + tau, false));
        // Equal covers in both directions imply equality; unreachable for valid input.
        return Certification::proved("periodic description with period " + s->period.str());
    }

    const ScanWindow shrunk{scan.lo + shift, scan.hi - shift};
    const CanonicalWindow a = window(t, shrunk.lo, shrunk.hi);
    // T ⊆ T^{+τ} means t - τ ∈ T; check that direction first.
    if (auto x = first_uncovered(a, window(translate(t, tau), shrunk.lo, shrunk.hi)))
        return Certification::refuted_by(shift_witness(*x, *x - tau, true));
    if (auto x = first_uncovered(a, window(translate(t, -tau), shrunk.lo, shrunk.hi)))
        return Certification::refuted_by(shift_witness(*x, *x + tau, false));
    return Certification::certified(shrunk, "T ∩ T^{+tau} ∩ T^{-tau} = T on the shrunken window");
}

TranslationSetReport pi_invariance(const TimeScaleDesc& t, const ScanWindow& scan, const Rat& tau_bound,
                                   std::int64_t denom_bound) {
    TranslationSetReport r;
    r.definition = PiDefinition::Invariance;
    r.scan = scan;
    r.tau_bound = tau_bound;
    r.denom_bound = denom_bound;
    r.two_sided = true;
    r.candidates = tau_candidates(t, scan, tau_bound, denom_bound);

    std::vector<std::pair<Rat, Witness>> refuted_positive;
    for (const Rat& tau : r.candidates) {
        const Rat shift = abs(tau);
        if (scan.hi - scan.lo <= shift * Rat(2)) continue;
        const Certification c = is_invariant_under(t, tau, scan);
        if (c.holds()) {
            r.members.push_back(tau);
        } else if (tau.sign() > 0 && !c.witnesses.empty()) {
            Witness w = c.witnesses.front();
            w.label = "tau = " + tau.str() + ": " + w.label;
            refuted_positive.emplace_back(tau, std::move(w));
        }

        // Both set forms on the shrunken window, computed by separate routes.
        const ScanWindow shrunk{scan.lo + shift, scan.hi - shift};
        const CanonicalWindow a = window(t, shrunk.lo, shrunk.hi);
        const CanonicalWindow plus = window(translate(t, tau), shrunk.lo, shrunk.hi);
        const CanonicalWindow minus = window(translate(t, -tau), shrunk.lo, shrunk.hi);
        const bool pointwise = pointwise_invariant(t, a, plus, minus, tau);
        const bool setwise = intersect(intersect(a, plus), minus).atoms == a.atoms;
        if (pointwise != setwise) ++r.form_discrepancies;
    }

    // Report the simplest shifts: small denominators first.
    std::stable_sort(refuted_positive.begin(), refuted_positive.end(), [](const auto& x, const auto& y) {
        return x.first.den() < y.first.den() || (x.first.den() == y.first.den() && x.first < y.first);
    });
    std::vector<Witness> refutations;
    for (std::size_t i = 0; i < refuted_positive.size() && i < 3; ++i) refutations.push_back(refuted_positive[i].second);

    const auto [inf, sup] = extremes(t);
    const bool has_nonzero = std::any_of(r.members.begin(), r.members.end(), [](const Rat& x) { return x.sign() != 0; });
    if (!inf.is_finite() || !sup.is_finite()) {
        if (inf.is_finite() || sup.is_finite()) {
            r.structural = "{0}";
            const Rat m = inf.is_finite() ? inf.value : sup.value;
            r.certification = Certification::refuted_by(
                {"finite extreme of T", {m}}, "Pi = {0}: a scale with a finite extreme is invariant under no shift");
        } else if (const auto s = periodic_structure(t)) {
            if (s->full) {
                r.structural = "R";
            } else {
                const Rat q = fundamental_period(t, *s);
                r.structural = lattice_name(q);
                for (const Rat& tau : r.candidates) {
                    if (scan.hi - scan.lo <= abs(tau) * Rat(2)) continue;
                    const bool predicted = (tau / q).is_integer();
                    const bool found = std::binary_search(r.members.begin(), r.members.end(), tau);
                    if (predicted != found) r.structural_agrees = false;
                }
            }
            r.certification = Certification::proved("Pi = " + *r.structural);
        } else if (has_nonzero) {
            r.certification = Certification::certified(scan, "nonzero invariant shift found on the scan");
        } else {
            Certification c;
            c.level = CertLevel::Refuted;
            c.window = scan;
            c.witnesses = refutations.empty() ? std::vector<Witness>{{"no candidate shifts", {}}} : refutations;
            c.note = "every scanned tau != 0 (|tau| <= " + tau_bound.str() + ", denominators <= " +
                     std::to_string(denom_bound) + " plus atom differences) is refuted";
            r.certification = c;
        }
    } else {
        r.structural = "{0}";
        r.certification = Certification::refuted_by({"finite extreme of T", {inf.value}},
                                                    "Pi = {0}: a bounded scale is invariant under no shift");
    }

    r.max_gap = relative_density(r.members, Rat(1), domain_of(tau_bound)).max_gap;
    return r;
}

TranslationSetReport pi_nonempty_intersection(const TimeScaleDesc& t, const ScanWindow& scan, const Rat& tau_bound,
                                              std::int64_t denom_bound, bool two_sided,
                                              const Rat& inclusion_length) {
    TranslationSetReport r;
    r.definition = PiDefinition::NonemptyIntersection;
    r.scan = scan;
    r.tau_bound = tau_bound;
    r.denom_bound = denom_bound;
    r.two_sided = two_sided;
    r.candidates = tau_candidates(t, scan, tau_bound, denom_bound);

    const CanonicalWindow base = window(t, scan.lo, scan.hi);
    if (base.empty()) throw Error(Errc::EmptyScan, "T has no points on the scan window");
    for (const Rat& tau : r.candidates) {
        bool member = !intersect(base, window(translate(t, -tau), scan.lo, scan.hi)).empty();
        if (member && two_sided) member = !intersect(base, window(translate(t, tau), scan.lo, scan.hi)).empty();
        if (member) r.members.push_back(tau);
    }

    const DensityResult d = relative_density(r.members, inclusion_length, domain_of(tau_bound));
    r.max_gap = d.max_gap;

    const auto [inf, sup] = extremes(t);
    const auto s = periodic_structure(t);
    if (s) {
        if (s->full) {
            r.structural = "R";
        } else if (s->points_only) {
            const auto classes = difference_classes(*s);
            std::string desc = "{";
            for (std::size_t i = 0; i < classes.size(); ++i) desc += (i ? ", " : "") + classes[i].str();
            r.structural = classes.size() == 1 ? lattice_name(s->period) : desc + "} + " + lattice_name(s->period);
        }
        r.certification = Certification::proved("Pi contains " + lattice_name(s->period) +
                                                ", relatively dense with inclusion length " + s->period.str());
    } else if (inf.is_finite() && sup.is_finite()) {
        const Rat diam = sup.value - inf.value;
        r.structural = "subset of [-" + diam.str() + ", " + diam.str() + "]";
        r.certification = Certification::refuted_by({"Pi bounded by the diameter of T", {diam}},
                                                    "a bounded Pi is not relatively dense in R");
    } else if (d.dense) {
        r.certification = Certification::certified(domain_of(tau_bound),
                                                   "max gap " + d.max_gap->str() + " <= inclusion length " +
                                                       inclusion_length.str());
    } else {
        r.certification = Certification::refuted_by(
            {"max gap exceeds inclusion length", {d.max_gap.value_or(tau_bound * Rat(2)), inclusion_length}},
            "window verdict on tau domain [-" + tau_bound.str() + ", " + tau_bound.str() + "]");
        r.certification.window = domain_of(tau_bound);
    }
    return r;
}

Certification check_group_property(const TranslationSetReport& report, const Rat& bound, const TimeScaleDesc* scale) {
    const bool has_nonzero =
        std::any_of(report.members.begin(), report.members.end(), [](const Rat& x) { return x.sign() != 0; });
    if (!has_nonzero) return Certification::refuted_by({"Pi = {0} on the scan", {Rat(0)}}, "condition (i) fails");

    if (scale) {
        if (const auto s = periodic_structure(*scale)) {
            if (s->full) return Certification::proved("Pi = R");
            if (s->points_only) {
                const auto classes = difference_classes(*s);
                for (const Rat& a : classes)
                    for (const Rat& b : classes) {
                        const Rat sum = mod(a + b, s->period);
                        if (!std::binary_search(classes.begin(), classes.end(), sum))
                            return Certification::refuted_by({"tau1, tau2 in Pi but tau1 + tau2 not", {a, b, a + b}},
                                                             "difference classes modulo " + s->period.str() +
                                                                 " are not closed");
                    }
                return Certification::proved("difference classes modulo " + s->period.str() + " form a group");
            }
        }
    }

    std::unordered_set<Rat> members(report.members.begin(), report.members.end());
    std::unordered_set<Rat> scanned(report.candidates.begin(), report.candidates.end());
    std::unordered_map<Rat, bool> direct;
    auto is_member = [&](const Rat& x) -> std::optional<bool> {
        if (scanned.count(x)) return members.count(x) > 0;
        if (!scale) return std::nullopt;
        auto it = direct.find(x);
        if (it != direct.end()) return it->second;
        const CanonicalWindow base = window(*scale, report.scan.lo, report.scan.hi);
        bool m = !intersect(base, window(translate(*scale, -x), report.scan.lo, report.scan.hi)).empty();
        if (m && report.two_sided)
            m = !intersect(base, window(translate(*scale, x), report.scan.lo, report.scan.hi)).empty();
        direct.emplace(x, m);
        return m;
    };

    std::vector<Rat> order = report.members;
    std::sort(order.begin(), order.end(), [](const Rat& a, const Rat& b) {
        const Rat x = abs(a);
        const Rat y = abs(b);
        return x < y || (x == y && a < b);
    });
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const Rat& a = order[i];
            const Rat& b = order[j];
            for (const Rat& c : {a + b, a - b}) {
                if (abs(c) > bound) continue;
                const auto m = is_member(c);
                if (!m) {
                    ++skipped;
                    continue;
                }
                if (!*m) {
                    const bool sum = c == a + b;
                    return Certification::refuted_by(
                        {sum ? "tau1, tau2 in Pi but tau1 + tau2 not" : "tau1, tau2 in Pi but tau1 - tau2 not",
                         {a, b, c}});
                }
            }
        }
    }
    std::string note = "closed under +/- for all member pairs with |tau1 +/- tau2| <= " + bound.str();
    if (skipped) note += " (" + std::to_string(skipped) + " unscanned sums skipped)";
    return Certification::certified(report.scan, note);
}

CanonicalWindow compute_T_tilde(const TimeScaleDesc& t, const TranslationSetReport& report, const ScanWindow& scan) {
    CanonicalWindow acc = window(t, scan.lo, scan.hi);
    for (const Rat& tau : report.members) {
        if (acc.empty()) break;
        acc = intersect(acc, window(translate(t, -tau), scan.lo, scan.hi));
    }
    acc.lo = scan.lo;
    acc.hi = scan.hi;
    return acc;
}

DensityResult relative_density(const std::vector<Rat>& sorted, const Rat& inclusion_length, const ScanWindow& domain) {
    auto first = std::lower_bound(sorted.begin(), sorted.end(), domain.lo);
    auto last = std::upper_bound(sorted.begin(), sorted.end(), domain.hi);
    if (first == last) return {false, std::nullopt};
    Rat gap = max(*first - domain.lo, domain.hi - *(last - 1));
    for (auto it = first + 1; it != last; ++it) gap = max(gap, *it - *(it - 1));
    return {gap <= inclusion_length, gap};
}

namespace {

// sup over x in A ∩ w of dist(x, B).
Rat directed_distance(const CanonicalWindow& a, const TimeScaleDesc& b) {
    Rat best(0);
    for (const Atom& atom : a.atoms) {
        best = max(best, distance_to(b, atom.lo));
        if (atom.is_point()) continue;
        best = max(best, distance_to(b, atom.hi));
        // Interior maxima sit at midpoints of the gaps of B.
        std::vector<Rat> marks;
        if (auto below = next_below(b, atom.lo)) marks.push_back(*below);
        for (const Atom& x : window(b, atom.lo, atom.hi).atoms) {
            marks.push_back(x.lo);
            marks.push_back(x.hi);
        }
        if (auto above = next_above(b, atom.hi)) marks.push_back(*above);
        for (std::size_t i = 1; i < marks.size(); ++i) {
            const Rat mid = (marks[i - 1] + marks[i]) / Rat(2);
            if (atom.lo <= mid && mid <= atom.hi) best = max(best, distance_to(b, mid));
        }
    }
    return best;
}

}  // namespace

Rat hausdorff_window(const TimeScaleDesc& a, const TimeScaleDesc& b, const ScanWindow& w) {
    const CanonicalWindow wa = window(a, w.lo, w.hi);
    const CanonicalWindow wb = window(b, w.lo, w.hi);
    if (wa.empty() || wb.empty()) throw Error(Errc::EmptyOperand, "both sets need points in the window");
    return max(directed_distance(wa, b), directed_distance(wb, a));
}

TranslationSetReport epsilon_translation_set_of_T(const TimeScaleDesc& t, const Rat& eps1, const ScanWindow& scan,
                                                  const Rat& tau_bound, std::int64_t denom_bound,
                                                  const Rat& inclusion_length) {
    if (eps1.sign() <= 0) throw Error(Errc::InvalidArgument, "eps1 must be positive");
    TranslationSetReport r;
    r.definition = PiDefinition::EpsilonDistance;
    r.scan = scan;
    r.tau_bound = tau_bound;
    r.denom_bound = denom_bound;
    r.interpretation = "under windowed-Hausdorff interpretation";
    r.candidates = tau_candidates(t, scan, tau_bound, denom_bound);
    for (const Rat& tau : r.candidates)
        if (hausdorff_window(t, translate(t, tau), scan) < eps1) r.members.push_back(tau);
    const DensityResult d = relative_density(r.members, inclusion_length, domain_of(tau_bound));
    r.max_gap = d.max_gap;
    if (d.dense) {
        r.certification = Certification::certified(domain_of(tau_bound),
                                                   "E{T, eps1} relatively dense with max gap " + d.max_gap->str() +
                                                       " (windowed-Hausdorff interpretation)");
    } else {
        r.certification = Certification::refuted_by(
            {"max gap exceeds inclusion length", {d.max_gap.value_or(tau_bound * Rat(2)), inclusion_length}},
            "windowed-Hausdorff interpretation");
        r.certification.window = domain_of(tau_bound);
    }
    return r;
}

std::optional<Rat> sup_mu(const TimeScaleDesc& t, const ScanWindow& scan) {
    const CanonicalWindow w = window(t, scan.lo, scan.hi);
    if (w.empty()) return std::nullopt;
    Rat best(0);
    for (std::size_t i = 0; i + 1 < w.atoms.size(); ++i) best = max(best, w.atoms[i + 1].lo - w.atoms[i].hi);
    best = max(best, mu(t, w.atoms.back().hi));
    return best;
}

ClassificationReport classify(const TimeScaleDesc& t, const ScanParams& params) {
    ClassificationReport r;
    r.scale = t.name();
    std::tie(r.inf, r.sup) = extremes(t);
    r.sup_mu = sup_mu(t, params.scan);

    r.pi_invariance = pi_invariance(t, params.scan, params.tau_bound, params.denom_bound);
    r.periodic = r.pi_invariance.certification;

    r.pi_intersection =
        pi_nonempty_intersection(t, params.scan, params.tau_bound, params.denom_bound, false, params.inclusion_length);
    r.ap_nonempty = r.pi_intersection.certification;

    r.ap_group = check_group_property(r.pi_intersection, params.tau_bound, &t);
    r.tilde = compute_T_tilde(t, r.pi_intersection, params.scan);

    if (!r.ap_group.holds()) {
        r.ap_tilde = r.ap_group;
        r.ap_tilde.note = "conditions (i)/(ii) fail";
        if (!r.ap_group.note.empty()) r.ap_tilde.note += "; " + r.ap_group.note;
    } else if (const auto s = periodic_structure(t); s && r.ap_group.level == CertLevel::StructurallyProved) {
        // Every T_τ is P-periodic, so one period decides the intersection.
        CanonicalWindow cell = s->cell;
        if (!s->full) {
            for (const Rat& d : difference_classes(*s)) cell = intersect(cell, window(translate(t, -d), Rat(0), s->period));
        }
        if (cell.empty()) {
            r.ap_tilde = Certification::refuted_by({"T tilde empty over one period", {s->period}});
        } else {
            r.ap_tilde = Certification::proved("T tilde is periodic and nonempty");
            r.ap_tilde.witnesses.push_back({"point of T tilde", {cell.atoms.front().lo}});
        }
    } else if (r.tilde.empty()) {
        r.ap_tilde = Certification::refuted_by({"T tilde empty on scan", {params.scan.lo, params.scan.hi}});
        r.ap_tilde.window = params.scan;
    } else {
        r.ap_tilde = Certification::certified(params.scan, "T tilde nonempty on scan");
        r.ap_tilde.witnesses.push_back({"point of T tilde", {r.tilde.atoms.front().lo}});
    }

    // Invariance implies the weaker notions; flag any report where it does not.
    if (r.periodic.level == CertLevel::StructurallyProved) {
        if (!r.ap_group.holds()) r.implication_violations.push_back("periodic proved but group condition fails");
        if (!r.ap_nonempty.holds()) r.implication_violations.push_back("periodic proved but nonempty-Pi density fails");
    }
    if (r.ap_group.level == CertLevel::StructurallyProved && !r.ap_nonempty.holds())
        r.implication_violations.push_back("group condition proved but nonempty-Pi density fails");
    r.implications_consistent = r.implication_violations.empty();
    return r;
}

nlohmann::ordered_json to_json(const Certification& c) {
    nlohmann::ordered_json j;
    j["level"] = cert_level_name(c.level);
    if (c.window) j["window"] = {c.window->lo.str(), c.window->hi.str()};
    if (!c.witnesses.empty()) {
        auto& ws = j["witnesses"] = nlohmann::ordered_json::array();
        for (const Witness& w : c.witnesses) {
            nlohmann::ordered_json wj;
            wj["label"] = w.label;
            auto& vals = wj["values"] = nlohmann::ordered_json::array();
            for (const Rat& v : w.values) vals.push_back(v.str());
            ws.push_back(wj);
        }
    }
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

nlohmann::ordered_json to_json(const TranslationSetReport& r, bool include_members) {
    nlohmann::ordered_json j;
    j["definition"] = pi_definition_tag(r.definition);
    j["scan"] = {r.scan.lo.str(), r.scan.hi.str()};
    j["tau_bound"] = r.tau_bound.str();
    j["denom_bound"] = r.denom_bound;
    j["two_sided"] = r.two_sided;
    j["candidates"] = r.candidates.size();
    j["member_count"] = r.members.size();
    if (include_members) {
        auto& m = j["members"] = nlohmann::ordered_json::array();
        for (const Rat& x : r.members) m.push_back(x.str());
    }
    if (r.structural) {
        j["structural"] = *r.structural;
        j["structural_agrees"] = r.structural_agrees;
    }
    j["max_gap"] = r.max_gap ? nlohmann::ordered_json(r.max_gap->str()) : nlohmann::ordered_json(nullptr);
    if (r.definition == PiDefinition::Invariance) j["form_discrepancies"] = r.form_discrepancies;
    if (!r.interpretation.empty()) j["interpretation"] = r.interpretation;
    j["certification"] = to_json(r.certification);
    return j;
}

nlohmann::ordered_json to_json(const CanonicalWindow& w) {
    nlohmann::ordered_json j;
    j["lo"] = w.lo.str();
    j["hi"] = w.hi.str();
    auto& atoms = j["atoms"] = nlohmann::ordered_json::array();
    for (const Atom& a : w.atoms) atoms.push_back(a.is_point() ? a.lo.str() : "[" + a.lo.str() + ", " + a.hi.str() + "]");
    return j;
}

nlohmann::ordered_json to_json(const ClassificationReport& r) {
    nlohmann::ordered_json j;
    j["scale"] = r.scale;
    j["extremes"] = {r.inf.str(), r.sup.str()};
    j["sup_mu"] = r.sup_mu ? nlohmann::ordered_json(r.sup_mu->str()) : nlohmann::ordered_json(nullptr);
    auto& v = j["verdicts"];
    v["periodic_invariance"] = to_json(r.periodic);
    v["ap_nonempty_intersection"] = to_json(r.ap_nonempty);
    v["ap_group"] = to_json(r.ap_group);
    v["ap_tilde"] = to_json(r.ap_tilde);
    j["pi_invariance"] = to_json(r.pi_invariance, false);
    j["pi_intersection"] = to_json(r.pi_intersection, false);
    j["tilde_point_count"] = r.tilde.atoms.size();
    j["implications_consistent"] = r.implications_consistent;
    if (!r.implication_violations.empty()) j["implication_violations"] = r.implication_violations;
    return j;
}

}  // namespace tsc
