#include "tsc/apfun.hpp"

#include <algorithm>

#include "tsc/error.hpp"

namespace tsc {

std::string_view density_label_name(DensityLabel l) noexcept {
    switch (l) {
        case DensityLabel::Dense: return "dense";
        case DensityLabel::NotDense: return "not-dense";
        case DensityLabel::FalseByDisjointness: return "false-by-disjointness";
        case DensityLabel::Empty: return "empty";
    }
    return "empty";
}

namespace {

bool below_eps(const Value& v, const Rat& eps) {
    if (v.exact) return *v.exact < eps;
    return v.approx < eps.to_double();
}

ScanWindow hull(const std::vector<Rat>& sorted) {
    if (sorted.empty()) return {Rat(0), Rat(0)};
    return {sorted.front(), sorted.back()};
}

DensityVerdict from_gap(const DensityResult& d) {
    if (!d.max_gap) return {DensityLabel::Empty, std::nullopt};
    return {d.dense ? DensityLabel::Dense : DensityLabel::NotDense, d.max_gap};
}

// Largest wait from an ambient point to the next accepted point; the
// domain's right edge closes the last wait.
DensityVerdict relative_to(const std::vector<Rat>& accepted, const std::vector<Rat>& ambient, const Rat& length,
                           const ScanWindow& domain) {
    if (accepted.empty()) return {DensityLabel::Empty, std::nullopt};
    Rat worst(0);
    for (const Rat& a : ambient) {
        if (a < domain.lo || a > domain.hi) continue;
        auto it = std::lower_bound(accepted.begin(), accepted.end(), a);
        worst = max(worst, it == accepted.end() ? domain.hi - a : *it - a);
    }
    return {worst <= length ? DensityLabel::Dense : DensityLabel::NotDense, worst};
}

struct Verdicts {
    DensityVerdict in_scale, in_pi, in_reals;
    bool zero_in_scale = false;
    bool disjoint = false;
};

Verdicts density_verdicts(const std::vector<Rat>& accepted, const std::vector<Rat>& candidates,
                          const TimeScaleDesc& t, const Rat& length) {
    Verdicts v;
    const ScanWindow domain = hull(candidates);
    v.in_reals = from_gap(relative_density(accepted, length, domain));
    v.in_pi = relative_to(accepted, candidates, length, domain);

    std::vector<Rat> in_t;
    for (const Rat& x : accepted)
        if (contains(t, x)) in_t.push_back(x);
    v.zero_in_scale = contains(t, Rat(0));
    v.disjoint = in_t.empty();
    if (v.disjoint && !v.zero_in_scale && !accepted.empty())
        v.in_scale = {DensityLabel::FalseByDisjointness, std::nullopt};
    else
        v.in_scale = from_gap(relative_density(in_t, length, domain));
    return v;
}

std::vector<Rat> probes_for(const CanonicalWindow& w, const Rat& step) {
    std::vector<Rat> out;
    for (const Atom& a : w.atoms) {
        if (a.is_point()) {
            out.push_back(a.lo);
            continue;
        }
        for (Rat x = a.lo; x < a.hi; x += step) out.push_back(x);
        out.push_back(a.hi);
    }
    return out;
}

}  // namespace

EpsTranslationReport eps_translation_set(const EpsTranslationQuery& q) {
    if (q.eps.sign() <= 0) throw Error(Errc::InvalidArgument, "eps must be positive");
    if (q.grid_step.sign() <= 0) throw Error(Errc::InvalidArgument, "grid step must be positive");
    const TimeScaleDesc& T = q.f.scale;
    if (window(T, q.scan.lo, q.scan.hi).empty()) throw Error(Errc::EmptyScan, "no points of T on the scan window");

    EpsTranslationReport r;
    r.eps = q.eps;
    r.candidates = q.candidates;
    std::sort(r.candidates.begin(), r.candidates.end());
    r.candidates.erase(std::unique(r.candidates.begin(), r.candidates.end()), r.candidates.end());

    for (const Rat& tau : r.candidates) {
        const Certification c = is_invariant_under(T, tau, q.scan);
        if (c.refuted())
            throw Error(Errc::CandidateNotInvariant, "candidate " + tau.str() + " is not a translation of " + T.name());

        const Rat shift = abs(tau);
        const CanonicalWindow w = window(T, q.scan.lo + shift, q.scan.hi - shift);
        if (w.has_interval()) r.grid_approximate = true;
        TauDiscrepancy d{tau, Value::of(Rat(0)), 0};
        for (const Rat& x : probes_for(w, q.grid_step)) {
            if (!contains(T, x + tau)) continue;
            const Value diff = abs(q.f.at(x + tau) - q.f.at(x));
            const bool larger = (diff.exact && d.sup.exact) ? *diff.exact > *d.sup.exact : diff.approx > d.sup.approx;
            if (larger) d.sup = diff;
            ++d.probes;
        }
        if (below_eps(d.sup, q.eps)) r.accepted.push_back(tau);
        r.discrepancies.push_back(d);
    }

    const Verdicts v = density_verdicts(r.accepted, r.candidates, T, q.inclusion_length);
    r.in_scale = v.in_scale;
    r.in_pi = v.in_pi;
    r.in_reals = v.in_reals;
    return r;
}

DensityComparison density_in_T_vs_Pi_vs_R(const EpsTranslationReport& report, const TimeScaleDesc& t,
                                          const TranslationSetReport& pi, const Rat& inclusion_length) {
    std::vector<Rat> ambient = pi.members.empty() ? report.candidates : pi.members;
    const Verdicts v = density_verdicts(report.accepted, ambient, t, inclusion_length);
    DensityComparison c;
    c.zero_in_scale = v.zero_in_scale;
    c.disjoint = v.disjoint;
    c.in_scale = v.in_scale;
    c.in_pi = v.in_pi;
    c.in_reals = v.in_reals;
    auto line = [&](const char* what, const DensityVerdict& d) {
        std::string s = std::string(what) + ": " + std::string(density_label_name(d.label));
        if (d.max_gap) s += " (max gap " + d.max_gap->str() + ")";
        c.lines.push_back(s);
    };
    line("in T", c.in_scale);
    line("in Pi", c.in_pi);
    line("in R", c.in_reals);
    if (c.in_scale.label == DensityLabel::FalseByDisjointness)
        c.lines.push_back("0 is not in T, so T and Pi are disjoint and no subset of Pi is dense in T");
    return c;
}

DichotomyVerdict lemma_mo1_check(const TimeScaleDesc& t, const TranslationSetReport& pi, const ScanWindow& scan) {
    DichotomyVerdict v;
    v.zero_in_scale = contains(t, Rat(0));
    std::optional<Rat> offender;
    for (const Rat& tau : pi.members) {
        if (tau < scan.lo || tau > scan.hi) continue;
        ++v.members_checked;
        const bool in = contains(t, tau);
        if (in) ++v.members_in_scale;
        if (in != v.zero_in_scale && !offender) offender = tau;
    }
    if (offender) {
        v.certification = Certification::refuted_by(
            {v.zero_in_scale ? "member of Pi outside T although 0 in T" : "member of Pi inside T although 0 not in T",
             {*offender}});
    } else if (v.members_checked == 0) {
        v.certification.level = CertLevel::Unknown;
        v.certification.note = "no members on the scan window";
    } else {
        v.certification = Certification::certified(
            scan, v.zero_in_scale ? "0 in T and every member lies in T" : "0 not in T and no member lies in T");
        v.certification.witnesses.push_back({"members checked", {Rat(static_cast<std::int64_t>(v.members_checked))}});
    }
    return v;
}

nlohmann::ordered_json to_json(const DensityVerdict& v) {
    nlohmann::ordered_json j;
    j["verdict"] = density_label_name(v.label);
    j["max_gap"] = v.max_gap ? nlohmann::ordered_json(v.max_gap->str()) : nlohmann::ordered_json(nullptr);
    return j;
}

nlohmann::ordered_json to_json(const EpsTranslationReport& r) {
    nlohmann::ordered_json j;
    j["eps"] = r.eps.str();
    j["candidates"] = r.candidates.size();
    auto& acc = j["accepted"] = nlohmann::ordered_json::array();
    for (const Rat& x : r.accepted) acc.push_back(x.str());
    j["grid_approximate"] = r.grid_approximate;
    j["dense_in_T"] = to_json(r.in_scale);
    j["dense_in_Pi"] = to_json(r.in_pi);
    j["dense_in_R"] = to_json(r.in_reals);
    return j;
}

nlohmann::ordered_json to_json(const DensityComparison& c) {
    nlohmann::ordered_json j;
    j["zero_in_T"] = c.zero_in_scale;
    j["accepted_disjoint_from_T"] = c.disjoint;
    j["dense_in_T"] = to_json(c.in_scale);
    j["dense_in_Pi"] = to_json(c.in_pi);
    j["dense_in_R"] = to_json(c.in_reals);
    return j;
}

nlohmann::ordered_json to_json(const DichotomyVerdict& v) {
    nlohmann::ordered_json j;
    j["zero_in_T"] = v.zero_in_scale;
    j["members_checked"] = v.members_checked;
    j["members_in_T"] = v.members_in_scale;
    j["certification"] = to_json(v.certification);
    return j;
}

}  // namespace tsc
