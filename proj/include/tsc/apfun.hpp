#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsc/delta.hpp"
#include "tsc/periodicity.hpp"

namespace tsc {

struct EpsTranslationQuery {
    GridFunction f;
    Rat eps;
    ScanWindow scan;
    std::vector<Rat> candidates;  // members of a translation-set report for f.scale
    Rat grid_step{1, 128};        // probe spacing on dense atoms
    Rat inclusion_length{5};
};

enum class DensityLabel { Dense, NotDense, FalseByDisjointness, Empty };

std::string_view density_label_name(DensityLabel l) noexcept;

struct DensityVerdict {
    DensityLabel label = DensityLabel::Empty;
    std::optional<Rat> max_gap;

    bool dense() const noexcept { return label == DensityLabel::Dense; }
};

struct TauDiscrepancy {
    Rat tau;
    Value sup;  // sup |f(t + τ) - f(t)| over the probes
    std::size_t probes = 0;
};

struct EpsTranslationReport {
    Rat eps;
    std::vector<Rat> candidates;
    std::vector<Rat> accepted;
    std::vector<TauDiscrepancy> discrepancies;  // one per candidate, sorted by τ
    bool grid_approximate = false;              // dense atoms probed on a grid
    DensityVerdict in_scale;
    DensityVerdict in_pi;
    DensityVerdict in_reals;
};

/// Throws CandidateNotInvariant if a candidate is refuted by
/// is_invariant_under, EmptyScan if T has no points on the scan.
EpsTranslationReport eps_translation_set(const EpsTranslationQuery& q);

struct DensityComparison {
    bool zero_in_scale = false;
    bool disjoint = false;  // accepted ∩ T = ∅
    DensityVerdict in_scale;
    DensityVerdict in_pi;
    DensityVerdict in_reals;
    std::vector<std::string> lines;
};

/// The three density readings of one accepted list side by side.
DensityComparison density_in_T_vs_Pi_vs_R(const EpsTranslationReport& report, const TimeScaleDesc& t,
                                          const TranslationSetReport& pi, const Rat& inclusion_length = Rat(5));

struct DichotomyVerdict {
    bool zero_in_scale = false;
    std::size_t members_checked = 0;
    std::size_t members_in_scale = 0;
    Certification certification;
};

/// 0 ∈ T ⇒ every member in T; 0 ∉ T ⇒ no member in T. Checked over the
/// members lying in the scan window.
DichotomyVerdict lemma_mo1_check(const TimeScaleDesc& t, const TranslationSetReport& pi, const ScanWindow& scan);

nlohmann::ordered_json to_json(const DensityVerdict& v);
nlohmann::ordered_json to_json(const EpsTranslationReport& r);
nlohmann::ordered_json to_json(const DensityComparison& c);
nlohmann::ordered_json to_json(const DichotomyVerdict& v);

}  // namespace tsc
