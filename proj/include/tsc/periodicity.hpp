#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsc/scale.hpp"

namespace tsc {

struct ScanWindow {
    Rat lo{-100};
    Rat hi{100};
};

enum class CertLevel { StructurallyProved, WindowCertified, Refuted, Unknown };

std::string_view cert_level_name(CertLevel level) noexcept;

/// A concrete piece of evidence: what it shows and the exact values involved.
struct Witness {
    std::string label;
    std::vector<Rat> values;
};

/// How far a verdict is established. Windows can certify but never prove a
/// universally quantified statement; Refuted always carries a witness.
struct Certification {
    CertLevel level = CertLevel::Unknown;
    std::optional<ScanWindow> window;
    std::vector<Witness> witnesses;
    std::string note;

    bool holds() const noexcept { return level == CertLevel::StructurallyProved || level == CertLevel::WindowCertified; }
    bool refuted() const noexcept { return level == CertLevel::Refuted; }

    static Certification proved(std::string note = {});
    static Certification certified(ScanWindow w, std::string note = {});
    static Certification refuted_by(Witness w, std::string note = {});
};

enum class PiDefinition {
    Invariance,            // t ± τ ∈ T for all t / T ∩ T^{±τ} = T
    NonemptyIntersection,  // T ∩ (T - τ) ≠ ∅
    EpsilonDistance,       // d(T, T^τ) < ε₁ under the windowed Hausdorff distance
};

std::string_view pi_definition_tag(PiDefinition d) noexcept;

struct DensityResult {
    bool dense = false;
    std::optional<Rat> max_gap;  // nullopt when the set is empty on the domain
};

struct TranslationSetReport {
    PiDefinition definition = PiDefinition::Invariance;
    ScanWindow scan;
    Rat tau_bound{50};
    std::int64_t denom_bound = 16;
    bool two_sided = false;
    std::vector<Rat> candidates;  // every scanned τ, sorted
    std::vector<Rat> members;     // sorted, strictly increasing
    std::optional<std::string> structural;
    bool structural_agrees = true;
    std::optional<Rat> max_gap;
    Certification certification;
    // Pointwise form (t ± τ ∈ T) against set form (T ∩ T^{±τ} = T); Invariance only.
    std::size_t form_discrepancies = 0;
    std::string interpretation;
};

struct ScanParams {
    ScanWindow scan{};
    Rat tau_bound{50};
    std::int64_t denom_bound = 16;
    /// Largest gap accepted when deciding relative density on a finite domain.
    Rat inclusion_length{5};
};

struct ClassificationReport {
    std::string scale;
    ExtRat inf;
    ExtRat sup;
    std::optional<Rat> sup_mu;
    Certification periodic;     // invariance under translation
    Certification ap_nonempty;  // Π = {τ : T_τ ≠ ∅} relatively dense
    Certification ap_group;     // Π ≠ {0} and closed under ±
    Certification ap_tilde;     // additionally ⋂ T_τ ≠ ∅
    CanonicalWindow tilde;
    TranslationSetReport pi_invariance;
    TranslationSetReport pi_intersection;
    bool implications_consistent = true;
    std::vector<std::string> implication_violations;
};

/// Candidate shifts: every rational with |τ| <= bound and denominator <=
/// denom_bound, plus exact differences of atom endpoints seen on the scan.
std::vector<Rat> tau_candidates(const TimeScaleDesc& t, const ScanWindow& scan, const Rat& tau_bound,
                                std::int64_t denom_bound);

/// Throws Error(WindowTooSmall) when the window is not wider than 2|τ|.
Certification is_invariant_under(const TimeScaleDesc& t, const Rat& tau, const ScanWindow& scan);

TranslationSetReport pi_invariance(const TimeScaleDesc& t, const ScanWindow& scan, const Rat& tau_bound,
                                   std::int64_t denom_bound);

TranslationSetReport pi_nonempty_intersection(const TimeScaleDesc& t, const ScanWindow& scan, const Rat& tau_bound,
                                              std::int64_t denom_bound, bool two_sided = false,
                                              const Rat& inclusion_length = Rat(5));

/// Closure of the certified members under ±, restricted to sums within
/// `bound`. Sums that were not scanned are evaluated directly when `scale`
/// is given and skipped otherwise.
Certification check_group_property(const TranslationSetReport& report, const Rat& bound,
                                   const TimeScaleDesc* scale = nullptr);

/// ⋂ over the report members τ of T ∩ (T - τ), restricted to the scan.
CanonicalWindow compute_T_tilde(const TimeScaleDesc& t, const TranslationSetReport& report, const ScanWindow& scan);

/// Every closed length-L subinterval of the domain meets S. The reported
/// max gap counts the domain edges, so it is the least admissible L.
DensityResult relative_density(const std::vector<Rat>& sorted, const Rat& inclusion_length, const ScanWindow& domain);

/// max(sup_{a ∈ A∩w} dist(a, B), sup_{b ∈ B∩w} dist(b, A)), exact.
/// Distances are measured to the whole other set, so the window edge
/// does not create spurious far points. Throws Error(EmptyOperand).
Rat hausdorff_window(const TimeScaleDesc& a, const TimeScaleDesc& b, const ScanWindow& w);

TranslationSetReport epsilon_translation_set_of_T(const TimeScaleDesc& t, const Rat& eps1, const ScanWindow& scan,
                                                  const Rat& tau_bound, std::int64_t denom_bound,
                                                  const Rat& inclusion_length = Rat(5));

/// Largest graininess over the atoms of T ∩ scan (exact).
std::optional<Rat> sup_mu(const TimeScaleDesc& t, const ScanWindow& scan);

ClassificationReport classify(const TimeScaleDesc& t, const ScanParams& params = {});

nlohmann::ordered_json to_json(const Certification& c);
nlohmann::ordered_json to_json(const TranslationSetReport& r, bool include_members = true);
nlohmann::ordered_json to_json(const CanonicalWindow& w);
nlohmann::ordered_json to_json(const ClassificationReport& r);

}  // namespace tsc
