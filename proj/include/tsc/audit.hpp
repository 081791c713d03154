#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsc/periodicity.hpp"

namespace tsc {

enum class AuditStatus { Confirmed, Refuted, NotDecidableAtScale };

std::string_view audit_status_name(AuditStatus s) noexcept;

struct ConditionResult {
    std::string id;  // "a" .. "e"
    bool holds = true;
    bool vacuous = false;
    std::vector<Witness> witnesses;
    std::string note;
};

struct AuditVerdict {
    std::string claim;
    AuditStatus status = AuditStatus::NotDecidableAtScale;
    std::vector<Witness> witnesses;
    std::vector<std::string> narrative;
    std::vector<ConditionResult> conditions;  // decomposition checks only
    std::optional<std::uint64_t> seed;
};

/// Truncated index sequences of the sub-scale {-2k_n} ∪ {2l_m + 1}.
struct SubScaleSpec {
    std::vector<std::int64_t> left;   // k_1 < k_2 < ... , all positive
    std::vector<std::int64_t> right;  // l_1 < l_2 < ... , all positive

    void validate() const;
    static SubScaleSpec canonical(std::size_t n, std::size_t m);
};

/// {-2k : k >= 1} ∪ {2l + 1 : l >= 1}.
TimeScaleDesc example31_scale();
TimeScaleDesc subscale(const SubScaleSpec& spec);

/// Strictly increasing positive sequences from a fixed-seed generator;
/// identical on every platform for the same seed.
std::vector<SubScaleSpec> random_subscale_specs(std::uint64_t seed, std::size_t count, std::size_t n, std::size_t m);

/// Throws WindowTooSmall when a needed witness lies outside the scan.
AuditVerdict verify_example31(const SubScaleSpec& spec, std::int64_t tau_bound, const ScanWindow& scan);

/// `configs` empty means the canonical spec plus 20 random specs drawn with `seed`.
AuditVerdict refute_theorem_wa1(std::vector<SubScaleSpec> configs, std::int64_t tau_bound, const ScanWindow& scan,
                                std::uint64_t seed = 7);

struct DecompositionProposal {
    std::vector<TimeScaleDesc> parts;
    std::vector<std::vector<Rat>> periods;  // one list per part
    std::optional<TimeScaleDesc> remainder;
    bool remainder_periods_zero = false;    // R_0 = {0} rather than ∅
};

AuditVerdict check_decomposition(const TimeScaleDesc& t, const DecompositionProposal& p, const ScanWindow& scan);

/// Confirmed when some point of the scan lies in two distinct parts.
AuditVerdict index_ambiguity(const DecompositionProposal& p, const ScanWindow& scan);

/// Throws InvalidBand unless 0 < eps_star < eps1 < 1.
AuditVerdict def62_emptiness_demo(const Rat& eps_star, const Rat& eps1, const ScanWindow& scan);

AuditVerdict def55_support_check(const TimeScaleDesc& t, const Rat& eps1, const ScanWindow& scan, const Rat& tau_bound,
                                 std::int64_t denom_bound, const Rat& inclusion_length = Rat(5));

/// Membership dichotomy on a named scale, as an audit verdict.
AuditVerdict dichotomy_audit(const TimeScaleDesc& t, const ScanWindow& scan, const Rat& tau_bound,
                             std::int64_t denom_bound);

struct BatteryEntry {
    AuditVerdict verdict;
    AuditStatus expected;
    bool met() const noexcept { return verdict.status == expected; }
};

struct BatteryConfig {
    std::uint64_t seed = 7;
    std::int64_t tau_bound = 50;
    std::int64_t denom_bound = 16;
    ScanWindow scan{};
    Rat eps_star{1, 5};
    Rat eps1{9, 10};
};

/// Claim ids accepted by run_claim.
const std::vector<std::string>& battery_claims();
std::vector<BatteryEntry> run_claim(const std::string& claim, const BatteryConfig& cfg);
std::vector<BatteryEntry> run_battery(const BatteryConfig& cfg);

nlohmann::ordered_json to_json(const AuditVerdict& v);
nlohmann::ordered_json to_json(const std::vector<BatteryEntry>& entries, const BatteryConfig& cfg);

}  // namespace tsc
