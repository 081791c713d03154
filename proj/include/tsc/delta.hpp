#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tsc/expr.hpp"
#include "tsc/scale.hpp"

namespace tsc {

using SampleTable = std::vector<std::pair<Rat, Value>>;

/// A function on a time scale, given by an expression or by samples.
struct GridFunction {
    TimeScaleDesc scale;
    std::variant<ExprPtr, SampleTable> body;

    GridFunction(TimeScaleDesc t, ExprPtr e);
    /// Sorts the table; every sample must lie in the scale.
    GridFunction(TimeScaleDesc t, SampleTable samples);

    bool is_table() const noexcept { return body.index() == 1; }
    /// Throws NotInScale, or NotDifferentiableData for a missing sample.
    Value at(const Rat& t) const;
};

struct QuadratureConfig {
    int panels = 64;          // initial composite Simpson panels per interval, even; doubled until within tolerance
    Rat step{1, 10000};       // derivative step h
    double tolerance = 1e-9;

    void validate() const;
};

enum class EndpointRule { AsGiven, BackwardJump, ForwardJump };

std::string_view endpoint_rule_name(EndpointRule r) noexcept;

struct DeltaResult {
    Value value;
    /// True when a dense part was handled numerically.
    bool numeric = false;
    Rat endpoint;  // upper limit actually used
    EndpointRule rule = EndpointRule::AsGiven;
    std::string note;

    double approx() const noexcept { return value.approx; }
    bool exact() const noexcept { return value.exact.has_value() && !numeric; }
};

DeltaResult delta_derivative(const GridFunction& f, const Rat& t, const QuadratureConfig& cfg = {});

/// ∫_a^t f Δs. An upper limit outside T is moved to its backward jump point
/// when that is ≥ a, else to its forward jump point when that is ≤ a; any
/// other case throws EndpointUnresolvable.
DeltaResult delta_integral(const GridFunction& f, const Rat& a, const Rat& t, const QuadratureConfig& cfg = {});

/// ∫_t^{t+l} f Δs with t + l replaced by its backward jump point when t + l ∉ T.
DeltaResult delta_integral_shifted(const GridFunction& f, const Rat& t, const Rat& l, const QuadratureConfig& cfg = {});

}  // namespace tsc
