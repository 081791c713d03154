#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tsc/expr.hpp"
#include "tsc/scale.hpp"

namespace tsc {

struct FunctionDecl {
    std::string name;
    ExprPtr body;
};

/// Parsed `.tsc` script: named scale and function declarations in source order.
struct ScaleScript {
    std::vector<TimeScaleDesc> scales;
    std::vector<FunctionDecl> functions;

    const TimeScaleDesc* find_scale(std::string_view name) const;
    const FunctionDecl* find_function(std::string_view name) const;
};

/// Names of grammar productions used while parsing; see parse().
using GrammarCoverage = std::set<std::string>;

/// Every production name parse() can record.
const GrammarCoverage& grammar_productions();

/// Parses the description language:
///
///   script   := { scale_decl | fn_decl }
///   scale    := "scale" NAME "=" comp { "|" comp }
///   comp     := interval(r, r) | points(r, ...) | latticeZ(r, r)
///             | latticeRight(r, r) | latticeLeft(r, r)
///             | pattern(r ; atom, ...) | NAME
///   atom     := r | interval(r, r)
///   fn       := "fn" NAME "(" "t" ")" "=" expr
///   r        := [-] NUMBER [ "/" NUMBER ]      NUMBER may be a finite decimal
///
/// `#` starts a comment to end of line. Throws SyntaxError with a 1-based
/// position for syntax errors, invalid components, duplicate or unknown names.
ScaleScript parse(std::string_view text, GrammarCoverage* coverage = nullptr);

std::string serialize(const TimeScaleDesc& t);
std::string serialize(const ScaleScript& s);

/// Line-oriented text rendering of a structured report.
std::string render_text(const nlohmann::ordered_json& report);

}  // namespace tsc
