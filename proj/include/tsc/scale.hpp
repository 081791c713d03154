#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tsc/rational.hpp"

namespace tsc {

/// A closed atom [lo, hi]; a point when lo == hi.
struct Atom {
    Rat lo;
    Rat hi;

    static Atom point(Rat p) { return {p, p}; }
    static Atom interval(Rat a, Rat b) { return {a, b}; }

    bool is_point() const noexcept { return lo == hi; }
    bool contains(const Rat& x) const noexcept { return lo <= x && x <= hi; }
    friend bool operator==(const Atom&, const Atom&) = default;
};

struct ClosedInterval {
    Rat a;
    Rat b;
};

struct PointSet {
    std::vector<Rat> points;  // sorted, unique
};

/// {offset + k*step : k in Z}
struct LatticeZ {
    Rat offset;
    Rat step;
};

/// {start + k*step : k = 0, 1, 2, ...}
struct LatticeRight {
    Rat start;
    Rat step;
};

/// {start - k*step : k = 0, 1, 2, ...}
struct LatticeLeft {
    Rat start;
    Rat step;
};

/// {x + k*period : x in cell, k in Z}. Cell atoms are disjoint, sorted and
/// lie in [0, period]; only an interval may touch `period` itself.
struct PeriodicPattern {
    Rat period;
    std::vector<Atom> cell;
};

using Component = std::variant<ClosedInterval, PointSet, LatticeZ, LatticeRight, LatticeLeft, PeriodicPattern>;

// Validating constructors. Throw Error(InvalidInterval / InvalidArgument).
Component make_interval(Rat a, Rat b);
Component make_points(std::vector<Rat> points);
Component make_lattice_z(Rat offset, Rat step);
Component make_lattice_right(Rat start, Rat step);
Component make_lattice_left(Rat start, Rat step);
Component make_pattern(Rat period, std::vector<Atom> cell);

/// Finite symbolic description of a closed subset of the real line as a
/// union of components.
class TimeScaleDesc {
public:
    TimeScaleDesc(std::string name, std::vector<Component> components);

    const std::string& name() const noexcept { return name_; }
    const std::vector<Component>& components() const noexcept { return components_; }

private:
    std::string name_;
    std::vector<Component> components_;
};

/// Exact normal form of T ∩ [lo, hi]: disjoint atoms in increasing order.
struct CanonicalWindow {
    Rat lo;
    Rat hi;
    std::vector<Atom> atoms;

    bool empty() const noexcept { return atoms.empty(); }
    bool contains(const Rat& x) const;
    /// Atoms with an interval part (lo < hi).
    bool has_interval() const;
    /// Number of point atoms.
    std::size_t point_count() const;

    friend bool operator==(const CanonicalWindow& a, const CanonicalWindow& b) {
        return a.lo == b.lo && a.hi == b.hi && a.atoms == b.atoms;
    }
};

/// Sort and merge overlapping or touching atoms.
std::vector<Atom> canonicalize(std::vector<Atom> atoms);

struct PointClass {
    bool left_dense = false;
    bool left_scattered = false;
    bool right_dense = false;
    bool right_scattered = false;
    bool at_inf = false;
    bool at_sup = false;

    bool isolated() const noexcept { return left_scattered && right_scattered; }
    bool dense() const noexcept { return left_dense && right_dense; }
    std::string kind() const;
};

bool contains(const TimeScaleDesc& t, const Rat& x);

/// inf{s in T : s > x} for any real x; returns x itself when T accumulates
/// at x from the right, nullopt when nothing of T lies above x.
std::optional<Rat> next_above(const TimeScaleDesc& t, const Rat& x);
/// sup{s in T : s < x}; mirror of next_above.
std::optional<Rat> next_below(const TimeScaleDesc& t, const Rat& x);

/// Forward jump; σ(max T) = max T. Throws NotInScale.
Rat sigma(const TimeScaleDesc& t, const Rat& x);
/// Backward jump; ρ(min T) = min T. Throws NotInScale.
Rat rho(const TimeScaleDesc& t, const Rat& x);
/// Graininess σ(x) - x. Throws NotInScale.
Rat mu(const TimeScaleDesc& t, const Rat& x);
PointClass classify_point(const TimeScaleDesc& t, const Rat& x);

/// Description of {x + tau : x in T}.
TimeScaleDesc translate(const TimeScaleDesc& t, const Rat& tau);
/// Description of {-x : x in T}.
TimeScaleDesc reflect(const TimeScaleDesc& t);
/// Description of A ∪ B.
TimeScaleDesc unite(const TimeScaleDesc& a, const TimeScaleDesc& b, std::string name = {});

CanonicalWindow window(const TimeScaleDesc& t, const Rat& lo, const Rat& hi);
CanonicalWindow intersect(const CanonicalWindow& a, const CanonicalWindow& b);
CanonicalWindow intersect_window(const TimeScaleDesc& a, const TimeScaleDesc& b, const Rat& lo, const Rat& hi);

std::pair<ExtRat, ExtRat> extremes(const TimeScaleDesc& t);

/// Common period when every component is a LatticeZ or PeriodicPattern.
std::optional<Rat> structural_period(const TimeScaleDesc& t);

/// The lowest-found point of `a` not covered by `b`, or nullopt if a ⊆ b.
/// Windows must share bounds semantics; only atoms are compared.
std::optional<Rat> first_uncovered(const CanonicalWindow& a, const CanonicalWindow& b);

/// Distance from x to the nearest point of T (T is closed and nonempty).
Rat distance_to(const TimeScaleDesc& t, const Rat& x);

}  // namespace tsc
