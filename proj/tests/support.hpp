#pragma once

// Shared fixtures for the unit and acceptance tests: named scales, simple
// seeded generators, and membership oracles written from the set
// definitions directly (no library calls).

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tsc/dsl.hpp"
#include "tsc/scale.hpp"

namespace tsc::testing {

inline TimeScaleDesc scale_of(const std::string& src) { return parse(src).scales.back(); }

inline TimeScaleDesc Z() { return scale_of("scale Z = latticeZ(0, 1)"); }
inline TimeScaleDesc HalfZ() { return scale_of("scale HalfZ = latticeZ(0, 1/2)"); }
inline TimeScaleDesc R() { return scale_of("scale R = pattern(1; interval(0, 1))"); }
inline TimeScaleDesc ZHalf() { return scale_of("scale ZHalf = latticeZ(0, 1) | points(1/2)"); }
inline TimeScaleDesc ZplusHalf() { return scale_of("scale ZplusHalf = latticeZ(1/2, 1)"); }
inline TimeScaleDesc Ex31() { return scale_of("scale Ex31 = latticeLeft(-2, 2) | latticeRight(3, 2)"); }
inline TimeScaleDesc Unit() { return scale_of("scale Unit = interval(0, 1)"); }

using Member = std::function<bool(const Rat&)>;

inline bool is_int(const Rat& x) { return x.den() == 1; }

inline Member member_Z() { return [](const Rat& x) { return is_int(x); }; }
inline Member member_HalfZ() { return [](const Rat& x) { return is_int(x * Rat(2)); }; }
inline Member member_ZHalf() { return [](const Rat& x) { return is_int(x) || x == Rat(1, 2); }; }
inline Member member_ZplusHalf() { return [](const Rat& x) { return is_int(x - Rat(1, 2)); }; }
inline Member member_R() { return [](const Rat&) { return true; }; }
inline Member member_Ex31() {
    return [](const Rat& x) {
        if (!is_int(x)) return false;
        const std::int64_t v = x.num();
        return (v % 2 == 0 && v <= -2) || (v % 2 != 0 && v >= 3);
    };
}

/// Every rational in [lo, hi] with denominator dividing `den`.
inline std::vector<Rat> grid(const Rat& lo, const Rat& hi, std::int64_t den) {
    std::vector<Rat> out;
    for (std::int64_t k = (lo * Rat(den)).ceil(); Rat(k, den) <= hi; ++k) out.emplace_back(k, den);
    return out;
}

/// Deterministic small-integer generator; the standard distributions are
/// not specified bit-for-bit, so tests draw from the raw engine.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rat rat(std::int64_t lo, std::int64_t hi, std::int64_t max_den) {
        const std::int64_t d = range(1, max_den);
        return Rat(range(lo * d, hi * d), d);
    }
    bool coin() { return eng_() % 2 == 0; }

private:
    std::mt19937_64 eng_;
};

/// A random description mixing every component kind.
inline TimeScaleDesc random_scale(Gen& g, const std::string& name = "G") {
    std::vector<Component> comps;
    const int n = static_cast<int>(g.range(1, 3));
    for (int i = 0; i < n; ++i) {
        switch (g.range(0, 5)) {
            case 0: {
                const Rat a = g.rat(-6, 6, 4);
                comps.push_back(make_interval(a, a + g.rat(0, 3, 4)));
                break;
            }
            case 1: {
                std::vector<Rat> pts;
                for (int k = 0, m = static_cast<int>(g.range(1, 5)); k < m; ++k) pts.push_back(g.rat(-8, 8, 4));
                comps.push_back(make_points(pts));
                break;
            }
            case 2: comps.push_back(make_lattice_z(g.rat(-2, 2, 4), Rat(g.range(1, 8), g.range(1, 4)))); break;
            case 3: comps.push_back(make_lattice_right(g.rat(-5, 5, 4), Rat(g.range(1, 8), g.range(1, 4)))); break;
            case 4: comps.push_back(make_lattice_left(g.rat(-5, 5, 4), Rat(g.range(1, 8), g.range(1, 4)))); break;
            default: {
                const Rat p(g.range(1, 4));
                std::vector<Atom> cell;
                if (g.coin()) cell.push_back(Atom::point(Rat(0)));
                const Rat a = Rat(1, 4) + g.rat(0, 1, 4) * (p - Rat(1, 2)) / Rat(2);
                cell.push_back(g.coin() ? Atom::point(a) : Atom::interval(a, a + Rat(1, 8)));
                comps.push_back(make_pattern(p, cell));
            }
        }
    }
    return TimeScaleDesc(name, comps);
}

}  // namespace tsc::testing
