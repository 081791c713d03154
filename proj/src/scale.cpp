#include "tsc/scale.hpp"

#include <algorithm>

#include "tsc/error.hpp"

namespace tsc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(const Rat& r, const char* what) {
    if (r.sign() <= 0) throw Error(Errc::InvalidArgument, std::string(what) + " must be positive, got " + r.str());
}

// Reduce arbitrary atoms modulo the period onto [0, period].
std::vector<Atom> normalize_cell(const Rat& period, const std::vector<Atom>& atoms) {
    std::vector<Atom> out;
    for (const Atom& a : atoms) {
        if (a.hi - a.lo >= period) return {Atom::interval(Rat(0), period)};
        const Rat shift = period * Rat((a.lo / period).floor());
        const Rat lo = a.lo - shift;
        const Rat hi = a.hi - shift;
        if (hi <= period) {
            out.push_back({lo, hi});
        } else {
            out.push_back({lo, period});
            out.push_back({Rat(0), hi - period});
        }
    }
    // A lone point at `period` is the point 0 of the next cell.
    for (Atom& a : out)
        if (a.is_point() && a.lo == period) a = Atom::point(Rat(0));
    return canonicalize(std::move(out));
}

bool interval_contains(const Rat& a, const Rat& b, const Rat& x) { return a <= x && x <= b; }

std::optional<Rat> interval_next_above(const Rat& a, const Rat& b, const Rat& x) {
    if (x < a) return a;
    if (x < b) return x;
    return std::nullopt;
}

bool component_contains(const Component& c, const Rat& x) {
    return std::visit(
        overloaded{
            [&](const ClosedInterval& i) { return interval_contains(i.a, i.b, x); },
            [&](const PointSet& p) { return std::binary_search(p.points.begin(), p.points.end(), x); },
            [&](const LatticeZ& l) { return ((x - l.offset) / l.step).is_integer(); },
            [&](const LatticeRight& l) {
                const Rat k = (x - l.start) / l.step;
                return k.is_integer() && k.sign() >= 0;
            },
            [&](const LatticeLeft& l) {
                const Rat k = (l.start - x) / l.step;
                return k.is_integer() && k.sign() >= 0;
            },
            [&](const PeriodicPattern& p) {
                const Rat r = mod(x, p.period);
                for (const Atom& a : p.cell) {
                    if (a.contains(r)) return true;
                    if (r.sign() == 0 && a.hi == p.period) return true;
                }
                return false;
            },
        },
        c);
}

std::optional<Rat> component_next_above(const Component& c, const Rat& x) {
    return std::visit(
        overloaded{
            [&](const ClosedInterval& i) { return interval_next_above(i.a, i.b, x); },
            [&](const PointSet& p) -> std::optional<Rat> {
                auto it = std::upper_bound(p.points.begin(), p.points.end(), x);
                if (it == p.points.end()) return std::nullopt;
                return *it;
            },
            [&](const LatticeZ& l) -> std::optional<Rat> {
                const std::int64_t k = ((x - l.offset) / l.step).floor() + 1;
                return l.offset + l.step * Rat(k);
            },
            [&](const LatticeRight& l) -> std::optional<Rat> {
                if (x < l.start) return l.start;
                const std::int64_t k = ((x - l.start) / l.step).floor() + 1;
                return l.start + l.step * Rat(k);
            },
            [&](const LatticeLeft& l) -> std::optional<Rat> {
                if (x >= l.start) return std::nullopt;
                const std::int64_t k = ((l.start - x) / l.step).ceil() - 1;
                return l.start - l.step * Rat(k);
            },
            [&](const PeriodicPattern& p) -> std::optional<Rat> {
                const Rat base = p.period * Rat((x / p.period).floor());
                std::optional<Rat> best;
                for (int m = 0; m <= 1; ++m) {
                    const Rat off = base + p.period * Rat(m);
                    for (const Atom& a : p.cell) {
                        auto n = interval_next_above(a.lo + off, a.hi + off, x);
                        if (n && (!best || *n < *best)) best = n;
                    }
                }
                return best;
            },
        },
        c);
}

Component reflect_component(const Component& c) {
    return std::visit(
        overloaded{
            [](const ClosedInterval& i) -> Component { return ClosedInterval{-i.b, -i.a}; },
            [](const PointSet& p) -> Component {
                PointSet out;
                out.points.reserve(p.points.size());
                for (auto it = p.points.rbegin(); it != p.points.rend(); ++it) out.points.push_back(-*it);
                return out;
            },
            [](const LatticeZ& l) -> Component { return LatticeZ{mod(-l.offset, l.step), l.step}; },
            [](const LatticeRight& l) -> Component { return LatticeLeft{-l.start, l.step}; },
            [](const LatticeLeft& l) -> Component { return LatticeRight{-l.start, l.step}; },
            [](const PeriodicPattern& p) -> Component {
                std::vector<Atom> atoms;
                for (const Atom& a : p.cell) atoms.push_back({-a.hi, -a.lo});
                return PeriodicPattern{p.period, normalize_cell(p.period, atoms)};
            },
        },
        c);
}

Component translate_component(const Component& c, const Rat& tau) {
    return std::visit(
        overloaded{
            [&](const ClosedInterval& i) -> Component { return ClosedInterval{i.a + tau, i.b + tau}; },
            [&](const PointSet& p) -> Component {
                PointSet out;
                out.points.reserve(p.points.size());
                for (const Rat& x : p.points) out.points.push_back(x + tau);
                return out;
            },
            [&](const LatticeZ& l) -> Component { return LatticeZ{mod(l.offset + tau, l.step), l.step}; },
            [&](const LatticeRight& l) -> Component { return LatticeRight{l.start + tau, l.step}; },
            [&](const LatticeLeft& l) -> Component { return LatticeLeft{l.start + tau, l.step}; },
            [&](const PeriodicPattern& p) -> Component {
                std::vector<Atom> atoms;
                for (const Atom& a : p.cell) atoms.push_back({a.lo + tau, a.hi + tau});
                return PeriodicPattern{p.period, normalize_cell(p.period, atoms)};
            },
        },
        c);
}

void lattice_atoms(const Rat& origin, const Rat& step, std::int64_t kmin, std::int64_t kmax, std::vector<Atom>& out) {
    for (std::int64_t k = kmin; k <= kmax; ++k) out.push_back(Atom::point(origin + step * Rat(k)));
}

void component_atoms(const Component& c, const Rat& lo, const Rat& hi, std::vector<Atom>& out) {
    std::visit(
        overloaded{
            [&](const ClosedInterval& i) {
                const Rat a = max(i.a, lo);
                const Rat b = min(i.b, hi);
                if (a <= b) out.push_back({a, b});
            },
            [&](const PointSet& p) {
                auto first = std::lower_bound(p.points.begin(), p.points.end(), lo);
                for (auto it = first; it != p.points.end() && *it <= hi; ++it) out.push_back(Atom::point(*it));
            },
            [&](const LatticeZ& l) {
                lattice_atoms(l.offset, l.step, ((lo - l.offset) / l.step).ceil(), ((hi - l.offset) / l.step).floor(),
                              out);
            },
            [&](const LatticeRight& l) {
                const std::int64_t kmin = std::max<std::int64_t>(0, ((lo - l.start) / l.step).ceil());
                lattice_atoms(l.start, l.step, kmin, ((hi - l.start) / l.step).floor(), out);
            },
            [&](const LatticeLeft& l) {
                // start - k*step in [lo, hi]  <=>  k in [(start-hi)/step, (start-lo)/step]
                const std::int64_t kmin = std::max<std::int64_t>(0, ((l.start - hi) / l.step).ceil());
                const std::int64_t kmax = ((l.start - lo) / l.step).floor();
                for (std::int64_t k = kmax; k >= kmin; --k) out.push_back(Atom::point(l.start - l.step * Rat(k)));
            },
            [&](const PeriodicPattern& p) {
                const std::int64_t kmin = (lo / p.period).floor() - 1;
                const std::int64_t kmax = (hi / p.period).floor();
                for (std::int64_t k = kmin; k <= kmax; ++k) {
                    const Rat off = p.period * Rat(k);
                    for (const Atom& a : p.cell) {
                        const Rat x = max(a.lo + off, lo);
                        const Rat y = min(a.hi + off, hi);
                        if (x <= y) out.push_back({x, y});
                    }
                }
            },
        },
        c);
}

// Index of the last atom with lo <= x, or npos.
std::size_t locate(const std::vector<Atom>& atoms, const Rat& x) {
    auto it = std::upper_bound(atoms.begin(), atoms.end(), x, [](const Rat& v, const Atom& a) { return v < a.lo; });
    if (it == atoms.begin()) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(std::distance(atoms.begin(), it) - 1);
}

}  // namespace

Component make_interval(Rat a, Rat b) {
    if (b < a) throw Error(Errc::InvalidInterval, "interval(" + a.str() + ", " + b.str() + ") requires a <= b");
    return ClosedInterval{a, b};
}

Component make_points(std::vector<Rat> points) {
    if (points.empty()) throw Error(Errc::InvalidArgument, "points() needs at least one point");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return PointSet{std::move(points)};
}

Component make_lattice_z(Rat offset, Rat step) {
    require_positive(step, "lattice step");
    return LatticeZ{mod(offset, step), step};
}

Component make_lattice_right(Rat start, Rat step) {
    require_positive(step, "lattice step");
    return LatticeRight{start, step};
}

Component make_lattice_left(Rat start, Rat step) {
    require_positive(step, "lattice step");
    return LatticeLeft{start, step};
}

Component make_pattern(Rat period, std::vector<Atom> cell) {
    require_positive(period, "pattern period");
    if (cell.empty()) throw Error(Errc::InvalidArgument, "pattern cell must not be empty");
    std::sort(cell.begin(), cell.end(), [](const Atom& x, const Atom& y) { return x.lo < y.lo; });
    for (std::size_t i = 0; i < cell.size(); ++i) {
        const Atom& a = cell[i];
        if (a.hi < a.lo) throw Error(Errc::InvalidInterval, "pattern atom with hi < lo");
        if (a.lo.sign() < 0 || a.hi > period || (a.is_point() && a.lo == period))
            throw Error(Errc::InvalidArgument, "pattern atom outside [0, period)");
        if (i > 0 && cell[i - 1].hi >= a.lo) throw Error(Errc::InvalidArgument, "pattern atoms must be disjoint");
    }
    return PeriodicPattern{period, normalize_cell(period, cell)};
}

TimeScaleDesc::TimeScaleDesc(std::string name, std::vector<Component> components)
    : name_(std::move(name)), components_(std::move(components)) {
    if (components_.empty()) throw Error(Errc::InvalidArgument, "time scale needs at least one component");
}

bool CanonicalWindow::contains(const Rat& x) const {
    const std::size_t i = locate(atoms, x);
    return i != static_cast<std::size_t>(-1) && atoms[i].contains(x);
}

bool CanonicalWindow::has_interval() const {
    return std::any_of(atoms.begin(), atoms.end(), [](const Atom& a) { return !a.is_point(); });
}

std::size_t CanonicalWindow::point_count() const {
    return static_cast<std::size_t>(std::count_if(atoms.begin(), atoms.end(), [](const Atom& a) { return a.is_point(); }));
}

std::vector<Atom> canonicalize(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi); });
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (!out.empty() && a.lo <= out.back().hi) {
            if (out.back().hi < a.hi) out.back().hi = a.hi;
        } else {
            out.push_back(a);
        }
    }
    return out;
}

std::string PointClass::kind() const {
    if (isolated()) return "isolated";
    if (dense()) return "dense";
    std::string out;
    auto add = [&](bool flag, const char* label) {
        if (!flag) return;
        if (!out.empty()) out += ", ";
        out += label;
    };
    add(left_dense, "left-dense");
    add(left_scattered, "left-scattered");
    add(right_dense, "right-dense");
    add(right_scattered, "right-scattered");
    if (out.empty()) out = "singleton";
    return out;
}

bool contains(const TimeScaleDesc& t, const Rat& x) {
    return std::any_of(t.components().begin(), t.components().end(),
                       [&](const Component& c) { return component_contains(c, x); });
}

std::optional<Rat> next_above(const TimeScaleDesc& t, const Rat& x) {
    std::optional<Rat> best;
    for (const Component& c : t.components()) {
        auto n = component_next_above(c, x);
        if (n && (!best || *n < *best)) best = n;
    }
    return best;
}

std::optional<Rat> next_below(const TimeScaleDesc& t, const Rat& x) {
    std::optional<Rat> best;
    const Rat neg = -x;
    for (const Component& c : t.components()) {
        auto n = component_next_above(reflect_component(c), neg);
        if (n && (!best || -*n > *best)) best = -*n;
    }
    return best;
}

namespace {
void require_member(const TimeScaleDesc& t, const Rat& x) {
    if (!contains(t, x)) throw Error(Errc::NotInScale, x.str() + " is not in " + t.name());
}
}  // namespace

Rat sigma(const TimeScaleDesc& t, const Rat& x) {
    require_member(t, x);
    return next_above(t, x).value_or(x);
}

Rat rho(const TimeScaleDesc& t, const Rat& x) {
    require_member(t, x);
    return next_below(t, x).value_or(x);
}

Rat mu(const TimeScaleDesc& t, const Rat& x) { return sigma(t, x) - x; }

PointClass classify_point(const TimeScaleDesc& t, const Rat& x) {
    const Rat s = sigma(t, x);
    const Rat r = rho(t, x);
    const auto [inf, sup] = extremes(t);
    PointClass pc;
    pc.at_inf = inf.is_finite() && inf.value == x;
    pc.at_sup = sup.is_finite() && sup.value == x;
    pc.left_dense = !pc.at_inf && r == x;
    pc.left_scattered = r < x;
    pc.right_dense = !pc.at_sup && s == x;
    pc.right_scattered = s > x;
    return pc;
}

TimeScaleDesc translate(const TimeScaleDesc& t, const Rat& tau) {
    std::vector<Component> comps;
    comps.reserve(t.components().size());
    for (const Component& c : t.components()) comps.push_back(translate_component(c, tau));
    return TimeScaleDesc(t.name(), std::move(comps));
}

TimeScaleDesc reflect(const TimeScaleDesc& t) {
    std::vector<Component> comps;
    comps.reserve(t.components().size());
    for (const Component& c : t.components()) comps.push_back(reflect_component(c));
    return TimeScaleDesc(t.name(), std::move(comps));
}

TimeScaleDesc unite(const TimeScaleDesc& a, const TimeScaleDesc& b, std::string name) {
    std::vector<Component> comps = a.components();
    comps.insert(comps.end(), b.components().begin(), b.components().end());
    return TimeScaleDesc(name.empty() ? a.name() : std::move(name), std::move(comps));
}

CanonicalWindow window(const TimeScaleDesc& t, const Rat& lo, const Rat& hi) {
    if (hi < lo) throw Error(Errc::InvalidArgument, "window requires lo <= hi");
    std::vector<Atom> atoms;
    for (const Component& c : t.components()) component_atoms(c, lo, hi, atoms);
    return {lo, hi, canonicalize(std::move(atoms))};
}

CanonicalWindow intersect(const CanonicalWindow& a, const CanonicalWindow& b) {
    CanonicalWindow out{max(a.lo, b.lo), min(a.hi, b.hi), {}};
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.atoms.size() && j < b.atoms.size()) {
        const Atom& x = a.atoms[i];
        const Atom& y = b.atoms[j];
        const Rat lo = max(x.lo, y.lo);
        const Rat hi = min(x.hi, y.hi);
        if (lo <= hi) out.atoms.push_back({lo, hi});
        if (x.hi < y.hi) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

CanonicalWindow intersect_window(const TimeScaleDesc& a, const TimeScaleDesc& b, const Rat& lo, const Rat& hi) {
    return intersect(window(a, lo, hi), window(b, lo, hi));
}

std::pair<ExtRat, ExtRat> extremes(const TimeScaleDesc& t) {
    std::optional<ExtRat> inf;
    std::optional<ExtRat> sup;
    auto lower = [&](ExtRat e) {
        if (!inf || e.kind == ExtRat::Kind::NegInf ||
            (inf->is_finite() && e.is_finite() && e.value < inf->value))
            inf = e;
    };
    auto upper = [&](ExtRat e) {
        if (!sup || e.kind == ExtRat::Kind::PosInf ||
            (sup->is_finite() && e.is_finite() && e.value > sup->value))
            sup = e;
    };
    for (const Component& c : t.components()) {
        std::visit(overloaded{
                       [&](const ClosedInterval& i) {
                           lower(ExtRat::finite(i.a));
                           upper(ExtRat::finite(i.b));
                       },
                       [&](const PointSet& p) {
                           lower(ExtRat::finite(p.points.front()));
                           upper(ExtRat::finite(p.points.back()));
                       },
                       [&](const LatticeZ&) {
                           lower(ExtRat::neg_inf());
                           upper(ExtRat::pos_inf());
                       },
                       [&](const LatticeRight& l) {
                           lower(ExtRat::finite(l.start));
                           upper(ExtRat::pos_inf());
                       },
                       [&](const LatticeLeft& l) {
                           lower(ExtRat::neg_inf());
                           upper(ExtRat::finite(l.start));
                       },
                       [&](const PeriodicPattern&) {
                           lower(ExtRat::neg_inf());
                           upper(ExtRat::pos_inf());
                       },
                   },
                   c);
    }
    return {*inf, *sup};
}

std::optional<Rat> structural_period(const TimeScaleDesc& t) {
    std::optional<Rat> period;
    for (const Component& c : t.components()) {
        std::optional<Rat> p;
        if (const auto* l = std::get_if<LatticeZ>(&c)) p = l->step;
        if (const auto* pp = std::get_if<PeriodicPattern>(&c)) p = pp->period;
        if (!p) return std::nullopt;
        period = period ? lcm(*period, *p) : *p;
    }
    return period;
}

std::optional<Rat> first_uncovered(const CanonicalWindow& a, const CanonicalWindow& b) {
    for (const Atom& atom : a.atoms) {
        const Rat x = atom.lo;
        const std::size_t i = locate(b.atoms, x);
        if (i == static_cast<std::size_t>(-1) || !b.atoms[i].contains(x)) return x;
        // Walk the cover of [atom.lo, atom.hi] until a hole shows up.
        std::size_t k = i;
        while (true) {
            const Rat d = b.atoms[k].hi;
            if (d >= atom.hi) break;
            if (k + 1 < b.atoms.size() && b.atoms[k + 1].lo <= d) {
                ++k;
                continue;
            }
            const Rat e = (k + 1 < b.atoms.size()) ? min(b.atoms[k + 1].lo, atom.hi) : atom.hi;
            return (d + e) / Rat(2);
        }
    }
    return std::nullopt;
}

Rat distance_to(const TimeScaleDesc& t, const Rat& x) {
    if (contains(t, x)) return Rat(0);
    const auto below = next_below(t, x);
    const auto above = next_above(t, x);
    if (below && above) return min(x - *below, *above - x);
    if (below) return x - *below;
    return *above - x;
}

}  // namespace tsc
