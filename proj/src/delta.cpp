#include "tsc/delta.hpp"

#include <algorithm>
#include <cmath>

#include "tsc/error.hpp"

namespace tsc {

GridFunction::GridFunction(TimeScaleDesc t, ExprPtr e) : scale(std::move(t)), body(std::move(e)) {
    if (!std::get<ExprPtr>(body)) throw Error(Errc::InvalidArgument, "null expression");
}

GridFunction::GridFunction(TimeScaleDesc t, SampleTable samples) : scale(std::move(t)) {
    std::sort(samples.begin(), samples.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!contains(scale, samples[i].first))
            throw Error(Errc::NotInScale, "sample point " + samples[i].first.str() + " is not in " + scale.name());
        if (i && samples[i].first == samples[i - 1].first)
            throw Error(Errc::InvalidArgument, "duplicate sample point " + samples[i].first.str());
    }
    body = std::move(samples);
}

Value GridFunction::at(const Rat& t) const {
    if (!contains(scale, t)) throw Error(Errc::NotInScale, t.str() + " is not in " + scale.name());
    if (const auto* e = std::get_if<ExprPtr>(&body)) return eval_expr(**e, t);
    const auto& table = std::get<SampleTable>(body);
    auto it = std::lower_bound(table.begin(), table.end(), t, [](const auto& s, const Rat& x) { return s.first < x; });
    if (it == table.end() || it->first != t)
        throw Error(Errc::NotDifferentiableData, "no sample at " + t.str());
    return it->second;
}

void QuadratureConfig::validate() const {
    if (panels < 2 || panels % 2) throw Error(Errc::InvalidArgument, "panel count must be even and at least 2");
    if (step.sign() <= 0) throw Error(Errc::InvalidArgument, "derivative step must be positive");
    if (!(tolerance > 0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
}

std::string_view endpoint_rule_name(EndpointRule r) noexcept {
    switch (r) {
        case EndpointRule::AsGiven: return "as-given";
        case EndpointRule::BackwardJump: return "rho";
        case EndpointRule::ForwardJump: return "sigma";
    }
    return "as-given";
}

namespace {

// The atom of the canonical window around t that contains t.
Atom atom_at(const TimeScaleDesc& t, const Rat& x, const Rat& reach) {
    const CanonicalWindow w = window(t, x - reach, x + reach);
    for (const Atom& a : w.atoms)
        if (a.contains(x)) return a;
    throw Error(Errc::NotInScale, x.str() + " is not in " + t.name());
}

Value simpson(const GridFunction& f, const Rat& c, const Rat& d, int panels) {
    const Rat h = (d - c) / Rat(panels);
    Value sum = f.at(c) + f.at(d);
    for (int i = 1; i < panels; ++i) {
        const Value fx = f.at(c + h * Rat(i));
        sum = sum + fx * Value::of(Rat(i % 2 ? 4 : 2));
    }
    return sum * Value::of(h / Rat(3));
}

// Starts at cfg.panels and doubles until two successive estimates agree
// to within the tolerance (the Simpson error is about a fifteenth of that).
Value adaptive_simpson(const GridFunction& f, const Rat& c, const Rat& d, const QuadratureConfig& cfg) {
    constexpr int max_panels = 1 << 16;
    Value prev = simpson(f, c, d, cfg.panels);
    for (int n = cfg.panels * 2; n <= max_panels; n *= 2) {
        const Value next = simpson(f, c, d, n);
        if (std::fabs(next.approx - prev.approx) <= 15 * cfg.tolerance) return next;
        prev = next;
    }
    throw Error(Errc::DomainError, "quadrature on [" + c.str() + ", " + d.str() + "] did not reach tolerance");
}

}  // namespace

DeltaResult delta_derivative(const GridFunction& f, const Rat& t, const QuadratureConfig& cfg) {
    cfg.validate();
    const TimeScaleDesc& T = f.scale;
    if (!contains(T, t)) throw Error(Errc::NotInScale, t.str() + " is not in " + T.name());
    const PointClass pc = classify_point(T, t);
    DeltaResult r;
    r.endpoint = t;

    if (pc.right_scattered) {
        const Rat s = sigma(T, t);
        const Rat m = s - t;
        r.value = (f.at(s) - f.at(t)) / Value::of(m);
        r.note = "difference quotient over mu = " + m.str();
        return r;
    }
    if (pc.at_sup && pc.left_scattered)
        throw Error(Errc::DomainError, t.str() + " is a left-scattered maximum; the derivative is undefined there");
    if (f.is_table()) throw Error(Errc::NotDifferentiableData, "sample table cannot be differentiated at a dense point");

    const Rat h = cfg.step;
    const Atom a = atom_at(T, t, h);
    const bool left_room = a.lo <= t - h;
    const bool right_room = a.hi >= t + h;
    r.numeric = true;
    auto fwd = [&](const Rat& k) { return (f.at(t + k) - f.at(t)) / Value::of(k); };
    auto bwd = [&](const Rat& k) { return (f.at(t) - f.at(t - k)) / Value::of(k); };
    auto central = [&](const Rat& k) { return (f.at(t + k) - f.at(t - k)) / Value::of(k * Rat(2)); };
    const Rat h2 = h / Rat(2);
    if (left_room && right_room) {
        r.value = (central(h2) * Value::of(Rat(4)) - central(h)) / Value::of(Rat(3));
        r.note = "central difference, Richardson at h, h/2";
    } else if (right_room) {
        r.value = fwd(h2) * Value::of(Rat(2)) - fwd(h);
        r.note = "forward difference, Richardson at h, h/2";
    } else if (left_room) {
        r.value = bwd(h2) * Value::of(Rat(2)) - bwd(h);
        r.note = "backward difference, Richardson at h, h/2";
    } else {
        throw Error(Errc::NotDifferentiableData, "dense part around " + t.str() + " is shorter than the step");
    }
    return r;
}

DeltaResult delta_integral(const GridFunction& f, const Rat& a, const Rat& t, const QuadratureConfig& cfg) {
    cfg.validate();
    const TimeScaleDesc& T = f.scale;
    if (!contains(T, a)) throw Error(Errc::NotInScale, "lower limit " + a.str() + " is not in " + T.name());

    DeltaResult r;
    r.endpoint = t;
    if (!contains(T, t)) {
        const auto below = next_below(T, t);
        const auto above = next_above(T, t);
        if (below && *below >= a) {
            r.endpoint = *below;
            r.rule = EndpointRule::BackwardJump;
        } else if (above && *above <= a) {
            r.endpoint = *above;
            r.rule = EndpointRule::ForwardJump;
        } else {
            throw Error(Errc::EndpointUnresolvable, "upper limit " + t.str() + " is not in " + T.name() +
                                                        " and neither jump point lies on the correct side of " +
                                                        a.str());
        }
        r.note = "upper limit " + t.str() + " replaced by " + std::string(endpoint_rule_name(r.rule)) + "(" +
                 t.str() + ") = " + r.endpoint.str();
    }

    const Rat lo = min(a, r.endpoint);
    const Rat hi = max(a, r.endpoint);
    Value sum = Value::of(Rat(0));
    if (lo < hi) {
        for (const Atom& atom : window(T, lo, hi).atoms) {
            if (!atom.is_point()) {
                if (f.is_table())
                    throw Error(Errc::NotDifferentiableData, "sample table cannot be integrated over a dense part");
                sum = sum + adaptive_simpson(f, atom.lo, atom.hi, cfg);
                r.numeric = true;
            }
            // The right end of each atom below hi jumps forward.
            if (atom.hi < hi) sum = sum + f.at(atom.hi) * Value::of(mu(T, atom.hi));
        }
    }
    r.value = a <= r.endpoint ? sum : Value::of(Rat(0)) - sum;
    if (r.numeric) {
        if (!r.note.empty()) r.note += "; ";
        r.note += "composite Simpson from " + std::to_string(cfg.panels) + " panels, doubled to tolerance, on dense parts";
    }
    return r;
}

DeltaResult delta_integral_shifted(const GridFunction& f, const Rat& t, const Rat& l, const QuadratureConfig& cfg) {
    const TimeScaleDesc& T = f.scale;
    if (!contains(T, t)) throw Error(Errc::NotInScale, t.str() + " is not in " + T.name());
    const Rat u = t + l;
    if (contains(T, u)) return delta_integral(f, t, u, cfg);
    const auto below = next_below(T, u);
    if (!below) throw Error(Errc::EndpointUnresolvable, "nothing of " + T.name() + " lies below " + u.str());
    DeltaResult r = delta_integral(f, t, *below, cfg);
    r.rule = EndpointRule::BackwardJump;
    const std::string shift = "t + l = " + u.str() + " replaced by rho(t + l) = " + below->str();
    r.note = r.note.empty() ? shift : shift + "; " + r.note;
    return r;
}

}  // namespace tsc
