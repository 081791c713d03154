#include "doctest.h"

#include <cmath>

#include "support.hpp"
#include "tsc/delta.hpp"
#include "tsc/error.hpp"

using namespace tsc;
using namespace tsc::testing;

namespace {

GridFunction fn(const TimeScaleDesc& t, const std::string& body) {
    return GridFunction(t, parse("fn f(t) = " + body).functions[0].body);
}

// Rational polynomial with coefficients c[0] + c[1] t + ...
struct Poly {
    std::vector<Rat> c;
    Rat operator()(const Rat& t) const {
        Rat acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
        return acc;
    }
    std::string source() const {
        std::string s;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) s += " + ";
            s += "(" + c[k].str() + ")*t^" + std::to_string(k);
        }
        return s;
    }
};

Poly random_poly(Gen& g) {
    Poly p;
    for (int k = 0, n = static_cast<int>(g.range(1, 4)); k < n; ++k) p.c.push_back(g.rat(-3, 3, 5));
    return p;
}

// Σ f(s) μ(s) over scale points s in [a, b), from the membership oracle.
Rat scattered_sum(const Member& in, const Poly& f, const Rat& a, const Rat& b, std::int64_t den) {
    std::vector<Rat> pts;
    for (const Rat& s : grid(a, b + Rat(20), den))
        if (in(s)) pts.push_back(s);
    Rat sum(0);
    for (std::size_t i = 0; i + 1 < pts.size() && pts[i] < b; ++i) sum = sum + f(pts[i]) * (pts[i + 1] - pts[i]);
    return sum;
}

}  // namespace

TEST_CASE("derivative examples") {
    const DeltaResult id = delta_derivative(fn(Z(), "t"), Rat(5));
    CHECK(id.exact());
    CHECK(*id.value.exact == Rat(1));
    const DeltaResult sq = delta_derivative(fn(Z(), "t^2"), Rat(3));
    CHECK(*sq.value.exact == Rat(7));
    CHECK(*sq.value.exact == Rat(2 * 3) + mu(Z(), Rat(3)));
    const DeltaResult dense = delta_derivative(fn(R(), "t^2"), Rat(3));
    CHECK_FALSE(dense.exact());
    CHECK(std::fabs(dense.approx() - 6.0) < 1e-9);
    const DeltaResult gap = delta_derivative(fn(Ex31(), "t^2"), Rat(-2));
    CHECK(*gap.value.exact == Rat(9 - 4, 5));
}

TEST_CASE("one-sided derivatives at interval ends") {
    const TimeScaleDesc t = scale_of("scale M = points(-1) | interval(0, 1) | points(2)");
    // Left neighbour scattered: forward difference inside [0, 1].
    CHECK(std::fabs(delta_derivative(fn(t, "t^3"), Rat(0)).approx() - 0.0) < 1e-7);
    CHECK(std::fabs(delta_derivative(fn(t, "sin(t)"), Rat(1, 2)).approx() - std::cos(0.5)) < 1e-9);
    // 1 is right-scattered: exact quotient.
    CHECK(*delta_derivative(fn(t, "t^2"), Rat(1)).value.exact == Rat(3));
    try {
        delta_derivative(fn(t, "t"), Rat(2));
        FAIL("left-scattered maximum");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DomainError);
    }
}

TEST_CASE("integral examples") {
    const DeltaResult one = delta_integral(fn(Z(), "1"), Rat(0), Rat(3));
    CHECK(one.exact());
    CHECK(*one.value.exact == Rat(3));
    const DeltaResult id = delta_integral(fn(Z(), "t"), Rat(0), Rat(5, 2));
    CHECK(id.endpoint == Rat(2));
    CHECK(id.rule == EndpointRule::BackwardJump);
    CHECK(*id.value.exact == Rat(1));
    const DeltaResult unit = delta_integral(fn(Unit(), "t"), Rat(0), Rat(1));
    CHECK(unit.numeric);
    CHECK(std::fabs(unit.approx() - 0.5) < 1e-9);
}

TEST_CASE("endpoint conventions") {
    // Forward jump: upper limit below a, off the scale.
    const DeltaResult fwd = delta_integral(fn(Z(), "t"), Rat(3), Rat(1, 2));
    CHECK(fwd.endpoint == Rat(1));
    CHECK(fwd.rule == EndpointRule::ForwardJump);
    CHECK(*fwd.value.exact == -(Rat(1) + Rat(2)));
    // Across a gap of Ex31.
    const DeltaResult gap = delta_integral(fn(Ex31(), "1"), Rat(-4), Rat(0));
    CHECK(gap.endpoint == Rat(-2));
    CHECK(*gap.value.exact == Rat(2));
    const DeltaResult above = delta_integral(fn(Unit(), "1"), Rat(0), Rat(7));
    CHECK(above.endpoint == Rat(1));
    CHECK(std::fabs(above.approx() - 1.0) < 1e-9);
}

TEST_CASE("shifted integral") {
    CHECK(*delta_integral_shifted(fn(Z(), "1"), Rat(0), Rat(5, 2)).value.exact == Rat(2));
    const DeltaResult three = delta_integral_shifted(fn(Z(), "1"), Rat(0), Rat(3));
    CHECK(*three.value.exact == Rat(3));
    CHECK(three.rule == EndpointRule::AsGiven);
    for (const Rat& l : {Rat(7, 3), Rat(-5, 2), Rat(11)})
        CHECK(*delta_integral_shifted(fn(Ex31(), "0"), Rat(3), l).value.exact == Rat(0));
    // The shifted form always jumps backward, even below t.
    const DeltaResult back = delta_integral_shifted(fn(Z(), "1"), Rat(0), Rat(-1, 2));
    CHECK(back.endpoint == Rat(-1));
    CHECK(*back.value.exact == Rat(-1));
}

TEST_CASE("errors") {
    try {
        delta_integral(fn(Z(), "t"), Rat(1, 2), Rat(3));
        FAIL("lower limit off the scale");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInScale);
    }
    try {
        delta_integral_shifted(fn(scale_of("scale P = latticeRight(0, 1)"), "1"), Rat(0), Rat(-1, 2));
        FAIL("nothing below the shifted end");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EndpointUnresolvable);
    }
    CHECK_THROWS_AS(delta_derivative(fn(Z(), "t"), Rat(1, 3)), Error);
    const TimeScaleDesc mixed = scale_of("scale M = interval(0, 1) | points(2, 3)");
    const GridFunction table(mixed, SampleTable{{Rat(2), Value::of(Rat(4))}, {Rat(3), Value::of(Rat(9))}});
    try {
        delta_integral(table, Rat(0), Rat(3));
        FAIL("table over a dense part");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotDifferentiableData);
    }
    try {
        delta_derivative(table, Rat(1, 2));
        FAIL("table at a dense point");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotDifferentiableData);
    }
    CHECK_THROWS_AS(GridFunction(Z(), SampleTable{{Rat(1, 2), Value::of(Rat(0))}}), Error);
    QuadratureConfig odd;
    odd.panels = 3;
    CHECK_THROWS_AS(delta_integral(fn(Unit(), "t"), Rat(0), Rat(1), odd), Error);
}

TEST_CASE("dense quadrature accuracy") {
    const DeltaResult e = delta_integral(fn(Unit(), "exp(t)"), Rat(0), Rat(1));
    CHECK(std::fabs(e.approx() - (std::exp(1.0) - 1.0)) < 1e-9);
    const DeltaResult s = delta_integral(fn(scale_of("scale I = interval(0, 3)"), "sin(t)"), Rat(0), Rat(3));
    CHECK(std::fabs(s.approx() - (1.0 - std::cos(3.0))) < 1e-9);
    // Interval part, its right end jumping to 2, then the point 2 jumping to 3.
    const TimeScaleDesc mixed = scale_of("scale M = interval(0, 1) | points(2, 3)");
    const DeltaResult m = delta_integral(fn(mixed, "t"), Rat(0), Rat(3));
    CHECK(std::fabs(m.approx() - 3.5) < 1e-9);
    const DeltaResult a = delta_integral(fn(mixed, "t"), Rat(0), Rat(1, 2));
    const DeltaResult b = delta_integral(fn(mixed, "t"), Rat(1, 2), Rat(3));
    CHECK(std::fabs(a.approx() + b.approx() - m.approx()) < 2e-9);
}

TEST_CASE("random polynomials on discrete scales") {
    struct Case {
        TimeScaleDesc scale;
        Member in;
        std::int64_t den;
    };
    const std::vector<Case> cases = {{Z(), member_Z(), 1}, {HalfZ(), member_HalfZ(), 2}, {Ex31(), member_Ex31(), 1}};
    Gen g(100);
    for (int round = 0; round < 100; ++round) {
        const Case& c = cases[round % cases.size()];
        const Poly p = random_poly(g);
        const Poly q = random_poly(g);
        const GridFunction f = fn(c.scale, p.source());
        CAPTURE(p.source());

        std::vector<Rat> pts;
        for (const Rat& s : grid(Rat(-10), Rat(10), c.den))
            if (c.in(s)) pts.push_back(s);
        const Rat a = pts[g.range(0, static_cast<std::int64_t>(pts.size()) - 1)];
        const Rat b = pts[g.range(0, static_cast<std::int64_t>(pts.size()) - 1)];
        const Rat m = pts[g.range(0, static_cast<std::int64_t>(pts.size()) - 1)];

        const DeltaResult ab = delta_integral(f, a, b);
        REQUIRE(ab.exact());
        const Rat want = a <= b ? scattered_sum(c.in, p, a, b, c.den) : -scattered_sum(c.in, p, b, a, c.den);
        CHECK(*ab.value.exact == want);
        // Antisymmetry and additivity, exactly.
        CHECK(*delta_integral(f, b, a).value.exact == -want);
        CHECK(*delta_integral(f, a, m).value.exact + *delta_integral(f, m, b).value.exact == want);
        CHECK(*delta_integral(fn(c.scale, "1"), a, b).value.exact == b - a);

        // Linearity.
        const Rat alpha = g.rat(-2, 2, 3), beta = g.rat(-2, 2, 3);
        const GridFunction combo =
            fn(c.scale, "(" + alpha.str() + ")*(" + p.source() + ") + (" + beta.str() + ")*(" + q.source() + ")");
        CHECK(*delta_integral(combo, a, b).value.exact ==
              alpha * want + beta * *delta_integral(fn(c.scale, q.source()), a, b).value.exact);

        // Fundamental theorem at scattered points: Y^Δ = f with Y tabulated.
        const Rat lo = min(a, b);
        SampleTable y;
        for (const Rat& s : pts)
            if (s >= lo) y.emplace_back(s, delta_integral(f, lo, s).value);
        const GridFunction Y(c.scale, y);
        for (std::size_t i = 0; i + 1 < y.size(); ++i) {
            const DeltaResult d = delta_derivative(Y, y[i].first);
            REQUIRE(d.exact());
            CHECK(*d.value.exact == p(y[i].first));
        }
    }
}
