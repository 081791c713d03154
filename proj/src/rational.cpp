#include "tsc/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

#include "tsc/error.hpp"

namespace tsc {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();

// Floor division for b > 0.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}

}  // namespace

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::Overflow: return "Overflow";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::DomainError: return "DomainError";
        case Errc::NotInScale: return "NotInScale";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::EmptyOperand: return "EmptyOperand";
        case Errc::WindowTooSmall: return "WindowTooSmall";
        case Errc::NotDifferentiableData: return "NotDifferentiableData";
        case Errc::EndpointUnresolvable: return "EndpointUnresolvable";
        case Errc::CandidateNotInvariant: return "CandidateNotInvariant";
        case Errc::EmptyScan: return "EmptyScan";
        case Errc::InvalidBand: return "InvalidBand";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::InvalidInterval: return "InvalidInterval";
        case Errc::DuplicateName: return "DuplicateName";
        case Errc::UnknownName: return "UnknownName";
    }
    return "Unknown";
}

Rat::Rat(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
    *this = from_wide(n, d);
}

Rat Rat::from_wide(__int128 n, __int128 d) {
    if (d == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n > kMax || n < kMin || d > kMax) throw Error(Errc::Overflow, "rational overflow");
    Rat r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

std::int64_t Rat::floor() const noexcept { return floor_div(num_, den_); }

std::int64_t Rat::ceil() const noexcept { return -floor_div(-num_, den_); }

Rat Rat::operator-() const {
    if (num_ == std::numeric_limits<std::int64_t>::min()) throw Error(Errc::Overflow, "rational overflow");
    Rat r = *this;
    r.num_ = -num_;
    return r;
}

Rat& Rat::operator+=(const Rat& o) {
    if (den_ == o.den_) {
        *this = from_wide(static_cast<__int128>(num_) + o.num_, den_);
    } else {
        *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                          static_cast<__int128>(den_) * o.den_);
    }
    return *this;
}

Rat& Rat::operator-=(const Rat& o) { return *this += -o; }

Rat& Rat::operator*=(const Rat& o) {
    // Cross-reduce first so products of already-reduced values stay small.
    const __int128 g1 = gcd128(num_, o.den_);
    const __int128 g2 = gcd128(o.num_, den_);
    const __int128 n = (static_cast<__int128>(num_) / (g1 ? g1 : 1)) * (o.num_ / (g2 ? g2 : 1));
    const __int128 d = (static_cast<__int128>(den_) / (g2 ? g2 : 1)) * (o.den_ / (g1 ? g1 : 1));
    *this = from_wide(n, d);
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.num_ == 0) throw Error(Errc::DivisionByZero, "division by zero");
    *this = from_wide(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
    return *this;
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rat> Rat::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        pos = 1;
    }
    auto parse_digits = [](std::string_view s) -> std::optional<std::int64_t> {
        if (s.empty()) return std::nullopt;
        for (char c : s)
            if (c < '0' || c > '9') return std::nullopt;
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
        return v;
    };
    const std::string_view body = text.substr(pos);
    try {
        Rat result;
        if (const auto slash = body.find('/'); slash != std::string_view::npos) {
            const auto n = parse_digits(body.substr(0, slash));
            const auto d = parse_digits(body.substr(slash + 1));
            if (!n || !d || *d == 0) return std::nullopt;
            result = Rat(*n, *d);
        } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
            const auto whole = parse_digits(body.substr(0, dot));
            const std::string_view frac_text = body.substr(dot + 1);
            const auto frac = parse_digits(frac_text);
            if (!whole || !frac || frac_text.size() > 18) return std::nullopt;
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < frac_text.size(); ++i) scale *= 10;
            result = Rat(*whole) + Rat(*frac, scale);
        } else {
            const auto n = parse_digits(body);
            if (!n) return std::nullopt;
            result = Rat(*n);
        }
        return negative ? -result : result;
    } catch (const Error&) {
        return std::nullopt;
    }
}

Rat mod(const Rat& x, const Rat& m) {
    if (m.sign() <= 0) throw Error(Errc::InvalidArgument, "mod requires a positive modulus");
    const Rat q = x / m;
    return x - m * Rat(q.floor());
}

Rat lcm(const Rat& a, const Rat& b) {
    if (a.sign() <= 0 || b.sign() <= 0) throw Error(Errc::InvalidArgument, "lcm requires positive arguments");
    // lcm(p/q, r/s) = lcm(p, r) / gcd(q, s) for reduced fractions.
    const __int128 gn = gcd128(a.num(), b.num());
    const __int128 ln = static_cast<__int128>(a.num()) / gn * b.num();
    const __int128 gd = gcd128(a.den(), b.den());
    if (ln > kMax) throw Error(Errc::Overflow, "lcm overflow");
    return Rat(static_cast<std::int64_t>(ln), static_cast<std::int64_t>(gd));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

std::string ExtRat::str() const {
    switch (kind) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "+inf";
        case Kind::Finite: break;
    }
    return value.str();
}

}  // namespace tsc
