#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace tsc {

/// Exact rational number over 64-bit integers.
///
/// Every operation is computed with 128-bit intermediates and reduced; a
/// result that does not fit back into 64 bits throws Error(Errc::Overflow)
/// instead of wrapping. The value is always normalized: den > 0 and
/// gcd(|num|, den) == 1.
class Rat {
public:
    constexpr Rat() noexcept = default;
    constexpr Rat(std::int64_t n) noexcept : num_(n), den_(1) {}  // NOLINT(implicit)
    Rat(std::int64_t n, std::int64_t d);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Largest integer <= *this.
    std::int64_t floor() const noexcept;
    /// Smallest integer >= *this.
    std::int64_t ceil() const noexcept;

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) noexcept {
        const __int128 l = static_cast<__int128>(a.num_) * b.den_;
        const __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l <=> r;
    }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

    /// Accepts "p", "p/q", and finite decimals such as "-0.125".
    static std::optional<Rat> parse(std::string_view text);

private:
    static Rat from_wide(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Remainder in [0, m) for m > 0.
Rat mod(const Rat& x, const Rat& m);

/// Least positive common multiple of two positive rationals.
Rat lcm(const Rat& a, const Rat& b);

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// Rational extended by -inf and +inf; used for extremes and unbounded results.
struct ExtRat {
    enum class Kind { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    Rat value{};

    static ExtRat neg_inf() { return {Kind::NegInf, {}}; }
    static ExtRat pos_inf() { return {Kind::PosInf, {}}; }
    static ExtRat finite(Rat r) { return {Kind::Finite, r}; }

    bool is_finite() const noexcept { return kind == Kind::Finite; }
    std::string str() const;

    friend bool operator==(const ExtRat& a, const ExtRat& b) noexcept {
        return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
    }
};

}  // namespace tsc

template <>
struct std::hash<tsc::Rat> {
    std::size_t operator()(const tsc::Rat& r) const noexcept {
        const auto h1 = std::hash<std::int64_t>{}(r.num());
        const auto h2 = std::hash<std::int64_t>{}(r.den());
        return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
};
