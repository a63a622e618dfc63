#pragma once

#include <optional>
#include <string>

#include "apfrac/errors.hpp"
#include "apfrac/numeric.hpp"

namespace apfrac {

/// Working-precision budget for certified decisions. `init_bits` is the width
/// target 2^-init_bits of the first attempt; refinement doubles the bit count
/// until `cap_bits`, after which the decision errors out as indeterminate.
struct Tolerances {
    long init_bits = 128;
    long cap_bits = 1L << 16;
};

/// Closed interval [lo, hi] with exact rational endpoints, guaranteed to
/// contain the value it stands for. Arithmetic is outward-exact: +, -, * and
/// division by an interval not containing zero introduce no rounding at all.
/// Width control is explicit via round_out(), which snaps the endpoints to the
/// dyadic grid 2^-bits.
class Enclosure {
public:
    Enclosure() : lo_(0), hi_(0) {}
    explicit Enclosure(const Rat& point) : lo_(point), hi_(point) {}
    Enclosure(Rat lo, Rat hi);

    static Enclosure exact(const Rat& x) { return Enclosure(x); }
    static Enclosure exact(const Int& x) { return Enclosure(Rat(x)); }
    static Enclosure hull(const Enclosure& a, const Enclosure& b);

    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    Rat width() const { return hi_ - lo_; }
    Rat mid() const { return (lo_ + hi_) / 2; }
    bool is_point() const { return lo_ == hi_; }
    bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Enclosure& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
    bool intersects(const Enclosure& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }

    Enclosure operator+(const Enclosure& o) const { return Enclosure(lo_ + o.lo_, hi_ + o.hi_); }
    Enclosure operator-(const Enclosure& o) const { return Enclosure(lo_ - o.hi_, hi_ - o.lo_); }
    Enclosure operator-() const { return Enclosure(-hi_, -lo_); }
    Enclosure operator*(const Enclosure& o) const;
    Enclosure operator+(const Rat& x) const { return Enclosure(lo_ + x, hi_ + x); }
    Enclosure operator-(const Rat& x) const { return Enclosure(lo_ - x, hi_ - x); }
    Enclosure operator*(const Rat& x) const;
    Enclosure operator/(const Rat& x) const;

    /// Interval division; throws PreconditionError if `o` contains zero.
    Enclosure operator/(const Enclosure& o) const;

    Enclosure abs() const;

    /// Integer power with exact endpoints (use sparingly for large n; see pow_out).
    Enclosure pow(unsigned long n) const;

    /// Integer power with directed rounding to 2^-bits after every multiply,
    /// so huge exponents stay cheap.
    Enclosure pow_out(unsigned long n, long bits) const;

    /// Smallest enclosure with dyadic endpoints of denominator 2^bits.
    Enclosure round_out(long bits) const;

    /// Tri-state certified comparisons: nullopt when the intervals overlap.
    std::optional<bool> less_than(const Rat& x) const;      // value <  x
    std::optional<bool> less_equal(const Rat& x) const;     // value <= x
    std::optional<bool> greater_than(const Rat& x) const;   // value >  x
    std::optional<bool> less_than(const Enclosure& o) const;
    std::optional<int> sign() const;

    /// min/max of the true values, as enclosures.
    static Enclosure min(const Enclosure& a, const Enclosure& b);
    static Enclosure max(const Enclosure& a, const Enclosure& b);

    /// Decimal rendering: lo rounded down, hi rounded up, `digits` fractional digits.
    std::string decimal_lo(int digits) const;
    std::string decimal_hi(int digits) const;

private:
    Rat lo_, hi_;
};

Enclosure operator*(const Rat& x, const Enclosure& e);
Enclosure operator+(const Rat& x, const Enclosure& e);

/// Dyadic floor/ceil of a rational at scale 2^-bits.
Rat dyadic_floor(const Rat& x, long bits);
Rat dyadic_ceil(const Rat& x, long bits);

/// Decimal string of a rational with `digits` fractional digits, rounding
/// toward -inf (dir < 0) or +inf (dir > 0). Exact values print exactly.
std::string decimal_string(const Rat& x, int digits, int dir);

/// Run `attempt` with doubling precision until it yields a value, starting at
/// tol.init_bits and giving up (PrecisionCapError) past tol.cap_bits.
/// `attempt(bits)` returns std::optional<T>.
template <typename F>
auto refine_until(const Tolerances& tol, F&& attempt) {
    long bits = tol.init_bits;
    while (true) {
        if (auto r = attempt(bits)) return *r;
        if (bits >= tol.cap_bits) {
            throw PrecisionCapError("indeterminate sign at precision cap (" +
                                    std::to_string(tol.cap_bits) + " bits)");
        }
        bits = bits > tol.cap_bits / 2 ? tol.cap_bits : bits * 2;
    }
}

} // namespace apfrac
