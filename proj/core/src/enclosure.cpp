#include "apfrac/enclosure.hpp"

#include <algorithm>

namespace apfrac {

Enclosure::Enclosure(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw PreconditionError("enclosure endpoints out of order");
}

Enclosure Enclosure::hull(const Enclosure& a, const Enclosure& b) {
    return Enclosure(rat_min(a.lo_, b.lo_), rat_max(a.hi_, b.hi_));
}

Enclosure Enclosure::operator*(const Enclosure& o) const {
    // Endpoint products; four candidates, exact rationals, no rounding.
    Rat c1 = lo_ * o.lo_;
    Rat c2 = lo_ * o.hi_;
    Rat c3 = hi_ * o.lo_;
    Rat c4 = hi_ * o.hi_;
    Rat lo = rat_min(rat_min(c1, c2), rat_min(c3, c4));
    Rat hi = rat_max(rat_max(c1, c2), rat_max(c3, c4));
    return Enclosure(std::move(lo), std::move(hi));
}

Enclosure Enclosure::operator*(const Rat& x) const {
    if (sgn(x) >= 0) return Enclosure(lo_ * x, hi_ * x);
    return Enclosure(hi_ * x, lo_ * x);
}

Enclosure Enclosure::operator/(const Rat& x) const {
    if (sgn(x) == 0) throw PreconditionError("division of enclosure by zero");
    if (sgn(x) > 0) return Enclosure(lo_ / x, hi_ / x);
    return Enclosure(hi_ / x, lo_ / x);
}

Enclosure Enclosure::operator/(const Enclosure& o) const {
    if (sgn(o.lo_) <= 0 && sgn(o.hi_) >= 0) {
        throw PreconditionError("division by an enclosure containing zero");
    }
    Rat r1 = 1 / o.lo_;
    Rat r2 = 1 / o.hi_;
    return *this * Enclosure(rat_min(r1, r2), rat_max(r1, r2));
}

Enclosure Enclosure::abs() const {
    if (sgn(lo_) >= 0) return *this;
    if (sgn(hi_) <= 0) return Enclosure(-hi_, -lo_);
    return Enclosure(Rat(0), rat_max(-lo_, hi_));
}

Enclosure Enclosure::pow(unsigned long n) const {
    Enclosure acc = Enclosure::exact(Rat(1));
    Enclosure base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Enclosure Enclosure::pow_out(unsigned long n, long bits) const {
    Enclosure acc = Enclosure::exact(Rat(1));
    Enclosure base = round_out(bits);
    while (n > 0) {
        if (n & 1) acc = (acc * base).round_out(bits);
        base = (base * base).round_out(bits);
        n >>= 1;
    }
    return acc;
}

Rat dyadic_floor(const Rat& x, long bits) {
    // floor(x * 2^bits) / 2^bits
    Int scale = Int(1) << bits;
    Int num = floor_rat(Rat(x.get_num() * scale, x.get_den()));
    Rat r(num, scale);
    r.canonicalize();
    return r;
}

Rat dyadic_ceil(const Rat& x, long bits) {
    Int scale = Int(1) << bits;
    Int num = ceil_rat(Rat(x.get_num() * scale, x.get_den()));
    Rat r(num, scale);
    r.canonicalize();
    return r;
}

Enclosure Enclosure::round_out(long bits) const {
    return Enclosure(dyadic_floor(lo_, bits), dyadic_ceil(hi_, bits));
}

std::optional<bool> Enclosure::less_than(const Rat& x) const {
    if (hi_ < x) return true;
    if (lo_ >= x) return false;
    return std::nullopt;
}

std::optional<bool> Enclosure::less_equal(const Rat& x) const {
    if (hi_ <= x) return true;
    if (lo_ > x) return false;
    return std::nullopt;
}

std::optional<bool> Enclosure::greater_than(const Rat& x) const {
    if (lo_ > x) return true;
    if (hi_ <= x) return false;
    return std::nullopt;
}

std::optional<bool> Enclosure::less_than(const Enclosure& o) const {
    if (hi_ < o.lo_) return true;
    if (lo_ >= o.hi_) return false;
    return std::nullopt;
}

std::optional<int> Enclosure::sign() const {
    if (sgn(lo_) > 0) return 1;
    if (sgn(hi_) < 0) return -1;
    if (lo_ == 0 && hi_ == 0) return 0;
    return std::nullopt;
}

Enclosure Enclosure::min(const Enclosure& a, const Enclosure& b) {
    return Enclosure(rat_min(a.lo_, b.lo_), rat_min(a.hi_, b.hi_));
}

Enclosure Enclosure::max(const Enclosure& a, const Enclosure& b) {
    return Enclosure(rat_max(a.lo_, b.lo_), rat_max(a.hi_, b.hi_));
}

std::string decimal_string(const Rat& x, int digits, int dir) {
    Int pow10 = pow_int(Int(10), static_cast<unsigned long>(digits));
    Rat scaled = x * Rat(pow10);
    Int units = dir < 0 ? floor_rat(scaled) : ceil_rat(scaled);
    bool neg = sgn(units) < 0;
    Int mag = neg ? Int(-units) : units;
    Int ip = mag / pow10;
    Int fp = mag % pow10;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), static_cast<size_t>(digits) - frac.size(), '0');
    std::string out = neg ? "-" : "";
    out += ip.get_str();
    if (digits > 0) out += "." + frac;
    return out;
}

std::string Enclosure::decimal_lo(int digits) const { return decimal_string(lo_, digits, -1); }
std::string Enclosure::decimal_hi(int digits) const { return decimal_string(hi_, digits, +1); }

Enclosure operator*(const Rat& x, const Enclosure& e) { return e * x; }
Enclosure operator+(const Rat& x, const Enclosure& e) { return e + x; }

} // namespace apfrac
