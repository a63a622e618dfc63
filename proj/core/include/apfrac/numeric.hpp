#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "apfrac/errors.hpp"

namespace apfrac {

using Int = mpz_class;
using Rat = mpq_class;

/// Index value meaning "no bound" (surd expansions never run out of digits).
inline constexpr long kUnbounded = std::numeric_limits<long>::max();

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// g = gcd(a,b) together with x,y such that a*x + b*y = g.
inline Int gcd_ext(const Int& a, const Int& b, Int& x, Int& y) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline bool divides(const Int& d, const Int& n) {
    if (d == 0) return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Floor division (rounds toward -inf); denominator must be nonzero.
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Nonnegative remainder a - b*floor(a/b).
inline Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0 && sgn(base) == 0) throw PreconditionError("negative power of zero");
    Rat r;
    unsigned long m = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), m);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), m);
    r.canonicalize();
    if (e < 0) r = Rat(1) / r;
    return r;
}

inline Int floor_rat(const Rat& x) { return floor_div(x.get_num(), x.get_den()); }

inline Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

/// Nearest integer to x; half-way cases round toward +inf.
inline Int round_rat(const Rat& x) { return floor_rat(x + Rat(1, 2)); }

/// Nearest element of the progression {step*k + offset : k in Z} to x (step > 0).
inline Int nearest_in_progression(const Rat& x, const Int& step, const Int& offset) {
    Int k = round_rat((x - Rat(offset)) / Rat(step));
    return step * k + offset;
}

/// Canonicalized rational from a numerator/denominator pair.
inline Rat make_rat(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw PreconditionError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Inverse of a modulo m (m >= 1): the x in [0,m) with a*x = 1 (mod m).
inline Int inv_mod(const Int& a, const Int& m) {
    if (m < 1) throw PreconditionError("modulus must be >= 1");
    if (m == 1) return Int(0);
    Int x;
    if (mpz_invert(x.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw PreconditionError(a.get_str() + " is not invertible mod " + m.get_str());
    }
    return x;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

inline bool fits_long(const Int& n) { return n.fits_slong_p(); }

inline long to_long(const Int& n) { return n.get_si(); }

inline std::string to_string(const Int& n) { return n.get_str(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

/// Strict base-10 integer parse: optional sign then digits, nothing else.
inline Int parse_int(const std::string& s) {
    if (s.empty()) throw PreconditionError("empty integer literal");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw PreconditionError("bare sign is not an integer: '" + s + "'");
    for (size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') {
            throw PreconditionError("malformed integer literal: '" + s + "'");
        }
    }
    return Int(s);
}

/// Strict rational parse: "p" or "p/q" with strict integer halves, q != 0.
inline Rat parse_rat(const std::string& s) {
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (sgn(den) == 0) throw PreconditionError("zero denominator: '" + s + "'");
    return make_rat(num, den);
}

} // namespace apfrac
