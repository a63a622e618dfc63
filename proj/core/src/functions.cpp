#include "apfrac/functions.hpp"

#include <mutex>
#include <utility>

namespace apfrac {

namespace {

Rat two_pow_neg(long bits) { return make_rat(Int(1), Int(1) << bits); }

// atan(1/m) by the alternating series, truncated once the next term drops
// below 2^-bits. Remainder is bounded by that term.
Enclosure atan_inv(unsigned long m, long bits) {
    Rat eps = two_pow_neg(bits);
    Rat m2(static_cast<unsigned long>(m) * m);
    Rat term = make_rat(Int(1), Int(m));
    Rat sum = 0;
    unsigned long j = 0;
    while (true) {
        sum += (j % 2 == 0) ? term : -term;
        ++j;
        term = term * Rat(2 * j - 1) / (m2 * Rat(2 * j + 1));
        if (term <= eps) break;
    }
    if (j % 2 == 0) return Enclosure(sum, sum + term);
    return Enclosure(sum - term, sum);
}

// atanh(u) for 0 <= u <= 1/2; positive series, remainder <= 2 * next term.
Enclosure atanh_nonneg(const Rat& u, long bits) {
    if (sgn(u) == 0) return Enclosure(Rat(0));
    Rat eps = two_pow_neg(bits + 2);
    Rat u2 = u * u;
    Rat pow = u;
    Rat sum = 0;
    unsigned long j = 0;
    while (true) {
        sum += pow / Rat(2 * j + 1);
        ++j;
        pow = pow * u2;
        if (pow / Rat(2 * j + 1) <= eps) break;
    }
    return Enclosure(sum, sum + 2 * (pow / Rat(2 * j + 1)));
}

Enclosure atanh_signed(const Rat& u, long bits) {
    if (sgn(u) >= 0) return atanh_nonneg(u, bits);
    return -atanh_nonneg(-u, bits);
}

// sin by Taylor series at a point with |m| < 4.25. Terms alternate and
// decrease once (2j)(2j+1) exceeds m^2, so the dropped tail is bounded by
// the first omitted term. Every intermediate is rounded outward to a dyadic
// grid, keeping operand sizes proportional to the precision.
Enclosure sin_taylor(const Rat& m, long bits) {
    long work = bits + 16;
    Rat eps = two_pow_neg(bits + 2);
    Enclosure md = Enclosure::exact(m).round_out(work);
    Enclosure m2 = (md * md).round_out(work);
    Enclosure term = md;
    Enclosure sum = Enclosure::exact(Rat(0));
    unsigned long j = 0;
    while (true) {
        sum = (j % 2 == 0 ? sum + term : sum - term).round_out(work);
        ++j;
        term = (term * m2 / Rat((2 * j) * (2 * j + 1))).round_out(work);
        if (term.abs().hi() <= eps && Rat((2 * j + 2) * (2 * j + 3)) > m2.hi()) break;
    }
    Rat slack = term.abs().hi();
    return Enclosure(Rat(sum.lo() - slack), Rat(sum.hi() + slack));
}

// Monotone cache keyed by requested precision.
struct CachedValue {
    std::mutex mx;
    long bits = -1;
    Enclosure value;

    template <typename F> Enclosure get(long want, F&& compute) {
        std::lock_guard<std::mutex> lock(mx);
        if (want > bits) {
            value = compute(want);
            bits = want;
        }
        return value;
    }
};

long bit_length(const Int& n) {
    if (sgn(n) == 0) return 1;
    return static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

// Directed dyadic bound on y^(1/q) at scale 2^-bits, for rational y >= 0.
Rat nth_root_dir(const Rat& y, unsigned long q, long bits, bool upper) {
    if (sgn(y) < 0) throw PreconditionError("root of a negative value");
    Int scaled_num = y.get_num() << (bits * static_cast<long>(q));
    Int scale = Int(1) << bits;
    if (!upper) {
        Int n = scaled_num / y.get_den();  // floor; y >= 0
        Int r;
        mpz_root(r.get_mpz_t(), n.get_mpz_t(), q);
        return make_rat(r, scale);
    }
    Int n = ceil_rat(make_rat(scaled_num, y.get_den()));
    Int r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), q);
    if (!exact) r += 1;
    return make_rat(r, scale);
}

} // namespace

Enclosure pi_enclosure(long bits) {
    static CachedValue cache;
    return cache.get(bits, [](long b) {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
        Enclosure a = atan_inv(5, b + 8);
        Enclosure c = atan_inv(239, b + 8);
        return a * Rat(16) - c * Rat(4);
    });
}

Enclosure e_enclosure(long bits) {
    static CachedValue cache;
    return cache.get(bits, [](long b) {
        Rat eps = two_pow_neg(b + 2);
        Rat term = 1;
        Rat sum = 0;
        unsigned long k = 0;
        while (true) {
            sum += term;
            ++k;
            term /= Rat(k);
            if (term <= eps) break;
        }
        // Tail sum_{i>=k} 1/i! <= 2/k! once k >= 1.
        return Enclosure(sum, sum + 2 * term);
    });
}

Enclosure ln2_enclosure(long bits) {
    static CachedValue cache;
    return cache.get(bits,
                     [](long b) { return atanh_nonneg(make_rat(Int(1), Int(3)), b + 2) * Rat(2); });
}

Enclosure log_enclosure(const Rat& x, long bits) {
    if (sgn(x) <= 0) throw PreconditionError("log of a non-positive value");
    long b = bits + 4;
    // Reduce to t in [2/3, 4/3], x = 2^s * t; then |(t-1)/(t+1)| <= 1/5.
    long s = 0;
    Rat t = x;
    Rat hi_bound = make_rat(Int(4), Int(3));
    Rat lo_bound = make_rat(Int(2), Int(3));
    while (t > hi_bound) {
        t /= 2;
        ++s;
    }
    while (t < lo_bound) {
        t *= 2;
        --s;
    }
    Enclosure main = atanh_signed((t - 1) / (t + 1), b + 2) * Rat(2);
    if (s == 0) return main;
    long s_bits = bit_length(Int(s));
    return main + ln2_enclosure(b + s_bits) * Rat(static_cast<long>(s));
}

Enclosure log_enclosure(const Enclosure& x, long bits) {
    if (sgn(x.lo()) <= 0) throw PreconditionError("log over an interval touching zero");
    if (x.is_point()) return log_enclosure(x.lo(), bits);
    return Enclosure(log_enclosure(x.lo(), bits).lo(), log_enclosure(x.hi(), bits).hi());
}

Enclosure sin_enclosure(const Rat& x, long bits) {
    // Nearest multiple of 2*pi from a crude pi, then Taylor at the midpoint.
    long xb = bit_length(floor_rat(rat_abs(x))) + 2;
    Enclosure pi_crude = pi_enclosure(xb + 16);
    Int k = round_rat(x / (pi_crude.mid() * 2));
    long kb = bit_length(k) + 2;
    Enclosure y = Enclosure::exact(x) - pi_enclosure(bits + kb + 8) * Rat(2 * k);
    Rat half_width = y.width() / 2;
    Enclosure s = sin_taylor(y.mid(), bits + 2);
    return Enclosure(rat_max(Rat(-1), s.lo() - half_width), rat_min(Rat(1), s.hi() + half_width));
}

Enclosure rational_power(const Rat& x, const Int& num, const Int& den, long bits) {
    if (sgn(den) <= 0) throw PreconditionError("power denominator must be positive");
    if (sgn(x) < 0) throw PreconditionError("rational power of a negative base");
    Int g = gcd(num, den);
    Int p = num / g, q = den / g;
    if (sgn(p) == 0) return Enclosure(Rat(1));
    if (sgn(x) == 0) {
        if (sgn(p) > 0) return Enclosure(Rat(0));
        throw PreconditionError("negative power of zero");
    }
    if (!fits_long(p) || !fits_long(q)) throw PreconditionError("power exponent too large");
    bool invert = sgn(p) < 0;
    unsigned long pu = static_cast<unsigned long>(invert ? -to_long(p) : to_long(p));
    unsigned long qu = static_cast<unsigned long>(to_long(q));
    Int ynum, yden;
    mpz_pow_ui(ynum.get_mpz_t(), x.get_num().get_mpz_t(), pu);
    mpz_pow_ui(yden.get_mpz_t(), x.get_den().get_mpz_t(), pu);
    Rat y = make_rat(ynum, yden);
    if (qu == 1) {
        if (invert) return Enclosure(1 / y);
        return Enclosure(y);
    }
    long b = bits + 4;
    while (true) {
        Rat lo = nth_root_dir(y, qu, b, false);
        Rat hi = nth_root_dir(y, qu, b, true);
        if (!invert) return Enclosure(lo, hi);
        if (sgn(lo) > 0) return Enclosure(1 / hi, 1 / lo);
        b *= 2;  // y < 2^(-b*q); deepen until the root clears zero
    }
}

Enclosure rational_power(const Enclosure& x, const Int& num, const Int& den, long bits) {
    if (sgn(num) == 0) return Enclosure(Rat(1));
    if (sgn(num) > 0) {
        return Enclosure(rational_power(x.lo(), num, den, bits).lo(),
                         rational_power(x.hi(), num, den, bits).hi());
    }
    return Enclosure(rational_power(x.hi(), num, den, bits).lo(),
                     rational_power(x.lo(), num, den, bits).hi());
}

Enclosure exp_rational(const Rat& exponent, long bits) {
    if (sgn(exponent) == 0) return Enclosure(Rat(1));
    Rat a = rat_abs(exponent);
    Int p = a.get_num(), q = a.get_den();
    if (!fits_long(p) || !fits_long(q)) throw PreconditionError("exp exponent too large");
    unsigned long pu = static_cast<unsigned long>(to_long(p));
    unsigned long qu = static_cast<unsigned long>(to_long(q));
    long b = bits + 4 + 2 * static_cast<long>(pu);
    Enclosure ep = e_enclosure(b).pow(pu);
    Enclosure r = qu == 1 ? ep
                          : Enclosure(nth_root_dir(ep.lo(), qu, b, false),
                                      nth_root_dir(ep.hi(), qu, b, true));
    if (sgn(exponent) > 0) return r;
    return Enclosure(Rat(1)) / r;
}

} // namespace apfrac
