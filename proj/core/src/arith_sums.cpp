#include "apfrac/arith_sums.hpp"

#include <algorithm>

#include "apfrac/functions.hpp"

namespace apfrac {

SieveTable::SieveTable(std::uint32_t limit) : limit_(limit) {
    if (limit < 1) throw PreconditionError("sieve limit must be >= 1");
    spf_.assign(limit + 1, 0);
    phi_.assign(limit + 1, 0);
    phi_[1] = 1;
    // Linear sieve: each n crossed once by its smallest prime.
    for (std::uint32_t n = 2; n <= limit; ++n) {
        if (spf_[n] == 0) {
            spf_[n] = n;
            phi_[n] = n - 1;
            primes_.push_back(n);
        }
        for (std::uint32_t p : primes_) {
            if (p > spf_[n] || static_cast<std::uint64_t>(p) * n > limit) break;
            std::uint32_t pn = p * n;
            spf_[pn] = p;
            phi_[pn] = (n % p == 0) ? phi_[n] * p : phi_[n] * (p - 1);
        }
    }
}

std::uint32_t SieveTable::spf(std::uint32_t n) const {
    if (n < 2 || n > limit_) throw PreconditionError("spf query out of sieve range");
    return spf_[n];
}

std::uint64_t SieveTable::phi(std::uint32_t n) const {
    if (n < 1 || n > limit_) throw PreconditionError("phi query out of sieve range");
    return phi_[n];
}

int SieveTable::mobius(std::uint32_t n) const {
    if (n < 1 || n > limit_) throw PreconditionError("mobius query out of sieve range");
    int sign = 1;
    while (n > 1) {
        std::uint32_t p = spf_[n];
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    return sign;
}

int SieveTable::omega(std::uint32_t n) const {
    if (n < 1 || n > limit_) throw PreconditionError("omega query out of sieve range");
    int count = 0;
    while (n > 1) {
        std::uint32_t p = spf_[n];
        ++count;
        while (n % p == 0) n /= p;
    }
    return count;
}

std::vector<std::uint32_t> SieveTable::prime_divisors(std::uint32_t n) const {
    if (n < 1 || n > limit_) throw PreconditionError("factor query out of sieve range");
    std::vector<std::uint32_t> out;
    while (n > 1) {
        std::uint32_t p = spf_[n];
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    return out;
}

namespace {

std::uint32_t to_u32(const Int& n, const char* what) {
    if (sgn(n) < 0 || !n.fits_ulong_p() || n.get_ui() > 0xffffffffUL) {
        throw PreconditionError(std::string(what) + " out of 32-bit range: " + n.get_str());
    }
    return static_cast<std::uint32_t>(n.get_ui());
}

// #{m >= 0 : 0 <= am+r <= x, am+r = 0 (mod d)} for a,d >= 1.
Int progression_class_count(const Int& x, const Int& a, const Int& r, const Int& d) {
    Int top = floor_div(x - r, a);  // m in [0, top]
    if (sgn(top) < 0) return Int(0);
    Int g = gcd(a, d);
    if (!divides(g, r)) return Int(0);
    Int dd = d / g;
    // m = m0 (mod dd) with m0 = (-r/g) * inv(a/g) mod dd
    Int m0 = mod_floor(-(r / g) * inv_mod(mod_floor(a / g, dd), dd), dd);
    if (m0 > top) return Int(0);
    return floor_div(top - m0, dd) + 1;
}

} // namespace

Int coprime_progression_count(const SieveTable& sieve, const Int& x, const Int& q, const Int& a,
                              const Int& r) {
    if (sgn(x) < 0) throw PreconditionError("count range x must be >= 0");
    if (q < 1 || a < 1) throw PreconditionError("q and a must be >= 1");
    if (gcd(gcd(a, r), q) != 1) throw PreconditionError("hypothesis gcd(a,r,q)=1 violated");
    std::uint32_t qs = to_u32(q, "q");
    auto primes = sieve.prime_divisors(qs);
    // Mobius over squarefree divisors d of q: sum mu(d) * #(class d).
    Int total(0);
    std::uint32_t np = static_cast<std::uint32_t>(primes.size());
    for (std::uint32_t mask = 0; mask < (1u << np); ++mask) {
        Int d(1);
        int bits = 0;
        for (std::uint32_t i = 0; i < np; ++i) {
            if (mask & (1u << i)) {
                d *= primes[i];
                ++bits;
            }
        }
        Int c = progression_class_count(x, a, r, d);
        total += (bits % 2 == 0) ? c : -c;
    }
    return total;
}

Rat coprime_main_term(const SieveTable& sieve, const Int& x, const Int& q, const Int& a,
                      const Int& r) {
    if (sgn(x) < 0) throw PreconditionError("count range x must be >= 0");
    if (q < 1 || a < 1) throw PreconditionError("q and a must be >= 1");
    if (gcd(gcd(a, r), q) != 1) throw PreconditionError("hypothesis gcd(a,r,q)=1 violated");
    // g = largest divisor of q all of whose primes divide a; q/g is then
    // coprime to a and x*g/(qa)*phi(q/g) = (x/a) * prod_{p|q, p!|a} (1-1/p),
    // the density of the progression members coprime to q.
    Int g = gcd(q, a);
    for (Int h = gcd(q / g, g); h != 1; h = gcd(q / g, g)) g *= h;
    Int qg = q / g;
    Int phi_qg(sieve.phi(to_u32(qg, "q over its shared-prime part")));
    return Rat(x) * make_rat(g, q * a) * Rat(phi_qg);
}

namespace {

// phi for every n in [lo, hi] via the prime list (covering sqrt(hi)),
// reported through fn(n, phi(n)); used for segments past the direct sieve.
template <typename F>
void phi_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint32_t>& primes,
                 F&& fn) {
    std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::uint64_t> rem(len), phi(len);
    for (std::size_t i = 0; i < len; ++i) {
        rem[i] = lo + i;
        phi[i] = lo + i;
    }
    for (std::uint32_t p : primes) {
        if (static_cast<std::uint64_t>(p) * p > hi) break;
        std::uint64_t first = ((lo + p - 1) / p) * p;
        for (std::uint64_t n = first; n <= hi; n += p) {
            std::size_t i = static_cast<std::size_t>(n - lo);
            phi[i] -= phi[i] / p;
            while (rem[i] % p == 0) rem[i] /= p;
        }
    }
    for (std::size_t i = 0; i < len; ++i) {
        if (rem[i] > 1) phi[i] -= phi[i] / rem[i];  // one prime factor > sqrt(hi)
        fn(lo + i, phi[i]);
    }
}

} // namespace

Int phi_progression_sum(const Int& u, const Int& v, const Int& Q, std::uint32_t direct_limit) {
    if (u < 1 || sgn(v) < 0) throw PreconditionError("progression needs u >= 1, v >= 0");
    Int first = sgn(v) == 0 ? u : v;  // the k=0 term phi(0) never exists
    if (Q < first) return Int(0);
    std::uint64_t uu = u.get_ui(), vv = first.get_ui(), QQ = Q.get_ui();
    if (!u.fits_ulong_p() || !first.fits_ulong_p() || !Q.fits_ulong_p() || QQ > (1ull << 40)) {
        throw PreconditionError("progression sum range too large");
    }
    Int total(0);
    if (QQ <= direct_limit) {
        SieveTable sieve(static_cast<std::uint32_t>(QQ));
        std::uint64_t acc = 0;
        for (std::uint64_t n = vv; n <= QQ; n += uu) {
            acc += sieve.phi(static_cast<std::uint32_t>(n));
            if (acc >= (1ull << 62)) {
                total += Int(acc);
                acc = 0;
            }
        }
        total += Int(acc);
        return total;
    }
    // Segmented: primes up to sqrt(Q) suffice to strip all small factors.
    std::uint64_t root = static_cast<std::uint64_t>(isqrt(Q).get_ui());
    SieveTable base(static_cast<std::uint32_t>(std::max<std::uint64_t>(root + 1, 2)));
    const std::uint64_t seg = 1u << 20;
    std::uint64_t acc = 0;
    for (std::uint64_t lo = vv; lo <= QQ; ) {
        std::uint64_t hi = std::min(QQ, lo + ((seg / uu) ? (seg / uu) * uu : uu) - 1);
        // Walk only progression members inside [lo, hi].
        std::uint64_t span_lo = lo, span_hi = hi;
        phi_segment(span_lo, span_hi, base.primes(), [&](std::uint64_t n, std::uint64_t ph) {
            if ((n - vv) % uu == 0) acc += ph;
        });
        if (acc >= (1ull << 62)) {
            total += Int(acc);
            acc = 0;
        }
        lo = hi + 1;
    }
    total += Int(acc);
    return total;
}

Enclosure c_constant(const Int& u, const Int& v, long bits) {
    if (u < 1 || sgn(v) < 0) throw PreconditionError("constant needs u >= 1, v >= 0");
    Int g = sgn(v) == 0 ? u : gcd(u, v);
    // phi(g)/g and prod_{p|u}(1 - 1/p^2) computed exactly from the factorization.
    std::uint32_t gu = to_u32(g, "gcd(u,v)");
    std::uint32_t uu = to_u32(u, "u");
    SieveTable sieve(std::max({gu, uu, 2u}));
    Rat phi_ratio = make_rat(Int(sieve.phi(gu)), g);
    Rat prod(1);
    for (std::uint32_t p : sieve.prime_divisors(uu)) {
        prod *= make_rat(Int(static_cast<unsigned long>(p) * p - 1),
                         Int(static_cast<unsigned long>(p) * p));
    }
    // C = phi(g)/g * 3 / (u * pi^2 * prod)
    Rat rho = phi_ratio * Rat(3) / (Rat(u) * prod);
    Enclosure pi2 = pi_enclosure(bits + 8).pow(2);
    return Enclosure(Rat(rho)) / pi2;
}

std::pair<Int, Int> regular_subsequence(const Constraint& c) {
    if (gcd(gcd(c.a, c.b), gcd(c.r, c.s)) != 1) {
        throw PreconditionError("regular system needs gcd(a,b,r,s) = 1");
    }
    Int delta = sgn(c.r) == 0 ? c.a : gcd(c.a, c.r);
    if (delta == 1) return {c.b, c.s};
    // For each prime p | delta force bn+s != 0 (mod p): if p | b this already
    // holds (p cannot divide s too); otherwise pin n = (1-s)/b (mod p).
    std::uint32_t du = to_u32(delta, "gcd(a,r)");
    SieveTable sieve(std::max(du, 2u));
    Int n0(0), mod(1);
    for (std::uint32_t p : sieve.prime_divisors(du)) {
        Int pi(p);
        Int target = divides(pi, c.b) ? Int(1) : mod_floor((1 - c.s) * inv_mod(c.b, pi), pi);
        auto merged = pair_solve(Int(1), n0, mod, Int(1), target, pi);
        n0 = merged->x0;
        mod = merged->modulus;
    }
    return {c.b * mod, c.b * n0 + c.s};
}

Int regular_system_count(const Constraint& c, const RationalInterval& I, const Int& Q) {
    if (I.empty()) return Int(0);
    if (sgn(I.lo) < 0 || I.hi > c.a) throw PreconditionError("interval must lie inside (0,a)");
    auto [u, v] = regular_subsequence(c);
    if (Q < 1) return Int(0);
    Int half = ceil_rat(make_rat(Q, Int(2)));  // N >= Q/2
    Int startN = half < 1 ? Int(1) : half;
    Int t0 = startN <= v ? Int(0) : ceil_rat(make_rat(startN - v, u));
    Int count(0);
    for (Int N = u * t0 + v; N <= Q; N += u) {
        // Numerators y = am+r strictly inside (N*lo, N*hi).
        Int y_min = floor_div(N * I.lo.get_num(), I.lo.get_den()) + 1;  // > N*lo
        Int y_first = c.a * ceil_rat(make_rat(y_min - c.r, c.a)) + c.r;
        for (Int y = y_first; y * I.hi.get_den() < I.hi.get_num() * N; y += c.a) {
            if (gcd(y, N) == 1) count += 1;
        }
    }
    return count;
}

} // namespace apfrac
