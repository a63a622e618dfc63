#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "apfrac/congruence.hpp"
#include "apfrac/enclosure.hpp"
#include "apfrac/numeric.hpp"

namespace apfrac {

/// Smallest-prime-factor sieve with phi precomputed; mu and omega derived on
/// demand by factoring through spf. Queries are read-only and thread-safe.
class SieveTable {
public:
    explicit SieveTable(std::uint32_t limit);

    std::uint32_t limit() const { return limit_; }
    std::uint32_t spf(std::uint32_t n) const;   // n >= 2
    std::uint64_t phi(std::uint32_t n) const;   // n >= 1
    int mobius(std::uint32_t n) const;          // n >= 1
    int omega(std::uint32_t n) const;           // n >= 1
    std::vector<std::uint32_t> prime_divisors(std::uint32_t n) const;  // distinct, ascending
    const std::vector<std::uint32_t>& primes() const { return primes_; }

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> phi_;
    std::vector<std::uint32_t> primes_;
};

/// Exact #{m >= 0 : 0 <= am+r <= x, gcd(am+r, q) = 1} by Mobius inversion
/// over the squarefree divisors of q. Requires gcd(a,r,q)=1 and x >= 0;
/// q must be within the sieve.
Int coprime_progression_count(const SieveTable& sieve, const Int& x, const Int& q, const Int& a,
                              const Int& r);

/// Main term of the coprime progression count as an exact rational:
/// x*g/(qa) * phi(q/g) with g the largest divisor of q whose primes all
/// divide a, so the count minus this stays bounded by a multiple of 2^omega(q).
Rat coprime_main_term(const SieveTable& sieve, const Int& x, const Int& q, const Int& a,
                      const Int& r);

/// Exact sum of phi(uk+v) over k with 1 <= uk+v <= Q (u >= 1, v >= 0).
/// Sieves directly up to `direct_limit` and streams segments beyond it.
Int phi_progression_sum(const Int& u, const Int& v, const Int& Q,
                        std::uint32_t direct_limit = 2'000'000);

/// The quadratic coefficient C(u,v) of that sum: with g = gcd(u,v) (gcd(u,0)=u),
/// C = phi(g)/g / (2u * zeta(2) * prod_{p | u} (1 - 1/p^2)), zeta(2) = pi^2/6.
Enclosure c_constant(const Int& u, const Int& v, long bits = 128);

/// Open interval with rational endpoints.
struct RationalInterval {
    Rat lo, hi;

    bool empty() const { return lo >= hi; }
    bool contains_fraction(const Int& num, const Int& den) const {
        // num/den in (lo,hi) strictly; den >= 1
        return num * lo.get_den() > lo.get_num() * den && num * hi.get_den() < hi.get_num() * den;
    }
};

/// Denominator subsequence N = u*t + v along which every prime dividing
/// gcd(a,r) is kept out of N (CRT construction). Requires gcd(a,b,r,s)=1.
std::pair<Int, Int> regular_subsequence(const Constraint& c);

/// Exact #{(m,N) : N in the subsequence, Q/2 <= N <= Q, gcd(am+r, N)=1,
/// (am+r)/N in I}; equivalently the number of distinct reduced fractions.
Int regular_system_count(const Constraint& c, const RationalInterval& I, const Int& Q);

} // namespace apfrac
