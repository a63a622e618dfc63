#include "apfrac/arith_sums.hpp"
#include "apfrac/congruence.hpp"
#include "apfrac/errors.hpp"
#include "apfrac/functions.hpp"

#include "doctest.h"

#include <cstdint>
#include <utility>

using namespace apfrac;

TEST_CASE("sieve tables expose totient mobius and factor counts") {
    SieveTable sieve(6000);
    CHECK(sieve.phi(1) == 1);
    CHECK(sieve.phi(10) == 4);
    CHECK(sieve.phi(5040) == 1152);
    CHECK(sieve.mobius(1) == 1);
    CHECK(sieve.mobius(30) == -1);
    CHECK(sieve.mobius(12) == 0);
    CHECK(sieve.omega(1) == 0);
    CHECK(sieve.omega(8) == 1);
    CHECK(sieve.omega(30) == 3);

    // multiplicativity spot check against a direct gcd count
    for (std::uint32_t n : {12u, 35u, 97u, 360u, 5999u}) {
        long direct = 0;
        for (std::uint32_t k = 1; k <= n; ++k) {
            if (gcd(Int(k), Int(n)) == 1) ++direct;
        }
        CHECK(sieve.phi(n) == direct);
    }
}

TEST_CASE("coprime progression counts match brute enumeration") {
    SieveTable sieve(600);
    for (long q : {1L, 2L, 9L, 30L, 97L, 360L}) {
        for (auto [a, r] : {std::pair<long, long>{2, 1}, {3, 2}, {4, 1}, {1, 0}}) {
            if (gcd(gcd(Int(a), Int(r)), Int(q)) != 1) continue;
            const Int x(5000);
            Int brute(0);
            for (long n = r == 0 ? a : r; n <= 5000; n += a) {
                if (n >= 1 && gcd(Int(n), Int(q)) == 1) brute += 1;
            }
            // n = 0 contributes only for r = 0 and q = 1 in the closed count
            Int got = coprime_progression_count(sieve, x, Int(q), Int(a), Int(r));
            if (r == 0 && q == 1) brute += 1;
            CHECK(got == brute);
        }
    }
    CHECK(coprime_progression_count(sieve, Int(10), Int(1), Int(2), Int(1)) == 5);
    CHECK(coprime_progression_count(sieve, Int(20), Int(6), Int(2), Int(1)) == 7);
}

TEST_CASE("progression counts stay near the main term with a small error") {
    SieveTable sieve(2200);
    const Int x(100000);
    Rat worst(0);
    for (std::uint32_t q = 1; q <= 2000; ++q) {
        for (auto [a, r] : {std::pair<int, int>{2, 1}, {3, 2}, {4, 1}}) {
            if (gcd(gcd(Int(a), Int(r)), Int(q)) != 1) continue;
            const Int exact = coprime_progression_count(sieve, x, Int(q), Int(a), Int(r));
            const Rat err = rat_abs(Rat(exact) - coprime_main_term(sieve, x, Int(q), Int(a), Int(r)));
            const Rat bound = Rat(4 * a * (1L << sieve.omega(q)));
            CHECK(err <= bound);
            if (err / bound > worst) worst = err / bound;
        }
    }
    // the sweep should not even get close to the allowance
    CHECK(worst < make_rat(1, 2));
}

TEST_CASE("totient progression sums agree between direct and segmented paths") {
    CHECK(phi_progression_sum(Int(1), Int(0), Int(10)) == 32);
    CHECK(phi_progression_sum(Int(2), Int(1), Int(9)) == 19);
    CHECK(phi_progression_sum(Int(3), Int(2), Int(5000)) ==
          phi_progression_sum(Int(3), Int(2), Int(5000), 100));
    CHECK(phi_progression_sum(Int(1), Int(0), Int(4000), 50) ==
          phi_progression_sum(Int(1), Int(0), Int(4000)));
}

TEST_CASE("quadratic growth constants carry their closed form relations") {
    Enclosure c10 = c_constant(Int(1), Int(0));
    Enclosure target = Enclosure(Rat(3)) / pi_enclosure(160).pow(2);
    CHECK(c10.intersects(target));
    CHECK(rat_abs(c10.mid() - Rat("30396355/100000000")) < make_rat(Int(1), Int(50000000)));

    Enclosure c20 = c_constant(Int(2), Int(0));
    Enclosure c21 = c_constant(Int(2), Int(1));
    Enclosure c42 = c_constant(Int(4), Int(2));
    Enclosure c63 = c_constant(Int(6), Int(3));
    CHECK((c21 / Enclosure(Rat(2))).intersects(c20));
    CHECK((c42 * Enclosure(Rat(2))).intersects(c20));
    CHECK(c42.intersects(c63));

    // empirical ratio: the partial sum over u*n+v <= Q approaches C*Q^2
    const Int Q(20000);
    Int sum = phi_progression_sum(Int(2), Int(1), Q);
    Rat ratio = Rat(sum) / Rat(Q * Q);
    CHECK(rat_abs(ratio - c21.mid()) < make_rat(1, 100));
}

TEST_CASE("regular subsequences force coprimality against the numerator progression") {
    auto [u0, v0] = regular_subsequence(Constraint(Int(1), Int(1), Int(0), Int(0)));
    CHECK(u0 == 1);
    CHECK(v0 == 0);
    auto [u1, v1] = regular_subsequence(Constraint(Int(2), Int(2), Int(1), Int(1)));
    CHECK(u1 == 2);
    CHECK(v1 == 1);
    auto [u2, v2] = regular_subsequence(Constraint(Int(4), Int(2), Int(2), Int(1)));
    CHECK(u2 == 4);
    CHECK(v2 == 3);

    // every member of the subsequence is coprime to gcd(a, r)
    for (int n = 1; n <= 50; ++n) {
        CHECK(gcd(u2 * Int(n) + v2, gcd(Int(4), Int(2))) == 1);
    }
}

TEST_CASE("regular system counts match farey mass and brute enumeration") {
    RationalInterval I{Rat(0), Rat(1)};
    CHECK_FALSE(I.empty());
    CHECK(I.contains_fraction(Int(1), Int(2)));
    CHECK_FALSE(I.contains_fraction(Int(0), Int(2)));
    CHECK_FALSE(I.contains_fraction(Int(2), Int(2)));

    // unconstrained case: total totient mass over N in [Q/2, Q]
    Int farey = regular_system_count(Constraint(Int(1), Int(1), Int(0), Int(0)), I, Int(100));
    SieveTable sieve(101);
    Int expect(0);
    for (std::uint32_t n = 50; n <= 100; ++n) expect += Int(sieve.phi(n));
    CHECK(farey == expect);

    // shifted progressions against a brute double loop
    RationalInterval J{Rat(1), make_rat(Int(3), Int(2))};
    Constraint c(Int(3), Int(2), Int(1), Int(1));
    Int got = regular_system_count(c, J, Int(40));
    auto [uu, vv] = regular_subsequence(c);
    Int brute(0);
    for (Int N(20); N <= 40; N += 1) {
        if (N < vv || mod_floor(N - vv, uu) != 0) continue;
        for (Int y(-200); y <= 200; y += 1) {
            if (mod_floor(y - c.r, c.a) != 0) continue;
            if (!(Rat(y) > Rat(N) * J.lo && Rat(y) < Rat(N) * J.hi)) continue;
            if (gcd(y, N) == 1) brute += 1;
        }
    }
    CHECK(got == brute);
}
