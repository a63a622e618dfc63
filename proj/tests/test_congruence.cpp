#include "apfrac/cf.hpp"
#include "apfrac/congruence.hpp"
#include "apfrac/errors.hpp"

#include "doctest.h"

#include <optional>

using namespace apfrac;

TEST_CASE("constraints validate their canonical residue form") {
    Constraint c(Int(4), Int(2), Int(2), Int(1));
    CHECK(c.a == 4);
    CHECK(c.ab() == 8);
    CHECK_FALSE(c.homogeneous());
    CHECK(Constraint(Int(1), Int(1), Int(0), Int(0)).homogeneous());

    CHECK_THROWS_AS(Constraint(Int(2), Int(2), Int(2), Int(1)), PreconditionError);
    CHECK_THROWS_AS(Constraint(Int(2), Int(2), Int(1), Int(2)), PreconditionError);
    CHECK_THROWS_AS(Constraint(Int(0), Int(2), Int(0), Int(1)), PreconditionError);
    CHECK_THROWS_AS(Constraint(Int(2), Int(2), Int(-1), Int(1)), PreconditionError);

    Constraint p = Constraint::parse("4, 2, 2, 1");
    CHECK(p.a == 4);
    CHECK(p.b == 2);
    CHECK(p.r == 2);
    CHECK(p.s == 1);
    CHECK(Constraint::parse(p.to_string()).to_string() == p.to_string());
}

TEST_CASE("linear congruences solve exactly when the gcd divides the target") {
    auto ls = linear_solve(Int(6), Int(4), Int(10));
    REQUIRE(ls.has_value());
    CHECK(mod_floor(Int(6) * ls->x0 - 4, Int(10)) == 0);
    CHECK(ls->modulus == 5);
    CHECK_FALSE(linear_solve(Int(6), Int(3), Int(10)).has_value());

    // solutions enumerate as x0 + t*modulus
    for (int t = 0; t < 4; ++t) {
        CHECK(mod_floor(Int(6) * (ls->x0 + t * ls->modulus) - 4, Int(10)) == 0);
    }
}

TEST_CASE("congruence pairs combine through the chinese remainder step") {
    auto ps = pair_solve(Int(2), Int(2), Int(4), Int(3), Int(1), Int(5));
    REQUIRE(ps.has_value());
    CHECK(ps->x0 == 7);
    CHECK(ps->modulus == 10);

    // incompatible parity pair has no solution
    CHECK_FALSE(pair_solve(Int(2), Int(1), Int(4), Int(2), Int(0), Int(4)).has_value());

    // brute-force agreement on a small sweep
    for (long m1 = 2; m1 <= 6; ++m1) {
        for (long c1 = 0; c1 < m1; ++c1) {
            auto r = pair_solve(Int(3), Int(c1), Int(m1), Int(2), Int(1), Int(3));
            long expect = -1;
            for (long x = 0; x < m1 * 3; ++x) {
                if ((3 * x - c1) % m1 == 0 && (2 * x - 1) % 3 == 0) {
                    expect = x;
                    break;
                }
            }
            if (expect < 0) {
                CHECK_FALSE(r.has_value());
            } else {
                REQUIRE(r.has_value());
                CHECK(mod_floor(Int(3) * r->x0 - Int(c1), Int(m1)) == 0);
                CHECK(mod_floor(Int(2) * r->x0 - 1, Int(3)) == 0);
                CHECK(r->x0 == expect);
            }
        }
    }
}

TEST_CASE("annihilating digit pairs force the continuant divisibility") {
    // for any residues (alpha, beta) of consecutive continuants there are
    // digits i1, i2 in [1, b] with b | i2*(i1*beta + alpha) + beta
    for (long b = 1; b <= 12; ++b) {
        for (long al = 0; al < b; ++al) {
            for (long be = 0; be < b; ++be) {
                auto [i1, i2] = annihilating_pair(Int(al), Int(be), Int(b));
                CHECK(i1 >= 1);
                CHECK(i1 <= b);
                CHECK(i2 >= 1);
                CHECK(i2 <= b);
                const Int u1 = i1 * Int(be) + Int(al);
                const Int u2 = i2 * u1 + Int(be);
                CHECK(mod_floor(u2, Int(b)) == 0);
            }
        }
    }
}

TEST_CASE("reachability of progression targets matches the divisibility test") {
    RealEval ev(RealSpec::surd(Int(0), Int(2), Int(1)));
    ev.ensure_index(9);
    Constraint c(Int(2), Int(2), Int(1), Int(1));
    for (long k = 1; k <= 9; ++k) {
        const Int pk1 = ev.table().p(k - 1);
        const Int qk1 = ev.table().q(k - 1);
        // reachability of the convergent pair is the same statement as the
        // three divisibility conditions at index k
        CHECK(target_reachable(pk1, qk1, c) == uniform_conditions_met(k, ev.table(), c));
        // for sqrt2 and the odd/odd constraint this holds exactly at odd k
        CHECK(uniform_conditions_met(k, ev.table(), c) == (k % 2 == 1));
    }

    Constraint homog(Int(3), Int(4), Int(0), Int(0));
    for (long k = 1; k <= 9; ++k) {
        CHECK(uniform_conditions_met(k, ev.table(), homog));
    }
}
