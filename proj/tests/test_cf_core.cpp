#include "apfrac/cf.hpp"
#include "apfrac/errors.hpp"
#include "apfrac/functions.hpp"
#include "apfrac/real_spec.hpp"

#include "doctest.h"
#include "surd_oracle.hpp"

#include <random>
#include <vector>

using namespace apfrac;

namespace {

// shared surd fixtures: sqrt2, sqrt3, golden ratio, (1+sqrt7)/3
struct SurdFixture {
    long P, D, R;
};
const std::vector<SurdFixture> kSurds = {{0, 2, 1}, {0, 3, 1}, {1, 5, 2}, {1, 7, 3}};

std::vector<Int> random_digits(std::mt19937_64& rng, int count, long cap) {
    std::uniform_int_distribution<long> pick(1, cap);
    std::vector<Int> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(Int(pick(rng)));
    return out;
}

ConvergentTable table_of(const CFExpansion& cf, long kmax) {
    ConvergentTable t;
    for (long k = 0; k <= kmax; ++k) t.push_digit(cf.digit(k));
    return t;
}

}  // namespace

TEST_CASE("rational expansions terminate and reconstruct exactly") {
    auto cf = expand_rational(Int(355), Int(113));
    REQUIRE(cf.is_terminating());
    CHECK(cf.reconstruct() == make_rat(Int(355), Int(113)));
    // canonical form: the last digit of a non-integer expansion is >= 2
    CHECK(cf.digit(cf.last_index()) >= 2);

    auto digits = oracle::rational_digits(oracle::Zi(355), oracle::Zi(113));
    REQUIRE(cf.last_index() + 1 == static_cast<long>(digits.size()));
    for (long k = 0; k <= cf.last_index(); ++k) {
        CHECK(cf.digit(k) == Int(digits[static_cast<std::size_t>(k)].get_str()));
    }

    CHECK(expand_rational(Int(-7), Int(3)).reconstruct() == make_rat(Int(-7), Int(3)));
    CHECK(expand_rational(Int(0), Int(9)).reconstruct() == Rat(0));
    CHECK(expand_rational(Int(4), Int(1)).last_index() == 0);
}

TEST_CASE("surd expansions are eventually periodic with the classical digits") {
    for (const auto& f : kSurds) {
        CFExpansion cf = expand_surd(Int(f.P), Int(f.D), Int(f.R));
        REQUIRE(cf.is_periodic());
        oracle::SurdStream os{oracle::Zi(f.P), oracle::Zi(f.D), oracle::Zi(f.R)};
        for (long k = 0; k < 60; ++k) {
            CHECK(cf.digit(k) == Int(os.next().get_str()));
        }
    }

    CHECK(expand_surd(Int(0), Int(2), Int(1)).period_digits() == std::vector<Int>{Int(2)});
    CHECK(expand_surd(Int(1), Int(5), Int(2)).period_digits() == std::vector<Int>{Int(1)});
    CHECK(expand_surd(Int(0), Int(3), Int(1)).period_digits() ==
          std::vector<Int>{Int(1), Int(2)});
    // large single-digit period: sqrt(2501) = [50; 100, 100, ...]
    CHECK(expand_surd(Int(0), Int(2501), Int(1)).period_digits() == std::vector<Int>{Int(100)});

    // negative value: digits past a_0 stay positive
    CFExpansion neg = expand_surd(Int(-7), Int(3), Int(2));
    CHECK(neg.digit(0) < 0);
    oracle::SurdStream on{oracle::Zi(-7), oracle::Zi(3), oracle::Zi(2)};
    for (long k = 0; k < 30; ++k) {
        Int d = neg.digit(k);
        CHECK(d == Int(on.next().get_str()));
        if (k > 0) CHECK(d >= 1);
    }
}

TEST_CASE("convergent tables satisfy the determinant identity at every index") {
    std::mt19937_64 rng(20240901);
    for (int trial = 0; trial < 25; ++trial) {
        ConvergentTable t;
        oracle::Convergents cv;
        std::vector<Int> digits = random_digits(rng, 40, 10);
        digits[0] = Int(static_cast<long>(rng() % 11));  // a_0 in [0, 10]
        for (const Int& d : digits) {
            t.push_digit(d);
            cv.push(oracle::Zi(d.get_str()));
        }
        REQUIRE(t.max_index() == 39);
        for (long k = 0; k <= t.max_index(); ++k) {
            CHECK(t.p(k) == Int(cv.pk(k).get_str()));
            CHECK(t.q(k) == Int(cv.qk(k).get_str()));
            const Int det = t.q(k) * t.p(k - 1) - t.p(k) * t.q(k - 1);
            CHECK(det == t.determinant(k));
            CHECK(det == (k % 2 == 0 ? Int(1) : Int(-1)));
        }
    }
}

TEST_CASE("denominator ratios respect the digit bracket") {
    // a_{k+1} q_k < q_{k+1} <= (a_{k+1}+1) q_k, strict on the right as soon
    // as the denominators start growing
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Int> digits = random_digits(rng, 30, 9);
        ConvergentTable t;
        for (const Int& d : digits) t.push_digit(d);
        for (long k = 1; k + 1 <= t.max_index(); ++k) {
            const Int a_next = digits[static_cast<std::size_t>(k + 1)];
            CHECK(a_next * t.q(k) < t.q(k + 1));
            CHECK(t.q(k + 1) <= (a_next + 1) * t.q(k));
            if (t.q(k - 1) < t.q(k)) CHECK(t.q(k + 1) < (a_next + 1) * t.q(k));
        }
    }
}

TEST_CASE("convergent growth stays inside the digit product bounds") {
    std::mt19937_64 rng(4096);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Int> digits = random_digits(rng, 24, 10);
        digits[0] = Int(static_cast<long>(rng() % 4));  // small a_0 >= 0
        ConvergentTable t;
        for (const Int& d : digits) t.push_digit(d);
        Int qprod(1), qprod_hi(1);
        const Int head = Int(1) + digits[0] * digits[1];
        Int pprod(head), pprod_hi(head);
        for (long k = 1; k <= t.max_index(); ++k) {
            const Int& a = digits[static_cast<std::size_t>(k)];
            qprod *= a;
            qprod_hi *= a + 1;
            if (k >= 2) {
                pprod *= a;
                pprod_hi *= a + 1;
            }
            CHECK(qprod <= t.q(k));
            CHECK(t.q(k) <= qprod_hi);
            CHECK(qprod_hi <= pow_int(Int(2), static_cast<unsigned long>(k)) * qprod);
            CHECK(pprod <= t.p(k));
            CHECK(t.p(k) <= pprod_hi);
        }
    }
}

TEST_CASE("approximation errors shrink monotonically within the classical bracket") {
    const Rat width = make_rat(Int(1), pow_int(Int(2), 60));
    for (const auto& f : kSurds) {
        RealEval ev(RealSpec::surd(Int(f.P), Int(f.D), Int(f.R)));
        ev.ensure_index(21);
        Enclosure prev;
        for (long k = 0; k <= 20; ++k) {
            Enclosure eta = ev.eta(k, width);
            CHECK(eta.lo() > 0);
            if (k > 0) {
                auto smaller = eta.less_than(prev);
                CHECK((smaller && *smaller));
            }
            prev = eta;
            // 1/2 <= eta_k * q_{k+1} <= 1, certified from the enclosure
            Enclosure scaled = eta * Rat(ev.table().q(k + 1));
            CHECK(scaled.hi() <= 1);
            CHECK(scaled.lo() >= make_rat(1, 2));
        }

        // the same bracket holds under exact field arithmetic
        oracle::Convergents cv;
        oracle::SurdStream os{oracle::Zi(f.P), oracle::Zi(f.D), oracle::Zi(f.R)};
        for (int i = 0; i < 22; ++i) cv.push(os.next());
        for (long k = 0; k <= 20; ++k) {
            oracle::Quad eta =
                oracle::eta_exact(cv, k, oracle::Zi(f.P), oracle::Zi(f.D), oracle::Zi(f.R));
            oracle::Quad scaled = eta * oracle::Qi(cv.qk(k + 1));
            CHECK((scaled - oracle::Qi(1)).sign() <= 0);
            CHECK((scaled - oracle::Qi(1, 2)).sign() >= 0);
        }
    }
}

TEST_CASE("neighbour digit ratios satisfy the reciprocal identity") {
    // 1 + a_{k+1} phi_k = phi_k phi_{k+1} where phi_k = eta_{k-1} / eta_k
    RealEval ev(RealSpec::surd(Int(1), Int(5), Int(2)));
    const Rat width = make_rat(Int(1), pow_int(Int(2), 50));
    for (long k = 1; k <= 12; ++k) {
        Enclosure phik = ev.phi_ratio(k, width);
        Enclosure phik1 = ev.phi_ratio(k + 1, width);
        Enclosure residual = phik * phik1 - phik * Rat(ev.digit(k + 1)) - Rat(1);
        CHECK(residual.abs().hi() < make_rat(Int(1), pow_int(Int(2), 40)));
    }
}

TEST_CASE("cylinder intervals carry the exact determinant length") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<Int> digits = random_digits(rng, 9, 6);
        const Int a0 = Int(static_cast<long>(rng() % 3));
        CylinderInterval cyl = cylinder(a0, digits);
        ConvergentTable t;
        t.push_digit(a0);
        for (const Int& d : digits) t.push_digit(d);
        const long k = t.max_index();
        CHECK(cyl.length() == make_rat(Int(1), t.q(k) * (t.q(k) + t.q(k - 1))));
        CHECK(cyl.length() >= make_rat(Int(1), Int(2) * t.q(k) * t.q(k)));
        CHECK(cyl.length() <= make_rat(Int(1), t.q(k) * t.q(k)));
        CHECK(cyl.contains(t.value(k)));

        // any extension of the digit prefix stays inside
        std::vector<Int> longer = digits;
        longer.push_back(Int(3));
        longer.push_back(Int(1));
        ConvergentTable t2;
        t2.push_digit(a0);
        for (const Int& d : longer) t2.push_digit(d);
        CHECK(cyl.contains(t2.value(t2.max_index())));
    }
}

TEST_CASE("greedy decompositions tile every denominator") {
    for (const auto& f : kSurds) {
        RealEval ev(RealSpec::surd(Int(f.P), Int(f.D), Int(f.R)));
        for (long q = 1; q <= 300; ++q) {
            GreedyDecomp g = ev.greedy(Int(q));
            REQUIRE(g.k >= 1);
            const Int qk1 = ev.table().q(g.k - 1);
            const Int qk2 = ev.table().q(g.k - 2);
            CHECK(Int(q) == g.p * qk1 + qk2 + g.w);
            CHECK(g.p >= 1);
            CHECK(g.p <= ev.digit(g.k));
            CHECK(g.w >= 0);
            CHECK(g.w < qk1);
        }
        // Q = q_k recovers the recurrence row (k, a_k, 0)
        ev.ensure_index(8);
        for (long k = 2; k <= 8; ++k) {
            GreedyDecomp g = ev.greedy(ev.table().q(k));
            CHECK(g.k == k);
            CHECK(g.p == ev.digit(k));
            CHECK(g.w == 0);
        }
    }
}

TEST_CASE("real evaluations expose digits enclosures and exact values") {
    RealEval rat(RealSpec::rational(Int(22), Int(7)));
    CHECK(rat.exact());
    CHECK(rat.exact_value() == make_rat(Int(22), Int(7)));

    RealEval surd(RealSpec::surd(Int(0), Int(2), Int(1)));
    CHECK_FALSE(surd.exact());
    Enclosure e = surd.enclose_bits(80);
    CHECK(e.width() * Rat(pow_int(Int(2), 80)) <= 1);
    CHECK(e.lo() > Rat("1414213562/1000000000"));
    CHECK(e.hi() < Rat("1414213563/1000000000"));

    RealEval stream(RealSpec::digit_stream(Int(1), {Int(2), Int(2)}));
    CHECK(stream.horizon() == 2);
    CHECK_THROWS_AS(stream.digit(3), HorizonError);

    Enclosure wide = stream.enclose_width(make_rat(1, 8));
    CHECK(wide.width() <= make_rat(1, 8));
}

TEST_CASE("elementary enclosures match reference decimal digits") {
    Enclosure pi = pi_enclosure(128);
    CHECK(pi.lo() > Rat("31415926535897932384/10000000000000000000"));
    CHECK(pi.hi() < Rat("31415926535897932385/10000000000000000000"));

    Enclosure l2 = ln2_enclosure(96);
    CHECK(l2.lo() > Rat("693147180/1000000000"));
    CHECK(l2.hi() < Rat("693147181/1000000000"));

    Enclosure s11 = sin_enclosure(Rat(11), 96);
    CHECK(s11.hi() < Rat("-99999/100000"));

    Enclosure root = rational_power(Rat(2), Int(1), Int(2), 96);
    CHECK(root.lo() > Rat("14142135623/10000000000"));
    CHECK(root.hi() < Rat("14142135624/10000000000"));

    Enclosure ee = exp_rational(Rat(1), 96);
    CHECK(ee.lo() > Rat("27182818284/10000000000"));
    CHECK(ee.hi() < Rat("27182818285/10000000000"));
}

TEST_CASE("real specifications parse and round trip") {
    RealSpec a = RealSpec::parse("rat:-7/3");
    CHECK(a.kind() == RealKind::Rational);
    CHECK(a.rational_value() == make_rat(Int(-7), Int(3)));

    RealSpec b = RealSpec::parse("surd:(1+sqrt(5))/2");
    CHECK(b.kind() == RealKind::Surd);
    CHECK(RealSpec::parse(b.to_string()).to_string() == b.to_string());

    RealSpec c = RealSpec::parse("digits:1;2,2,2");
    CHECK(c.kind() == RealKind::DigitStream);
    CHECK(c.stream_a0() == 1);
    CHECK(c.stream_digits().size() == 3);

    RealSpec d = RealSpec::parse("surd:(-1+sqrt(2))/(-1)");
    CHECK(RealSpec::parse(d.to_string()).to_string() == d.to_string());

    CHECK_THROWS_AS(RealSpec::parse("surd:(1+sqrt(4))/2"), PreconditionError);
    CHECK_THROWS_AS(RealSpec::rational(Int(1), Int(0)), PreconditionError);
}
