#pragma once

#include <optional>
#include <string>
#include <utility>

#include "apfrac/cf.hpp"
#include "apfrac/numeric.hpp"

namespace apfrac {

/// Progression pair: numerators range over aZ+r, denominators over bZ+s,
/// with a,b >= 1, 0 <= r < a, 0 <= s < b.
struct Constraint {
    Int a, b, r, s;

    Constraint(Int a_, Int b_, Int r_, Int s_);

    bool homogeneous() const { return sgn(r) == 0 && sgn(s) == 0; }
    Int ab() const { return a * b; }

    /// Accepts "a,b,r,s".
    static Constraint parse(const std::string& text);
    std::string to_string() const;
};

/// Solution set x0 + modulus*Z of a congruence system.
struct CongruenceSolution {
    Int x0;
    Int modulus;
};

/// Simultaneous a1*x = b1 (mod m1), a2*x = b2 (mod m2); empty when unsolvable
/// (equivalently: gcd(m1,a1) | b1 and gcd(m2,a2) | b2 and
/// gcd(a1*m2, a2*m1) | (a1*b2 - a2*b1) all hold iff solvable).
std::optional<CongruenceSolution> pair_solve(const Int& a1, const Int& b1, const Int& m1,
                                             const Int& a2, const Int& b2, const Int& m2);

/// Single congruence a*x = b (mod m), m >= 1.
std::optional<CongruenceSolution> linear_solve(const Int& a, const Int& b, const Int& m);

/// Whether some integer t has t*u = r (mod a) and t*v = s (mod b), i.e. the
/// reduced fraction u/v is a limit point of (am+r)/(bn+s) grids.
bool target_reachable(const Int& u, const Int& v, const Constraint& c);

/// The divisibility tests at index k (k >= 1) controlling whether the
/// convergent p_{k-1}/q_{k-1} can be scaled into both progressions:
/// gcd(p_{k-1},a)|r, gcd(q_{k-1},b)|s, gcd(b*p_{k-1}, a*q_{k-1}) | (s*p_{k-1}-r*q_{k-1}).
bool uniform_conditions_met(long k, const ConvergentTable& table, const Constraint& c);

/// Continuant annihilator: digits (i1,i2) in [1,b] such that the recurrence
/// u1 = i1*u0 + u_{-1}, u2 = i2*u1 + u0 started from u_{-1}=alpha, u0=beta
/// reaches u2 = 0 (mod b). Always exists.
std::pair<Int, Int> annihilating_pair(const Int& alpha, const Int& beta, const Int& b);

} // namespace apfrac
