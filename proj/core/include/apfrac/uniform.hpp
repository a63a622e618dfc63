#pragma once

#include <utility>
#include <vector>

#include "apfrac/asymptotic.hpp"
#include "apfrac/cf.hpp"
#include "apfrac/congruence.hpp"
#include "apfrac/enclosure.hpp"
#include "apfrac/numeric.hpp"
#include "apfrac/real_spec.hpp"

namespace apfrac {

/// Approximating function Psi(Q) = cc * (log(Q+e))^beta * Q^(-mu) on [1, oo),
/// together with QPsi(Q) = Q * Psi(Q).  cc > 0; mu, beta arbitrary rationals.
/// The monotonicity flags are certified symbolically from (mu, beta); a false
/// flag means "not certified", not "certified false".
class PsiSpec {
public:
    static PsiSpec power_log(const Rat& cc, const Rat& mu, const Rat& beta);

    /// Accepts "cc,mu,beta" with rational components ("1,1,0", "3/2,1,-1").
    static PsiSpec parse(const std::string& text);
    std::string to_string() const;

    const Rat& cc() const { return cc_; }
    const Rat& mu() const { return mu_; }
    const Rat& beta() const { return beta_; }

    bool psi_nonincreasing() const { return psi_nonincreasing_; }
    bool tilde_nondecreasing() const { return tilde_nondecreasing_; }

    /// Psi(Q), Q >= 1.  Exact point enclosure when beta = 0 and the power of Q
    /// is rational (integer exponent, or Q a perfect power).
    Enclosure psi(const Rat& q, long bits) const;

    /// QPsi(Q) = Q * Psi(Q), Q >= 1, same exactness note as psi().
    Enclosure psi_tilde(const Rat& q, long bits) const;

    /// inf of QPsi over [1, oo) = QPsi(1), available only when the
    /// nondecreasing flag is set; PreconditionError otherwise.
    Enclosure gamma(long bits) const;

    /// Certified kappa >= 1 with QPsi(Q) <= kappa * QPsi(2Q) for all Q >= 1.
    /// Equals 1 whenever QPsi is nondecreasing.
    Rat kappa(long bits) const;

    /// Certified eta >= 1 with QPsi(Q) <= eta * QPsi(ab(Q+1)) for all Q >= 1.
    /// Equals 1 whenever QPsi is nondecreasing.
    Rat eta(const Int& ab, long bits) const;

private:
    PsiSpec() = default;

    Rat cc_, mu_, beta_;
    bool psi_nonincreasing_ = false;
    bool tilde_nondecreasing_ = false;
};

/// Per-index record of the divisibility conditions along the convergents.
struct IndexReport {
    long k = 0;
    bool conditions_met = false;
    Int a_k;  // partial quotient at k
    Int q_k;  // convergent denominator at k
    Enclosure ratio;    // a_k / QPsi(q_k)
    Int ratio_ceiling;  // certified ceil of ratio (exact integer decision)
};

/// Condition scan over k = 1..kmax plus the smallest integer bound M that
/// dominates every failing index's ratio in range (0 when none fail).
/// unbounded_at_horizon is true when nothing beyond kmax can be certified:
/// it clears only for an always-met constraint, an expansion with no digits
/// past kmax, or a periodic expansion whose future ratios are bounded by the
/// nondecreasing QPsi.
struct CnsSummary {
    std::vector<IndexReport> reports;
    Int minimal_m;
    bool unbounded_at_horizon = true;

    /// Threshold ab*(q_{k0-1} + q_{k0-2}) where k0 = 1 + the largest failing
    /// index in range whose ratio exceeds M (k0 = 1, value ab, when none does).
    Int q0_for(const Int& m_bound) const;

    // Internal to q0_for: q_{-1}..q_{kmax} and the constraint's ab.
    std::vector<Int> q_prefix;
    Int ab_value;
};

CnsSummary cns_report(const RealSpec& xi, const Constraint& c, const PsiSpec& psi, long kmax,
                      const Tolerances& tol = {});

/// Integer Q in [qmin, qmax] sorted ascending, split into those where every
/// admissible denominator N = s (mod b), 1 <= N <= Q has certified
/// dist(N*xi, aZ + r) > Psi(Q) (failing) and those the precision cap could
/// not classify (undecided).  Requires the nonincreasing flag on psi.
struct ScanReport {
    std::vector<Int> failing;
    std::vector<Int> undecided;
};

ScanReport dirichlet_scan(const RealSpec& xi, const Constraint& c, const PsiSpec& psi,
                          const Int& qmin, const Int& qmax, int threads = 1,
                          const Tolerances& tol = {});

/// Constructive approximation for one real Q >= ab: greedy-decomposes
/// Qprime = floor(Q/(ab)) and builds (m, n) from the convergent pair at the
/// decomposition index.  Every trace satisfies, exactly in integers,
///   numerator = u*p_{k-2} + v*p_{k-1},  denominator = u*q_{k-2} + v*q_{k-1},
/// 0 <= u <= ab, 0 <= denominator <= Q, and carries the certified enclosure
/// of |u + v*phi_{k-1}| (strictly below 4ab).
struct WitnessTrace {
    Rat Q;
    Int q_prime;
    GreedyDecomp decomp;
    bool conditions_met = false;
    Int d;  // gcd(b*p_{k-1}, a*q_{k-1})
    Int u, v;
    Int m, n;
    Int numerator;    // a*m + r
    Int denominator;  // b*n + s
    Enclosure error;  // |xi*denominator - numerator|
    Enclosure bound_value;      // error / Psi(Q)
    Enclosure phi_combination;  // |u + v*phi_{k-1}|
};

WitnessTrace witness(const RealSpec& xi, const Constraint& c, const Rat& Q, const PsiSpec& psi,
                     const Tolerances& tol = {});

/// Certified value of 8(ab)^2 * kappa * eta * max{4M, 1/gamma} for the trace
/// bound: every witness at this psi has bound_value.hi below it once M
/// dominates the failing ratios up to the decomposition index.
Rat witness_bound(const PsiSpec& psi, const Constraint& c, const Int& m_bound, long bits);

/// Largest partial quotient (index >= 1) of b*xi/a, the digit bound entering
/// the inhomogeneous constant.  Digit streams are truncated to their horizon
/// convergent before rescaling; the flag reports that surrogate.
struct DigitBound {
    Int value;
    bool truncated = false;
};

DigitBound badly_digit_bound(const RealSpec& xi, const Constraint& c,
                             const Tolerances& tol = {});

/// Minimizer of |xi*N - (am+r) + alpha| over denominators N = bn+s in [1, Q],
/// reported with the Hit conventions of inhomogeneous_hits (error and quality
/// are for the shifted target (numerator - alpha)/N).  Q is real, Q >= 2b.
Hit badly_witness(const RealSpec& xi, const RealSpec& alpha, const Constraint& c, const Rat& Q,
                  const Tolerances& tol = {});

/// Running maximum of D(Q) = Q * min_{N <= Q} dist(N*xi, aZ + r) over integer
/// Q <= qmax, with its argmax.  D changes only at admissible denominators, so
/// candidates are the points just before each new N and qmax itself.
struct ExponentReport {
    Enclosure d_max;
    Int arg_q;
};

ExponentReport exponent_probe(const RealSpec& xi, const Constraint& c, const Int& qmax,
                              int threads = 1, const Tolerances& tol = {});

} // namespace apfrac
