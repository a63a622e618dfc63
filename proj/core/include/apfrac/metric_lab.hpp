#pragma once

#include "apfrac/congruence.hpp"
#include "apfrac/enclosure.hpp"
#include "apfrac/numeric.hpp"
#include "apfrac/real_spec.hpp"
#include "apfrac/uniform.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace apfrac {

/// Measure of [lo, hi] under dx/((1+x) log 2), as the exact log argument
/// plus a certified enclosure.  Satisfies lambda/(2 log 2) <= value <=
/// lambda/log 2 for the interval length lambda.
struct GaussMeasure {
    Rat odds;         ///< (1+hi)/(1+lo)
    Enclosure value;  ///< log(odds)/log 2
    std::string expression() const;
};

/// Requires 0 <= lo <= hi <= 1.
GaussMeasure gauss_measure(const Rat& lo, const Rat& hi, long bits = 96);

/// Uniform draw from (lo, hi) with on-demand bit extension.  The dyadic
/// stream is fixed by (seed, index) alone, so partitioning samples across
/// threads cannot change any value.  Continued fraction digits are emitted
/// only once both interval endpoints force them.
class SampledReal {
  public:
    SampledReal(unsigned long seed, long index, const Rat& lo, const Rat& hi,
                const Tolerances& tol = {});

    /// Enclosure of width at most 2^-bits.
    Enclosure enclose_bits(long bits);

    /// Certified digit a_k, k >= 0.  Throws PrecisionCapError if the digit
    /// stays pinned to a dyadic boundary past the precision cap.
    const Int& digit(long k);

    /// Denominator q_k of the extracted expansion, k >= -1.
    const Int& denominator(long k);

    long bits_drawn() const { return tbits_; }

  private:
    void extend();
    bool try_digit();

    std::mt19937_64 rng_;
    Rat lo_, span_;
    Int num_{0};
    long tbits_ = 0;
    Tolerances tol_;
    std::vector<Int> digits_, ps_, qs_;
};

/// Digit prefix of the (seed, index) sample, frozen into a plain value.
RealSpec sample_real(unsigned long seed, long index, const Rat& lo, const Rat& hi,
                     long digits, const Tolerances& tol = {});

/// Threshold sequence phi(k) = max(1, floor(scale * k^power)).
struct PhiSeq {
    Rat scale{1};
    long power = 0;

    Int at(long k) const;
    static PhiSeq parse(const std::string& text);  // "scale,power"
    std::string to_string() const;
};

/// Block-digit event family: at each index j = c*k the event asks for the
/// block (a_j, ..., a_{j+d-1}) prescribed by the rule and a_{j+d} >= phi(j).
struct BBTrialSpec {
    Int A{1};                      ///< digit alphabet cap of the block rule
    long d = 1;                    ///< block length; 0 drops the block condition
    long c = 2;                    ///< index spacing, c >= d+1 (c >= 1 when d = 0)
    PhiSeq phi;
    std::vector<Int> fixed_block;  ///< size d when the rule is one constant block
    Int target_modulus{0};         ///< b >= 1 switches to the vanishing-block rule

    bool lemma_rule() const { return sgn(target_modulus) > 0; }
    void validate() const;
    std::string to_string() const;
};

/// One row of a survival curve: samples still alive at Q.
struct SurvivalPoint {
    Int Q;
    long survivors = 0;
    long undecided = 0;
    Rat fraction;
};

/// Outcome of one seeded experiment.  Identical (seed, parameters) give an
/// identical report, bit for bit, at any thread count.  outcomes[i] is the
/// verdict of sample i: 1 hit (or survived), 0 miss, 2 undecided.
struct TrialReport {
    std::string experiment;
    unsigned long seed = 0;
    long sample_count = 0;
    std::string params;
    std::vector<int> outcomes;
    long hits = 0;
    long misses = 0;
    long undecided = 0;
    Rat fraction;               ///< hits / sample_count, in [0,1]
    double std_error = 0;       ///< sqrt(f(1-f)/n)
    Enclosure block_sum;        ///< khintchine: sum of n * psi(bn+s) over the block
    std::vector<SurvivalPoint> curve;  ///< survival: one row per grid Q
    Enclosure divergent_floor;  ///< block-digit: log2 / (64 (2A)^{4d})
    Rat convergent_tail;        ///< block-digit: 2 * sum of 1/phi(ck)
};

/// Fraction of samples in (0,1) with at least one certified hit
/// |xi - (am+r)/N| < psi(N) for an admissible N = bn+s in [block_lo, block_hi]
/// (and gcd(am+r, N) = gcd(a,b,r,s) when require_gcd is set).  Requires
/// 1 <= block_lo < block_hi and psi nonincreasing.
TrialReport khintchine_block_trial(const Constraint& c, const PsiSpec& psi,
                                   const Int& block_lo, const Int& block_hi, long samples,
                                   unsigned long seed, bool require_gcd, long threads = 1,
                                   const Tolerances& tol = {});

/// Survival curve: for each grid Q, the fraction of samples whose minimal
/// progression distance stayed within psi at every Q' up to Q.  Requires
/// psi nonincreasing, Q*psi(Q) nondecreasing, and a positive strictly
/// increasing grid.  The curve is nonincreasing in Q.
TrialReport uniform_survival(const Constraint& c, const PsiSpec& psi, long samples,
                             const std::vector<Int>& q_grid, unsigned long seed,
                             long threads = 1, const Tolerances& tol = {});

/// Fraction of samples hitting at least one block-digit event with
/// k in [k_lo, k_hi].  Digit comparisons are exact, so the only undecided
/// samples are those pinned to a dyadic boundary at the precision cap.
TrialReport borel_bernstein_trial(const BBTrialSpec& spec, long samples, long k_lo,
                                  long k_hi, unsigned long seed, long threads = 1,
                                  const Tolerances& tol = {});

}  // namespace apfrac
