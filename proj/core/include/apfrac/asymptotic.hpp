#pragma once

#include <utility>
#include <vector>

#include "apfrac/cf.hpp"
#include "apfrac/congruence.hpp"
#include "apfrac/enclosure.hpp"
#include "apfrac/real_spec.hpp"

namespace apfrac {

/// One certified solution of |xi - (am+r)/(bn+s)| <= factor * ab/(bn+s)^2.
struct Hit {
    Int m;
    Int n;
    Int N;          // bn+s, always >= 1
    Int numerator;  // am+r
    Enclosure error;    // |xi - numerator/N|
    Enclosure quality;  // N^2 * error / (ab); certified <= the search factor
};

/// All pairs (m,n) with 1 <= bn+s <= qmax whose approximation error is
/// certified <= factor * ab / (bn+s)^2, ordered by denominator.
/// factor = 0 yields hits only when xi is rational and exactly representable.
std::vector<Hit> brute_hits(const RealSpec& xi, const Constraint& c, const Rat& factor,
                            const Int& qmax, int threads = 1, const Tolerances& tol = {});

/// Hit totals at each cutoff of an ascending denominator grid.
std::vector<std::pair<Int, long>> hit_counts(const RealSpec& xi, const Constraint& c,
                                             const Rat& factor, const std::vector<Int>& qgrid,
                                             int threads = 1, const Tolerances& tol = {});

/// Shifted variant: certified solutions of |xi*(bn+s) - (am+r) + alpha| <=
/// factor * ab/(bn+s).  error and quality fields are reported for the
/// shifted target (y - alpha)/N so that alpha = 0 reproduces brute_hits.
std::vector<Hit> inhomogeneous_hits(const RealSpec& xi, const RealSpec& alpha,
                                    const Constraint& c, const Rat& factor, const Int& qmax,
                                    int threads = 1, const Tolerances& tol = {});

/// Minimum certified quality over all hits at factor 1 up to qmax: an
/// empirical upper bound for the liminf of N^2|xi - y/N|/(ab).  Monotone
/// nonincreasing in qmax.  Throws if no denominator <= qmax is admissible.
Enclosure approximation_constant(const RealSpec& xi, const Constraint& c, const Int& qmax,
                                 int threads = 1, const Tolerances& tol = {});

/// Running extrema of (sin(n*xi + alpha))^n for n = 1..nmax.
/// Entry k-1 encloses the extremum over the first k terms, so running_min
/// is nonincreasing and running_max nondecreasing endpoint-wise.
/// Caller guarantees xi is not a rational multiple of pi; that hypothesis
/// is not machine-checkable for digit streams.
struct TrigProbe {
    std::vector<Enclosure> running_min;
    std::vector<Enclosure> running_max;
};
TrigProbe trig_probe(const RealSpec& xi, const RealSpec& alpha, long nmax,
                     const Tolerances& tol = {});

} // namespace apfrac
