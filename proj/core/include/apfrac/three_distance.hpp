#pragma once

#include <string>
#include <vector>

#include "apfrac/cf.hpp"
#include "apfrac/enclosure.hpp"
#include "apfrac/numeric.hpp"
#include "apfrac/real_spec.hpp"

namespace apfrac {

/// One class of equal-length circular gaps.
struct GapEntry {
    Enclosure length;
    Int count;
};

/// Gap-length classes of the points frac(i*xi), i = 0..Q, on the circle R/Z.
/// Counts sum to Q+1; a class with count zero may be listed.
struct GapSpectrum {
    std::vector<GapEntry> entries;

    Int total_count() const;
};

/// Measures the spectrum by sorting the Q+1 points with certified enclosures
/// and grouping consecutive gaps by the index difference of their endpoints:
/// the gap running from frac(i*xi) up to frac(j*xi) has length frac((j-i)*xi),
/// so for irrational xi two gaps are equal exactly when their differences
/// agree. Entries come out sorted by enclosure endpoints. `width` is the
/// starting enclosure width for xi (any value <= 0 picks 1/(8Q(Q+1))); it is
/// halved until every comparison resolves, stopping at the tolerance cap.
/// Touches xi only through refined enclosures, never through its continued
/// fraction.
GapSpectrum gaps_direct(const RealSpec& xi, const Int& Q, const Rat& width = Rat(0),
                        const Tolerances& tol = Tolerances{});

/// Reads the spectrum off the decomposition Q = p*q_{k-1} + q_{k-2} + w:
/// lengths eta_{k-1}, eta_{k-2} - p*eta_{k-1}, eta_{k-2} - (p-1)*eta_{k-1}
/// with counts Q+1-q_{k-1}, w+1, q_{k-1}-w-1, in that order. The third length
/// equals the sum of the first two, and only the third count can be zero.
/// `width` bounds the eta enclosures (any value <= 0 picks 1/(8*Q*q_k)).
GapSpectrum gaps_predicted(const RealSpec& xi, const Int& Q, const Rat& width = Rat(0),
                           const Tolerances& tol = Tolerances{});

/// Outcome of matching the measured spectrum against the predicted one.
struct GapCheck {
    bool ok = false;
    GapSpectrum direct;
    GapSpectrum predicted;
    std::string note;  // empty when ok, otherwise names the first mismatch
};

/// Computes both spectra, pairs positive-count classes by enclosure overlap,
/// and refines both sides until every pairing is unambiguous or some class
/// provably matches nothing. ok means the pairing is a bijection whose paired
/// counts are exactly equal.
GapCheck verify(const RealSpec& xi, const Int& Q, const Tolerances& tol = Tolerances{});

} // namespace apfrac
