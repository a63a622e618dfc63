#pragma once

#include <string>
#include <vector>

#include "apfrac/numeric.hpp"

namespace apfrac {

enum class RealKind { Rational, Surd, DigitStream };

/// Exact description of the target real: a rational p/q, a quadratic surd
/// (P + sqrt(D))/R with D a positive non-square, or an explicit partial
/// quotient prefix a0; a1, a2, ... whose horizon is hard (never extrapolated).
/// Decimal input is deliberately unsupported.
class RealSpec {
public:
    static RealSpec rational(const Int& p, const Int& q);
    static RealSpec rational(Rat value);
    static RealSpec surd(const Int& P, const Int& D, const Int& R);
    static RealSpec digit_stream(const Int& a0, std::vector<Int> digits);

    /// Accepts "rat:p/q", "surd:(P+sqrt(D))/R", "digits:a0;a1,a2,...".
    static RealSpec parse(const std::string& text);

    RealKind kind() const { return kind_; }
    bool is_rational() const { return kind_ == RealKind::Rational; }

    const Rat& rational_value() const;
    const Int& surd_p() const;
    const Int& surd_d() const;
    const Int& surd_r() const;
    const Int& stream_a0() const;
    const std::vector<Int>& stream_digits() const;
    long stream_horizon() const;  // largest valid digit index

    /// Round-trips through parse().
    std::string to_string() const;

private:
    RealSpec() = default;

    RealKind kind_ = RealKind::Rational;
    Rat rational_;
    Int p_, d_, r_;
    Int a0_;
    std::vector<Int> digits_;
};

/// Exact spec for (num/den) * xi.  Works for rationals and surds; digit
/// streams carry no closed form to rescale, so they are rejected.
/// Requires num != 0 and den != 0.
RealSpec scale_real(const RealSpec& xi, const Int& num, const Int& den);

} // namespace apfrac
