#pragma once

#include "apfrac/enclosure.hpp"

namespace apfrac {

// Certified enclosures of the transcendental values the project needs. Every
// function returns an interval of width at most about 2^-bits that provably
// contains the true value; callers that need a decision refine `bits` upward.

Enclosure pi_enclosure(long bits);
Enclosure e_enclosure(long bits);
Enclosure ln2_enclosure(long bits);

/// Natural log of a positive rational.
Enclosure log_enclosure(const Rat& x, long bits);

/// Natural log over an interval with positive lower endpoint.
Enclosure log_enclosure(const Enclosure& x, long bits);

Enclosure sin_enclosure(const Rat& x, long bits);

/// x^(num/den) for x >= 0 (x > 0 when num < 0), den >= 1.
Enclosure rational_power(const Rat& x, const Int& num, const Int& den, long bits);
Enclosure rational_power(const Enclosure& x, const Int& num, const Int& den, long bits);

/// e^(p/q) for a small rational exponent.
Enclosure exp_rational(const Rat& exponent, long bits);

} // namespace apfrac
