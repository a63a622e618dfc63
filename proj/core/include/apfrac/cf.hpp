#pragma once

#include <vector>

#include "apfrac/enclosure.hpp"
#include "apfrac/errors.hpp"
#include "apfrac/numeric.hpp"
#include "apfrac/real_spec.hpp"

namespace apfrac {

/// Continued fraction [a0; a1, a2, ...]. Three shapes: terminating (rational
/// value, canonical: never ends in 1 except the bare [a0]), eventually
/// periodic (quadratic surd; digits regenerate forever from the stored
/// period), or a hard-horizon prefix (digit stream input).
class CFExpansion {
public:
    static CFExpansion terminating(Int a0, std::vector<Int> digits);
    static CFExpansion eventually_periodic(Int a0, std::vector<Int> digits, long preperiod);
    static CFExpansion prefix(Int a0, std::vector<Int> digits);

    /// a_k; k = 0 gives a0. Throws HorizonError past the last valid index.
    Int digit(long k) const;

    /// Largest valid digit index; kUnbounded for periodic expansions.
    long horizon() const;

    bool is_terminating() const { return shape_ == Shape::Terminating; }
    bool is_periodic() const { return shape_ == Shape::Periodic; }
    bool is_prefix() const { return shape_ == Shape::Prefix; }

    /// Index of the last digit of a terminating expansion.
    long last_index() const;

    /// Number of digits a_1.. before the period starts (periodic only).
    long preperiod() const;
    long period_length() const;
    std::vector<Int> period_digits() const;

    /// Exact value of a terminating expansion.
    Rat reconstruct() const;

    std::string to_string() const;

private:
    enum class Shape { Terminating, Periodic, Prefix };

    CFExpansion() = default;

    Shape shape_ = Shape::Terminating;
    Int a0_;
    std::vector<Int> digits_;  // a_1 onward; for periodic: preperiod then one period
    long preperiod_ = 0;       // periodic only
};

/// Euclidean expansion of p/q, canonical form.
CFExpansion expand_rational(const Int& p, const Int& q);

/// Periodic expansion of (P + sqrt(D))/R, D a positive non-square, R != 0.
CFExpansion expand_surd(const Int& P, const Int& D, const Int& R);

/// Dispatch on the spec's kind (digit streams become prefixes).
CFExpansion expand(const RealSpec& spec);

/// Rows (k, p_k, q_k) for k >= -2, with p_{-1}=1, q_{-1}=0, p_{-2}=0,
/// q_{-2}=1. Every appended row keeps gcd(p_k,q_k)=1 and the determinant
/// q_k p_{k-1} - p_k q_{k-1} = (-1)^k.
class ConvergentTable {
public:
    ConvergentTable();

    void push_digit(const Int& a);  // appends row k = max_index()+1
    long max_index() const { return static_cast<long>(p_.size()) - 3; }

    const Int& p(long k) const;
    const Int& q(long k) const;
    Rat value(long k) const;  // p_k/q_k

    /// q_k p_{k-1} - p_k q_{k-1}; equals (-1)^k.
    Int determinant(long k) const;

private:
    std::vector<Int> p_, q_;  // index k stored at k+2
};

/// Unique writing Q = p*q_{k-1} + q_{k-2} + w with k >= 1, 1 <= p <= a_k,
/// 0 <= w < q_{k-1}.
struct GreedyDecomp {
    long k = 0;
    Int p;
    Int w;
};

/// Half-open interval of all reals whose expansion starts a0; digits.
struct CylinderInterval {
    Rat lo, hi;
    bool lo_closed = true, hi_closed = false;

    Rat length() const { return hi - lo; }
    bool contains(const Rat& x) const {
        if (x < lo || x > hi) return false;
        if (x == lo) return lo_closed;
        if (x == hi) return hi_closed;
        return true;
    }
};

CylinderInterval cylinder(const Int& a0, const std::vector<Int>& digits);

/// Evaluation context: a spec, its expansion, and a growing convergent table,
/// with certified enclosures for xi, eta_k, phi_k. One instance per thread;
/// construction is cheap.
class RealEval {
public:
    explicit RealEval(const RealSpec& spec, Tolerances tol = Tolerances{});

    const RealSpec& spec() const { return spec_; }
    const CFExpansion& cf() const { return cf_; }
    const ConvergentTable& table() const { return table_; }
    const Tolerances& tolerances() const { return tol_; }

    /// Extends the table through index k; HorizonError if the digits end first.
    void ensure_index(long k);

    /// Largest index the table can reach (digit horizon).
    long horizon() const { return cf_.horizon(); }
    Int digit(long k) const { return cf_.digit(k); }

    bool exact() const { return cf_.is_terminating(); }
    Rat exact_value() const;

    /// Enclosure of xi with width <= width. For prefixes the best achievable
    /// width is the cylinder length at the horizon; beyond it, HorizonError.
    Enclosure enclose_width(const Rat& width);
    Enclosure enclose_bits(long bits);

    /// eta_k = (-1)^k (q_k xi - p_k) > 0, k >= -1; eta_{-1} = 1 exactly.
    Enclosure eta(long k, const Rat& width);

    /// phi_k = (q_k xi - p_k)/(q_{k-1} xi - p_{k-1}) = -eta_k/eta_{k-1}, k >= 1.
    Enclosure phi_ratio(long k, const Rat& width);

    GreedyDecomp greedy(const Int& Q);

private:
    RealSpec spec_;
    CFExpansion cf_;
    ConvergentTable table_;
    Tolerances tol_;
    long sandwich_index_ = 0;  // last convergent pair used for enclose_width
};

/// One-shot enclosure of the spec's value with width <= width.
Enclosure refine_to(const RealSpec& spec, const Rat& width);

} // namespace apfrac
