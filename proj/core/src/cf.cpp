#include "apfrac/cf.hpp"

#include <map>
#include <utility>

namespace apfrac {

CFExpansion CFExpansion::terminating(Int a0, std::vector<Int> digits) {
    for (const Int& d : digits) {
        if (d < 1) throw PreconditionError("partial quotients a_k must be >= 1 for k >= 1");
    }
    // Canonical form: [..., x, 1] = [..., x+1].
    if (!digits.empty() && digits.back() == 1) {
        digits.pop_back();
        if (digits.empty()) {
            a0 += 1;
        } else {
            digits.back() += 1;
        }
    }
    CFExpansion cf;
    cf.shape_ = Shape::Terminating;
    cf.a0_ = std::move(a0);
    cf.digits_ = std::move(digits);
    return cf;
}

CFExpansion CFExpansion::eventually_periodic(Int a0, std::vector<Int> digits, long preperiod) {
    if (preperiod < 0 || preperiod >= static_cast<long>(digits.size())) {
        throw PreconditionError("periodic expansion needs a nonempty period");
    }
    for (const Int& d : digits) {
        if (d < 1) throw PreconditionError("partial quotients a_k must be >= 1 for k >= 1");
    }
    CFExpansion cf;
    cf.shape_ = Shape::Periodic;
    cf.a0_ = std::move(a0);
    cf.digits_ = std::move(digits);
    cf.preperiod_ = preperiod;
    return cf;
}

CFExpansion CFExpansion::prefix(Int a0, std::vector<Int> digits) {
    for (const Int& d : digits) {
        if (d < 1) throw PreconditionError("partial quotients a_k must be >= 1 for k >= 1");
    }
    CFExpansion cf;
    cf.shape_ = Shape::Prefix;
    cf.a0_ = std::move(a0);
    cf.digits_ = std::move(digits);
    return cf;
}

Int CFExpansion::digit(long k) const {
    if (k < 0) throw PreconditionError("digit index must be >= 0");
    if (k == 0) return a0_;
    long i = k - 1;  // position within digits_
    long n = static_cast<long>(digits_.size());
    if (shape_ == Shape::Periodic) {
        if (i < preperiod_) return digits_[i];
        long period = n - preperiod_;
        return digits_[preperiod_ + (i - preperiod_) % period];
    }
    if (i >= n) {
        throw HorizonError("digit index " + std::to_string(k) + " is past the horizon " +
                           std::to_string(n));
    }
    return digits_[i];
}

long CFExpansion::horizon() const {
    if (shape_ == Shape::Periodic) return kUnbounded;
    return static_cast<long>(digits_.size());
}

long CFExpansion::last_index() const {
    if (shape_ != Shape::Terminating) throw PreconditionError("expansion does not terminate");
    return static_cast<long>(digits_.size());
}

long CFExpansion::preperiod() const {
    if (shape_ != Shape::Periodic) throw PreconditionError("expansion is not periodic");
    return preperiod_;
}

long CFExpansion::period_length() const {
    if (shape_ != Shape::Periodic) throw PreconditionError("expansion is not periodic");
    return static_cast<long>(digits_.size()) - preperiod_;
}

std::vector<Int> CFExpansion::period_digits() const {
    if (shape_ != Shape::Periodic) throw PreconditionError("expansion is not periodic");
    return std::vector<Int>(digits_.begin() + preperiod_, digits_.end());
}

Rat CFExpansion::reconstruct() const {
    if (shape_ != Shape::Terminating) throw PreconditionError("expansion does not terminate");
    if (digits_.empty()) return Rat(a0_);
    Rat tail(digits_.back());
    for (auto it = digits_.rbegin() + 1; it != digits_.rend(); ++it) tail = Rat(*it) + 1 / tail;
    return Rat(a0_) + 1 / tail;
}

std::string CFExpansion::to_string() const {
    std::string out = "[" + a0_.get_str();
    if (!digits_.empty()) out += "; ";
    for (long i = 0; i < static_cast<long>(digits_.size()); ++i) {
        if (shape_ == Shape::Periodic && i == preperiod_) out += "(";
        out += digits_[i].get_str();
        if (i + 1 < static_cast<long>(digits_.size())) out += ", ";
    }
    if (shape_ == Shape::Periodic) out += ")";
    if (shape_ == Shape::Prefix) out += ", ...";
    return out + "]";
}

CFExpansion expand_rational(const Int& p, const Int& q) {
    if (q < 1) throw PreconditionError("rational expansion needs q >= 1");
    Rat value = make_rat(p, q);
    Int num = value.get_num(), den = value.get_den();
    Int a0 = floor_div(num, den);
    std::vector<Int> digits;
    Int rem = num - a0 * den;
    // Euclid on (den, rem); quotients are the digits, last one automatically >= 2.
    while (sgn(rem) != 0) {
        Int a = den / rem;
        digits.push_back(a);
        Int next = den - a * rem;
        den = rem;
        rem = next;
    }
    return CFExpansion::terminating(std::move(a0), std::move(digits));
}

CFExpansion expand_surd(const Int& P_in, const Int& D_in, const Int& R_in) {
    RealSpec::surd(P_in, D_in, R_in);  // shared validation (positivity, non-square, R != 0)
    Int P = P_in, D = D_in, R = R_in;
    if (!divides(R, D - P * P)) {
        Int a = abs(R);
        P *= a;
        D *= R * R;
        R *= a;
    }
    Int s = isqrt(D);
    auto digit_of = [&s](const Int& P_k, const Int& R_k) {
        // floor((P + sqrt(D))/R); sqrt(D) irrational, so the rational proxy
        // P+s (R>0) or P+s+1 (R<0) has the same floor.
        if (sgn(R_k) > 0) return floor_div(P_k + s, R_k);
        return floor_div(P_k + s + 1, R_k);
    };
    Int a0 = digit_of(P, R);
    Int Pk = a0 * R - P;
    Int Rk = (D - Pk * Pk) / R;
    std::vector<Int> digits;
    std::map<std::pair<Int, Int>, long> seen;  // state before extracting a_k, k >= 1
    long k = 1;
    while (true) {
        auto state = std::make_pair(Pk, Rk);
        auto it = seen.find(state);
        if (it != seen.end()) {
            long start = it->second;  // digits a_start .. a_{k-1} repeat
            digits.resize(k - 1);
            return CFExpansion::eventually_periodic(std::move(a0), std::move(digits), start - 1);
        }
        seen.emplace(state, k);
        Int a = digit_of(Pk, Rk);
        digits.push_back(a);
        Int Pn = a * Rk - Pk;
        Int Rn = (D - Pn * Pn) / Rk;
        Pk = Pn;
        Rk = Rn;
        ++k;
    }
}

CFExpansion expand(const RealSpec& spec) {
    switch (spec.kind()) {
    case RealKind::Rational:
        return expand_rational(spec.rational_value().get_num(), spec.rational_value().get_den());
    case RealKind::Surd:
        return expand_surd(spec.surd_p(), spec.surd_d(), spec.surd_r());
    case RealKind::DigitStream:
        return CFExpansion::prefix(spec.stream_a0(), spec.stream_digits());
    }
    throw PreconditionError("corrupt real spec");
}

ConvergentTable::ConvergentTable() {
    p_ = {Int(0), Int(1)};  // k = -2, -1
    q_ = {Int(1), Int(0)};
}

void ConvergentTable::push_digit(const Int& a) {
    long k = max_index() + 1;
    if (k >= 1 && a < 1) throw PreconditionError("partial quotients a_k must be >= 1 for k >= 1");
    size_t n = p_.size();
    p_.push_back(a * p_[n - 1] + p_[n - 2]);
    q_.push_back(a * q_[n - 1] + q_[n - 2]);
}

const Int& ConvergentTable::p(long k) const {
    if (k < -2 || k > max_index()) throw PreconditionError("convergent index out of range");
    return p_[k + 2];
}

const Int& ConvergentTable::q(long k) const {
    if (k < -2 || k > max_index()) throw PreconditionError("convergent index out of range");
    return q_[k + 2];
}

Rat ConvergentTable::value(long k) const {
    if (sgn(q(k)) == 0) throw PreconditionError("convergent q_k is zero at k = " + std::to_string(k));
    return make_rat(p(k), q(k));
}

Int ConvergentTable::determinant(long k) const {
    return q(k) * p(k - 1) - p(k) * q(k - 1);
}

CylinderInterval cylinder(const Int& a0, const std::vector<Int>& digits) {
    ConvergentTable table;
    table.push_digit(a0);
    for (const Int& d : digits) table.push_digit(d);
    long k = static_cast<long>(digits.size());
    Rat apex = table.value(k);
    Rat mediant = make_rat(table.p(k) + table.p(k - 1), table.q(k) + table.q(k - 1));
    CylinderInterval c;
    if (k % 2 == 0) {
        c.lo = apex;
        c.hi = mediant;
        c.lo_closed = true;
        c.hi_closed = false;
    } else {
        c.lo = mediant;
        c.hi = apex;
        c.lo_closed = false;
        c.hi_closed = true;
    }
    return c;
}

RealEval::RealEval(const RealSpec& spec, Tolerances tol)
    : spec_(spec), cf_(expand(spec)), tol_(tol) {
    table_.push_digit(cf_.digit(0));
}

void RealEval::ensure_index(long k) {
    while (table_.max_index() < k) table_.push_digit(cf_.digit(table_.max_index() + 1));
}

Rat RealEval::exact_value() const {
    if (!exact()) throw PreconditionError("value is not exactly representable");
    return spec_.rational_value();
}

Enclosure RealEval::enclose_width(const Rat& width) {
    if (sgn(width) <= 0) throw PreconditionError("enclosure width must be positive");
    if (exact()) return Enclosure(exact_value());
    // Cylinder at index j has length 1/(q_j (q_j + q_{j-1})); walk j upward
    // until it fits. Digit exhaustion on a prefix surfaces as HorizonError.
    long j = sandwich_index_;
    ensure_index(j);
    while (true) {
        // length <= width  <=>  width.num * q_j (q_j+q_{j-1}) >= width.den
        Int prod = table_.q(j) * (table_.q(j) + table_.q(j - 1));
        if (width.get_num() * prod >= width.get_den()) break;
        if (j + 1 > cf_.horizon()) {
            throw HorizonError("requested width needs digits past the horizon");
        }
        ensure_index(j + 1);
        ++j;
    }
    sandwich_index_ = j;
    Rat apex = table_.value(j);
    Rat mediant = make_rat(table_.p(j) + table_.p(j - 1), table_.q(j) + table_.q(j - 1));
    return Enclosure(rat_min(apex, mediant), rat_max(apex, mediant));
}

Enclosure RealEval::enclose_bits(long bits) {
    return enclose_width(make_rat(Int(1), Int(1) << bits));
}

Enclosure RealEval::eta(long k, const Rat& width) {
    if (k < -1) throw PreconditionError("eta index must be >= -1");
    if (sgn(width) <= 0) throw PreconditionError("enclosure width must be positive");
    if (k == -1) return Enclosure(Rat(1));
    ensure_index(k);
    Rat pk(table_.p(k)), qk(table_.q(k));
    if (exact()) {
        Rat e = qk * exact_value() - pk;
        return Enclosure(k % 2 == 0 ? e : -e);
    }
    Enclosure xi = enclose_width(width / qk);
    Enclosure e = xi * qk - pk;
    return k % 2 == 0 ? e : -e;
}

Enclosure RealEval::phi_ratio(long k, const Rat& width) {
    if (k < 1) throw PreconditionError("phi index must be >= 1");
    if (sgn(width) <= 0) throw PreconditionError("enclosure width must be positive");
    ensure_index(k);
    if (exact()) {
        Rat v = exact_value();
        Rat num = Rat(table_.q(k)) * v - Rat(table_.p(k));
        Rat den = Rat(table_.q(k - 1)) * v - Rat(table_.p(k - 1));
        if (sgn(den) == 0) throw PreconditionError("phi undefined: eta_{k-1} = 0");
        return Enclosure(num / den);
    }
    Rat w = width / (Rat(8) * Rat(table_.q(k)));
    while (true) {
        Enclosure etak = eta(k, w);
        Enclosure etak1 = eta(k - 1, w);
        if (sgn(etak1.lo()) > 0) {
            Enclosure phi = -(etak / etak1);
            if (phi.width() <= width) return phi;
        }
        w /= 4;
    }
}

GreedyDecomp RealEval::greedy(const Int& Q) {
    if (Q < 1) throw PreconditionError("greedy decomposition needs Q >= 1");
    long k = 1;
    ensure_index(1);
    while (table_.q(k) + table_.q(k - 1) <= Q) {
        ensure_index(k + 1);
        ++k;
    }
    GreedyDecomp d;
    d.k = k;
    d.p = floor_div(Q - table_.q(k - 2), table_.q(k - 1));
    d.w = Q - table_.q(k - 2) - d.p * table_.q(k - 1);
    return d;
}

Enclosure refine_to(const RealSpec& spec, const Rat& width) {
    RealEval eval(spec);
    return eval.enclose_width(width);
}

} // namespace apfrac
