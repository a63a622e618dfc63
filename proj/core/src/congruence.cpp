#include "apfrac/congruence.hpp"

namespace apfrac {

Constraint::Constraint(Int a_, Int b_, Int r_, Int s_)
    : a(std::move(a_)), b(std::move(b_)), r(std::move(r_)), s(std::move(s_)) {
    if (a < 1 || b < 1) throw PreconditionError("constraint moduli a, b must be >= 1");
    if (sgn(r) < 0 || r >= a) throw PreconditionError("constraint needs 0 <= r <= a-1");
    if (sgn(s) < 0 || s >= b) throw PreconditionError("constraint needs 0 <= s <= b-1");
}

Constraint Constraint::parse(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s += c;
    }
    Int parts[4];
    size_t start = 0;
    for (int i = 0; i < 4; ++i) {
        size_t pos = i < 3 ? s.find(',', start) : s.size();
        if (pos == std::string::npos) {
            throw PreconditionError("constraint needs four comma-separated integers: '" + text + "'");
        }
        parts[i] = parse_int(s.substr(start, pos - start));
        start = pos + 1;
    }
    return Constraint(parts[0], parts[1], parts[2], parts[3]);
}

std::string Constraint::to_string() const {
    return a.get_str() + "," + b.get_str() + "," + r.get_str() + "," + s.get_str();
}

std::optional<CongruenceSolution> linear_solve(const Int& a, const Int& b, const Int& m) {
    if (m < 1) throw PreconditionError("congruence modulus must be >= 1");
    Int g = gcd(a, m);  // >= 1 since m >= 1
    if (!divides(g, b)) return std::nullopt;
    Int m2 = m / g;
    if (m2 == 1) return CongruenceSolution{Int(0), Int(1)};
    Int x0 = mod_floor((b / g) * inv_mod(a / g, m2), m2);
    return CongruenceSolution{x0, m2};
}

std::optional<CongruenceSolution> pair_solve(const Int& a1, const Int& b1, const Int& m1,
                                             const Int& a2, const Int& b2, const Int& m2) {
    auto s1 = linear_solve(a1, b1, m1);
    auto s2 = linear_solve(a2, b2, m2);
    if (!s1 || !s2) return std::nullopt;
    // CRT: x = s1->x0 (mod s1->modulus), x = s2->x0 (mod s2->modulus).
    Int g, u, v;
    g = gcd_ext(s1->modulus, s2->modulus, u, v);
    Int diff = s2->x0 - s1->x0;
    if (!divides(g, diff)) return std::nullopt;
    Int l = (s1->modulus / g) * s2->modulus;
    // x0 + m1*u*(diff/g) solves both; reduce mod lcm.
    Int x = mod_floor(s1->x0 + s1->modulus * u * (diff / g), l);
    return CongruenceSolution{x, l};
}

bool target_reachable(const Int& u, const Int& v, const Constraint& c) {
    if (gcd(u, v) != 1) throw PreconditionError("target fraction u/v must be reduced");
    return divides(gcd(u, c.a), c.r) && divides(gcd(v, c.b), c.s) &&
           divides(gcd(c.b * u, c.a * v), u * c.s - v * c.r);
}

bool uniform_conditions_met(long k, const ConvergentTable& table, const Constraint& c) {
    if (k < 1) throw PreconditionError("condition index must be >= 1");
    const Int& p = table.p(k - 1);
    const Int& q = table.q(k - 1);
    return divides(gcd(p, c.a), c.r) && divides(gcd(q, c.b), c.s) &&
           divides(gcd(c.b * p, c.a * q), c.s * p - c.r * q);
}

std::pair<Int, Int> annihilating_pair(const Int& alpha_in, const Int& beta_in, const Int& b) {
    if (b < 1) throw PreconditionError("modulus must be >= 1");
    Int alpha = mod_floor(alpha_in, b);
    Int beta = mod_floor(beta_in, b);
    if (sgn(alpha) == 0) {
        // u1 = beta, u2 = (b-1)*beta + beta = 0 (mod b).
        Int i2 = b - 1;
        if (sgn(i2) == 0) i2 = b;
        return {Int(1), i2};
    }
    if (sgn(beta) == 0) {
        // u1 = alpha, u2 = b*alpha + 0 = 0 (mod b).
        return {b, b};
    }
    Int g = gcd(alpha, beta);
    Int ar = alpha / g, br = beta / g;
    // Some i1 in [1,b] makes ar + i1*br invertible mod b: per prime p | b,
    // either p | br (then p never divides ar + i1*br) or one residue class of
    // i1 is excluded; p >= 2 leaves room, and a full period [1,b] covers all classes.
    Int i1(0), w(0);
    for (Int i = 1; i <= b; ++i) {
        Int cand = ar + i * br;
        if (gcd(cand, b) == 1) {
            i1 = i;
            w = cand;
            break;
        }
    }
    if (sgn(i1) == 0) throw PreconditionError("no unit combination found (unreachable)");
    Int i2 = mod_floor(-br * inv_mod(w, b), b);
    if (sgn(i2) == 0) i2 = b;
    return {i1, i2};
}

} // namespace apfrac
