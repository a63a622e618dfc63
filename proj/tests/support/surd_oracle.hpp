#pragma once

// Exact arithmetic over Q(sqrt(D)) plus a standalone digit generator for
// quadratic irrationals.  This header deliberately avoids the library under
// test: every comparison reduces to integer sign checks via gmp, with no
// interval arithmetic anywhere, so test expectations derived here cannot
// inherit a library bug.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Zi = mpz_class;
using Qi = mpq_class;

inline Zi isqrt_floor(const Zi& n) {
    Zi r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Zi& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Value (u + v*sqrt(D)) / w with w > 0.  D >= 0, not necessarily squarefree.
struct Quad {
    Zi u, v, w, D;

    Quad(Zi uu, Zi vv, Zi ww, Zi dd)
        : u(std::move(uu)), v(std::move(vv)), w(std::move(ww)), D(std::move(dd)) {
        if (w == 0) throw std::invalid_argument("Quad denominator is zero");
        if (w < 0) {
            u = -u;
            v = -v;
            w = -w;
        }
        if (D < 0) throw std::invalid_argument("Quad discriminant is negative");
    }

    static Quad rational(const Qi& x, Zi dd) {
        return Quad(Zi(x.get_num()), Zi(0), Zi(x.get_den()), std::move(dd));
    }

    // sign of u + v*sqrt(D), exact
    static int root_sign(const Zi& uu, const Zi& vv, const Zi& dd) {
        const int su = sgn(uu), sv = sgn(vv);
        if (sv == 0 || dd == 0) return su;
        if (su == 0) return sv;
        if (su == sv) return su;
        const Zi lhs = uu * uu, rhs = vv * vv * dd;
        if (lhs == rhs) return 0;
        return lhs > rhs ? su : sv;
    }

    int sign() const { return root_sign(u, v, D); }

    Quad operator+(const Quad& o) const {
        return Quad(u * o.w + o.u * w, v * o.w + o.v * w, w * o.w, D);
    }
    Quad operator-(const Quad& o) const {
        return Quad(u * o.w - o.u * w, v * o.w - o.v * w, w * o.w, D);
    }
    Quad operator-(const Qi& q) const {
        return Quad(u * q.get_den() - q.get_num() * w, v * q.get_den(), w * q.get_den(), D);
    }
    Quad operator*(const Qi& q) const {
        return Quad(u * q.get_num(), v * q.get_num(), w * q.get_den(), D);
    }
    Quad negated() const { return Quad(-u, -v, w, D); }
    Quad abs() const { return sign() >= 0 ? *this : negated(); }

    bool less(const Quad& o) const { return (*this - o).sign() < 0; }
    bool equal(const Quad& o) const { return (*this - o).sign() == 0; }

    // exact floor; w > 0 is a constructor invariant
    Zi floor() const {
        Zi f;
        if (v >= 0) {
            f = isqrt_floor(v * v * D);
        } else {
            const Zi m = v * v * D;
            f = -isqrt_floor(m);
            if (!is_square(m)) f -= 1;
        }
        Zi q;
        // adding the fractional part of v*sqrt(D), strictly below 1, can
        // never push (u + f) across the next multiple of w
        mpz_fdiv_q(q.get_mpz_t(), Zi(u + f).get_mpz_t(), w.get_mpz_t());
        return q;
    }

    double approx() const {
        return (u.get_d() + v.get_d() * std::sqrt(D.get_d())) / w.get_d();
    }
};

// Digit stream of (P + sqrt(D)) / R for non-square D > 0, R != 0, produced
// by the classical P,Q recurrence with exact integer floors.
class SurdStream {
  public:
    SurdStream(const Zi& P0, const Zi& D0, const Zi& R0) {
        if (R0 == 0) throw std::invalid_argument("SurdStream with zero denominator");
        if (D0 <= 0 || is_square(D0)) {
            throw std::invalid_argument("SurdStream needs a non-square positive D");
        }
        // force R | (D - P^2) by scaling numerator and denominator with |R|
        if ((D0 - P0 * P0) % R0 == 0) {
            p_ = P0;
            d_ = D0;
            q_ = R0;
        } else {
            const Zi ra = ::abs(R0);
            p_ = P0 * ra;
            d_ = D0 * R0 * R0;
            q_ = R0 * ra;
        }
    }

    Zi next() {
        const Zi a = Quad(p_, Zi(1), q_, d_).floor();
        p_ = a * q_ - p_;
        q_ = (d_ - p_ * p_) / q_;
        return a;
    }

    std::vector<Zi> take(std::size_t count) {
        std::vector<Zi> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(next());
        return out;
    }

  private:
    Zi p_, d_, q_;
};

// Finite digit stream of a rational by plain euclidean division; the last
// digit of a non-integer comes out >= 2, matching the canonical expansion.
inline std::vector<Zi> rational_digits(Zi num, Zi den) {
    if (den == 0) throw std::invalid_argument("rational_digits with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::vector<Zi> out;
    while (den != 0) {
        Zi a, rem;
        mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        out.push_back(a);
        num = den;
        den = rem;
    }
    return out;
}

// Convergent tables rebuilt from scratch so that identity checks against
// the library compare two independent recurrence runs.
struct Convergents {
    std::vector<Zi> p{1, 0};  // p[k+2] holds p_k, seeded with p_{-2}, p_{-1}
    std::vector<Zi> q{0, 1};

    void push(const Zi& digit) {
        const std::size_t n = p.size();
        p.push_back(digit * p[n - 1] + p[n - 2]);
        q.push_back(digit * q[n - 1] + q[n - 2]);
    }
    const Zi& pk(long k) const { return p[static_cast<std::size_t>(k + 2)]; }
    const Zi& qk(long k) const { return q[static_cast<std::size_t>(k + 2)]; }
    long max_index() const { return static_cast<long>(p.size()) - 3; }
};

// |qk * xi - pk| as an exact Quad, for surd xi = (P + sqrt(D)) / R.
inline Quad eta_exact(const Convergents& cv, long k, const Zi& P, const Zi& D, const Zi& R) {
    Quad xi(P, Zi(1), R, D);
    Quad term = (xi * Qi(cv.qk(k))) - Qi(cv.pk(k));
    return term.abs();
}

// Sorted multiset of circle gaps cut by {i*xi}, i = 1..Q, computed with
// exact field arithmetic only.  Returns (length, count) pairs with lengths
// strictly increasing.
inline std::vector<std::pair<Quad, Zi>> circle_gaps(const Zi& P, const Zi& D, const Zi& R,
                                                    long Q) {
    const Quad xi(P, Zi(1), R, D);
    std::vector<Quad> pts;
    pts.reserve(static_cast<std::size_t>(Q) + 2);
    pts.push_back(Quad::rational(Qi(0), D));
    for (long i = 1; i <= Q; ++i) {
        Quad m = xi * Qi(i);
        Quad fr = m - Qi(m.floor());
        pts.push_back(fr);
    }
    pts.push_back(Quad::rational(Qi(1), D));
    std::sort(pts.begin(), pts.end(), [](const Quad& a, const Quad& b) { return a.less(b); });
    std::vector<std::pair<Quad, Zi>> out;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Quad gap = pts[i] - pts[i - 1];
        if (gap.sign() == 0) continue;
        bool found = false;
        for (auto& [len, cnt] : out) {
            if (len.equal(gap)) {
                cnt += 1;
                found = true;
                break;
            }
        }
        if (!found) out.emplace_back(gap, Zi(1));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first.less(b.first); });
    return out;
}

}  // namespace oracle
