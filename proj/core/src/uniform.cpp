#include "apfrac/uniform.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "apfrac/errors.hpp"
#include "apfrac/functions.hpp"
#include "apfrac/parallel.hpp"

namespace apfrac {

namespace {

constexpr long kBaseBits = 96;
constexpr long kRefineBits = 192;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Distance from every point of x to the progression aZ + r, together with
/// the member nearest at the midpoint race.  Valid for any width; the
/// candidate sweep covers [x.lo - a, x.hi + a].  y_certified means the
/// reported member beats every other candidate at this precision.
struct DistResult {
    Enclosure dist;
    Int y;
    bool y_certified = false;
};

DistResult progression_distance(const Enclosure& x, const Int& a, const Int& r) {
    Int ylo = nearest_in_progression(x.lo(), a, r) - a;
    Int yhi = nearest_in_progression(x.hi(), a, r) + a;
    DistResult out;
    bool have = false;
    Rat runner_up;
    for (Int y = ylo; y <= yhi; y += a) {
        Enclosure d = (x - Rat(y)).abs();
        if (!have) {
            out.dist = d;
            out.y = y;
            runner_up = d.hi() + 1;
            have = true;
            continue;
        }
        if (d.lo() < out.dist.lo()) {
            runner_up = out.dist.lo();
            out.y = y;
        } else {
            runner_up = rat_min(runner_up, d.lo());
        }
        out.dist = Enclosure::min(out.dist, d);
    }
    out.y_certified = out.dist.hi() < runner_up;
    return out;
}

/// xi*N (+ alpha) against aZ + r at a requested precision.
class TargetEval {
public:
    TargetEval(const RealSpec& xi, const RealSpec* alpha, const Constraint& c,
               const Tolerances& tol)
        : xi_(xi, tol), a_(c.a), r_(c.r) {
        if (alpha != nullptr) alpha_.emplace(*alpha, tol);
    }

    RealEval& xi() { return xi_; }

    /// Additive part of the target, a zero point when no shift was given.
    Enclosure shift(const Rat& width) {
        if (!alpha_) return Enclosure();
        return alpha_->enclose_width(width);
    }

    Enclosure point(const Int& N, long bits) {
        Enclosure x = xi_.enclose_bits(bits) * Rat(N);
        if (alpha_) x = x + alpha_->enclose_bits(bits);
        return x;
    }

    DistResult dist(const Int& N, long bits) { return progression_distance(point(N, bits), a_, r_); }

private:
    RealEval xi_;
    std::optional<RealEval> alpha_;
    Int a_, r_;
};

/// Smallest admissible denominator: N = s (mod b), N >= 1.
Int first_denominator(const Constraint& c) { return sgn(c.s) > 0 ? c.s : c.b; }

Rat cap_width(const Tolerances& tol) { return pow_rat(Rat(1, 2), tol.cap_bits); }

/// Certified integer ceiling of a positive quantity produced at any requested
/// precision.  Terminates as soon as both endpoints round up identically.
Int certified_ceiling(const Tolerances& tol, const std::function<Enclosure(long)>& at) {
    for (long bits = kBaseBits;; bits *= 2) {
        Enclosure e = at(bits);
        Int lo = ceil_rat(e.lo()), hi = ceil_rat(e.hi());
        if (lo == hi) return lo;
        if (bits > tol.cap_bits) {
            throw PrecisionCapError("ratio ceiling undecided at the precision cap");
        }
    }
}

/// Upper bound for sup over [1,oo) of QPsi(Q)/QPsi(g1*Q + g0): octave-style
/// cells below 2^20, one analytic tail cell above it.  The log factor is
/// bounded through log(g1*Q + g0 + e) <= log(Q + e) + log(g1 + g0).
Rat certified_sup(const PsiSpec& s, const Int& g1, const Int& g0, long bits) {
    const Int tnum = s.mu().get_den() - s.mu().get_num();
    const Int tden = s.mu().get_den();
    const Int bnum = s.beta().get_num();
    const Int bden = s.beta().get_den();
    const bool with_log = sgn(s.beta()) != 0;
    const Enclosure ee = e_enclosure(bits);

    auto g_of = [&](const Rat& x) -> Rat { return Rat(g1) * x + Rat(g0); };
    auto cell_bound = [&](const Rat& xlo, const Rat& xhi) -> Rat {
        Rat plo = xlo / g_of(xlo), phi = xhi / g_of(xhi);
        Enclosure part = rational_power(Enclosure(rat_min(plo, phi), rat_max(plo, phi)),
                                        tnum, tden, bits);
        if (with_log) {
            Enclosure lq = log_enclosure(Enclosure(xlo, xhi) + ee, bits);
            Enclosure lg = log_enclosure(Enclosure(g_of(xlo), g_of(xhi)) + ee, bits);
            part = part * rational_power(lq / lg, bnum, bden, bits);
        }
        return part.hi();
    };

    Rat best(1);
    Rat x(1);
    const Rat qstar(1L << 20);
    while (x < qstar) {
        Rat x2 = x * Rat(3, 2);
        best = rat_max(best, cell_bound(x, x2));
        x = x2;
    }

    // tail: Q/(g1*Q+g0) climbs to 1/g1, the log ratio sits in [L/(L+logC), 1]
    Enclosure part = rational_power(Enclosure(x / g_of(x), make_rat(Int(1), g1)),
                                    tnum, tden, bits);
    if (with_log) {
        Enclosure ls = log_enclosure(Enclosure(x) + ee, bits);
        Enclosure lc = log_enclosure(Rat(g1 + g0), bits);
        Enclosure ratio(ls.lo() / (ls.lo() + lc.hi()), Rat(1));
        part = part * rational_power(ratio, bnum, bden, bits);
    }
    return rat_max(best, part.hi());
}

} // namespace

PsiSpec PsiSpec::power_log(const Rat& cc, const Rat& mu, const Rat& beta) {
    if (sgn(cc) <= 0) throw PreconditionError("psi needs a positive constant");
    PsiSpec s;
    s.cc_ = cc;
    s.mu_ = mu;
    s.beta_ = beta;
    // Both flags rest on Q <= (Q+e)log(Q+e)/2 for Q >= 1, so the log factor's
    // drift is dominated by half a power of Q.
    s.psi_nonincreasing_ =
        (sgn(beta) <= 0 && sgn(mu) >= 0) || (sgn(beta) > 0 && mu * 2 >= beta);
    s.tilde_nondecreasing_ =
        (sgn(beta) >= 0 && mu <= 1) || (sgn(beta) < 0 && mu * 2 <= beta + Rat(2));
    return s;
}

PsiSpec PsiSpec::parse(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 3) {
        throw PreconditionError("psi spec needs three components cc,mu,beta: '" + text + "'");
    }
    return power_log(parse_rat(parts[0]), parse_rat(parts[1]), parse_rat(parts[2]));
}

std::string PsiSpec::to_string() const {
    return apfrac::to_string(cc_) + "," + apfrac::to_string(mu_) + "," + apfrac::to_string(beta_);
}

Enclosure PsiSpec::psi(const Rat& q, long bits) const {
    if (q < 1) throw PreconditionError("psi is defined on Q >= 1");
    Enclosure out = rational_power(q, -mu_.get_num(), mu_.get_den(), bits) * cc_;
    if (sgn(beta_) != 0) {
        Enclosure lq = log_enclosure(q + e_enclosure(bits), bits);
        out = out * rational_power(lq, beta_.get_num(), beta_.get_den(), bits);
    }
    return out;
}

Enclosure PsiSpec::psi_tilde(const Rat& q, long bits) const {
    if (q < 1) throw PreconditionError("psi is defined on Q >= 1");
    Enclosure out =
        rational_power(q, mu_.get_den() - mu_.get_num(), mu_.get_den(), bits) * cc_;
    if (sgn(beta_) != 0) {
        Enclosure lq = log_enclosure(q + e_enclosure(bits), bits);
        out = out * rational_power(lq, beta_.get_num(), beta_.get_den(), bits);
    }
    return out;
}

Enclosure PsiSpec::gamma(long bits) const {
    if (!tilde_nondecreasing_) {
        throw PreconditionError("gamma = QPsi(1) needs the nondecreasing flag");
    }
    return psi_tilde(Rat(1), bits);
}

Rat PsiSpec::kappa(long bits) const {
    if (tilde_nondecreasing_) return Rat(1);
    return rat_max(Rat(1), certified_sup(*this, Int(2), Int(0), bits));
}

Rat PsiSpec::eta(const Int& ab, long bits) const {
    if (ab < 1) throw PreconditionError("eta needs ab >= 1");
    if (tilde_nondecreasing_) return Rat(1);
    return rat_max(Rat(1), certified_sup(*this, ab, ab, bits));
}

CnsSummary cns_report(const RealSpec& xi, const Constraint& c, const PsiSpec& psi, long kmax,
                      const Tolerances& tol) {
    if (kmax < 1) throw PreconditionError("condition reports start at index 1");
    RealEval eval(xi, tol);
    eval.ensure_index(kmax);

    CnsSummary out;
    out.minimal_m = 0;
    out.ab_value = c.ab();
    out.q_prefix.reserve(static_cast<size_t>(kmax) + 2);
    for (long k = -1; k <= kmax; ++k) out.q_prefix.push_back(eval.table().q(k));

    for (long k = 1; k <= kmax; ++k) {
        IndexReport rep;
        rep.k = k;
        rep.a_k = eval.digit(k);
        rep.q_k = eval.table().q(k);
        rep.conditions_met = uniform_conditions_met(k, eval.table(), c);
        auto ratio_at = [&](long bits) {
            return Enclosure(Rat(rep.a_k)) / psi.psi_tilde(Rat(rep.q_k), bits);
        };
        rep.ratio = ratio_at(kBaseBits);
        rep.ratio_ceiling = certified_ceiling(tol, ratio_at);
        if (!rep.conditions_met && rep.ratio_ceiling > out.minimal_m) {
            out.minimal_m = rep.ratio_ceiling;
        }
        out.reports.push_back(std::move(rep));
    }

    // Beyond kmax the ratios stay bounded when no index can fail, when the
    // expansion simply ends, or when a periodic digit supply meets a
    // nondecreasing QPsi.  Unknown digits of a prefix never certify.
    out.unbounded_at_horizon =
        !(c.homogeneous() || xi.kind() == RealKind::Rational ||
          (xi.kind() == RealKind::Surd && psi.tilde_nondecreasing()));
    return out;
}

Int CnsSummary::q0_for(const Int& m_bound) const {
    long k0 = 1;
    for (auto it = reports.rbegin(); it != reports.rend(); ++it) {
        if (!it->conditions_met && it->ratio_ceiling > m_bound) {
            k0 = it->k + 1;
            break;
        }
    }
    return ab_value * (q_prefix[static_cast<size_t>(k0)] + q_prefix[static_cast<size_t>(k0) - 1]);
}

ScanReport dirichlet_scan(const RealSpec& xi, const Constraint& c, const PsiSpec& psi,
                          const Int& qmin, const Int& qmax, int threads,
                          const Tolerances& tol) {
    if (!psi.psi_nonincreasing()) {
        throw PreconditionError("the scan needs a certified nonincreasing psi");
    }
    if (qmin < 1 || qmax < qmin) throw PreconditionError("scan range must satisfy 1 <= qmin <= qmax");
    if (!fits_long(qmin) || !fits_long(qmax)) throw PreconditionError("scan range exceeds long");

    const Int n0 = first_denominator(c);
    const Rat w0 = Rat(c.a) / (Rat(8) * (Rat(qmax) + 1));
    auto ranges = split_range(to_long(qmin), to_long(qmax), threads < 1 ? 1 : threads);

    auto scan_chunk = [&](std::size_t idx) -> ScanReport {
        const long qlo = static_cast<long>(ranges[idx].first);
        const long qhi = static_cast<long>(ranges[idx].second);
        const Int qhi_i(qhi);
        ScanReport part;
        TargetEval target(xi, nullptr, c, tol);
        Enclosure e0 = target.xi().enclose_width(w0);
        Enclosure step = e0 * Rat(c.b);

        // denominator-indexed distances, shared across every Q of the chunk
        std::vector<Enclosure> dist;
        std::vector<Rat> prefix_lo, prefix_hi;
        Enclosure x = e0 * Rat(n0);
        for (Int N = n0; N <= qhi_i; N += c.b) {
            Enclosure d = progression_distance(x, c.a, c.r).dist;
            dist.push_back(d);
            prefix_lo.push_back(prefix_lo.empty() ? d.lo() : rat_min(prefix_lo.back(), d.lo()));
            prefix_hi.push_back(prefix_hi.empty() ? d.hi() : rat_min(prefix_hi.back(), d.hi()));
            x = x + step;
        }

        // tri-state recheck of one denominator against one threshold
        auto decide = [&](const Int& N, const Int& Q) -> std::optional<bool> {
            for (long bits = kRefineBits; bits <= tol.cap_bits; bits *= 2) {
                Enclosure d = target.dist(N, bits).dist;
                Enclosure t = psi.psi(Rat(Q), bits);
                if (d.hi() <= t.lo()) return true;
                if (d.lo() > t.hi()) return false;
            }
            return std::nullopt;
        };

        for (long q = qlo; q <= qhi; ++q) {
            Int Q(q);
            if (Q < n0) {
                // no admissible denominator at all
                part.failing.push_back(Q);
                continue;
            }
            long jmax = to_long(floor_div(Q - n0, c.b));
            Enclosure thr = psi.psi(Rat(Q), kBaseBits);
            if (prefix_hi[jmax] <= thr.lo()) continue;
            if (prefix_lo[jmax] > thr.hi()) {
                part.failing.push_back(Q);
                continue;
            }
            bool passed = false, fuzzy = false;
            for (long j = 0; j <= jmax; ++j) {
                if (dist[j].lo() > thr.hi()) continue;
                auto verdict = decide(n0 + Int(j) * c.b, Q);
                if (!verdict) {
                    fuzzy = true;
                } else if (*verdict) {
                    passed = true;
                    break;
                }
            }
            if (passed) continue;
            (fuzzy ? part.undecided : part.failing).push_back(Q);
        }
        return part;
    };

    auto parts = parallel_chunks(ranges.size(), static_cast<unsigned>(threads < 1 ? 1 : threads),
                                 scan_chunk);
    ScanReport out;
    for (auto& part : parts) {
        out.failing.insert(out.failing.end(), part.failing.begin(), part.failing.end());
        out.undecided.insert(out.undecided.end(), part.undecided.begin(), part.undecided.end());
    }
    return out;
}

WitnessTrace witness(const RealSpec& xi, const Constraint& c, const Rat& Q, const PsiSpec& psi,
                     const Tolerances& tol) {
    if (!psi.psi_nonincreasing()) {
        throw PreconditionError("the witness needs a certified nonincreasing psi");
    }
    const Int ab = c.ab();
    if (Q < Rat(ab)) throw PreconditionError("witness needs Q >= ab");

    WitnessTrace tr;
    tr.Q = Q;
    tr.q_prime = floor_rat(Q / Rat(ab));

    RealEval eval(xi, tol);
    tr.decomp = eval.greedy(tr.q_prime);
    const long k = tr.decomp.k;
    const Int pk1 = eval.table().p(k - 1), qk1 = eval.table().q(k - 1);
    const Int pk2 = eval.table().p(k - 2), qk2 = eval.table().q(k - 2);
    const Int eps = (k % 2 == 1) ? 1 : -1;

    tr.conditions_met = uniform_conditions_met(k, eval.table(), c);
    tr.d = gcd(c.b * pk1, c.a * qk1);

    if (tr.conditions_met) {
        tr.u = 0;
        auto sol = pair_solve(pk1, c.r, c.a, qk1, c.s, c.b);
        if (!sol) throw PreconditionError("met conditions left the scaling congruence unsolvable");
        tr.v = sgn(sol->x0) == 0 ? sol->modulus : sol->x0;
        tr.m = (tr.v * pk1 - c.r) / c.a;
        tr.n = (tr.v * qk1 - c.s) / c.b;
    } else {
        Int tgt = c.r * qk1 - c.s * pk1;
        tr.u = mod_floor(eps * tgt, tr.d);
        Int w = eps * tr.u - tgt;  // = a*q_{k-1}*m - b*p_{k-1}*n
        Int xg, yg;
        Int g = gcd_ext(c.a * qk1, c.b * pk1, xg, yg);
        Int scale = w / g;
        Int n0 = -yg * scale;
        Int nmod = c.a * qk1 / tr.d;
        tr.n = mod_floor(n0, nmod);
        Int t = (tr.n - n0) / nmod;
        tr.m = xg * scale + (c.b * pk1 / tr.d) * t;
        tr.v = eps * ((c.b * tr.n + c.s) * pk2 - (c.a * tr.m + c.r) * qk2);
    }

    tr.numerator = c.a * tr.m + c.r;
    tr.denominator = c.b * tr.n + c.s;

    // the trace must reproduce itself through the convergent pair, exactly
    bool consistent = tr.numerator == tr.u * pk2 + tr.v * pk1 &&
                      tr.denominator == tr.u * qk2 + tr.v * qk1 &&
                      tr.u == eps * (tr.numerator * qk1 - tr.denominator * pk1) &&
                      tr.v == eps * (tr.denominator * pk2 - tr.numerator * qk2) &&
                      sgn(tr.u) >= 0 && tr.u <= ab && sgn(tr.denominator) >= 0 &&
                      Rat(tr.denominator) <= Q;
    if (!consistent) throw PreconditionError("witness construction lost an exact identity");

    // |u + v*phi_{k-1}| = |u*eta_{k-2} - v*eta_{k-1}| / eta_{k-2}, certified < 4ab
    const Rat four_ab = Rat(4 * ab);
    Rat wd = pow_rat(Rat(1, 2), kBaseBits);
    while (true) {
        Enclosure e2 = eval.eta(k - 2, wd);
        Enclosure e1 = eval.eta(k - 1, wd);
        tr.phi_combination = (Rat(tr.u) * e2 - Rat(tr.v) * e1).abs() / e2;
        auto below = tr.phi_combination.less_than(four_ab);
        if (below.has_value()) {
            if (!*below) throw PreconditionError("witness combination escaped its 4ab bound");
            break;
        }
        wd = wd / 2;
        if (wd < cap_width(tol)) {
            throw PrecisionCapError("witness combination undecided at the precision cap");
        }
    }

    Enclosure x = eval.enclose_bits(kRefineBits);
    tr.error = (x * Rat(tr.denominator) - Rat(tr.numerator)).abs();
    tr.bound_value = tr.error / psi.psi(Q, kRefineBits);
    return tr;
}

Rat witness_bound(const PsiSpec& psi, const Constraint& c, const Int& m_bound, long bits) {
    if (sgn(m_bound) < 0) throw PreconditionError("digit bound must be nonnegative");
    const Int ab = c.ab();
    Rat kap = psi.kappa(bits);
    Rat et = psi.eta(ab, bits);
    Rat inv_gamma;
    Tolerances tol;
    for (long b = bits;; b *= 2) {
        Enclosure g = psi.gamma(b);
        if (sgn(g.lo()) > 0) {
            inv_gamma = Rat(1) / g.lo();
            break;
        }
        if (b > tol.cap_bits) {
            throw PrecisionCapError("gamma lower bound vanished at the precision cap");
        }
    }
    return Rat(8 * ab * ab) * kap * et * rat_max(Rat(4 * m_bound), inv_gamma);
}

DigitBound badly_digit_bound(const RealSpec& xi, const Constraint& c, const Tolerances& tol) {
    DigitBound out;
    out.value = 1;

    RealSpec scaled = RealSpec::rational(0, 1);
    switch (xi.kind()) {
    case RealKind::Rational:
    case RealKind::Surd:
        scaled = scale_real(xi, c.b, c.a);
        break;
    case RealKind::DigitStream: {
        // horizon convergent as an exact stand-in for the stream
        RealEval eval(xi, tol);
        long h = eval.horizon();
        eval.ensure_index(h);
        scaled = RealSpec::rational(c.b * eval.table().p(h), c.a * eval.table().q(h));
        out.truncated = true;
        break;
    }
    }

    CFExpansion cf = expand(scaled);
    long last = cf.is_terminating() ? cf.last_index() : cf.preperiod() + cf.period_length();
    for (long j = 1; j <= last; ++j) out.value = std::max(out.value, Int(cf.digit(j)));
    return out;
}

Hit badly_witness(const RealSpec& xi, const RealSpec& alpha, const Constraint& c, const Rat& Q,
                  const Tolerances& tol) {
    if (Q < Rat(2 * c.b)) throw PreconditionError("badly witness needs Q >= 2b");

    const Int nlo = sgn(c.s) > 0 ? Int(0) : Int(1);
    const Int nhi = floor_rat((Q - Rat(c.s)) / Rat(c.b));
    if (nhi < nlo) throw PreconditionError("no admissible denominator at or below Q");

    TargetEval target(xi, &alpha, c, tol);

    struct Cand {
        Int n, N;
        DistResult res;
    };
    std::vector<Cand> cands;
    Rat min_hi;
    {
        // widths scale with N, so pin the base interval below a/(16(Q+1))
        const Rat w0 = Rat(c.a) / (Rat(16) * (Q + 1));
        Enclosure e0 = target.xi().enclose_width(w0);
        Enclosure x = e0 * Rat(c.b * nlo + c.s) + target.shift(w0);
        Enclosure step = e0 * Rat(c.b);
        bool first = true;
        for (Int n = nlo; n <= nhi; n += 1) {
            DistResult res = progression_distance(x, c.a, c.r);
            if (first || res.dist.hi() < min_hi) min_hi = res.dist.hi();
            first = false;
            cands.push_back(Cand{n, c.b * n + c.s, std::move(res)});
            x = x + step;
        }
    }

    auto drop_beaten = [&]() {
        cands.erase(std::remove_if(cands.begin(), cands.end(),
                                   [&](const Cand& cnd) { return cnd.res.dist.lo() > min_hi; }),
                    cands.end());
    };
    drop_beaten();

    long bits = kRefineBits;
    while (!(cands.size() == 1 && cands.front().res.y_certified)) {
        bool all_points = true;
        for (const Cand& cnd : cands) all_points = all_points && cnd.res.dist.is_point();
        if (all_points) {
            // exact distances: total order known, ties go to the smallest N
            auto best = std::min_element(cands.begin(), cands.end(),
                                         [](const Cand& lhs, const Cand& rhs) {
                                             if (lhs.res.dist.lo() != rhs.res.dist.lo()) {
                                                 return lhs.res.dist.lo() < rhs.res.dist.lo();
                                             }
                                             return lhs.N < rhs.N;
                                         });
            Cand keep = *best;
            cands.assign(1, keep);
            break;
        }
        if (bits > tol.cap_bits) {
            throw PrecisionCapError("minimizer undecided at the precision cap");
        }
        bool first = true;
        for (Cand& cnd : cands) {
            cnd.res = target.dist(cnd.N, bits);
            if (first || cnd.res.dist.hi() < min_hi) min_hi = cnd.res.dist.hi();
            first = false;
        }
        drop_beaten();
        bits *= 2;
    }

    const Cand& win = cands.front();
    Hit hit;
    hit.m = (win.res.y - c.r) / c.a;
    hit.n = win.n;
    hit.N = win.N;
    hit.numerator = win.res.y;
    hit.error = win.res.dist / Rat(win.N);
    hit.quality = win.res.dist * Rat(win.N) / Rat(c.ab());
    return hit;
}

ExponentReport exponent_probe(const RealSpec& xi, const Constraint& c, const Int& qmax,
                              int threads, const Tolerances& tol) {
    const Int n0 = first_denominator(c);
    if (qmax < n0) throw PreconditionError("no admissible denominator at or below qmax");
    Int count_i = floor_div(qmax - n0, c.b) + 1;
    if (!fits_long(count_i)) throw PreconditionError("probe range exceeds long");
    const long count = to_long(count_i);

    const Rat w0 = Rat(c.a) / (Rat(8) * (Rat(qmax) + 1));
    auto ranges = split_range(0, count - 1, threads < 1 ? 1 : threads);
    auto dist_chunk = [&](std::size_t idx) -> std::vector<Enclosure> {
        const long jlo = static_cast<long>(ranges[idx].first);
        const long jhi = static_cast<long>(ranges[idx].second);
        std::vector<Enclosure> part;
        part.reserve(static_cast<size_t>(jhi - jlo + 1));
        TargetEval target(xi, nullptr, c, tol);
        Enclosure e0 = target.xi().enclose_width(w0);
        Enclosure x = e0 * Rat(n0 + Int(jlo) * c.b);
        Enclosure step = e0 * Rat(c.b);
        for (long j = jlo; j <= jhi; ++j) {
            part.push_back(progression_distance(x, c.a, c.r).dist);
            x = x + step;
        }
        return part;
    };
    auto parts = parallel_chunks(ranges.size(), static_cast<unsigned>(threads < 1 ? 1 : threads),
                                 dist_chunk);
    std::vector<Enclosure> dist;
    dist.reserve(static_cast<size_t>(count));
    for (auto& part : parts) dist.insert(dist.end(), part.begin(), part.end());

    TargetEval target(xi, nullptr, c, tol);
    auto dist_at = [&](const Int& N, long bits) { return target.dist(N, bits).dist; };

    // running minimum distance, identified by the denominator achieving it
    Enclosure rmin = dist[0];
    Int rmin_n = n0;

    Enclosure best;
    Int best_q, best_n;
    bool have_best = false;

    for (long j = 0; j < count; ++j) {
        Int N = n0 + Int(j) * c.b;
        if (j > 0) {
            Enclosure d = dist[static_cast<size_t>(j)];
            long bits = kRefineBits;
            while (true) {
                if (d.hi() < rmin.lo()) {
                    rmin = d;
                    rmin_n = N;
                    break;
                }
                if (rmin.hi() <= d.lo()) break;
                if (d.is_point() && rmin.is_point()) break;  // exact tie keeps the earlier N
                if (bits > tol.cap_bits) {
                    throw PrecisionCapError("running minimum undecided at the precision cap");
                }
                d = dist_at(N, bits);
                rmin = dist_at(rmin_n, bits);
                bits *= 2;
            }
        }

        Int qc = (j + 1 < count) ? n0 + Int(j + 1) * c.b - 1 : qmax;
        Enclosure cand = rmin * Rat(qc);
        if (!have_best) {
            best = cand;
            best_q = qc;
            best_n = rmin_n;
            have_best = true;
            continue;
        }
        long bits = kRefineBits;
        while (true) {
            if (cand.lo() > best.hi()) {
                best = cand;
                best_q = qc;
                best_n = rmin_n;
                break;
            }
            if (cand.hi() <= best.lo()) break;
            if (cand.is_point() && best.is_point()) break;  // exact tie keeps the earlier Q
            if (bits > tol.cap_bits) {
                throw PrecisionCapError("exponent maximum undecided at the precision cap");
            }
            cand = dist_at(rmin_n, bits) * Rat(qc);
            best = dist_at(best_n, bits) * Rat(best_q);
            bits *= 2;
        }
    }

    ExponentReport out;
    long bits = kRefineBits;
    out.d_max = dist_at(best_n, bits) * Rat(best_q);
    // tighten the reported value to ~32 significant bits when possible
    while (bits <= tol.cap_bits && !out.d_max.is_point() &&
           (sgn(out.d_max.lo()) <= 0 ||
            out.d_max.width() * pow_rat(Rat(2), 32) > out.d_max.lo())) {
        bits *= 2;
        out.d_max = dist_at(best_n, bits) * Rat(best_q);
    }
    out.arg_q = best_q;
    return out;
}

} // namespace apfrac
