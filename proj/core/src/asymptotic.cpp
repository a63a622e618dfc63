#include "apfrac/asymptotic.hpp"

#include <optional>

#include "apfrac/functions.hpp"
#include "apfrac/parallel.hpp"

namespace apfrac {

namespace {

// Inclusive integer range of n with 1 <= bn+s <= qmax.
std::pair<long long, long long> denominator_range(const Constraint& c, const Int& qmax) {
    if (qmax > Int(1) << 40) throw PreconditionError("denominator bound too large for the scan");
    Int n_min = ceil_rat(make_rat(1 - c.s, c.b));
    Int n_max = floor_rat(make_rat(qmax - c.s, c.b));
    if (n_max < n_min) return {0, -1};
    return {to_long(n_min), to_long(n_max)};
}

// All certified hits for denominators bn+s with n in [nlo, nhi].
std::vector<Hit> scan_range(const RealSpec& xi, const RealSpec* alpha, const Constraint& c,
                            const Rat& factor, long long nlo, long long nhi,
                            const Tolerances& tol) {
    std::vector<Hit> out;
    RealEval eval(xi, tol);
    std::optional<RealEval> shift;
    if (alpha) shift.emplace(*alpha, tol);
    const Rat ab(c.ab());
    const Rat width_floor = make_rat(Int(1), pow_int(Int(2), tol.cap_bits));
    const Rat report_grain = make_rat(Int(1), pow_int(Int(2), 41));
    for (long long nn = nlo; nn <= nhi; ++nn) {
        Int n(static_cast<long>(nn));
        Int N = c.b * n + c.s;
        Rat rN(N);
        Rat thr = factor * ab / rN;
        // Narrow enough both to decide |N*xi - y| vs thr away from ties and
        // to leave every reported quality enclosure tighter than 2^-40.
        Rat want = Rat(ab * report_grain / rN);
        if (sgn(factor) > 0) want = rat_min(want, Rat(thr / 8));
        while (true) {
            Enclosure target = eval.enclose_width(Rat(want / rN)) * rN;
            if (shift) target = target + shift->enclose_width(want);
            Int m_lo = ceil_rat(Rat((target.lo() - thr - Rat(c.r)) / Rat(c.a)));
            Int m_hi = floor_rat(Rat((target.hi() + thr - Rat(c.r)) / Rat(c.a)));
            bool undecided = false;
            std::vector<Hit> found;
            for (Int m = m_lo; m <= m_hi; m += 1) {
                Int y = c.a * m + c.r;
                Enclosure err = (target - Rat(y)).abs();
                auto ok = err.less_equal(thr);
                if (!ok.has_value()) {
                    undecided = true;
                    break;
                }
                if (!*ok) continue;
                found.push_back(Hit{m, n, N, y, err / rN, err * rN / ab});
            }
            if (!undecided) {
                for (auto& h : found) out.push_back(std::move(h));
                break;
            }
            want /= 16;
            if (want < width_floor) {
                throw PrecisionCapError("hit test undecidable at the precision cap");
            }
        }
    }
    return out;
}

std::vector<Hit> scan_all(const RealSpec& xi, const RealSpec* alpha, const Constraint& c,
                          const Rat& factor, const Int& qmax, int threads,
                          const Tolerances& tol) {
    if (sgn(factor) < 0) throw PreconditionError("hit factor must be >= 0");
    auto [nlo, nhi] = denominator_range(c, qmax);
    if (nhi < nlo) return {};
    unsigned t = threads < 1 ? 1u : static_cast<unsigned>(threads);
    auto chunks = split_range(nlo, nhi, t <= 1 ? 1 : static_cast<std::size_t>(t) * 4);
    auto parts = parallel_chunks(chunks.size(), t, [&](std::size_t i) {
        return scan_range(xi, alpha, c, factor, chunks[i].first, chunks[i].second, tol);
    });
    std::vector<Hit> out;
    for (auto& part : parts) {
        for (auto& h : part) out.push_back(std::move(h));
    }
    return out;
}

} // namespace

std::vector<Hit> brute_hits(const RealSpec& xi, const Constraint& c, const Rat& factor,
                            const Int& qmax, int threads, const Tolerances& tol) {
    return scan_all(xi, nullptr, c, factor, qmax, threads, tol);
}

std::vector<std::pair<Int, long>> hit_counts(const RealSpec& xi, const Constraint& c,
                                             const Rat& factor, const std::vector<Int>& qgrid,
                                             int threads, const Tolerances& tol) {
    if (qgrid.empty()) return {};
    for (std::size_t i = 1; i < qgrid.size(); ++i) {
        if (qgrid[i] < qgrid[i - 1]) throw PreconditionError("denominator grid must ascend");
    }
    auto hits = brute_hits(xi, c, factor, qgrid.back(), threads, tol);
    std::vector<std::pair<Int, long>> out;
    std::size_t idx = 0;
    for (const Int& q : qgrid) {
        while (idx < hits.size() && hits[idx].N <= q) ++idx;
        out.emplace_back(q, static_cast<long>(idx));
    }
    return out;
}

std::vector<Hit> inhomogeneous_hits(const RealSpec& xi, const RealSpec& alpha,
                                    const Constraint& c, const Rat& factor, const Int& qmax,
                                    int threads, const Tolerances& tol) {
    return scan_all(xi, &alpha, c, factor, qmax, threads, tol);
}

Enclosure approximation_constant(const RealSpec& xi, const Constraint& c, const Int& qmax,
                                 int threads, const Tolerances& tol) {
    auto hits = brute_hits(xi, c, Rat(1), qmax, threads, tol);
    if (hits.empty()) throw PreconditionError("no hits below the denominator bound");
    Enclosure best = hits.front().quality;
    for (std::size_t i = 1; i < hits.size(); ++i) best = Enclosure::min(best, hits[i].quality);
    return best;
}

TrigProbe trig_probe(const RealSpec& xi, const RealSpec& alpha, long nmax,
                     const Tolerances& tol) {
    if (nmax < 1) throw PreconditionError("trig probe needs nmax >= 1");
    TrigProbe out;
    out.running_min.reserve(static_cast<std::size_t>(nmax));
    out.running_max.reserve(static_cast<std::size_t>(nmax));
    RealEval base(xi, tol);
    RealEval shift(alpha, tol);
    long scale_bits = 1;
    for (long n = 1; n <= nmax; ++n) {
        while ((1L << scale_bits) < n) ++scale_bits;
        // n-th powers contract error only inside (-1,1); budget the argument
        // width so n * width stays below 2^-48.
        long bits = 48 + scale_bits;
        Rat w = make_rat(Int(1), pow_int(Int(2), bits));
        Rat rn{Int(n)};
        Enclosure arg = base.enclose_width(Rat(w / rn)) * rn + shift.enclose_width(w);
        Enclosure s = sin_enclosure(arg.mid(), bits + 8);
        Rat half_width = arg.width() / 2;
        Enclosure sine(rat_max(Rat(-1), Rat(s.lo() - half_width)),
                       rat_min(Rat(1), Rat(s.hi() + half_width)));
        Enclosure p = sine.pow_out(static_cast<unsigned long>(n), 96);
        p = Enclosure(rat_max(Rat(-1), p.lo()), rat_min(Rat(1), p.hi()));
        if (out.running_min.empty()) {
            out.running_min.push_back(p);
            out.running_max.push_back(p);
        } else {
            out.running_min.push_back(Enclosure::min(out.running_min.back(), p));
            out.running_max.push_back(Enclosure::max(out.running_max.back(), p));
        }
    }
    return out;
}

} // namespace apfrac
