#include "apfrac/three_distance.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "apfrac/errors.hpp"

namespace apfrac {

namespace {

// Intersection of two enclosures of the same value.
Enclosure meet(const Enclosure& a, const Enclosure& b) {
    return Enclosure(rat_max(a.lo(), b.lo()), rat_min(a.hi(), b.hi()));
}

long checked_point_count(const Int& Q) {
    if (Q < 1) throw PreconditionError("gap spectrum needs Q >= 1");
    if (Q > (1L << 21)) throw PreconditionError("Q too large for a direct gap scan");
    return to_long(Q);
}

std::string enclosure_text(const Enclosure& e) {
    return "[" + e.decimal_lo(12) + ", " + e.decimal_hi(12) + "]";
}

// frac(i*xi) for i = 0..Q as disjoint enclosures, all inside [0, 1), sorted.
// Empty result means some comparison was indecisive at this width.
struct Point {
    Rat lo, hi;
    long index;
};

std::vector<Point> sorted_points(const Enclosure& e, long n) {
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    pts.push_back(Point{Rat(0), Rat(0), 0});
    for (long i = 1; i <= n; ++i) {
        Rat lo = Rat(i) * e.lo();
        Rat hi = Rat(i) * e.hi();
        Int f = floor_rat(lo);
        if (floor_rat(hi) != f) return {};  // straddles an integer
        pts.push_back(Point{lo - Rat(f), hi - Rat(f), i});
    }
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.lo < b.lo; });
    for (long j = 0; j < n; ++j) {
        if (!(pts[j].hi < pts[j + 1].lo)) return {};  // order not certified
    }
    if (!(pts[n].hi < Rat(1) + pts[0].lo)) return {};
    return pts;
}

} // namespace

Int GapSpectrum::total_count() const {
    Int total(0);
    for (const auto& e : entries) total += e.count;
    return total;
}

GapSpectrum gaps_direct(const RealSpec& xi, const Int& Q, const Rat& width, const Tolerances& tol) {
    long n = checked_point_count(Q);
    if (xi.is_rational()) throw PreconditionError("gap spectrum needs an irrational value");

    Rat w = width;
    if (w <= 0) w = make_rat(Int(1), Int(8) * Q * Int(Q + 1));
    Rat width_floor = pow_rat(Rat(1, 2), tol.cap_bits);

    while (true) {
        std::vector<Point> pts = sorted_points(refine_to(xi, w), n);
        if (!pts.empty()) {
            // Consecutive gaps keyed by endpoint index difference; gaps with
            // equal keys enclose the same length, so intersect them.
            std::map<long, std::pair<Enclosure, Int>> classes;
            auto add_gap = [&](const Point& a, const Point& b, int shift) {
                Enclosure len(Rat(shift) + b.lo - a.hi, Rat(shift) + b.hi - a.lo);
                auto [it, fresh] = classes.emplace(b.index - a.index, std::make_pair(len, Int(1)));
                if (!fresh) {
                    it->second.first = meet(it->second.first, len);
                    it->second.second += 1;
                }
            };
            for (long j = 0; j < n; ++j) add_gap(pts[j], pts[j + 1], 0);
            add_gap(pts[n], pts[0], 1);

            GapSpectrum s;
            for (const auto& [d, cl] : classes) s.entries.push_back(GapEntry{cl.first, cl.second});
            std::sort(s.entries.begin(), s.entries.end(), [](const GapEntry& x, const GapEntry& y) {
                if (x.length.lo() != y.length.lo()) return x.length.lo() < y.length.lo();
                return x.length.hi() < y.length.hi();
            });
            return s;
        }
        if (w <= width_floor) {
            throw PrecisionCapError("gap ordering is indeterminate at the precision cap");
        }
        w /= 2;
    }
}

GapSpectrum gaps_predicted(const RealSpec& xi, const Int& Q, const Rat& width, const Tolerances& tol) {
    if (Q < 1) throw PreconditionError("gap spectrum needs Q >= 1");
    if (xi.is_rational()) throw PreconditionError("gap spectrum needs an irrational value");

    RealEval eval(xi, tol);
    GreedyDecomp g = eval.greedy(Q);
    const ConvergentTable& t = eval.table();
    Int qk1 = t.q(g.k - 1);

    Rat w = width;
    if (w <= 0) w = make_rat(Int(1), Int(8) * Q * t.q(g.k));
    Enclosure e1 = eval.eta(g.k - 1, w);
    Enclosure e2 = eval.eta(g.k - 2, w);

    GapSpectrum s;
    s.entries.push_back(GapEntry{e1, Int(Q + 1 - qk1)});
    s.entries.push_back(GapEntry{e2 - Rat(g.p) * e1, Int(g.w + 1)});
    s.entries.push_back(GapEntry{e2 - Rat(Int(g.p - 1)) * e1, Int(qk1 - g.w - 1)});
    return s;
}

GapCheck verify(const RealSpec& xi, const Int& Q, const Tolerances& tol) {
    checked_point_count(Q);
    Rat w = make_rat(Int(1), Int(8) * Q * Int(Q + 1));
    Rat width_floor = pow_rat(Rat(1, 2), tol.cap_bits);

    while (true) {
        GapCheck check;
        check.direct = gaps_direct(xi, Q, w, tol);
        check.predicted = gaps_predicted(xi, Q, w, tol);

        std::vector<const GapEntry*> pred;
        for (const auto& e : check.predicted.entries) {
            if (e.count > 0) pred.push_back(&e);
        }
        const auto& dir = check.direct.entries;

        // A class may overlap at most one class on the other side before the
        // pairing is trusted; otherwise refine and remeasure.
        bool ambiguous = false;
        std::vector<long> dmatch(dir.size(), -1);
        std::vector<long> pmatch(pred.size(), -1);
        for (std::size_t i = 0; i < dir.size() && !ambiguous; ++i) {
            for (std::size_t j = 0; j < pred.size(); ++j) {
                if (!dir[i].length.intersects(pred[j]->length)) continue;
                if (dmatch[i] >= 0 || pmatch[j] >= 0) {
                    ambiguous = true;
                    break;
                }
                dmatch[i] = static_cast<long>(j);
                pmatch[j] = static_cast<long>(i);
            }
        }

        if (!ambiguous) {
            for (std::size_t i = 0; i < dir.size(); ++i) {
                if (dmatch[i] < 0) {
                    check.note = "measured length " + enclosure_text(dir[i].length) + " with count " +
                                 to_string(dir[i].count) + " matches no predicted class";
                    return check;
                }
                const GapEntry& p = *pred[static_cast<std::size_t>(dmatch[i])];
                if (dir[i].count != p.count) {
                    check.note = "length " + enclosure_text(dir[i].length) + " counted " +
                                 to_string(dir[i].count) + " times but predicted " + to_string(p.count);
                    return check;
                }
            }
            for (std::size_t j = 0; j < pred.size(); ++j) {
                if (pmatch[j] < 0) {
                    check.note = "predicted length " + enclosure_text(pred[j]->length) + " with count " +
                                 to_string(pred[j]->count) + " matches no measured class";
                    return check;
                }
            }
            check.ok = true;
            return check;
        }
        if (w <= width_floor) {
            throw PrecisionCapError("gap classes not separated at the precision cap");
        }
        w /= 2;
    }
}

} // namespace apfrac
