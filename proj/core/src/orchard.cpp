#include "apfrac/orchard.hpp"

#include "apfrac/cf.hpp"
#include "apfrac/functions.hpp"
#include "apfrac/parallel.hpp"

#include <algorithm>
#include <utility>

namespace apfrac {

namespace {

Rat enclosure_mid(const Enclosure& e) { return Rat((e.lo() + e.hi()) / 2); }

/// Decimal rendering with a fixed digit count, rounding half up. Fixed width
/// keeps the SVG output byte-stable.
std::string rat_decimal(const Rat& x, int places) {
    const Int scale = pow_int(Int(10), static_cast<unsigned long>(places));
    Int v = floor_rat(x * Rat(scale) + make_rat(1, 2));
    const bool neg = sgn(v) < 0;
    Int w = neg ? Int(-v) : v;
    const Int ip = w / scale;
    std::string frac = to_string(Int(w % scale));
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    return (neg ? std::string("-") : std::string()) + to_string(ip) + "." + frac;
}

Int first_column(const Constraint& c) { return sgn(c.s) > 0 ? c.s : c.b; }

bool in_glade(const OrchardScene& sc, const Int& x, const Int& y) {
    return Rat(x * x + y * y) <= sc.glade_radius * sc.glade_radius;
}

/// sqrt(1 + xi^2), the vertical-to-euclidean conversion factor.
Enclosure slope_norm(const Enclosure& xi, long bits) {
    return rational_power(xi * xi + Rat(1), Int(1), Int(2), bits);
}

void require_within_sector(RealEval& ev, const Rat& theta, const Tolerances& tol) {
    for (long bits = tol.init_bits;; bits *= 2) {
        if (bits > tol.cap_bits) {
            throw PrecisionCapError("sector membership pinned at the precision cap");
        }
        Enclosure mag = ev.enclose_bits(bits).abs();
        if (mag.hi() <= theta) return;
        if (mag.lo() > theta) throw PreconditionError("slope leaves the scene sector");
    }
}

/// Certified verdict for one tree, refining the slope as needed. Exact slopes
/// take a purely rational path so tangent trees still decide.
bool tree_blocks(RealEval& ev, const OrchardScene& sc, const Int& x, const Int& y, const Rat& rho,
                 const Tolerances& tol, Enclosure& dist_out) {
    if (ev.exact()) {
        const Rat xi = ev.exact_value();
        const Rat gap = rat_abs(xi * Rat(x) - Rat(y));
        bool blocks;
        if (sc.mode == DistanceMode::kVertical) {
            blocks = gap <= rho;
            dist_out = Enclosure(gap, gap);
        } else {
            const Rat norm2 = Rat(1) + xi * xi;
            blocks = gap * gap <= rho * rho * norm2;
            dist_out = Enclosure(gap, gap) / rational_power(norm2, Int(1), Int(2), tol.init_bits);
        }
        return blocks;
    }
    for (long bits = tol.init_bits;; bits *= 2) {
        if (bits > tol.cap_bits) {
            throw PrecisionCapError("tree margin pinned at the precision cap");
        }
        Enclosure xi = ev.enclose_bits(bits);
        Enclosure gap = (xi * Rat(x) - Rat(y)).abs();
        Enclosure thr(rho, rho);
        if (sc.mode == DistanceMode::kEuclidean) thr = slope_norm(xi, bits) * rho;
        if (gap.hi() <= thr.lo()) {
            dist_out = sc.mode == DistanceMode::kVertical ? gap : gap / slope_norm(xi, bits);
            return true;
        }
        if (gap.lo() > thr.hi()) return false;
    }
}

struct ChunkScan {
    std::optional<BlockingTree> blocker;
    long scanned = 0;
};

}  // namespace

Rat OrchardScene::radius_at(const Int& x) const {
    if (model == RadiusModel::kShared) return shared_radius;
    return make_rat(constraint.a * constraint.b, 4 * x);
}

void OrchardScene::validate() const {
    if (depth < 1) throw PreconditionError("scene depth must be positive");
    if (sgn(glade_radius) < 0) throw PreconditionError("glade radius cannot be negative");
    if (sgn(sector_slope) < 0) throw PreconditionError("sector slope cannot be negative");
    if (model == RadiusModel::kShared && sgn(shared_radius) <= 0) {
        throw PreconditionError("shared tree radius must be positive");
    }
    // disks shrink (or stay fixed) along x while columns move away, so the
    // origin test only has to walk until x alone clears the radius
    for (Int x = first_column(constraint); x <= depth; x += constraint.b) {
        const Rat rho = radius_at(x);
        if (Rat(x * x) > rho * rho) break;
        const Int y0 = nearest_in_progression(Rat(0), constraint.a, constraint.r);
        for (int d : {-1, 0, 1}) {
            const Int y = y0 + Int(d) * constraint.a;
            if (Rat(x * x + y * y) <= rho * rho) {
                throw PreconditionError("a tree disk covers the observer");
            }
        }
    }
}

VisibilityResult visibility(const OrchardScene& scene, const RealSpec& slope, long threads,
                            const Tolerances& tol) {
    scene.validate();
    const Constraint& c = scene.constraint;
    if (scene.model == RadiusModel::kShared && sgn(scene.sector_slope) > 0) {
        RealEval gate(slope, tol);
        require_within_sector(gate, scene.sector_slope, tol);
    }
    const Int n0 = sgn(c.s) > 0 ? Int(0) : Int(1);
    const Int nmax = floor_div(scene.depth - c.s, c.b);
    VisibilityResult out;
    if (nmax < n0) return out;
    if (!fits_long(nmax - n0)) throw PreconditionError("scene depth out of range");
    if (threads < 1) threads = 1;

    auto ranges = split_range(0, to_long(nmax - n0), threads == 1 ? 1 : threads * 2);
    auto chunks = parallel_chunks(
        ranges.size(), static_cast<unsigned>(threads), [&](std::size_t ci) -> ChunkScan {
            ChunkScan res;
            RealEval ev(slope, tol);
            const Enclosure xi0 = ev.enclose_bits(tol.init_bits);
            Enclosure norm0(Rat(1), Rat(1));
            if (scene.mode == DistanceMode::kEuclidean) norm0 = slope_norm(xi0, tol.init_bits);
            for (long off = static_cast<long>(ranges[ci].first);
                 off <= static_cast<long>(ranges[ci].second); ++off) {
                const Int x = c.b * (n0 + Int(off)) + c.s;
                const Rat rho = scene.radius_at(x);
                const Rat window = Rat((norm0 * rho).hi());
                const Enclosure xix = xi0 * Rat(x);
                const Int y0 = nearest_in_progression(enclosure_mid(xix), c.a, c.r);
                for (long step = 0;; ++step) {
                    bool inside = false;
                    for (int dir : {1, -1}) {
                        if (step == 0 && dir < 0) continue;
                        const Int y = y0 + Int(dir) * Int(step) * c.a;
                        const Rat away = rat_max(Rat(y) - xix.hi(), xix.lo() - Rat(y));
                        if (away > window) continue;
                        inside = true;
                        if (in_glade(scene, x, y)) continue;
                        ++res.scanned;
                        Enclosure dist;
                        if (tree_blocks(ev, scene, x, y, rho, tol, dist)) {
                            res.blocker = BlockingTree{x, y, dist, rho};
                            return res;
                        }
                    }
                    if (!inside && step > 0) break;
                }
            }
            return res;
        });

    for (const ChunkScan& ch : chunks) {
        out.scanned += ch.scanned;
        if (ch.blocker) {
            out.blocker = ch.blocker;
            break;
        }
    }
    return out;
}

Enclosure min_blocking_radius(const OrchardScene& scene, const RealSpec& slope, long threads,
                              const Tolerances& tol) {
    scene.validate();
    const Constraint& c = scene.constraint;
    if (scene.model != RadiusModel::kShared) {
        throw PreconditionError("the minimum radius applies to the shared-radius model");
    }
    if (sgn(scene.sector_slope) > 0) {
        RealEval gate(slope, tol);
        require_within_sector(gate, scene.sector_slope, tol);
    }
    const Int n0 = sgn(c.s) > 0 ? Int(0) : Int(1);
    const Int nmax = floor_div(scene.depth - c.s, c.b);
    if (nmax < n0) throw PreconditionError("the scene holds no trees");
    if (!fits_long(nmax - n0)) throw PreconditionError("scene depth out of range");
    if (threads < 1) threads = 1;

    struct Fold {
        Rat lo{-1}, hi{-1};  // negative marks the empty fold

        void take(const Enclosure& e) {
            if (sgn(lo) < 0 || e.lo() < lo) lo = e.lo();
            if (sgn(hi) < 0 || e.hi() < hi) hi = e.hi();
        }
    };

    auto ranges = split_range(0, to_long(nmax - n0), threads == 1 ? 1 : threads * 2);
    auto folds = parallel_chunks(
        ranges.size(), static_cast<unsigned>(threads), [&](std::size_t ci) -> Fold {
            Fold f;
            RealEval ev(slope, tol);
            const Enclosure xi0 = ev.enclose_bits(tol.init_bits);
            for (long off = static_cast<long>(ranges[ci].first);
                 off <= static_cast<long>(ranges[ci].second); ++off) {
                const Int x = c.b * (n0 + Int(off)) + c.s;
                const Enclosure xix = xi0 * Rat(x);
                const Int y0 = nearest_in_progression(enclosure_mid(xix), c.a, c.r);
                // walking away from the line, the first tree outside the glade
                // is the closest survivor on its side
                for (int dir : {1, -1}) {
                    for (long step = dir > 0 ? 0 : 1;; ++step) {
                        const Int y = y0 + Int(dir) * Int(step) * c.a;
                        if (!in_glade(scene, x, y)) {
                            f.take((xix - Rat(y)).abs());
                            break;
                        }
                    }
                }
            }
            return f;
        });

    Fold all;
    for (const Fold& f : folds) {
        if (sgn(f.lo) < 0) continue;
        all.take(Enclosure(f.lo, f.hi));
    }
    Enclosure vertical(all.lo, all.hi);
    if (scene.mode == DistanceMode::kVertical) return vertical;
    RealEval ev(slope, tol);
    return vertical / slope_norm(ev.enclose_bits(tol.init_bits), tol.init_bits);
}

BaselineReport polya_baseline(const Constraint& c, const Int& N, const std::vector<Rat>& slope_grid,
                              const Rat& radius_scale) {
    if (sgn(c.r) != 0 || sgn(c.s) != 0) {
        throw PreconditionError("the baseline sweep needs the homogeneous grid r = s = 0");
    }
    if (N < c.a * c.b) throw PreconditionError("the disk radius must be at least ab");
    if (sgn(radius_scale) <= 0) throw PreconditionError("radius scale must be positive");

    BaselineReport rep;
    rep.box = N;
    rep.radius = radius_scale * make_rat(c.a * c.b, N);
    const Rat r2 = rep.radius * rep.radius;
    const Int disk2 = N * N;

    for (const Rat& xi : slope_grid) {
        if (sgn(xi) <= 0) throw PreconditionError("baseline slopes must be positive");
        BaselineSlope row;
        row.slope = xi;
        const Rat norm2 = Rat(1) + xi * xi;
        const Rat rhs = r2 * norm2;  // threshold on (xi x - y)^2
        for (Int x(0); x <= N; x += c.b) {
            const Rat cx = xi * Rat(x);
            const Int y0 = nearest_in_progression(cx, c.a, Int(0));
            for (long step = 0;; ++step) {
                bool inside = false;
                for (int dir : {1, -1}) {
                    if (step == 0 && dir < 0) continue;
                    const Int y = y0 + Int(dir) * Int(step) * c.a;
                    const Rat g = cx - Rat(y);
                    if (g * g > rhs) continue;
                    inside = true;
                    if (sgn(x) == 0 && sgn(y) == 0) continue;
                    if (x * x + y * y > disk2) continue;
                    const Rat margin = (rhs - g * g) / norm2;
                    if (!row.margin || margin > *row.margin) {
                        row.margin = margin;
                        row.x = x;
                        row.y = y;
                    }
                    row.blocked = true;
                }
                if (!inside && step > 0) break;
            }
        }
        ++rep.total;
        if (row.blocked) {
            ++rep.blocked;
            if (!rep.worst_margin || *row.margin < *rep.worst_margin) {
                rep.worst_margin = *row.margin;
            }
        }
        rep.slopes.push_back(std::move(row));
    }
    return rep;
}

std::string render(const OrchardScene& scene, const std::vector<RealSpec>& slopes) {
    scene.validate();
    const Constraint& c = scene.constraint;
    const Rat yb =
        sgn(scene.sector_slope) > 0 ? scene.sector_slope * Rat(scene.depth) : Rat(scene.depth);
    const Rat margin = scene.glade_radius + 1;
    const Rat stroke = rat_max(make_rat(scene.depth, 300), make_rat(1, 20));

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
           rat_decimal(-margin, 4) + " " + rat_decimal(-(yb + 1), 4) + " " +
           rat_decimal(margin + Rat(scene.depth) + 1, 4) + " " + rat_decimal((yb + 1) * 2, 4) +
           "\">\n";
    if (sgn(scene.glade_radius) > 0) {
        svg += "  <circle class=\"glade\" cx=\"0\" cy=\"0\" r=\"" +
               rat_decimal(scene.glade_radius, 4) + "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"" +
               rat_decimal(stroke, 4) + "\" stroke-dasharray=\"" + rat_decimal(stroke * 4, 4) +
               "\"/>\n";
    }
    for (Int x = first_column(c); x <= scene.depth; x += c.b) {
        const Rat bound = sgn(scene.sector_slope) > 0 ? scene.sector_slope * Rat(x) : yb;
        Int y = nearest_in_progression(-bound, c.a, c.r);
        while (Rat(y) < -bound) y += c.a;
        for (; Rat(y) <= bound; y += c.a) {
            if (in_glade(scene, x, y)) continue;
            svg += "  <circle class=\"tree\" cx=\"" + to_string(x) + "\" cy=\"" + to_string(Int(-y)) +
                   "\" r=\"" + rat_decimal(scene.radius_at(x), 4) +
                   "\" fill=\"#3a7d44\" stroke=\"none\"/>\n";
        }
    }
    for (const RealSpec& spec : slopes) {
        RealEval ev(spec);
        const Rat ym = enclosure_mid(ev.enclose_bits(128)) * Rat(scene.depth);
        svg += "  <line class=\"ray\" x1=\"0\" y1=\"0\" x2=\"" + to_string(scene.depth) + "\" y2=\"" +
               rat_decimal(-ym, 4) + "\" stroke=\"#aa3333\" stroke-width=\"" +
               rat_decimal(stroke, 4) + "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace apfrac
