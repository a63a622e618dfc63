#pragma once

#include "apfrac/congruence.hpp"
#include "apfrac/enclosure.hpp"
#include "apfrac/real_spec.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace apfrac {

/// How a tree's blocking disk is sized: one radius per abscissa column
/// (ab/(4x) at x = bn+s), or one shared radius for the whole scene.
enum class RadiusModel { kPerColumn, kShared };

/// Distance from a tree center to the sight line: true point-line distance,
/// or the vertical gap |y - slope*x| at the tree's abscissa.
enum class DistanceMode { kEuclidean, kVertical };

/// An orchard on the grid (bZ+s) x (aZ+r): trees at (x, y) = (bn+s, am+r)
/// with 0 < x <= depth, minus the glade disk x^2 + y^2 <= glade_radius^2.
/// A positive sector_slope further clips rendering to |y| <= sector_slope*x.
struct OrchardScene {
    explicit OrchardScene(Constraint c) : constraint(std::move(c)) {}

    Constraint constraint;
    RadiusModel model = RadiusModel::kPerColumn;
    Rat shared_radius{0};  // used when model == kShared; must be positive there
    Int depth{1};
    Rat glade_radius{0};
    Rat sector_slope{0};  // 0 = unclipped
    DistanceMode mode = DistanceMode::kEuclidean;

    /// Tree radius for the column at abscissa x.
    Rat radius_at(const Int& x) const;

    /// Rejects nonpositive depth or shared radius, negative glade or sector,
    /// and any scene where some tree's disk covers the observer at the origin.
    void validate() const;
};

/// One tree that provably blocks the sight line: distance carries the chosen
/// metric and satisfies distance.hi <= radius.
struct BlockingTree {
    Int x, y;
    Enclosure distance;
    Rat radius;
};

/// Outcome of a sight-line scan. A missing blocker certifies that every
/// scanned tree keeps distance.lo > radius.
struct VisibilityResult {
    std::optional<BlockingTree> blocker;
    long scanned = 0;

    bool visible() const { return !blocker.has_value(); }
};

/// Scans columns x = bn+s <= depth in increasing order and reports the first
/// blocking tree, or a certified all-clear. Ties inside one column go to the
/// candidate nearest the line.
VisibilityResult visibility(const OrchardScene& scene, const RealSpec& slope, long threads = 1,
                            const Tolerances& tol = Tolerances{});

/// Minimum over all trees in range of the chosen distance to the sight line.
/// A shared radius strictly below this value leaves the horizon visible;
/// one at or above it blocks.
Enclosure min_blocking_radius(const OrchardScene& scene, const RealSpec& slope, long threads = 1,
                              const Tolerances& tol = Tolerances{});

/// One sight line of a baseline sweep. A blocked slope records the first
/// blocking tree and its squared-distance margin radius^2 - distance^2.
struct BaselineSlope {
    Rat slope;
    bool blocked = false;
    Int x{0}, y{0};
    std::optional<Rat> margin;
};

/// Sweep summary: radius used, per-slope verdicts, and the smallest margin
/// among blocked slopes.
struct BaselineReport {
    Int box;
    Rat radius;
    long blocked = 0;
    long total = 0;
    std::optional<Rat> worst_margin;
    std::vector<BaselineSlope> slopes;
};

/// Certified sweep over rational slopes for the homogeneous grid bZ x aZ with
/// trees of radius radius_scale * ab/N inside the disk of radius N. Every
/// comparison is exact, done on squared distances.
BaselineReport polya_baseline(const Constraint& c, const Int& N,
                              const std::vector<Rat>& slope_grid,
                              const Rat& radius_scale = Rat(1));

/// Deterministic SVG 1.1 picture of the scene: tree circles (class "tree"),
/// the glade outline (class "glade"), and one ray per slope (class "ray").
/// Byte-identical output for identical input.
std::string render(const OrchardScene& scene, const std::vector<RealSpec>& slopes);

}  // namespace apfrac
