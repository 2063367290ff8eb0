#pragma once

#include "ctvlab/depth.hpp"

namespace ctvlab {

// Closed halfspace constraint a·x <= b.
struct HalfspaceLE {
    VecQ a;
    Rat b;
};

// Exact H-representation of the depth region { q : tukey_depth(q) >= t } of a
// weighted point set given as matrix columns, in the same coordinates.
// Constraints consist of affine-hull pinning plus t-quantile constraints for
// every hyperplane direction spanned by point differences; see
// docs/depth_regions.md for the construction lemma.  Valid for any dimension,
// but the number of constraints grows like (#difference lines choose dim-1).
std::vector<HalfspaceLE> depth_region_constraints(const MatQ& points, const std::vector<Rat>& weights,
                                                  const Rat& t);

// Vertex enumeration of { a·x <= b } within [lo, hi] by incremental double
// description; exact, handles degenerate faces.  Columns of the result are
// the vertices (0 columns when empty).
MatQ dd_vertices(const std::vector<HalfspaceLE>& constraints, const VecQ& lo, const VecQ& hi);

inline constexpr int kMaxRegionDim = 4;

struct DepthRegion {
    Rat threshold;
    std::vector<HalfspaceLE> halfspaces; // ambient coordinates
    MatQ vertices;                       // ambient coordinates, columns
    bool empty = false;                  // confirmed by an LP feasibility probe
};

// The polytope { q : depth(q) >= t } for 0 < t <= 1, ambient dimension <= 4.
// Every returned vertex is re-checked to have depth >= t.  An empty region is
// reported as empty (not an error).
DepthRegion centerpoint_region(const MassCloud& cloud, const Rat& t);

// Exact vertex average of the canonical vertex enumeration; deterministic.
// Throws when the region is empty (no-barycenter).
VecQ centerpoint_barycenter(const MassCloud& cloud, const Rat& t);

} // namespace ctvlab
