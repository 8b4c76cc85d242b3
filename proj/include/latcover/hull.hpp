#pragma once

#include <vector>

#include "latcover/linalg.hpp"

namespace latcover {

// Supporting hyperplane normal . x <= offset with primitive integer normal.
struct Hyperplane {
    IntVec normal;
    Rat offset;

    bool operator==(const Hyperplane& o) const = default;
};

// One (d-1)-simplex of the simplicial boundary complex, oriented outward.
struct BoundarySimplex {
    std::vector<int> pts;  // d affinely independent input point indices
    Hyperplane plane;
};

struct HullResult {
    std::vector<int> vertices;                    // extreme points, ascending
    std::vector<Hyperplane> facets;               // deduplicated, deterministic order
    std::vector<std::vector<int>> facet_points;   // input points on facets[i], ascending
    std::vector<BoundarySimplex> boundary;        // simplicial boundary complex
};

// Affine dimension of a point set.
int affine_rank(const std::vector<RatVec>& pts);

// Indices of an affinely independent subset spanning the affine hull
// (first point is always index 0 of the returned list's anchor).
std::vector<int> affine_basis_indices(const std::vector<RatVec>& pts);

// Beneath-beyond convex hull of a full-dimensional point set; throws
// PreconditionUnmet when the points do not span the ambient space.
// Exact over Q. Handles repeated and interior points.
HullResult convex_hull(const std::vector<RatVec>& pts);

}  // namespace latcover
