#pragma once

#include <vector>

#include "latcover/polytope.hpp"

namespace latcover {

// Outcome of the integral-closedness test. On failure (c, x) names a lattice
// point x of the c-th dilate with no decomposition into c lattice points of
// the polytope; x is in ambient coordinates and independently checkable.
struct NormalityReport {
    bool is_normal = true;
    int c = 0;
    RatVec x;
};

// Checks that every lattice point of cP is a sum of c lattice points of P,
// for all c from 2 up to max(2, dim P - 1). The test is relative to P's own
// lattice. The degree cutoff is the standard generation bound for cones over
// lattice polytopes; the cones module offers a full Hilbert-basis cross-check.
NormalityReport is_normal(const LatticePolytope& p);

// q sits inside p and p has exactly one more lattice point than q.
bool is_elementary_relation(const LatticePolytope& q, const LatticePolytope& p);

// Lifts a unimodular cover of the base of a height-1 pyramid to the pyramid:
// every simplex gains the apex. The base is the hull of p's non-apex
// vertices; vertices are lattice coordinates throughout.
std::vector<Simplex> pyramid_cover_lift(const std::vector<Simplex>& base_cover,
                                        const LatticePolytope& p,
                                        const IntVec& apex);

}  // namespace latcover
