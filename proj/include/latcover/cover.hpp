#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latcover/ellipsoid.hpp"
#include "latcover/polytope.hpp"

namespace latcover {

struct UnimodularCover {
    LatticePolytope target;
    std::vector<Simplex> simplices;  // vertices in lattice coordinates
    std::string scope;               // "full" or "boundary-neighborhood"
};

struct CoverVerdict {
    bool covered = false;
    // Exact uncovered point, ambient coordinates. covered == false with no
    // witness means the subdivision fallback hit its depth cap unresolved.
    std::optional<RatVec> witness;
    std::string method;  // "arrangement" or "subdivision"
};

// Triangulation of a polytope of dimension <= 2 into unimodular simplices
// whose vertex set is every lattice point of the input (empty triangles in
// the plane case, which is the same as unimodular). Points and segments come
// back as the degenerate triangulations.
std::vector<Simplex> facet_triangulation(const LatticePolytope& f);

// Unimodular simplices covering a neighborhood of the boundary point x in a
// very ample 3-polytope: take a vertex v of the minimal face F containing x,
// keep the simplices of the vertex cover at v that meet F full-dimensionally,
// and join each one's off-F vertices with every simplex of a triangulation
// of F. Throws PointNotOnBoundary, NotVeryAmple.
std::vector<Simplex> join_cover(const RatVec& x, const LatticePolytope& p);

// Cover of a neighborhood of the whole boundary of a very ample 3-polytope:
// vertex covers at every vertex, triangulations of every facet, and the join
// simplices of every edge and facet. Throws NotVeryAmple with the offending
// vertex and direction.
UnimodularCover boundary_cover(const LatticePolytope& p);

// Full unimodular cover of the hull of the ellipsoid's Z^3 points: peel the
// point set down to a singleton with certified ellipsoids, then re-add the
// points one at a time. Every intermediate hull must be normal
// (ChainStepNotNormal); an equal-dimension step adds the new hull's boundary
// cover, a dimension jump lifts the cover through the unimodular pyramid.
// The result is certified by verify_cover before returning.
UnimodularCover ellipsoid_cover_3d(const Ellipsoid& e);

// Alternative cover for ellipsoids centered in (1/2)Z^3: triangulate the
// boundary, join each boundary triangle with a lattice point one lattice
// plane further inside, and close any gap the verification oracle reports by
// walking from the witness toward the center and re-joining the first
// covered face crossed. Throws CenterNotHalfIntegral; VerificationFailed if
// the gap-closing loop exhausts its budget.
UnimodularCover symmetric_cover_3d(const Ellipsoid& e);

// A lattice point of conv(e2) + v for a planar ellipsoid whose solid holds a
// full-dimensional lattice triangle; nonempty for every translation v.
// Returned in lattice coordinates of l.
IntVec johnson_witness(const Ellipsoid& e2, const AffineLattice& l, const RatVec& v);

// Exact coverage decision for simplices inside p (only full-dimensional ones
// can cover). "arrangement" splits p recursively along the simplices' facet
// planes until every piece lies inside one simplex or exhibits a gap; more
// than LATCOVER_CELL_CAP pieces (default 10^6) raises TooManyCells.
// "subdivision" bisects a triangulation of p to bounded depth instead and
// may come back unresolved. method = "auto" tries the arrangement and falls
// back to subdivision on TooManyCells.
CoverVerdict verify_cover(const LatticePolytope& p, const std::vector<Simplex>& simplices,
                          const std::string& method = "auto");

// True when some simplex contains the point (lattice-coordinate frame).
bool point_covered(const std::vector<Simplex>& simplices, const RatVec& x_lat);

}  // namespace latcover
