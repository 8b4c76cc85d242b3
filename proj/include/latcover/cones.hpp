#pragma once

#include <memory>
#include <vector>

#include "latcover/lattice.hpp"
#include "latcover/linalg.hpp"
#include "latcover/polytope.hpp"

namespace latcover {

// Pointed full-dimensional rational cone {x : s . x >= 0 for every support
// s}, kept in the coordinates of its (zero-shift) lattice. Rays are the
// primitive extreme generators; redundant input generators are dropped.
class RationalCone {
  public:
    static RationalCone from_rays(AffineLattice lattice,
                                  const std::vector<IntVec>& generators);

    int dim() const { return lat_.dim(); }
    const AffineLattice& lattice() const { return lat_; }
    const std::vector<IntVec>& rays() const { return rays_; }
    const std::vector<IntVec>& supports() const { return supports_; }

    bool contains(const IntVec& x) const;
    bool contains(const RatVec& x) const;
    // Strict membership: every support inequality holds strictly.
    bool contains_interior(const RatVec& x) const;
    bool is_simplicial() const { return (int)rays_.size() == dim(); }
    // |det| of the ray matrix; simplicial cones only.
    Int multiplicity() const;

    // Minimal generating set of the monoid cone ∩ Z^dim: triangulate, take
    // the lattice points of each piece's half-open ray parallelepiped as
    // candidates, and keep the irreducible ones. Sorted lexicographically,
    // computed once per cone.
    const std::vector<IntVec>& hilbert_basis() const;

  private:
    struct HilbCache;

    explicit RationalCone(AffineLattice lat);

    AffineLattice lat_;
    std::vector<IntVec> rays_;
    std::vector<IntVec> supports_;
    std::shared_ptr<HilbCache> cache_;
};

// Simplicial subdivision of the cone: each piece is spanned by dim() of the
// tips of conv(0, ray tips), via that hull's far boundary simplices.
std::vector<std::vector<IntVec>> triangulate_cone(const RationalCone& c);

// Lattice points of {sum t_i r_i : 0 <= t_i < 1} for linearly independent
// rays, zero excluded, via Smith normal form residues.
std::vector<IntVec> parallelepiped_points(const std::vector<IntVec>& rays);

// The corner cone R_+(P - v) of a vertex, in the polytope's section
// coordinates. Throws NotAVertex.
RationalCone corner_cone(const LatticePolytope& p, const RatVec& vertex);

struct VeryAmpleReport {
    bool very_ample = true;
    // On failure: the vertex and the escaping Hilbert basis element, both in
    // ambient coordinates (the element as a direction).
    RatVec vertex;
    RatVec element;
};

// P is very ample when every corner cone's Hilbert basis lies in P - v.
VeryAmpleReport is_very_ample(const LatticePolytope& p);

// Triangulation of a 3-cone into unimodular cones whose rays all belong to
// the parent's Hilbert basis, found by backtracking stellar subdivision at
// Hilbert basis elements (smallest degree first, then lexicographic).
struct SeboTriangulation {
    std::vector<RationalCone> pieces;
};

SeboTriangulation sebo_triangulation(const RationalCone& c);

// The simplices conv(v, v + h : h ray of piece) for each piece of the Sebő
// triangulation of the corner cone at v; their union is a neighborhood of v
// in P. Vertices in lattice coordinates. Throws NotVeryAmple when a Hilbert
// basis element escapes P - v.
std::vector<Simplex> vertex_cover_simplices(const LatticePolytope& p,
                                            const RatVec& vertex);

}  // namespace latcover
