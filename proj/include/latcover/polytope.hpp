#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "latcover/hull.hpp"
#include "latcover/lattice.hpp"

namespace latcover {

// Facet inequality normal . s <= offset in the polytope's section
// coordinates. Normals are primitive, offsets integral (vertices are lattice
// points), so containment tests are pure integer arithmetic.
struct PolyFacet {
    IntVec normal;
    Int offset;

    bool operator==(const PolyFacet& o) const = default;
};

// Convex hull of finitely many points of an affine lattice. The polytope
// carries its lattice; all combinatorial data lives in integer "section"
// coordinates s with lattice coordinates z = origin + W^T s, where the rows
// of W are a basis of the saturated difference span. For a full-dimensional
// polytope W is the identity and origin is zero, so s = z.
class LatticePolytope {
  public:
    static LatticePolytope from_points(const std::vector<RatVec>& pts, AffineLattice lat);
    static LatticePolytope from_lattice_coords(const std::vector<IntVec>& pts,
                                               AffineLattice lat);

    const AffineLattice& lattice() const { return lat_; }
    int ambient_dim() const { return lat_.dim(); }
    int dim() const { return dim_; }
    bool full_dim() const { return dim_ == lat_.dim(); }

    const IntVec& section_origin() const { return origin_; }
    const std::vector<IntVec>& section_basis() const { return basis_rows_; }

    const std::vector<IntVec>& vertices_sec() const { return verts_sec_; }
    std::vector<IntVec> vertices_lat() const;
    std::vector<RatVec> vertices_ambient() const;
    const std::vector<PolyFacet>& facets() const { return facets_; }

    IntVec sec_to_lat(const IntVec& s) const;
    RatVec sec_to_ambient(const RatVec& s) const;
    RatVec lat_to_ambient(const IntVec& z) const { return lat_.from_int_coords(z); }
    // Section coordinates of an ambient point; nullopt off the affine span.
    std::optional<RatVec> ambient_to_sec(const RatVec& x) const;
    std::optional<IntVec> lat_to_sec(const IntVec& z) const;

    bool contains(const RatVec& x) const;
    bool contains_sec(const RatVec& s) const;
    bool contains_lat(const IntVec& z) const;

    // All lattice points of the polytope, in section coordinates,
    // lexicographically sorted. Enumerated by a depth-first sweep of the
    // bounding box with facet pruning.
    std::vector<IntVec> lattice_points_sec() const;
    std::vector<RatVec> lattice_points_ambient() const;

    // {c x : x in P} for integer c >= 1 (same lattice, no re-hulling).
    LatticePolytope dilate(const Int& c) const;

    // Index into vertices_sec() or -1.
    int vertex_index_sec(const IntVec& s) const;

    // Vertex sets of faces, as indices into vertices_sec(). Facet faces come
    // in facet order; edges only for dim() == 3.
    std::vector<int> facet_vertex_indices(int facet) const;
    std::vector<std::vector<int>> edge_vertex_indices() const;

  private:
    struct PointCache;

    AffineLattice lat_;
    int dim_ = 0;
    IntVec origin_;                    // lattice coords
    std::vector<IntVec> basis_rows_;   // dim_ rows of length ambient_dim()
    std::vector<IntVec> verts_sec_;
    std::vector<PolyFacet> facets_;
    std::vector<std::vector<int>> facet_verts_;  // vertex indices per facet
    std::shared_ptr<PointCache> cache_;          // shared across copies

    LatticePolytope(AffineLattice lat);
    friend LatticePolytope make_dilated(const LatticePolytope&, const Int&);
};

// Lattice simplex, vertices in lattice coordinates. Most of the cover
// machinery passes these around; the owning lattice is carried by context.
struct Simplex {
    std::vector<IntVec> verts;

    bool operator==(const Simplex& o) const = default;
};

bool affinely_independent(const std::vector<IntVec>& verts);
bool simplex_contains_lat(const Simplex& s, const RatVec& x_lat);

// A face of a polytope: the facets cutting it out plus its vertex set, both
// as sorted indices. The polytope itself is the face with no facets.
struct FaceHandle {
    std::vector<int> facets;
    std::vector<int> vertices;
    int dim = 0;
};

// The unique minimal face containing x; throws PointOutsidePolytope.
FaceHandle minimal_face_containing(const LatticePolytope& p, const RatVec& x);
// All nonempty faces, vertices first, the polytope itself last.
std::vector<FaceHandle> faces(const LatticePolytope& p);

// True when p = conv(apex, q) with the apex at lattice height 1 over aff(q)
// inside aff(p). The apex's lattice coordinates are written to *apex_out.
bool is_unimodular_pyramid(const LatticePolytope& p, const LatticePolytope& q,
                           IntVec* apex_out = nullptr);

// Subgroup of the lattice generated by differences of lattice points of P,
// expressed in lattice coordinates.
struct DifferenceGroup {
    std::vector<IntVec> basis;  // rows, one per rank
    int ambient_dim = 0;
};

DifferenceGroup difference_group(const LatticePolytope& p);
// gp(P) is a direct summand of the ambient lattice iff its elementary
// divisors are all 1.
bool spans_direct_summand(const DifferenceGroup& g);
// Index of gp(P) inside its saturation (1 iff direct summand of the span).
Int index_in_saturation(const DifferenceGroup& g);

// Simplex utilities on lattice-coordinate vertex lists.
// A k-simplex is unimodular when its edge vectors extend to a lattice basis,
// i.e. all elementary divisors equal 1 and the rank is k.
bool is_unimodular_simplex(const std::vector<IntVec>& verts);
// Barycentric coordinates of x in the affine hull of the (affinely
// independent) vertices; nullopt when x is off that hull.
std::optional<RatVec> barycentric(const std::vector<RatVec>& verts, const RatVec& x);
bool simplex_contains(const std::vector<RatVec>& verts, const RatVec& x);

}  // namespace latcover
