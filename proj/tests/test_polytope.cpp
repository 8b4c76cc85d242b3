#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "latcover/errors.hpp"
#include "latcover/hull.hpp"
#include "latcover/polytope.hpp"
#include "oracles.hpp"

using namespace latcover;

namespace {

RatVec rv(std::initializer_list<int> xs) {
    RatVec r;
    for (int x : xs) r.emplace_back(x);
    return r;
}

IntVec iv(std::initializer_list<int> xs) {
    IntVec r;
    for (int x : xs) r.emplace_back(x);
    return r;
}

Rat hull_volume_via_boundary(const std::vector<RatVec>& pts, const HullResult& h,
                             const RatVec& inside) {
    // Sum of cone volumes from an interior point over the boundary simplices.
    int d = (int)pts[0].size();
    Rat fact = 1;
    for (int i = 2; i <= d; ++i) fact *= i;
    Rat vol = 0;
    for (const BoundarySimplex& b : h.boundary) {
        RatMat m(d, d);
        for (int i = 0; i < d; ++i) {
            RatVec e = sub(pts[b.pts[i]], inside);
            for (int j = 0; j < d; ++j) m.at(i, j) = e[j];
        }
        vol += abs(det(m)) / fact;
    }
    return vol;
}

}  // namespace

TEST_CASE("hull of the unit cube") {
    std::vector<RatVec> pts;
    for (int m = 0; m < 8; ++m) pts.push_back(rv({m & 1, (m >> 1) & 1, (m >> 2) & 1}));
    pts.push_back(rv({0, 0, 0}));  // duplicate
    RatVec mid{Rat(1, 2), Rat(1, 2), Rat(1, 2)};
    pts.push_back(mid);  // interior
    HullResult h = convex_hull(pts);
    CHECK(h.vertices.size() == 8);
    CHECK(h.facets.size() == 6);
    for (const Hyperplane& f : h.facets) CHECK(content(f.normal) == 1);
    for (const RatVec& p : pts)
        for (const Hyperplane& f : h.facets) CHECK(dot(f.normal, p) <= f.offset);
    CHECK(hull_volume_via_boundary(pts, h, mid) == 1);
    // Facets through the origin also pick up the duplicated point.
    int with_dup = 0;
    for (const std::vector<int>& fp : h.facet_points) {
        CHECK((fp.size() == 4 || fp.size() == 5));
        if (fp.size() == 5) ++with_dup;
    }
    CHECK(with_dup == 3);
}

TEST_CASE("hull of the octahedron") {
    std::vector<RatVec> pts;
    for (int i = 0; i < 3; ++i)
        for (int s : {-1, 1}) {
            RatVec p(3, Rat(0));
            p[i] = s;
            pts.push_back(p);
        }
    HullResult h = convex_hull(pts);
    CHECK(h.vertices.size() == 6);
    CHECK(h.facets.size() == 8);
    CHECK(hull_volume_via_boundary(pts, h, RatVec(3, Rat(0))) == Rat(4, 3));
}

TEST_CASE("hull in one dimension") {
    std::vector<RatVec> pts = {{Rat(3)}, {Rat(-1)}, {Rat(2)}, {Rat(-1)}};
    HullResult h = convex_hull(pts);
    CHECK(h.vertices == std::vector<int>{0, 1});
    CHECK(h.facets.size() == 2);
}

TEST_CASE("hull rejects degenerate input") {
    CHECK_THROWS_AS(convex_hull({rv({0, 0}), rv({1, 1}), rv({2, 2})}), PreconditionUnmet);
    CHECK_THROWS_AS(convex_hull({rv({1, 2})}), PreconditionUnmet);
}

TEST_CASE("random hulls agree with the feasibility oracle") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> coord(-4, 4), count(5, 12);
    for (int iter = 0; iter < 40; ++iter) {
        int d = 2 + iter % 3;
        std::vector<RatVec> pts;
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            RatVec p(d);
            for (int j = 0; j < d; ++j) p[j] = coord(rng);
            pts.push_back(p);
        }
        if (affine_rank(pts) != d) continue;
        HullResult h = convex_hull(pts);
        // Every point satisfies every facet; every facet is tight somewhere.
        for (const RatVec& p : pts)
            for (const Hyperplane& f : h.facets) CHECK(dot(f.normal, p) <= f.offset);
        for (size_t fi = 0; fi < h.facets.size(); ++fi) {
            CHECK(!h.facet_points[fi].empty());
            std::vector<RatVec> on;
            for (int i : h.facet_points[fi]) on.push_back(pts[i]);
            CHECK(affine_rank(on) == d - 1);
        }
        // Vertices are exactly the points not in the hull of the others.
        for (int i = 0; i < n; ++i) {
            std::vector<RatVec> others;
            for (int j = 0; j < n; ++j)
                if (j != i) others.push_back(pts[j]);
            bool extreme = !oracle::in_hull(others, pts[i]);
            bool listed = std::find(h.vertices.begin(), h.vertices.end(), i) !=
                          h.vertices.end();
            if (extreme)
                CHECK(listed);
            else if (listed)  // duplicates keep only the first index
                CHECK(pts[h.vertices[0]].size() == (size_t)d);
            if (!extreme && listed) {
                int dup = 0;
                for (int j = 0; j < n; ++j)
                    if (pts[j] == pts[i]) ++dup;
                CHECK(dup >= 2);
            }
        }
        // Membership sampling agrees with the oracle.
        std::uniform_int_distribution<int> num(-9, 9), den(1, 3);
        for (int s = 0; s < 15; ++s) {
            RatVec x(d);
            for (int j = 0; j < d; ++j) {
                x[j] = Rat(num(rng), den(rng));
                x[j].canonicalize();
            }
            bool in_facets = true;
            for (const Hyperplane& f : h.facets)
                if (dot(f.normal, x) > f.offset) in_facets = false;
            CHECK(in_facets == oracle::in_hull(pts, x));
        }
        // Boundary cone volumes are consistent across interior reference points.
        RatVec c1(d, Rat(0)), c2(d, Rat(0));
        for (int i : h.vertices) c1 = add(c1, pts[i]);
        c1 = scale(Rat(1, (int)h.vertices.size()), c1);
        c2 = scale(Rat(1, 2), add(c1, pts[h.vertices[0]]));
        c2 = scale(Rat(1, 2), add(c2, pts[h.vertices[1]]));
        CHECK(hull_volume_via_boundary(pts, h, c1) == hull_volume_via_boundary(pts, h, c2));
    }
}

TEST_CASE("lattice polytope basics on the cube") {
    std::vector<RatVec> pts;
    for (int m = 0; m < 8; ++m) pts.push_back(rv({m & 1, (m >> 1) & 1, (m >> 2) & 1}));
    LatticePolytope cube = LatticePolytope::from_points(pts, AffineLattice::standard(3));
    CHECK(cube.dim() == 3);
    CHECK(cube.full_dim());
    CHECK(cube.vertices_sec().size() == 8);
    CHECK(cube.facets().size() == 6);
    CHECK(cube.lattice_points_sec().size() == 8);
    CHECK(cube.edge_vertex_indices().size() == 12);
    for (int f = 0; f < 6; ++f) CHECK(cube.facet_vertex_indices(f).size() == 4);
    CHECK(cube.contains(rv({1, 1, 1})));
    CHECK(cube.contains(RatVec{Rat(1, 3), Rat(1, 2), Rat(0)}));
    CHECK(!cube.contains(RatVec{Rat(1, 3), Rat(1, 2), Rat(-1, 7)}));
    CHECK(cube.contains_lat(iv({0, 1, 0})));
    CHECK(!cube.contains_lat(iv({0, 2, 0})));

    LatticePolytope cube2 = cube.dilate(2);
    CHECK(cube2.lattice_points_sec().size() == 27);
    CHECK(cube2.contains(rv({2, 2, 2})));
    CHECK(!cube2.contains(RatVec{Rat(5, 2), Rat(0), Rat(0)}));

    DifferenceGroup g = difference_group(cube);
    CHECK(g.basis.size() == 3);
    CHECK(spans_direct_summand(g));
    CHECK(index_in_saturation(g) == 1);
}

TEST_CASE("lattice polytope over the half-integer lattice") {
    AffineLattice l3 = AffineLattice::half_integer(3);
    std::vector<RatVec> pts;
    for (int m = 0; m < 8; ++m) pts.push_back(rv({m & 1, (m >> 1) & 1, (m >> 2) & 1}));
    pts.push_back(RatVec{Rat(1, 2), Rat(1, 2), Rat(1, 2)});
    LatticePolytope p = LatticePolytope::from_points(pts, l3);
    CHECK(p.dim() == 3);
    // The center is interior to the cube, hence not a vertex, but it is the
    // one extra lattice point the finer lattice contributes.
    CHECK(p.vertices_sec().size() == 8);
    CHECK(p.lattice_points_sec().size() == 9);
    std::vector<RatVec> back = p.lattice_points_ambient();
    CHECK(std::count(back.begin(), back.end(), RatVec{Rat(1, 2), Rat(1, 2), Rat(1, 2)}) == 1);
    CHECK_THROWS_AS(
        LatticePolytope::from_points({RatVec{Rat(1, 3), Rat(0), Rat(0)}}, l3),
        PointNotInLattice);
}

TEST_CASE("empty simplex has few lattice points") {
    // conv(0, e1, e2, (1,1,2)) contains exactly its four vertices.
    std::vector<RatVec> pts = {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 2})};
    LatticePolytope p = LatticePolytope::from_points(pts, AffineLattice::standard(3));
    CHECK(p.lattice_points_sec().size() == 4);
    CHECK(!is_unimodular_simplex({iv({0, 0, 0}), iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 2})}));
    CHECK(is_unimodular_simplex({iv({0, 0, 0}), iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 1})}));
    DifferenceGroup g = difference_group(p);
    CHECK(!spans_direct_summand(g));
    CHECK(index_in_saturation(g) == 2);
}

TEST_CASE("lower-dimensional polytopes get saturated sections") {
    // Segment 0 .. (2,2,2): three lattice points even though only two generators.
    LatticePolytope seg = LatticePolytope::from_points({rv({0, 0, 0}), rv({2, 2, 2})},
                                                       AffineLattice::standard(3));
    CHECK(seg.dim() == 1);
    CHECK(seg.vertices_sec().size() == 2);
    CHECK(seg.lattice_points_sec().size() == 3);
    CHECK(seg.contains(rv({1, 1, 1})));
    CHECK(seg.contains(RatVec{Rat(1, 2), Rat(1, 2), Rat(1, 2)}));
    CHECK(!seg.contains(rv({1, 1, 0})));
    CHECK(!seg.contains(rv({3, 3, 3})));
    CHECK(seg.section_basis().size() == 1);
    CHECK((seg.section_basis()[0] == iv({1, 1, 1}) || seg.section_basis()[0] == iv({-1, -1, -1})));

    // Dilated triangle in a plane of 3-space.
    LatticePolytope tri = LatticePolytope::from_points(
        {rv({0, 0, 1}), rv({2, 0, 1}), rv({0, 2, 1})}, AffineLattice::standard(3));
    CHECK(tri.dim() == 2);
    CHECK(tri.lattice_points_sec().size() == 6);
    CHECK(tri.facets().size() == 3);
    std::vector<RatVec> amb = tri.lattice_points_ambient();
    CHECK(std::count(amb.begin(), amb.end(), rv({1, 1, 1})) == 1);
    CHECK(std::count(amb.begin(), amb.end(), rv({1, 0, 1})) == 1);

    // Point polytope.
    LatticePolytope pt = LatticePolytope::from_points({rv({5, -3})}, AffineLattice::standard(2));
    CHECK(pt.dim() == 0);
    CHECK(pt.lattice_points_sec().size() == 1);
    CHECK(pt.contains(rv({5, -3})));
    CHECK(!pt.contains(rv({5, -2})));
}

TEST_CASE("lattice point enumeration matches brute force") {
    std::mt19937 rng(59);
    std::uniform_int_distribution<int> coord(-3, 3), count(3, 7);
    for (int iter = 0; iter < 30; ++iter) {
        int d = 2 + iter % 2;
        std::vector<RatVec> pts;
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            RatVec p(d);
            for (int j = 0; j < d; ++j) p[j] = coord(rng);
            pts.push_back(p);
        }
        LatticePolytope p = LatticePolytope::from_points(pts, AffineLattice::standard(d));
        if (p.dim() != d) continue;
        std::vector<IntVec> got = p.lattice_points_sec();
        // Brute force over the box, membership via the LP oracle.
        std::vector<IntVec> want;
        IntVec lo(d, Int(99)), hi(d, Int(-99));
        for (const RatVec& q : pts)
            for (int j = 0; j < d; ++j) {
                lo[j] = std::min(lo[j], q[j].get_num());
                hi[j] = std::max(hi[j], q[j].get_num());
            }
        IntVec cur = lo;
        for (;;) {
            if (oracle::in_hull(pts, to_rat(cur))) want.push_back(cur);
            int k = d - 1;
            while (k >= 0) {
                ++cur[k];
                if (cur[k] <= hi[k]) break;
                cur[k] = lo[k];
                --k;
            }
            if (k < 0) break;
        }
        std::sort(want.begin(), want.end(), LexLess{});
        CHECK(got == want);
    }
}

TEST_CASE("barycentric membership") {
    std::vector<RatVec> tet = {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})};
    CHECK(simplex_contains(tet, RatVec{Rat(1, 4), Rat(1, 4), Rat(1, 4)}));
    CHECK(simplex_contains(tet, rv({1, 0, 0})));
    CHECK(!simplex_contains(tet, RatVec{Rat(1, 2), Rat(1, 2), Rat(1, 2)}));
    std::vector<RatVec> tri = {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0})};
    CHECK(simplex_contains(tri, RatVec{Rat(1, 3), Rat(1, 3), Rat(0)}));
    CHECK(!barycentric(tri, rv({0, 0, 1})).has_value());
    std::optional<RatVec> b = barycentric(tet, rv({0, 0, 2}));
    REQUIRE(b.has_value());
    CHECK((*b)[3] == 2);
    CHECK((*b)[0] == -1);
}

TEST_CASE("face lattice of the cube") {
    std::vector<RatVec> pts;
    for (int m = 0; m < 8; ++m) pts.push_back(rv({m & 1, (m >> 1) & 1, (m >> 2) & 1}));
    LatticePolytope cube = LatticePolytope::from_points(pts, AffineLattice::standard(3));

    std::vector<FaceHandle> fs = faces(cube);
    int count[4] = {0, 0, 0, 0};
    for (const FaceHandle& f : fs) count[f.dim]++;
    CHECK(count[0] == 8);
    CHECK(count[1] == 12);
    CHECK(count[2] == 6);
    CHECK(count[3] == 1);

    FaceHandle at_vertex = minimal_face_containing(cube, rv({0, 0, 0}));
    CHECK(at_vertex.dim == 0);
    CHECK(at_vertex.vertices.size() == 1);
    CHECK(at_vertex.facets.size() == 3);

    FaceHandle top = minimal_face_containing(cube, RatVec{Rat(1, 2), Rat(1, 2), Rat(1)});
    CHECK(top.dim == 2);
    CHECK(top.vertices.size() == 4);
    CHECK(top.facets.size() == 1);

    FaceHandle edge = minimal_face_containing(cube, RatVec{Rat(1, 2), Rat(0), Rat(1)});
    CHECK(edge.dim == 1);
    CHECK(edge.vertices.size() == 2);

    FaceHandle inside = minimal_face_containing(cube, RatVec{Rat(1, 2), Rat(1, 2), Rat(1, 2)});
    CHECK(inside.dim == 3);
    CHECK(inside.facets.empty());
    CHECK(inside.vertices.size() == 8);

    CHECK_THROWS_AS(minimal_face_containing(cube, rv({2, 0, 0})), PointOutsidePolytope);
}

TEST_CASE("unimodular pyramid detection") {
    AffineLattice z3 = AffineLattice::standard(3);
    LatticePolytope tri =
        LatticePolytope::from_points({rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0})}, z3);
    LatticePolytope tet = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})}, z3);
    IntVec apex;
    CHECK(is_unimodular_pyramid(tet, tri, &apex));
    CHECK(apex == iv({0, 0, 1}));

    LatticePolytope tall = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 2})}, z3);
    CHECK(!is_unimodular_pyramid(tall, tri));
    LatticePolytope reeve = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 2})}, z3);
    CHECK(!is_unimodular_pyramid(reeve, tri));

    std::vector<RatVec> cube_pts;
    for (int m = 0; m < 8; ++m)
        cube_pts.push_back(rv({m & 1, (m >> 1) & 1, (m >> 2) & 1}));
    LatticePolytope cube = LatticePolytope::from_points(cube_pts, z3);
    LatticePolytope bottom = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0})}, z3);
    CHECK(!is_unimodular_pyramid(cube, bottom));

    LatticePolytope pt = LatticePolytope::from_points({rv({2, 3, 4})}, z3);
    LatticePolytope seg = LatticePolytope::from_points({rv({2, 3, 4}), rv({2, 3, 5})}, z3);
    CHECK(is_unimodular_pyramid(seg, pt, &apex));
    LatticePolytope seg2 = LatticePolytope::from_points({rv({2, 3, 4}), rv({2, 3, 6})}, z3);
    CHECK(!is_unimodular_pyramid(seg2, pt));
    LatticePolytope base =
        LatticePolytope::from_points({rv({0, 0, 0}), rv({1, 0, 0})}, z3);
    CHECK(is_unimodular_pyramid(tri, base));
}

TEST_CASE("simplex helpers") {
    Simplex s{{iv({0, 0, 0}), iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}};
    CHECK(affinely_independent(s.verts));
    CHECK(is_unimodular_simplex(s.verts));
    CHECK(simplex_contains_lat(s, RatVec{Rat(1, 4), Rat(1, 4), Rat(1, 4)}));
    CHECK(!simplex_contains_lat(s, rv({1, 1, 1})));
    CHECK(!affinely_independent({iv({0, 0, 0}), iv({1, 0, 0}), iv({2, 0, 0})}));
}
