#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "latcover/cones.hpp"
#include "latcover/errors.hpp"
#include "latcover/normality.hpp"

using namespace latcover;

namespace {

IntVec iv(std::initializer_list<int> xs) {
    IntVec r;
    for (int x : xs) r.emplace_back(x);
    return r;
}

RatVec rv(std::initializer_list<int> xs) {
    RatVec r;
    for (int x : xs) r.emplace_back(x);
    return r;
}

LatticePolytope cube3() {
    std::vector<RatVec> pts;
    for (int m = 0; m < 8; ++m)
        pts.push_back(rv({m & 1, (m >> 1) & 1, (m >> 2) & 1}));
    return LatticePolytope::from_points(pts, AffineLattice::standard(3));
}

LatticePolytope reeve() {
    return LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 2})},
        AffineLattice::standard(3));
}

// Independent route: a polytope is normal over its lattice iff the Hilbert
// basis of the cone over it (section coordinates at height 1) sits entirely
// at height 1.
bool normal_by_hilbert(const LatticePolytope& p) {
    int k = p.dim();
    std::vector<IntVec> rays;
    for (IntVec v : p.vertices_sec()) {
        v.emplace_back(1);
        rays.push_back(std::move(v));
    }
    RationalCone c = RationalCone::from_rays(AffineLattice::standard(k + 1), rays);
    std::vector<IntVec> hb = c.hilbert_basis();
    size_t height_one = 0;
    for (const IntVec& h : hb) {
        if (h[k] != 1) return false;
        ++height_one;
    }
    // every lattice point of p is irreducible at height 1
    REQUIRE(height_one == p.lattice_points_sec().size());
    return true;
}

}  // namespace

TEST_CASE("unit cube is normal") {
    NormalityReport rep = is_normal(cube3());
    CHECK(rep.is_normal);
    CHECK(rep.c == 0);
    CHECK(rep.x.empty());
}

TEST_CASE("Reeve simplex is not normal") {
    NormalityReport rep = is_normal(reeve());
    REQUIRE(!rep.is_normal);
    CHECK(rep.c == 2);
    CHECK(rep.x == rv({1, 1, 1}));

    // check the witness by hand: it lies in 2P but no two lattice points sum to it
    LatticePolytope p = reeve();
    LatticePolytope p2 = p.dilate(2);
    IntVec w = iv({1, 1, 1});
    CHECK(p2.contains_lat(w));
    std::vector<IntVec> gens;
    for (const IntVec& s : p.lattice_points_sec()) gens.push_back(p.sec_to_lat(s));
    CHECK(gens.size() == 4);
    for (const IntVec& a : gens)
        for (const IntVec& b : gens) CHECK(add(a, b) != w);
}

TEST_CASE("normality is relative to the lattice") {
    // same point set, two lattices: the coarse lattice sees a unit square
    RatMat twice(2, 2);
    twice.at(0, 0) = 2;
    twice.at(1, 1) = 2;
    AffineLattice doubled(twice, rv({0, 0}));
    std::vector<RatVec> pts = {rv({0, 0}), rv({2, 0}), rv({0, 2}), rv({2, 2})};
    CHECK(is_normal(LatticePolytope::from_points(pts, doubled)).is_normal);
    CHECK(is_normal(LatticePolytope::from_points(pts, AffineLattice::standard(2)))
              .is_normal);

    // empty simplex whose edge vectors span an index-2 subgroup of Z^3
    std::vector<RatVec> cross = {rv({0, 0, 0}), rv({1, 1, 0}), rv({1, 0, 1}),
                                 rv({0, 1, 1})};
    LatticePolytope over_z3 =
        LatticePolytope::from_points(cross, AffineLattice::standard(3));
    NormalityReport rep = is_normal(over_z3);
    REQUIRE(!rep.is_normal);
    CHECK(rep.c == 2);
    CHECK(!spans_direct_summand(difference_group(over_z3)));

    RatMat diffs(3, 3);
    diffs.at(0, 0) = 1, diffs.at(1, 0) = 1, diffs.at(2, 0) = 0;
    diffs.at(0, 1) = 1, diffs.at(1, 1) = 0, diffs.at(2, 1) = 1;
    diffs.at(0, 2) = 0, diffs.at(1, 2) = 1, diffs.at(2, 2) = 1;
    AffineLattice sub(diffs, rv({0, 0, 0}));
    LatticePolytope over_sub = LatticePolytope::from_points(cross, sub);
    CHECK(is_normal(over_sub).is_normal);  // unimodular simplex over its own group
}

TEST_CASE("elementary relations") {
    AffineLattice z3 = AffineLattice::standard(3);
    LatticePolytope q = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0})}, z3);
    LatticePolytope p = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})}, z3);
    CHECK(is_elementary_relation(q, p));
    CHECK(is_elementary_relation(p, p) == false);
    CHECK(is_elementary_relation(q, q) == false);

    AffineLattice z2 = AffineLattice::standard(2);
    LatticePolytope sq = LatticePolytope::from_points(
        {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})}, z2);
    LatticePolytope sq_plus = LatticePolytope::from_points(
        {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1}), rv({2, 1})}, z2);
    CHECK(is_elementary_relation(sq, sq_plus));
    CHECK(!is_elementary_relation(sq_plus, sq));
}

TEST_CASE("pyramid cover lift") {
    AffineLattice z3 = AffineLattice::standard(3);
    LatticePolytope pyr = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0}),
         rv({0, 0, 1})},
        z3);
    std::vector<Simplex> square_cover = {
        Simplex{{iv({0, 0, 0}), iv({1, 0, 0}), iv({1, 1, 0})}},
        Simplex{{iv({0, 0, 0}), iv({0, 1, 0}), iv({1, 1, 0})}}};
    std::vector<Simplex> lifted =
        pyramid_cover_lift(square_cover, pyr, iv({0, 0, 1}));
    REQUIRE(lifted.size() == 2);
    for (const Simplex& s : lifted) {
        CHECK(s.verts.size() == 4);
        CHECK(s.verts.back() == iv({0, 0, 1}));
        CHECK(is_unimodular_simplex(s.verts));
    }

    AffineLattice z2 = AffineLattice::standard(2);
    LatticePolytope tri = LatticePolytope::from_points(
        {rv({0, 0}), rv({1, 0}), rv({0, 1})}, z2);
    std::vector<Simplex> seg_cover = {Simplex{{iv({0, 0}), iv({1, 0})}}};
    std::vector<Simplex> tri_cover = pyramid_cover_lift(seg_cover, tri, iv({0, 1}));
    REQUIRE(tri_cover.size() == 1);
    CHECK(tri_cover[0].verts.size() == 3);

    AffineLattice z1 = AffineLattice::standard(1);
    LatticePolytope seg =
        LatticePolytope::from_points({RatVec{Rat(0)}, RatVec{Rat(1)}}, z1);
    std::vector<Simplex> pt_cover = {Simplex{{iv({0})}}};
    std::vector<Simplex> seg_out = pyramid_cover_lift(pt_cover, seg, iv({1}));
    REQUIRE(seg_out.size() == 1);
    CHECK(seg_out[0].verts.size() == 2);

    LatticePolytope tall = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0}),
         rv({0, 0, 2})},
        z3);
    CHECK_THROWS_AS(pyramid_cover_lift(square_cover, tall, iv({0, 0, 2})),
                    NotUnimodularPyramid);
    CHECK_THROWS_AS(pyramid_cover_lift(square_cover, pyr, iv({5, 5, 5})),
                    NotUnimodularPyramid);
}

TEST_CASE("agreement with the Hilbert basis route on fixed examples") {
    CHECK(normal_by_hilbert(cube3()));
    CHECK(!normal_by_hilbert(reeve()));

    AffineLattice z4 = AffineLattice::standard(4);
    LatticePolytope simplex4 = LatticePolytope::from_points(
        {rv({0, 0, 0, 0}), rv({1, 0, 0, 0}), rv({0, 1, 0, 0}), rv({0, 0, 1, 0}),
         rv({0, 0, 0, 1})},
        z4);
    CHECK(is_normal(simplex4).is_normal == normal_by_hilbert(simplex4));

    LatticePolytope skewed4 = LatticePolytope::from_points(
        {rv({0, 0, 0, 0}), rv({1, 0, 0, 0}), rv({0, 1, 0, 0}), rv({0, 0, 1, 0}),
         rv({1, 1, 1, 3})},
        z4);
    CHECK(is_normal(skewed4).is_normal == normal_by_hilbert(skewed4));
}

TEST_CASE("random polytopes: bounded test matches Hilbert route, faces stay normal") {
    std::mt19937 rng(509310);
    std::uniform_int_distribution<int> coord(0, 2);
    std::uniform_int_distribution<int> coord2(0, 4);
    std::uniform_int_distribution<int> npts(4, 8);

    for (int trial = 0; trial < 10; ++trial) {
        std::vector<RatVec> pts;
        int n = npts(rng);
        for (int i = 0; i < n; ++i)
            pts.push_back(rv({coord2(rng), coord2(rng)}));
        LatticePolytope p =
            LatticePolytope::from_points(pts, AffineLattice::standard(2));
        if (p.dim() < 1) continue;
        // lattice polygons are always normal; both routes must agree on that
        CHECK(is_normal(p).is_normal);
        CHECK(normal_by_hilbert(p));
    }

    int checked = 0, normal_seen = 0;
    for (int trial = 0; trial < 14; ++trial) {
        std::vector<RatVec> pts;
        int n = npts(rng);
        for (int i = 0; i < n; ++i)
            pts.push_back(rv({coord(rng), coord(rng), coord(rng)}));
        LatticePolytope p =
            LatticePolytope::from_points(pts, AffineLattice::standard(3));
        if (p.dim() < 2) continue;
        NormalityReport rep = is_normal(p);
        CHECK(rep.is_normal == normal_by_hilbert(p));
        ++checked;
        if (!rep.is_normal) continue;
        ++normal_seen;

        // a face of a normal polytope is normal
        for (int f = 0; f < (int)p.facets().size(); ++f) {
            std::vector<IntVec> fv;
            for (int i : p.facet_vertex_indices(f))
                fv.push_back(p.sec_to_lat(p.vertices_sec()[i]));
            LatticePolytope face =
                LatticePolytope::from_lattice_coords(fv, p.lattice());
            CHECK(is_normal(face).is_normal);
        }
        // and its lattice points span a direct summand of Z^3
        CHECK(spans_direct_summand(difference_group(p)));
    }
    CHECK(checked >= 10);
    CHECK(normal_seen >= 3);
}
