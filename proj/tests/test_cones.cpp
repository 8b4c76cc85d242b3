#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "latcover/cones.hpp"
#include "latcover/errors.hpp"
#include "oracles.hpp"

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

RationalCone cone3(std::initializer_list<std::initializer_list<int>> rays) {
    std::vector<IntVec> rs;
    for (auto r : rays) rs.push_back(iv(r));
    return RationalCone::from_rays(AffineLattice::standard((int)rs[0].size()), rs);
}

Int det3(const std::vector<IntVec>& rays) {
    IntMat m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = rays[i][j];
    return abs(det(m));
}

}  // namespace

TEST_CASE("orthant cone") {
    RationalCone c = cone3({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {2, 0, 2}});
    CHECK(c.rays().size() == 3);  // redundant generators dropped
    CHECK(c.is_simplicial());
    CHECK(c.multiplicity() == 1);
    CHECK(c.contains(iv({3, 1, 2})));
    CHECK(!c.contains(iv({-1, 0, 0})));
    std::vector<IntVec> hb = c.hilbert_basis();
    CHECK(hb == std::vector<IntVec>{iv({0, 0, 1}), iv({0, 1, 0}), iv({1, 0, 0})});
}

TEST_CASE("cone construction rejects lines and low rank") {
    CHECK_THROWS_AS(cone3({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), NotPointed);
    CHECK_THROWS_AS(cone3({{1, 0, 0}, {0, 1, 0}}), PreconditionUnmet);
}

TEST_CASE("two-dimensional Hilbert bases") {
    RationalCone c = cone3({{1, 0}, {1, 2}});
    std::vector<IntVec> hb = c.hilbert_basis();
    CHECK(hb == std::vector<IntVec>{iv({1, 0}), iv({1, 1}), iv({1, 2})});
    CHECK(hb == oracle::hilbert_basis_zonotope(c.rays()));

    RationalCone wide = cone3({{1, 0}, {-2, 5}});
    CHECK(wide.hilbert_basis() == oracle::hilbert_basis_zonotope(wide.rays()));
}

TEST_CASE("Reeve cone Hilbert basis and parallelepiped") {
    std::vector<IntVec> rays = {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 2})};
    std::vector<IntVec> ppd = parallelepiped_points(rays);
    REQUIRE(ppd.size() == 1);  // multiplicity 2: one interior residue
    CHECK(ppd[0] == iv({1, 1, 1}));

    RationalCone c = cone3({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}});
    std::vector<IntVec> hb = c.hilbert_basis();
    CHECK(std::find(hb.begin(), hb.end(), iv({1, 1, 1})) != hb.end());
    CHECK(hb.size() == 4);
    CHECK(hb == oracle::hilbert_basis_zonotope(c.rays()));
}

TEST_CASE("non-simplicial cone over the unit square") {
    RationalCone c = cone3({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
    CHECK(c.rays().size() == 4);
    CHECK(!c.is_simplicial());
    CHECK(c.supports().size() == 4);
    CHECK(triangulate_cone(c).size() == 2);
    std::vector<IntVec> hb = c.hilbert_basis();
    CHECK(hb.size() == 4);  // the four rays generate
    CHECK(hb == oracle::hilbert_basis_zonotope(c.rays()));
}

TEST_CASE("corner cones") {
    AffineLattice z3 = AffineLattice::standard(3);
    std::vector<RatVec> cube_pts;
    for (int m = 0; m < 8; ++m)
        cube_pts.push_back(rv({m & 1, (m >> 1) & 1, (m >> 2) & 1}));
    LatticePolytope cube = LatticePolytope::from_points(cube_pts, z3);

    RationalCone at0 = corner_cone(cube, rv({0, 0, 0}));
    CHECK(at0.rays() ==
          std::vector<IntVec>{iv({0, 0, 1}), iv({0, 1, 0}), iv({1, 0, 0})});
    RationalCone at111 = corner_cone(cube, rv({1, 1, 1}));
    CHECK(at111.rays() ==
          std::vector<IntVec>{iv({-1, 0, 0}), iv({0, -1, 0}), iv({0, 0, -1})});
    CHECK_THROWS_AS(corner_cone(cube, RatVec{Rat(1, 2), Rat(0), Rat(0)}), NotAVertex);

    AffineLattice z2 = AffineLattice::standard(2);
    LatticePolytope tri =
        LatticePolytope::from_points({rv({0, 0}), rv({1, 0}), rv({0, 1})}, z2);
    RationalCone at10 = corner_cone(tri, rv({1, 0}));
    CHECK(at10.rays() == std::vector<IntVec>{iv({-1, 0}), iv({-1, 1})});
}

TEST_CASE("very ample detection") {
    AffineLattice z3 = AffineLattice::standard(3);
    std::vector<RatVec> cube_pts;
    for (int m = 0; m < 8; ++m)
        cube_pts.push_back(rv({m & 1, (m >> 1) & 1, (m >> 2) & 1}));
    CHECK(is_very_ample(LatticePolytope::from_points(cube_pts, z3)).very_ample);

    LatticePolytope reeve = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 2})}, z3);
    VeryAmpleReport rep = is_very_ample(reeve);
    REQUIRE(!rep.very_ample);
    CHECK(rep.vertex == rv({0, 0, 0}));
    CHECK(rep.element == rv({1, 1, 1}));
}

TEST_CASE("very ample for a cube times a normal polygon") {
    AffineLattice z5 = AffineLattice::standard(5);
    std::vector<RatVec> poly = {rv({0, 0}), rv({2, 1}), rv({1, 2})};
    std::vector<RatVec> pts;
    for (int m = 0; m < 8; ++m)
        for (const RatVec& q : poly)
            pts.push_back(rv({m & 1, (m >> 1) & 1, (m >> 2) & 1,
                              (int)q[0].get_num().get_si(),
                              (int)q[1].get_num().get_si()}));
    LatticePolytope prod = LatticePolytope::from_points(pts, z5);
    CHECK(prod.dim() == 5);
    CHECK(is_very_ample(prod).very_ample);
}

TEST_CASE("Sebo triangulation of the Reeve cone") {
    RationalCone c = cone3({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}});
    SeboTriangulation t = sebo_triangulation(c);
    CHECK(t.pieces.size() == 3);
    std::set<IntVec, LexLess> hb(c.hilbert_basis().begin(), c.hilbert_basis().end());
    for (const RationalCone& piece : t.pieces) {
        CHECK(piece.multiplicity() == 1);
        for (const IntVec& r : piece.rays()) CHECK(hb.count(r) == 1);
        // the stellar center is a ray of every piece
        CHECK(std::find(piece.rays().begin(), piece.rays().end(), iv({1, 1, 1})) !=
              piece.rays().end());
    }

    RationalCone uni = cone3({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(sebo_triangulation(uni).pieces.size() == 1);

    RationalCone flat = cone3({{1, 0}, {1, 2}});
    CHECK_THROWS_AS(sebo_triangulation(flat), DimensionNot3);
}

TEST_CASE("random cones: Hilbert bases match the zonotope oracle") {
    std::mt19937 rng(20240511);
    std::uniform_int_distribution<int> coord(-4, 4);

    int done2 = 0;
    while (done2 < 8) {
        IntVec a = iv({coord(rng), coord(rng)}), b = iv({coord(rng), coord(rng)});
        IntMat m(2, 2);
        m.at(0, 0) = a[0], m.at(0, 1) = a[1], m.at(1, 0) = b[0], m.at(1, 1) = b[1];
        if (det(m) == 0) continue;
        RationalCone c = RationalCone::from_rays(AffineLattice::standard(2), {a, b});
        CHECK(c.hilbert_basis() == oracle::hilbert_basis_zonotope(c.rays()));
        ++done2;
    }

    int done3 = 0;
    while (done3 < 6) {
        std::vector<IntVec> rays = {iv({coord(rng), coord(rng), coord(rng)}),
                                    iv({coord(rng), coord(rng), coord(rng)}),
                                    iv({coord(rng), coord(rng), coord(rng)})};
        Int d = det3(rays);
        if (d == 0 || d > 12) continue;
        RationalCone c = RationalCone::from_rays(AffineLattice::standard(3), rays);
        if (!c.is_simplicial()) continue;
        std::vector<IntVec> hb = c.hilbert_basis();
        CHECK(hb == oracle::hilbert_basis_zonotope(c.rays()));
        // no element is the sum of two others
        for (const IntVec& x : hb)
            for (const IntVec& y : hb) {
                IntVec s = add(x, y);
                CHECK(std::find(hb.begin(), hb.end(), s) == hb.end());
            }
        ++done3;
    }
}

TEST_CASE("random cones: Sebo triangulations are unimodular Hilbert covers") {
    std::mt19937 rng(777123);
    std::uniform_int_distribution<int> coord(-5, 5);
    std::uniform_int_distribution<int> wnum(0, 8);

    int done = 0;
    while (done < 12) {
        std::vector<IntVec> rays = {iv({coord(rng), coord(rng), coord(rng)}),
                                    iv({coord(rng), coord(rng), coord(rng)}),
                                    iv({coord(rng), coord(rng), coord(rng)})};
        Int d = det3(rays);
        if (d == 0 || d > 20) continue;
        RationalCone c = RationalCone::from_rays(AffineLattice::standard(3), rays);
        if (!c.is_simplicial()) continue;

        SeboTriangulation t = sebo_triangulation(c);
        std::set<IntVec, LexLess> hb(c.hilbert_basis().begin(),
                                     c.hilbert_basis().end());
        Int total = 0;
        for (const RationalCone& piece : t.pieces) {
            CHECK(det3(piece.rays()) == 1);
            for (const IntVec& r : piece.rays()) CHECK(hb.count(r) == 1);
            total += 1;
        }
        CHECK(total >= 1);

        // sample rays of the parent lie in at least one piece and strictly
        // inside at most one
        for (int s = 0; s < 12; ++s) {
            RatVec x(3, Rat(0));
            for (const IntVec& r : c.rays()) {
                Rat w(wnum(rng), 4);
                for (int i = 0; i < 3; ++i) x[i] += w * Rat(r[i]);
            }
            if (is_zero(x)) continue;
            int covering = 0, strict = 0;
            for (const RationalCone& piece : t.pieces) {
                if (piece.contains(x)) ++covering;
                if (piece.contains_interior(x)) ++strict;
            }
            CHECK(covering >= 1);
            CHECK(strict <= 1);
        }
        ++done;
    }
}

TEST_CASE("vertex cover simplices") {
    AffineLattice z3 = AffineLattice::standard(3);
    std::vector<RatVec> cube_pts;
    for (int m = 0; m < 8; ++m)
        cube_pts.push_back(rv({m & 1, (m >> 1) & 1, (m >> 2) & 1}));
    LatticePolytope cube = LatticePolytope::from_points(cube_pts, z3);
    std::vector<Simplex> at0 = vertex_cover_simplices(cube, rv({0, 0, 0}));
    REQUIRE(at0.size() == 1);
    CHECK(is_unimodular_simplex(at0[0].verts));
    CHECK(simplex_contains_lat(at0[0], RatVec{Rat(1, 8), Rat(1, 8), Rat(1, 8)}));

    // corner cone e1,e2,(1,1,2) inside a polytope large enough to be very ample
    LatticePolytope big = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({3, 0, 0}), rv({0, 3, 0}), rv({3, 3, 6})}, z3);
    std::vector<Simplex> at_origin = vertex_cover_simplices(big, rv({0, 0, 0}));
    CHECK(at_origin.size() == 3);
    for (const Simplex& s : at_origin) {
        CHECK(is_unimodular_simplex(s.verts));
        for (const IntVec& v : s.verts) CHECK(big.contains_lat(v));
    }

    LatticePolytope reeve = LatticePolytope::from_points(
        {rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 2})}, z3);
    CHECK_THROWS_AS(vertex_cover_simplices(reeve, rv({0, 0, 0})), NotVeryAmple);
}
