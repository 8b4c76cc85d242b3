#pragma once

#include <vector>

#include "latcover/cones.hpp"
#include "latcover/ellipsoid.hpp"
#include "latcover/polytope.hpp"

// Seeded random test-subject generators. Every function is deterministic in
// its seed (std::mt19937 driven, no platform-dependent distributions) and
// returns exactly `count` subjects, each one filtered to satisfy the stated
// property exactly.
namespace latcover::corpus {

// Normal 3-polytopes over Z^3 with at most max_points lattice points.
std::vector<LatticePolytope> normal_polytopes_3d(int count, unsigned seed,
                                                 size_t max_points = 40);

// 3-polytopes failing the very-ampleness test, found by random search.
std::vector<LatticePolytope> non_very_ample_3d(int count, unsigned seed);

// Rational ellipsoids whose solids hold between min_pts and max_pts points
// of Z^3.
std::vector<Ellipsoid> rational_ellipsoids_3d(int count, unsigned seed,
                                              size_t min_pts = 4, size_t max_pts = 40);

// Ellipsoids with center in (1/2)Z^3 whose lattice-point hulls are
// 3-dimensional.
std::vector<Ellipsoid> half_integer_ellipsoids_3d(int count, unsigned seed);

// Plane ellipses whose solids contain a lattice triangle (affine rank 2).
std::vector<Ellipsoid> lattice_triangle_ellipses_2d(int count, unsigned seed);

// Pointed simplicial 3-cones with multiplicity between 1 and max_mult.
std::vector<RationalCone> random_cones_3d(int count, unsigned seed, long max_mult = 20);

}  // namespace latcover::corpus
