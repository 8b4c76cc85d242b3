#pragma once

#include <vector>

#include "latcover/lattice.hpp"
#include "latcover/normality.hpp"
#include "latcover/polytope.hpp"

namespace latcover {

// Solid {x : (x - center)^T a (x - center) <= 1}; the surface is the "= 1"
// locus. Only squared quantities appear, so every certificate stays rational.
struct Ellipsoid {
    RatMat a;
    RatVec center;

    // Checks symmetry and positive definiteness exactly.
    static Ellipsoid make(RatMat a, RatVec center);
    // Quadratic form evaluated at an ambient point.
    Rat value(const RatVec& x) const;
};

// All points of l in the solid (or exactly on the surface when solid is
// false), in ambient coordinates, sorted. Exact interval recursion over the
// U^T D U split of the form in lattice coordinates.
std::vector<RatVec> ellipsoid_lattice_points(const Ellipsoid& e,
                                             const AffineLattice& l, bool solid);

// Convex hull of the solid's lattice points. Throws EmptyEllipsoid.
LatticePolytope hull_of_ellipsoid(const Ellipsoid& e, const AffineLattice& l);

// Lattice points of an ellipsoid, kept together with the certifying
// ellipsoid. Invariant: enumerate(certificate) == points, re-verified after
// every transformation; extremal points sit exactly on the surface.
struct EllipsoidalSet {
    std::vector<RatVec> points;  // ambient coordinates, sorted
    Ellipsoid certificate;
    AffineLattice lattice;
    std::vector<RatVec> extremal;
};

EllipsoidalSet make_ellipsoidal_set(const Ellipsoid& e, const AffineLattice& l);

// Contracts the certificate about its center until some member point lies on
// the surface; the point set is unchanged. A singleton at the center is
// handled by an off-center halving search, verified by enumeration.
struct ExtremalPick {
    RatVec v;
    EllipsoidalSet set;
};
ExtremalPick find_extremal_point(const EllipsoidalSet& s);

// Removes one extremal point: blow up the certificate about v by 1 + eps,
// then translate by delta toward the center so v falls outside. eps and
// delta come from a halving search; every candidate is verified by full
// enumeration. Throws NotExtremal if v is not on the certificate's surface,
// VerificationFailed if the search exhausts its budget.
EllipsoidalSet peel(const EllipsoidalSet& s, const RatVec& v);

// Chain S = S_k > S_{k-1} > ... > S_1 of peels down to a singleton, each
// entry carrying a verified certificate.
std::vector<EllipsoidalSet> descent_chain(const EllipsoidalSet& s);

// The half-integer lattice family in dimension d: lambda = Z^d extended by
// (1/2,...,1/2), ball = circumscribed ball of the unit cube, p = hull of the
// ball's lattice points, q = p with the all-ones corner removed, delta = the
// coordinate-deletion facet simplex of q, beta = delta's barycenter.
struct QdFamily {
    int d;
    AffineLattice lambda;
    Ellipsoid ball;
    LatticePolytope p;
    LatticePolytope q;
    Simplex delta;  // vertices in lattice coordinates of lambda
    RatVec beta;    // ambient
};

// Requires d >= 5 (DimensionTooSmall otherwise). Verifies on construction
// that delta is a facet of q whose only lattice points are its vertices.
QdFamily build_qd_family(int d);

// Full verification of the non-normality counterexample in even dimension
// d >= 6: the dilated barycenter target = (d/2) * beta lies in (d/2)q and in
// lambda, admits no representation as a sum of d/2 lattice points of q
// (exhaustive search), the lattice points of q generate all of lambda, and
// is_normal(q) fails.
struct CounterexampleReport {
    int d = 0;
    size_t point_count = 0;
    RatVec target;
    bool target_in_dilate = false;
    bool no_short_representation = false;
    bool gp_is_whole_lattice = false;
    NormalityReport normality;
    bool ok = false;
};
CounterexampleReport verify_counterexample(int d);

// S x {0,1} in one dimension higher, certified by the block ellipsoid with
// the original form scaled by (4b^2 - 1) / (4b^2) and a new axis of squared
// length b^2 centered at height 1/2. Exact for every rational b in
// (1/2, 3/2); BOutOfRange otherwise. Verified by enumeration.
EllipsoidalSet stack(const EllipsoidalSet& s, const Rat& b);

// Matrix T with T * L = Z^d, for a zero-shift lattice L.
RatMat lattice_isomorphism_to_standard(const AffineLattice& l);

}  // namespace latcover
