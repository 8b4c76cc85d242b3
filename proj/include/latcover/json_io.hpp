#pragma once

#include <string>

#include "json.hpp"
#include "latcover/cones.hpp"
#include "latcover/cover.hpp"
#include "latcover/ellipsoid.hpp"
#include "latcover/polytope.hpp"

// JSON wire format. Every number travels as an exact string ("p/q", or "n"
// for integers); matrices are row-major arrays of such strings. All
// set-like outputs are emitted in a canonical (sorted) order, so identical
// inputs serialize byte-identically.
namespace latcover {

using Json = nlohmann::json;

Json to_json(const Rat& x);
Json to_json(const Int& x);
Json to_json(const RatVec& v);
Json to_json(const IntVec& v);
Json to_json(const RatMat& m);
Json to_json(const AffineLattice& l);
// { "lattice": {...}, "vertices": [[...]] }, vertices in ambient coordinates
Json to_json(const LatticePolytope& p);
// { "normal": [...], "offset": "p/q" } with normal . x <= offset
Json to_json(const PolyFacet& f);
// { "rays": [[...]], "lattice": {...} }
Json to_json(const RationalCone& c);
// { "A": [[...]], "center": [...] }
Json to_json(const Ellipsoid& e);
// { "points": [[...]], "certificate": {...}, "lattice": {...} }
Json to_json(const EllipsoidalSet& s);
// { "target": polytope, "points": [[...]], "simplices": [[indices]],
//   "scope": "...", "verified": bool }; simplices index the shared lattice
// point table
Json cover_to_json(const UnimodularCover& c, bool verified);

Rat rat_from_json(const Json& j);
Int int_from_json(const Json& j);
RatVec ratvec_from_json(const Json& j);
IntVec intvec_from_json(const Json& j);
RatMat ratmat_from_json(const Json& j);
AffineLattice lattice_from_json(const Json& j);
LatticePolytope polytope_from_json(const Json& j);
RationalCone cone_from_json(const Json& j);
Ellipsoid ellipsoid_from_json(const Json& j);
// Re-enumerates the certificate and checks the advertised points, so a
// parsed set is as trustworthy as a freshly built one.
EllipsoidalSet eset_from_json(const Json& j);
// Returns the target and the simplices of a serialized cover.
std::pair<LatticePolytope, std::vector<Simplex>> cover_from_json(const Json& j);

}  // namespace latcover
