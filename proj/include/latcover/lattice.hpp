#pragma once

#include <vector>

#include "latcover/linalg.hpp"

namespace latcover {

// Full-rank affine lattice {shift + basis * z : z in Z^d} sitting in Q^d.
// The basis columns generate the underlying group; shift translates it.
// All coordinates are exact rationals, so lattices like Z^d + Z*(1/2,...,1/2)
// are represented directly.
class AffineLattice {
  public:
    AffineLattice(RatMat basis, RatVec shift);

    static AffineLattice standard(int d);
    // Z^d extended by the all-halves vector (index 2 over Z^d).
    static AffineLattice half_integer(int d);
    // Block sum: points (x, y) with x in a, y in b.
    static AffineLattice product(const AffineLattice& a, const AffineLattice& b);

    int dim() const { return basis_.cols; }
    const RatMat& basis() const { return basis_; }
    const RatVec& shift() const { return shift_; }
    // |det basis|, the volume of a fundamental cell.
    const Rat& covolume() const { return covolume_; }

    bool contains(const RatVec& x) const;
    // Coordinates of a point: basis^{-1} (x - shift).
    RatVec to_coords(const RatVec& x) const;
    IntVec to_int_coords(const RatVec& x) const;  // throws PointNotInLattice
    RatVec from_coords(const RatVec& z) const;
    RatVec from_int_coords(const IntVec& z) const;
    // Coordinates of a direction (no shift): basis^{-1} x.
    RatVec dir_to_coords(const RatVec& x) const;
    IntVec dir_to_int_coords(const RatVec& x) const;  // throws PointNotInLattice
    RatVec dir_from_coords(const RatVec& z) const;
    RatVec dir_from_int_coords(const IntVec& z) const;
    bool contains_dir(const RatVec& x) const;

    // Equality as point sets, independent of the chosen basis and shift.
    bool same_lattice(const AffineLattice& o) const;

  private:
    RatMat basis_;
    RatMat inv_;  // basis^{-1}, cached
    RatVec shift_;
    Rat covolume_;
};

// Group index [super : sub] for sub a finite-index subgroup of super (shifts
// are ignored; only the underlying groups matter). Throws NotSublattice when
// sub's basis does not lie in super's group.
Int lattice_index(const AffineLattice& sub, const AffineLattice& super);

// Whether the subgroup of Z^dim generated by gens is a direct summand,
// i.e. Z^dim / <gens> is torsion-free. True iff every elementary divisor
// of the generator matrix is 1.
bool is_direct_summand(const std::vector<IntVec>& gens, int dim);

}  // namespace latcover
