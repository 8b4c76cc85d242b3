#include "latcover/lattice.hpp"

#include <cassert>

#include "latcover/errors.hpp"

namespace latcover {

AffineLattice::AffineLattice(RatMat basis, RatVec shift)
    : basis_(std::move(basis)), shift_(std::move(shift)) {
    assert(basis_.rows == basis_.cols);
    assert((int)shift_.size() == basis_.rows);
    std::optional<RatMat> inv = inverse(basis_);
    if (!inv) throw PreconditionUnmet("lattice basis is singular");
    inv_ = std::move(*inv);
    covolume_ = abs(det(basis_));
}

AffineLattice AffineLattice::standard(int d) {
    return AffineLattice(RatMat::identity(d), RatVec(d, Rat(0)));
}

AffineLattice AffineLattice::half_integer(int d) {
    RatMat b = RatMat::identity(d);
    for (int i = 0; i < d; ++i) b.at(i, d - 1) = Rat(1, 2);
    return AffineLattice(std::move(b), RatVec(d, Rat(0)));
}

AffineLattice AffineLattice::product(const AffineLattice& a, const AffineLattice& b) {
    int da = a.dim(), db = b.dim();
    RatMat basis(da + db, da + db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) basis.at(i, j) = a.basis_.at(i, j);
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j) basis.at(da + i, da + j) = b.basis_.at(i, j);
    RatVec shift = a.shift_;
    shift.insert(shift.end(), b.shift_.begin(), b.shift_.end());
    return AffineLattice(std::move(basis), std::move(shift));
}

RatVec AffineLattice::to_coords(const RatVec& x) const { return mul(inv_, sub(x, shift_)); }

IntVec AffineLattice::to_int_coords(const RatVec& x) const {
    RatVec z = to_coords(x);
    IntVec r(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        if (!is_integer(z[i]))
            throw PointNotInLattice("point " + vec_to_string(x) + " not in lattice");
        r[i] = z[i].get_num();
    }
    return r;
}

bool AffineLattice::contains(const RatVec& x) const {
    RatVec z = to_coords(x);
    for (const Rat& v : z)
        if (!is_integer(v)) return false;
    return true;
}

RatVec AffineLattice::from_coords(const RatVec& z) const { return add(mul(basis_, z), shift_); }

RatVec AffineLattice::from_int_coords(const IntVec& z) const { return from_coords(to_rat(z)); }

RatVec AffineLattice::dir_to_coords(const RatVec& x) const { return mul(inv_, x); }

IntVec AffineLattice::dir_to_int_coords(const RatVec& x) const {
    RatVec z = dir_to_coords(x);
    IntVec r(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        if (!is_integer(z[i]))
            throw PointNotInLattice("direction " + vec_to_string(x) + " not in lattice");
        r[i] = z[i].get_num();
    }
    return r;
}

RatVec AffineLattice::dir_from_coords(const RatVec& z) const { return mul(basis_, z); }

RatVec AffineLattice::dir_from_int_coords(const IntVec& z) const {
    return dir_from_coords(to_rat(z));
}

bool AffineLattice::contains_dir(const RatVec& x) const {
    RatVec z = dir_to_coords(x);
    for (const Rat& v : z)
        if (!is_integer(v)) return false;
    return true;
}

bool AffineLattice::same_lattice(const AffineLattice& o) const {
    if (dim() != o.dim()) return false;
    if (!contains(o.shift_) || !o.contains(shift_)) return false;
    for (int j = 0; j < basis_.cols; ++j) {
        RatVec col(basis_.rows);
        for (int i = 0; i < basis_.rows; ++i) col[i] = basis_.at(i, j);
        if (!o.contains_dir(col)) return false;
    }
    for (int j = 0; j < o.basis_.cols; ++j) {
        RatVec col(o.basis_.rows);
        for (int i = 0; i < o.basis_.rows; ++i) col[i] = o.basis_.at(i, j);
        if (!contains_dir(col)) return false;
    }
    return true;
}

Int lattice_index(const AffineLattice& sub, const AffineLattice& super) {
    if (sub.dim() != super.dim()) throw NotSublattice("dimension mismatch");
    int d = sub.dim();
    IntMat m(d, d);
    for (int j = 0; j < d; ++j) {
        RatVec col(d);
        for (int i = 0; i < d; ++i) col[i] = sub.basis().at(i, j);
        IntVec z;
        try {
            z = super.dir_to_int_coords(col);
        } catch (const PointNotInLattice&) {
            throw NotSublattice("basis vector outside the ambient lattice");
        }
        for (int i = 0; i < d; ++i) m.at(i, j) = z[i];
    }
    Int idx = abs(det(m));
    if (idx == 0) throw NotSublattice("degenerate sublattice");
    return idx;
}

bool is_direct_summand(const std::vector<IntVec>& gens, int dim) {
    if (gens.empty()) return true;
    IntMat m((int)gens.size(), dim);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < dim; ++j) m.at(i, j) = gens[i][j];
    for (const Int& d : snf(m).divisors)
        if (d != 1) return false;
    return true;
}

}  // namespace latcover
