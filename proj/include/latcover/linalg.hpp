#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "latcover/rational.hpp"

namespace latcover {

// Dense row-major matrices. Sizes here are tiny (dim <= 9, a few hundred
// rows at most), so the representation favors clarity over anything else.
struct IntMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Int(0)) {}
    Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }
    static IntMat identity(int n);
    IntVec row(int i) const;
    bool operator==(const IntMat& o) const = default;
};

struct RatMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    RatMat() = default;
    RatMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Rat(0)) {}
    Rat& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[size_t(i) * cols + j]; }
    static RatMat identity(int n);
    RatVec row(int i) const;
    bool operator==(const RatMat& o) const = default;
};

RatMat to_rat(const IntMat& m);

// Vector helpers.
IntVec add(const IntVec& x, const IntVec& y);
IntVec sub(const IntVec& x, const IntVec& y);
IntVec neg(const IntVec& x);
IntVec scale(const Int& c, const IntVec& x);
Int dot(const IntVec& x, const IntVec& y);
RatVec add(const RatVec& x, const RatVec& y);
RatVec sub(const RatVec& x, const RatVec& y);
RatVec scale(const Rat& c, const RatVec& x);
Rat dot(const RatVec& x, const RatVec& y);
Rat dot(const IntVec& x, const RatVec& y);
bool is_zero(const IntVec& x);
bool is_zero(const RatVec& x);
bool lex_less(const IntVec& x, const IntVec& y);
bool lex_less(const RatVec& x, const RatVec& y);
// Comparator form for sorting and ordered containers.
struct LexLess {
    template <class V>
    bool operator()(const V& a, const V& b) const {
        return lex_less(a, b);
    }
};
IntVec unit_vector(int d, int i);

// Content = gcd of entries (nonnegative). primitive() divides it out and
// throws ZeroVector on the zero vector.
Int content(const IntVec& x);
IntVec primitive(const IntVec& x);
// Clears denominators and divides by content; preserves direction.
IntVec primitive_direction(const RatVec& x);

RatVec mul(const RatMat& m, const RatVec& x);
IntVec mul(const IntMat& m, const IntVec& x);
IntMat mul(const IntMat& x, const IntMat& y);
RatMat mul(const RatMat& x, const RatMat& y);
IntMat transpose(const IntMat& m);
RatMat transpose(const RatMat& m);

Int det(const IntMat& m);   // Bareiss fraction-free elimination
Rat det(const RatMat& m);   // Gaussian elimination
int rank(const RatMat& m);
int rank_of_rows(const std::vector<IntVec>& rows);
int rank_of_rows(const std::vector<RatVec>& rows);

// Inverse of a nonsingular rational matrix; nullopt when singular.
std::optional<RatMat> inverse(const RatMat& m);
// Solves m * x = b; nullopt when inconsistent. For non-square m returns one
// solution of the (consistent) system.
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);

// Primitive integer normal of the hyperplane spanned by the rows of `e`
// ((k-1) x k, full row rank). Unique up to sign.
IntVec hyperplane_normal(const std::vector<IntVec>& e);
IntVec hyperplane_normal(const std::vector<RatVec>& e);

// Row-style Hermite normal form: H = U * M with U unimodular. Pivots are
// positive, entries below a pivot are zero, entries above are reduced into
// [0, pivot). Zero rows sink to the bottom.
struct HnfResult {
    IntMat h;
    IntMat u;
    int rank = 0;
};
HnfResult hnf_rows(const IntMat& m);

// Smith normal form: S = U * M * V, diag(d1,...,dr) with d1 | d2 | ... and
// di > 0, trailing diagonal entries zero.
struct SnfResult {
    IntMat s;
    IntMat u;
    IntMat v;
    IntVec divisors;  // nonzero elementary divisors
};
SnfResult snf(const IntMat& m);

// Basis (rows) of the saturation span(rows) `cap` Z^d; the result generates a
// direct summand of Z^d of rank = rank(rows).
std::vector<IntVec> saturated_span_basis(const std::vector<IntVec>& rows, int dim);

// A = U^T D U with U unit upper triangular and D positive diagonal.
// Requires A symmetric positive definite (checked; throws PreconditionUnmet).
struct LdlResult {
    RatMat u;
    RatVec d;
};
LdlResult ldlt(const RatMat& a);

bool is_symmetric(const RatMat& a);
bool is_positive_definite(const RatMat& a);

}  // namespace latcover
