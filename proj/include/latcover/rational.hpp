#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace latcover {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Floor/ceil of a rational as exact integers.
Int rat_floor(const Rat& q);
Int rat_ceil(const Rat& q);

// floor(sqrt(n)) for n >= 0.
Int isqrt_floor(const Int& n);

// floor(t + sqrt(bound)) and ceil(t - sqrt(bound)), computed exactly.
// Precondition: bound >= 0. An interval [t - r, t + r] with no integer in it
// shows up as max < min.
Int max_int_with_sq_le(const Rat& t, const Rat& bound);
Int min_int_with_sq_le(const Rat& t, const Rat& bound);

// Canonical string form "p/q" (or "p" when q == 1); parser accepts both.
std::string to_string(const Int& n);
std::string to_string(const Rat& q);
Int int_of_string(const std::string& s);
Rat rat_of_string(const std::string& s);

RatVec to_rat(const IntVec& v);
std::string vec_to_string(const RatVec& v);
std::string vec_to_string(const IntVec& v);

// Checked narrowing used by dynamic-programming internals that pack small
// lattice vectors into machine integers. Throws on overflow, which keeps the
// fast path exact.
long to_long_checked(const Int& n);

}  // namespace latcover
