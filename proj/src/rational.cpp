#include "latcover/rational.hpp"

#include <sstream>

#include "latcover/errors.hpp"

namespace latcover {

Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int isqrt_floor(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Int max_int_with_sq_le(const Rat& t, const Rat& bound) {
    // floor(t + sqrt(bound)): start from a safe overestimate and walk down.
    // k <= t + sqrt(bound)  <=>  k <= t, or (k - t)^2 <= bound.
    Int k = rat_floor(t) + isqrt_floor(rat_ceil(bound)) + 2;
    while (true) {
        if (Rat(k) <= t) return k;
        Rat d = Rat(k) - t;
        if (d * d <= bound) return k;
        --k;
    }
}

Int min_int_with_sq_le(const Rat& t, const Rat& bound) {
    // ceil(t - sqrt(bound)), by the mirrored walk.
    Int k = rat_ceil(t) - isqrt_floor(rat_ceil(bound)) - 2;
    while (true) {
        if (Rat(k) >= t) return k;
        Rat d = Rat(k) - t;
        if (d * d <= bound) return k;
        ++k;
    }
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Int int_of_string(const std::string& s) {
    Int n;
    if (s.empty() || mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
        throw InputError("not an integer: '" + s + "'");
    return n;
}

Rat rat_of_string(const std::string& s) {
    Rat q;
    if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw InputError("not a rational: '" + s + "'");
    if (q.get_den() == 0) throw InputError("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

RatVec to_rat(const IntVec& v) {
    RatVec r;
    r.reserve(v.size());
    for (const Int& x : v) r.emplace_back(x);
    return r;
}

std::string vec_to_string(const RatVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
    os << ")";
    return os.str();
}

std::string vec_to_string(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
    os << ")";
    return os.str();
}

long to_long_checked(const Int& n) {
    if (!n.fits_slong_p()) throw InputError("integer exceeds machine range: " + n.get_str());
    return n.get_si();
}

}  // namespace latcover
