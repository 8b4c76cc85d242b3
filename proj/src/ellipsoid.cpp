#include "latcover/ellipsoid.hpp"

#include <algorithm>
#include <set>

#include "latcover/errors.hpp"

namespace latcover {

Ellipsoid Ellipsoid::make(RatMat a, RatVec center) {
    if (a.rows != a.cols || (int)center.size() != a.rows)
        throw PreconditionUnmet("ellipsoid matrix and center sizes disagree");
    if (!is_symmetric(a) || !is_positive_definite(a))
        throw PreconditionUnmet("ellipsoid matrix must be symmetric positive definite");
    return Ellipsoid{std::move(a), std::move(center)};
}

Rat Ellipsoid::value(const RatVec& x) const {
    RatVec r = sub(x, center);
    return dot(r, mul(a, r));
}

std::vector<RatVec> ellipsoid_lattice_points(const Ellipsoid& e,
                                             const AffineLattice& l,
                                             bool solid) {
    int d = l.dim();
    // the form in lattice coordinates z: (z - z0)^T m (z - z0)
    RatMat m = mul(transpose(l.basis()), mul(e.a, l.basis()));
    RatVec z0 = l.to_coords(e.center);
    LdlResult f = ldlt(m);

    // q = sum_i d_i u_i^2 with u_i = y_i + sum_{j>i} U_ij y_j, y = z - z0.
    // Fix coordinates last-first; each level leaves an exact interval.
    std::vector<IntVec> found;
    IntVec z(d);
    RatVec y(d, Rat(0));
    auto rec = [&](auto&& self, int i, const Rat& rem) -> void {
        if (i < 0) {
            found.push_back(z);
            return;
        }
        Rat t(0);
        for (int j = i + 1; j < d; ++j) t += f.u.at(i, j) * y[j];
        Rat r = rem / f.d[i];
        Rat s = z0[i] - t;  // u_i = z_i - s
        Int hi = max_int_with_sq_le(s, r);
        for (Int k = min_int_with_sq_le(s, r); k <= hi; ++k) {
            z[i] = k;
            y[i] = Rat(k) - z0[i];
            Rat u = y[i] + t;
            self(self, i - 1, rem - f.d[i] * u * u);
        }
    };
    rec(rec, d - 1, Rat(1));

    std::vector<RatVec> out;
    out.reserve(found.size());
    for (const IntVec& zz : found) {
        RatVec x = l.from_int_coords(zz);
        if (!solid && e.value(x) != 1) continue;
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

LatticePolytope hull_of_ellipsoid(const Ellipsoid& e, const AffineLattice& l) {
    std::vector<RatVec> pts = ellipsoid_lattice_points(e, l, true);
    if (pts.empty()) throw EmptyEllipsoid("no lattice points in the solid");
    return LatticePolytope::from_points(pts, l);
}

EllipsoidalSet make_ellipsoidal_set(const Ellipsoid& e, const AffineLattice& l) {
    EllipsoidalSet s{ellipsoid_lattice_points(e, l, true), e, l, {}};
    for (const RatVec& p : s.points)
        if (e.value(p) == 1) s.extremal.push_back(p);
    return s;
}

namespace {

RatVec basis_column(const AffineLattice& l, int j) {
    RatVec c(l.basis().rows);
    for (int i = 0; i < l.basis().rows; ++i) c[i] = l.basis().at(i, j);
    return c;
}

bool certifies(const Ellipsoid& e, const AffineLattice& l,
               const std::vector<RatVec>& expected_sorted) {
    return ellipsoid_lattice_points(e, l, true) == expected_sorted;
}

EllipsoidalSet with_certificate(std::vector<RatVec> points, const Ellipsoid& e,
                                const AffineLattice& l) {
    EllipsoidalSet s{std::move(points), e, l, {}};
    for (const RatVec& p : s.points)
        if (e.value(p) == 1) s.extremal.push_back(p);
    return s;
}

}  // namespace

ExtremalPick find_extremal_point(const EllipsoidalSet& s) {
    if (s.points.empty()) throw PreconditionUnmet("empty ellipsoidal set");
    Rat m(0);
    for (const RatVec& p : s.points) m = std::max(m, s.certificate.value(p));

    if (m == 1) {
        EllipsoidalSet out = s;
        if (out.extremal.empty())
            for (const RatVec& p : out.points)
                if (out.certificate.value(p) == 1) out.extremal.push_back(p);
        return {out.extremal.front(), std::move(out)};
    }
    if (m > 0) {
        // contract about the center so the farthest member reaches the surface
        RatMat a = s.certificate.a;
        for (Rat& x : a.a) x /= m;
        Ellipsoid e = Ellipsoid::make(std::move(a), s.certificate.center);
        if (!certifies(e, s.lattice, s.points))
            throw VerificationFailed("contracted certificate lost points");
        EllipsoidalSet out = with_certificate(s.points, e, s.lattice);
        return {out.extremal.front(), std::move(out)};
    }

    // singleton exactly at the center: move the center off the point and
    // shrink until enumeration gives the singleton back
    const RatVec& v = s.points.front();
    RatVec dir = basis_column(s.lattice, 0);
    Rat len2 = dot(dir, mul(s.certificate.a, dir));
    Rat t(1, 2);
    for (int step = 0; step < 64; ++step, t /= 2) {
        RatVec center = v;
        for (int i = 0; i < (int)center.size(); ++i) center[i] += t * dir[i];
        RatMat a = s.certificate.a;
        Rat scale = t * t * len2;  // value of v in the raw shifted form
        for (Rat& x : a.a) x /= scale;
        Ellipsoid e = Ellipsoid::make(std::move(a), std::move(center));
        if (certifies(e, s.lattice, s.points))
            return {v, with_certificate(s.points, e, s.lattice)};
    }
    throw VerificationFailed("extremal search exhausted 64 halvings");
}

EllipsoidalSet peel(const EllipsoidalSet& s, const RatVec& v) {
    if (std::find(s.points.begin(), s.points.end(), v) == s.points.end())
        throw NotExtremal("point is not a member of the set");
    if (s.certificate.value(v) != 1)
        throw NotExtremal("point is not on the certificate surface");

    std::vector<RatVec> expected;
    for (const RatVec& p : s.points)
        if (p != v) expected.push_back(p);

    if (expected.empty()) {
        // empty set: a shrinking ball about an off-lattice center
        RatVec dir = basis_column(s.lattice, 0);
        RatVec center = v;
        for (int i = 0; i < (int)center.size(); ++i) center[i] += dir[i] / 3;
        int d = s.lattice.dim();
        Rat t(1);
        for (int step = 0; step < 64; ++step, t /= 2) {
            RatMat a = RatMat::identity(d);
            for (Rat& x : a.a) x /= t * t;
            Ellipsoid e = Ellipsoid::make(std::move(a), center);
            if (certifies(e, s.lattice, expected))
                return with_certificate(expected, e, s.lattice);
        }
        throw VerificationFailed("empty-set certificate search exhausted");
    }

    const RatVec& z = s.certificate.center;
    Rat eps(1, 2);
    for (int step = 0; step < 64; ++step, eps /= 2) {
        for (Rat delta = eps / 2; delta >= eps / 16; delta /= 2) {
            // blow up about v by 1 + eps, then slide the center past z
            Rat f = Rat(1) + eps + delta;
            RatVec center = v;
            for (int i = 0; i < (int)center.size(); ++i)
                center[i] += f * (z[i] - v[i]);
            RatMat a = s.certificate.a;
            Rat sq = (Rat(1) + eps) * (Rat(1) + eps);
            for (Rat& x : a.a) x /= sq;
            Ellipsoid e = Ellipsoid::make(std::move(a), std::move(center));
            if (certifies(e, s.lattice, expected))
                return with_certificate(expected, e, s.lattice);
        }
    }
    throw VerificationFailed("peel search exhausted 64 halvings");
}

std::vector<EllipsoidalSet> descent_chain(const EllipsoidalSet& s) {
    if (s.points.empty()) throw PreconditionUnmet("empty ellipsoidal set");
    std::vector<EllipsoidalSet> chain{s};
    while (chain.back().points.size() > 1) {
        ExtremalPick pick = find_extremal_point(chain.back());
        chain.push_back(peel(pick.set, pick.v));
    }
    return chain;
}

QdFamily build_qd_family(int d) {
    if (d < 5) throw DimensionTooSmall("the family needs dimension at least 5");
    AffineLattice lambda = AffineLattice::half_integer(d);
    RatMat a(d, d);
    Rat coeff(4, d);
    coeff.canonicalize();
    for (int i = 0; i < d; ++i) a.at(i, i) = coeff;
    RatVec half(d, Rat(1, 2));
    Ellipsoid ball = Ellipsoid::make(std::move(a), std::move(half));

    std::vector<RatVec> pts = ellipsoid_lattice_points(ball, lambda, true);
    RatVec ones(d, Rat(1));
    std::vector<RatVec> q_pts;
    for (const RatVec& p : pts)
        if (p != ones) q_pts.push_back(p);
    if (q_pts.size() + 1 != pts.size())
        throw VerificationFailed("all-ones corner missing from the ball");

    LatticePolytope p = LatticePolytope::from_points(pts, lambda);
    LatticePolytope q = LatticePolytope::from_points(q_pts, lambda);
    if (q.lattice_points_sec().size() != q_pts.size())
        throw VerificationFailed("removed corner still inside the hull");

    // delta = conv((1,...,1) - e_i): the coordinate-sum d-1 slice of q.
    // Sum(x) <= d-1 holds on every generator and is tight exactly on these d
    // affinely independent vertices, so delta is a facet; its lattice points
    // are among the tight generators, hence exactly its vertices.
    std::vector<IntVec> delta_verts;
    Rat top(d - 1);
    size_t tight = 0;
    for (const RatVec& g : q_pts) {
        Rat sigma(0);
        for (const Rat& x : g) sigma += x;
        if (sigma > top) throw VerificationFailed("generator above the slice");
        if (sigma == top) ++tight;
    }
    for (int i = 0; i < d; ++i) {
        RatVec w = ones;
        w[i] = 0;
        delta_verts.push_back(lambda.to_int_coords(w));
    }
    if (tight != (size_t)d || !affinely_independent(delta_verts))
        throw VerificationFailed("slice is not the expected facet simplex");

    RatVec beta(d, Rat(d - 1, d));
    return QdFamily{d,
                    std::move(lambda),
                    std::move(ball),
                    std::move(p),
                    std::move(q),
                    Simplex{std::move(delta_verts)},
                    std::move(beta)};
}

namespace {

// Exhaustive multiset search for target = g_{i1} + ... + g_{ic} over the
// generators, pruned by the reachable range of coordinate sums.
bool has_c_term_representation(const std::vector<IntVec>& gens,
                               const std::vector<Int>& sigma, const IntVec& target,
                               const Int& target_sigma, int c) {
    int n = (int)gens.size();
    std::vector<Int> suf_min(n + 1), suf_max(n + 1);
    suf_min[n] = 0;
    suf_max[n] = 0;
    for (int i = n - 1; i >= 0; --i) {
        suf_min[i] = i + 1 < n ? std::min(sigma[i], suf_min[i + 1]) : sigma[i];
        suf_max[i] = i + 1 < n ? std::max(sigma[i], suf_max[i + 1]) : sigma[i];
    }
    IntVec rem = target;
    auto rec = [&](auto&& self, int idx, int slots, const Int& rem_sigma) -> bool {
        if (slots == 0) return is_zero(rem);
        if (idx >= n) return false;
        if (rem_sigma < Int(slots) * suf_min[idx]) return false;
        if (rem_sigma > Int(slots) * suf_max[idx]) return false;
        for (int j = idx; j < n; ++j) {
            for (int k = 0; k < (int)rem.size(); ++k) rem[k] -= gens[j][k];
            if (self(self, j, slots - 1, rem_sigma - sigma[j])) return true;
            for (int k = 0; k < (int)rem.size(); ++k) rem[k] += gens[j][k];
        }
        return false;
    };
    return rec(rec, 0, c, target_sigma);
}

}  // namespace

CounterexampleReport verify_counterexample(int d) {
    if (d < 6 || d % 2 != 0)
        throw PreconditionUnmet("counterexample verification needs even d >= 6");
    QdFamily f = build_qd_family(d);
    int c = d / 2;

    CounterexampleReport rep;
    rep.d = d;
    rep.target = RatVec(d, Rat(d - 1, 2));  // (d/2) * beta

    std::vector<IntVec> gens;
    for (const IntVec& s : f.q.lattice_points_sec()) gens.push_back(f.q.sec_to_lat(s));
    rep.point_count = gens.size();

    rep.target_in_dilate = f.lambda.contains(rep.target) &&
                           f.q.dilate(c).contains(rep.target);

    // doubled ambient coordinate sums are integers on the half-integer lattice
    IntVec target_lat = f.lambda.to_int_coords(rep.target);
    std::vector<Int> sigma;
    Int target_sigma = 0;
    auto doubled_sum = [&](const IntVec& lat) {
        RatVec amb = f.lambda.from_int_coords(lat);
        Rat s(0);
        for (const Rat& x : amb) s += x;
        Rat twice = s * 2;
        return twice.get_num();
    };
    for (const IntVec& g : gens) sigma.push_back(doubled_sum(g));
    target_sigma = doubled_sum(target_lat);
    rep.no_short_representation =
        !has_c_term_representation(gens, sigma, target_lat, target_sigma, c);

    DifferenceGroup dg = difference_group(f.q);
    bool full = (int)dg.basis.size() == d;
    if (full) {
        IntMat m(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m.at(i, j) = dg.basis[i][j];
        full = abs(det(m)) == 1;
    }
    rep.gp_is_whole_lattice = full;

    rep.normality = is_normal(f.q);

    rep.ok = rep.target_in_dilate && rep.no_short_representation &&
             rep.gp_is_whole_lattice && !rep.normality.is_normal;
    return rep;
}

EllipsoidalSet stack(const EllipsoidalSet& s, const Rat& b) {
    if (b <= Rat(1, 2) || b >= Rat(3, 2))
        throw BOutOfRange("stacking needs 1/2 < b < 3/2");
    int d = s.lattice.dim();
    Rat b4 = 4 * b * b;
    RatMat a(d + 1, d + 1);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            a.at(i, j) = s.certificate.a.at(i, j) * (b4 - 1) / b4;
    a.at(d, d) = Rat(1) / (b * b);
    RatVec center = s.certificate.center;
    center.emplace_back(Rat(1, 2));
    Ellipsoid e = Ellipsoid::make(std::move(a), std::move(center));

    AffineLattice l = AffineLattice::product(s.lattice, AffineLattice::standard(1));
    std::vector<RatVec> expected;
    for (int h = 0; h <= 1; ++h)
        for (const RatVec& p : s.points) {
            RatVec q = p;
            q.emplace_back(h);
            expected.push_back(std::move(q));
        }
    std::sort(expected.begin(), expected.end(), LexLess{});
    if (!certifies(e, l, expected))
        throw VerificationFailed("stacked certificate does not reproduce S x {0,1}");
    return with_certificate(std::move(expected), e, l);
}

RatMat lattice_isomorphism_to_standard(const AffineLattice& l) {
    for (const Rat& x : l.shift())
        if (x != 0) throw PreconditionUnmet("lattice must have zero shift");
    return *inverse(l.basis());  // a lattice basis is always invertible
}

}  // namespace latcover
