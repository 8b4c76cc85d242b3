#include "latcover/polytope.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <set>

#include "latcover/errors.hpp"

namespace latcover {

struct LatticePolytope::PointCache {
    std::mutex m;
    std::optional<std::vector<IntVec>> pts;
};

LatticePolytope::LatticePolytope(AffineLattice lat)
    : lat_(std::move(lat)), cache_(std::make_shared<PointCache>()) {}

LatticePolytope LatticePolytope::from_points(const std::vector<RatVec>& pts,
                                             AffineLattice lat) {
    std::vector<IntVec> z;
    z.reserve(pts.size());
    for (const RatVec& p : pts) z.push_back(lat.to_int_coords(p));
    return from_lattice_coords(z, std::move(lat));
}

LatticePolytope LatticePolytope::from_lattice_coords(const std::vector<IntVec>& pts,
                                                     AffineLattice lat) {
    if (pts.empty()) throw PreconditionUnmet("polytope needs at least one point");
    int d = lat.dim();
    for (const IntVec& p : pts)
        if ((int)p.size() != d) throw PreconditionUnmet("point dimension mismatch");

    LatticePolytope poly(std::move(lat));
    std::vector<IntVec> uniq = pts;
    std::sort(uniq.begin(), uniq.end(), LexLess{});
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    std::vector<IntVec> diffs;
    for (size_t i = 1; i < uniq.size(); ++i) diffs.push_back(sub(uniq[i], uniq[0]));
    poly.dim_ = rank_of_rows(diffs);

    if (poly.dim_ == 0) {
        poly.origin_ = uniq[0];
        poly.verts_sec_ = {IntVec{}};
        return poly;
    }

    if (poly.dim_ == d) {
        poly.origin_ = IntVec(d, Int(0));
        for (int i = 0; i < d; ++i) poly.basis_rows_.push_back(unit_vector(d, i));
    } else {
        poly.origin_ = uniq[0];
        poly.basis_rows_ = saturated_span_basis(diffs, d);
    }

    // Section coordinates of the generators (integral by saturation).
    RatMat wt(d, poly.dim_);
    for (int j = 0; j < poly.dim_; ++j)
        for (int i = 0; i < d; ++i) wt.at(i, j) = Rat(poly.basis_rows_[j][i]);
    std::vector<RatVec> sec_pts;
    for (const IntVec& z : uniq) {
        if (poly.dim_ == d) {
            sec_pts.push_back(to_rat(z));
            continue;
        }
        std::optional<RatVec> s = solve(wt, to_rat(sub(z, poly.origin_)));
        assert(s.has_value());
        sec_pts.push_back(std::move(*s));
    }

    HullResult hull = convex_hull(sec_pts);
    for (int v : hull.vertices) {
        IntVec s((size_t)poly.dim_);
        for (int j = 0; j < poly.dim_; ++j) {
            assert(is_integer(sec_pts[v][j]));
            s[j] = sec_pts[v][j].get_num();
        }
        poly.verts_sec_.push_back(std::move(s));
    }
    std::sort(poly.verts_sec_.begin(), poly.verts_sec_.end(), LexLess{});

    for (const Hyperplane& h : hull.facets) {
        assert(is_integer(h.offset));
        poly.facets_.push_back({h.normal, h.offset.get_num()});
    }
    for (const PolyFacet& f : poly.facets_) {
        std::vector<int> on;
        for (int i = 0; i < (int)poly.verts_sec_.size(); ++i)
            if (dot(f.normal, poly.verts_sec_[i]) == f.offset) on.push_back(i);
        poly.facet_verts_.push_back(std::move(on));
    }
    return poly;
}

std::vector<IntVec> LatticePolytope::vertices_lat() const {
    std::vector<IntVec> r;
    r.reserve(verts_sec_.size());
    for (const IntVec& s : verts_sec_) r.push_back(sec_to_lat(s));
    return r;
}

std::vector<RatVec> LatticePolytope::vertices_ambient() const {
    std::vector<RatVec> r;
    r.reserve(verts_sec_.size());
    for (const IntVec& s : verts_sec_) r.push_back(lat_.from_int_coords(sec_to_lat(s)));
    return r;
}

IntVec LatticePolytope::sec_to_lat(const IntVec& s) const {
    IntVec z = origin_;
    for (int j = 0; j < dim_; ++j)
        for (int i = 0; i < (int)z.size(); ++i) z[i] += s[j] * basis_rows_[j][i];
    return z;
}

RatVec LatticePolytope::sec_to_ambient(const RatVec& s) const {
    RatVec z = to_rat(origin_);
    for (int j = 0; j < dim_; ++j)
        for (int i = 0; i < (int)z.size(); ++i) z[i] += s[j] * Rat(basis_rows_[j][i]);
    return lat_.from_coords(z);
}

std::optional<RatVec> LatticePolytope::ambient_to_sec(const RatVec& x) const {
    RatVec z = lat_.to_coords(x);
    int d = ambient_dim();
    RatMat wt(d, dim_);
    for (int j = 0; j < dim_; ++j)
        for (int i = 0; i < d; ++i) wt.at(i, j) = Rat(basis_rows_[j][i]);
    return solve(wt, sub(z, to_rat(origin_)));
}

std::optional<IntVec> LatticePolytope::lat_to_sec(const IntVec& z) const {
    std::optional<RatVec> s = ambient_to_sec(lat_.from_int_coords(z));
    if (!s) return std::nullopt;
    IntVec r((size_t)dim_);
    for (int j = 0; j < dim_; ++j) {
        if (!is_integer((*s)[j])) return std::nullopt;
        r[j] = (*s)[j].get_num();
    }
    return r;
}

bool LatticePolytope::contains(const RatVec& x) const {
    std::optional<RatVec> s = ambient_to_sec(x);
    return s && contains_sec(*s);
}

bool LatticePolytope::contains_sec(const RatVec& s) const {
    if (dim_ == 0) return true;  // span membership already checked
    for (const PolyFacet& f : facets_)
        if (dot(f.normal, s) > Rat(f.offset)) return false;
    return true;
}

bool LatticePolytope::contains_lat(const IntVec& z) const {
    std::optional<IntVec> s = lat_to_sec(z);
    if (!s) return false;
    for (const PolyFacet& f : facets_)
        if (dot(f.normal, *s) > f.offset) return false;
    return true;
}

std::vector<IntVec> LatticePolytope::lattice_points_sec() const {
    if (dim_ == 0) return {IntVec{}};
    {
        std::lock_guard<std::mutex> g(cache_->m);
        if (cache_->pts) return *cache_->pts;
    }
    int k = dim_;
    IntVec lo(k), hi(k);
    for (int j = 0; j < k; ++j) {
        lo[j] = verts_sec_[0][j];
        hi[j] = verts_sec_[0][j];
        for (const IntVec& v : verts_sec_) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
    }
    // minrem[f][j] = least possible contribution of coordinates >= j to
    // facet f's left side, given the box bounds.
    int nf = (int)facets_.size();
    std::vector<std::vector<Int>> minrem(nf, std::vector<Int>(k + 1, Int(0)));
    for (int f = 0; f < nf; ++f)
        for (int j = k - 1; j >= 0; --j) {
            const Int& n = facets_[f].normal[j];
            minrem[f][j] = minrem[f][j + 1] + (n > 0 ? n * lo[j] : n * hi[j]);
        }

    std::vector<IntVec> out;
    IntVec cur(k);
    std::vector<Int> prefix(nf, Int(0));
    // Depth-first sweep; at each level intersect the per-facet intervals.
    auto rec = [&](auto&& self, int j) -> void {
        if (j == k) {
            out.push_back(cur);
            return;
        }
        Int l = lo[j], h = hi[j];
        for (int f = 0; f < nf && l <= h; ++f) {
            const Int& n = facets_[f].normal[j];
            Int slack = facets_[f].offset - prefix[f] - minrem[f][j + 1];
            if (n == 0) {
                if (slack < 0) return;
            } else if (n > 0) {
                Int b;
                mpz_fdiv_q(b.get_mpz_t(), slack.get_mpz_t(), n.get_mpz_t());
                h = std::min(h, b);
            } else {
                // n * s <= slack with n < 0  =>  s >= slack / n (rounded up)
                Int b, nn = -n, negslack = -slack;
                mpz_cdiv_q(b.get_mpz_t(), negslack.get_mpz_t(), nn.get_mpz_t());
                l = std::max(l, b);
            }
        }
        for (Int s = l; s <= h; ++s) {
            cur[j] = s;
            for (int f = 0; f < nf; ++f) prefix[f] += facets_[f].normal[j] * s;
            self(self, j + 1);
            for (int f = 0; f < nf; ++f) prefix[f] -= facets_[f].normal[j] * s;
        }
    };
    rec(rec, 0);
    std::lock_guard<std::mutex> g(cache_->m);
    if (!cache_->pts) cache_->pts = out;
    return out;
}

std::vector<RatVec> LatticePolytope::lattice_points_ambient() const {
    std::vector<RatVec> r;
    for (const IntVec& s : lattice_points_sec())
        r.push_back(lat_.from_int_coords(sec_to_lat(s)));
    return r;
}

LatticePolytope make_dilated(const LatticePolytope& p, const Int& c) {
    LatticePolytope q = p;
    q.cache_ = std::make_shared<LatticePolytope::PointCache>();
    for (Int& x : q.origin_) x *= c;
    for (IntVec& v : q.verts_sec_)
        for (Int& x : v) x *= c;
    for (PolyFacet& f : q.facets_) f.offset *= c;
    return q;
}

LatticePolytope LatticePolytope::dilate(const Int& c) const {
    if (c < 1) throw PreconditionUnmet("dilation factor must be positive");
    return make_dilated(*this, c);
}

int LatticePolytope::vertex_index_sec(const IntVec& s) const {
    for (int i = 0; i < (int)verts_sec_.size(); ++i)
        if (verts_sec_[i] == s) return i;
    return -1;
}

std::vector<int> LatticePolytope::facet_vertex_indices(int facet) const {
    return facet_verts_.at(facet);
}

std::vector<std::vector<int>> LatticePolytope::edge_vertex_indices() const {
    if (dim_ != 3) throw DimensionNot3("edge enumeration is only for 3-polytopes");
    std::set<std::vector<int>> edges;
    for (size_t i = 0; i < facet_verts_.size(); ++i)
        for (size_t j = i + 1; j < facet_verts_.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(facet_verts_[i].begin(), facet_verts_[i].end(),
                                  facet_verts_[j].begin(), facet_verts_[j].end(),
                                  std::back_inserter(common));
            if (common.size() == 2) edges.insert(common);
        }
    return {edges.begin(), edges.end()};
}

DifferenceGroup difference_group(const LatticePolytope& p) {
    std::vector<IntVec> pts = p.lattice_points_sec();
    DifferenceGroup g;
    g.ambient_dim = p.ambient_dim();
    if (pts.size() < 2) return g;
    IntMat m((int)pts.size() - 1, g.ambient_dim);
    IntVec z0 = p.sec_to_lat(pts[0]);
    for (int i = 1; i < (int)pts.size(); ++i) {
        IntVec diff = sub(p.sec_to_lat(pts[i]), z0);
        for (int j = 0; j < g.ambient_dim; ++j) m.at(i - 1, j) = diff[j];
    }
    HnfResult h = hnf_rows(m);
    for (int i = 0; i < h.rank; ++i) g.basis.push_back(h.h.row(i));
    return g;
}

bool spans_direct_summand(const DifferenceGroup& g) {
    return is_direct_summand(g.basis, g.ambient_dim);
}

Int index_in_saturation(const DifferenceGroup& g) {
    if (g.basis.empty()) return 1;
    std::vector<IntVec> sat = saturated_span_basis(g.basis, g.ambient_dim);
    int k = (int)sat.size();
    assert(k == (int)g.basis.size());
    RatMat satT(g.ambient_dim, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < g.ambient_dim; ++i) satT.at(i, j) = Rat(sat[j][i]);
    IntMat m(k, k);
    for (int i = 0; i < k; ++i) {
        std::optional<RatVec> c = solve(satT, to_rat(g.basis[i]));
        assert(c.has_value());
        for (int j = 0; j < k; ++j) {
            assert(is_integer((*c)[j]));
            m.at(i, j) = (*c)[j].get_num();
        }
    }
    return abs(det(m));
}

bool is_unimodular_simplex(const std::vector<IntVec>& verts) {
    if (verts.empty()) return false;
    int k = (int)verts.size() - 1;
    if (k == 0) return true;
    IntMat m(k, (int)verts[0].size());
    for (int i = 1; i <= k; ++i) {
        IntVec e = sub(verts[i], verts[0]);
        for (int j = 0; j < m.cols; ++j) m.at(i - 1, j) = e[j];
    }
    SnfResult s = snf(m);
    if ((int)s.divisors.size() != k) return false;
    for (const Int& d : s.divisors)
        if (d != 1) return false;
    return true;
}

std::optional<RatVec> barycentric(const std::vector<RatVec>& verts, const RatVec& x) {
    int d = (int)x.size();
    RatMat a(d + 1, (int)verts.size());
    for (int j = 0; j < (int)verts.size(); ++j) {
        for (int i = 0; i < d; ++i) a.at(i, j) = verts[j][i];
        a.at(d, j) = 1;
    }
    RatVec b = x;
    b.push_back(Rat(1));
    return solve(a, b);
}

bool simplex_contains(const std::vector<RatVec>& verts, const RatVec& x) {
    std::optional<RatVec> c = barycentric(verts, x);
    if (!c) return false;
    for (const Rat& v : *c)
        if (v < 0) return false;
    return true;
}

bool affinely_independent(const std::vector<IntVec>& verts) {
    if (verts.empty()) return false;
    std::vector<IntVec> diffs;
    for (size_t i = 1; i < verts.size(); ++i) diffs.push_back(sub(verts[i], verts[0]));
    return rank_of_rows(diffs) == (int)verts.size() - 1;
}

bool simplex_contains_lat(const Simplex& s, const RatVec& x_lat) {
    std::vector<RatVec> rv;
    rv.reserve(s.verts.size());
    for (const IntVec& v : s.verts) rv.push_back(to_rat(v));
    return simplex_contains(rv, x_lat);
}

namespace {

FaceHandle make_face(const LatticePolytope& p, std::vector<int> verts) {
    FaceHandle f;
    f.vertices = std::move(verts);
    std::sort(f.vertices.begin(), f.vertices.end());
    for (int i = 0; i < (int)p.facets().size(); ++i) {
        const std::vector<int>& fv = p.facet_vertex_indices(i);
        if (std::includes(fv.begin(), fv.end(), f.vertices.begin(), f.vertices.end()))
            f.facets.push_back(i);
    }
    std::vector<RatVec> coords;
    for (int i : f.vertices) coords.push_back(to_rat(p.vertices_sec()[i]));
    f.dim = affine_rank(coords);
    return f;
}

}  // namespace

FaceHandle minimal_face_containing(const LatticePolytope& p, const RatVec& x) {
    std::optional<RatVec> s = p.ambient_to_sec(x);
    if (!s || !p.contains_sec(*s)) throw PointOutsidePolytope("point not in polytope");
    std::vector<int> tight;
    for (int f = 0; f < (int)p.facets().size(); ++f)
        if (dot(p.facets()[f].normal, *s) == Rat(p.facets()[f].offset)) tight.push_back(f);
    std::vector<int> verts;
    if (tight.empty()) {
        for (int i = 0; i < (int)p.vertices_sec().size(); ++i) verts.push_back(i);
    } else {
        verts = p.facet_vertex_indices(tight[0]);
        for (size_t t = 1; t < tight.size(); ++t) {
            const std::vector<int>& fv = p.facet_vertex_indices(tight[t]);
            std::vector<int> common;
            std::set_intersection(verts.begin(), verts.end(), fv.begin(), fv.end(),
                                  std::back_inserter(common));
            verts = std::move(common);
        }
    }
    return make_face(p, std::move(verts));
}

std::vector<FaceHandle> faces(const LatticePolytope& p) {
    // Proper faces are exactly the nonempty intersections of facet vertex
    // sets, which pairwise closure computes.
    std::set<std::vector<int>> sets;
    for (int f = 0; f < (int)p.facets().size(); ++f) sets.insert(p.facet_vertex_indices(f));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> cur(sets.begin(), sets.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                std::vector<int> common;
                std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(),
                                      cur[j].end(), std::back_inserter(common));
                if (!common.empty() && sets.insert(common).second) grew = true;
            }
    }
    std::vector<FaceHandle> out;
    for (const std::vector<int>& s : sets) out.push_back(make_face(p, s));
    std::vector<int> all;
    for (int i = 0; i < (int)p.vertices_sec().size(); ++i) all.push_back(i);
    out.push_back(make_face(p, all));
    std::sort(out.begin(), out.end(), [](const FaceHandle& a, const FaceHandle& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertices < b.vertices;
    });
    return out;
}

bool is_unimodular_pyramid(const LatticePolytope& p, const LatticePolytope& q,
                           IntVec* apex_out) {
    if (!p.lattice().same_lattice(q.lattice())) return false;
    if (p.dim() != q.dim() + 1) return false;
    std::vector<IntVec> pv = p.vertices_lat(), qv = q.vertices_lat();
    std::sort(pv.begin(), pv.end(), LexLess{});
    std::sort(qv.begin(), qv.end(), LexLess{});
    if (!std::includes(pv.begin(), pv.end(), qv.begin(), qv.end(), LexLess{}))
        return false;
    std::vector<IntVec> extra;
    std::set_difference(pv.begin(), pv.end(), qv.begin(), qv.end(),
                        std::back_inserter(extra), LexLess{});
    if (extra.size() != 1) return false;
    const IntVec& apex = extra[0];

    // Lattice height of the apex over aff(q), measured in p's section lattice.
    std::vector<IntVec> qs;
    for (const IntVec& z : qv) {
        std::optional<IntVec> s = p.lat_to_sec(z);
        if (!s) return false;
        qs.push_back(*s);
    }
    std::optional<IntVec> as = p.lat_to_sec(apex);
    if (!as) return false;
    Int h;
    if (p.dim() == 1) {
        h = (*as)[0] - qs[0][0];
    } else {
        std::vector<IntVec> diffs;
        for (size_t i = 1; i < qs.size(); ++i) diffs.push_back(sub(qs[i], qs[0]));
        if (rank_of_rows(diffs) != p.dim() - 1) return false;
        IntVec n = hyperplane_normal(diffs);
        h = dot(n, sub(*as, qs[0]));
    }
    if (abs(h) != 1) return false;
    if (apex_out) *apex_out = apex;
    return true;
}

}  // namespace latcover
