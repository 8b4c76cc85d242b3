#include "latcover/cones.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <optional>
#include <set>

#include "latcover/errors.hpp"
#include "latcover/hull.hpp"

namespace latcover {

struct RationalCone::HilbCache {
    std::mutex m;
    std::optional<std::vector<IntVec>> hb;
};

RationalCone::RationalCone(AffineLattice lat)
    : lat_(std::move(lat)), cache_(std::make_shared<HilbCache>()) {}

RationalCone RationalCone::from_rays(AffineLattice lattice,
                                     const std::vector<IntVec>& generators) {
    if (!is_zero(lattice.shift()))
        throw PreconditionUnmet("cone lattice must have zero shift");
    int d = lattice.dim();

    std::vector<IntVec> tips;
    for (const IntVec& g : generators) {
        if ((int)g.size() != d) throw PreconditionUnmet("ray dimension mismatch");
        if (!is_zero(g)) tips.push_back(primitive(g));
    }
    std::sort(tips.begin(), tips.end(), LexLess{});
    tips.erase(std::unique(tips.begin(), tips.end()), tips.end());
    if (tips.empty()) throw PreconditionUnmet("cone needs a nonzero generator");
    if (rank_of_rows(tips) != d)
        throw PreconditionUnmet("cone must be full-dimensional in its lattice");

    std::vector<RatVec> pts;
    pts.push_back(RatVec(d, Rat(0)));
    for (const IntVec& t : tips) pts.push_back(to_rat(t));
    HullResult h = convex_hull(pts);
    if (std::find(h.vertices.begin(), h.vertices.end(), 0) == h.vertices.end())
        throw NotPointed("cone contains a line");

    RationalCone c(std::move(lattice));
    for (const Hyperplane& f : h.facets)
        if (f.offset == 0) c.supports_.push_back(neg(f.normal));
    for (const IntVec& t : tips) {
        std::vector<IntVec> tight;
        for (const IntVec& s : c.supports_)
            if (dot(s, t) == 0) tight.push_back(s);
        if (rank_of_rows(tight) == d - 1) c.rays_.push_back(t);
    }
    std::sort(c.rays_.begin(), c.rays_.end(), LexLess{});
    return c;
}

bool RationalCone::contains(const IntVec& x) const {
    for (const IntVec& s : supports_)
        if (dot(s, x) < 0) return false;
    return true;
}

bool RationalCone::contains(const RatVec& x) const {
    for (const IntVec& s : supports_)
        if (dot(s, x) < 0) return false;
    return true;
}

bool RationalCone::contains_interior(const RatVec& x) const {
    for (const IntVec& s : supports_)
        if (dot(s, x) <= 0) return false;
    return true;
}

Int RationalCone::multiplicity() const {
    if (!is_simplicial())
        throw PreconditionUnmet("multiplicity needs a simplicial cone");
    int d = dim();
    IntMat m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.at(i, j) = rays_[i][j];
    return abs(det(m));
}

std::vector<std::vector<IntVec>> triangulate_cone(const RationalCone& c) {
    int d = c.dim();
    if (c.is_simplicial()) return {c.rays()};
    std::vector<RatVec> pts;
    pts.push_back(RatVec(d, Rat(0)));
    for (const IntVec& r : c.rays()) pts.push_back(to_rat(r));
    HullResult h = convex_hull(pts);
    std::vector<std::vector<IntVec>> pieces;
    for (const BoundarySimplex& b : h.boundary) {
        if (b.plane.offset == 0) continue;  // side of the cone, not a far facet
        std::vector<IntVec> rays;
        for (int i : b.pts) rays.push_back(c.rays()[i - 1]);
        std::sort(rays.begin(), rays.end(), LexLess{});
        pieces.push_back(std::move(rays));
    }
    return pieces;
}

std::vector<IntVec> parallelepiped_points(const std::vector<IntVec>& rays) {
    int d = (int)rays[0].size();
    if ((int)rays.size() != d)
        throw PreconditionUnmet("parallelepiped needs dim independent rays");
    IntMat a(d, d);  // columns are the rays
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) a.at(i, j) = rays[j][i];
    SnfResult s = snf(a);
    if ((int)s.divisors.size() != d)
        throw PreconditionUnmet("parallelepiped rays are dependent");

    std::optional<RatMat> uinv = inverse(to_rat(s.u));
    std::optional<RatMat> ainv = inverse(to_rat(a));
    assert(uinv && ainv);
    RatMat arat = to_rat(a);

    std::vector<IntVec> out;
    IntVec t(d, Int(0));
    while (true) {
        if (!is_zero(t)) {
            RatVec y = mul(*uinv, to_rat(t));
            RatVec mu = mul(*ainv, y);
            for (Rat& v : mu) {
                Int fl = rat_floor(v);
                v -= Rat(fl);
            }
            RatVec p = mul(arat, mu);
            IntVec pi(d);
            for (int i = 0; i < d; ++i) {
                assert(is_integer(p[i]));
                pi[i] = p[i].get_num();
            }
            if (!is_zero(pi)) out.push_back(pi);
        }
        int j = 0;
        while (j < d) {
            ++t[j];
            if (t[j] < s.divisors[j]) break;
            t[j] = 0;
            ++j;
        }
        if (j == d) break;
    }
    return out;
}

const std::vector<IntVec>& RationalCone::hilbert_basis() const {
    std::lock_guard<std::mutex> g(cache_->m);
    if (cache_->hb) return *cache_->hb;

    std::set<IntVec, LexLess> cand(rays_.begin(), rays_.end());
    for (const std::vector<IntVec>& piece : triangulate_cone(*this))
        for (const IntVec& p : parallelepiped_points(piece)) cand.insert(p);

    std::vector<IntVec> all(cand.begin(), cand.end());
    std::vector<IntVec> hb;
    for (const IntVec& z : all) {
        bool reducible = false;
        for (const IntVec& g2 : all) {
            if (g2 == z) continue;
            IntVec w = sub(z, g2);
            if (!is_zero(w) && contains(w)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) hb.push_back(z);
    }
    cache_->hb = std::move(hb);
    return *cache_->hb;
}

RationalCone corner_cone(const LatticePolytope& p, const RatVec& vertex) {
    std::optional<RatVec> vs = p.ambient_to_sec(vertex);
    if (!vs) throw NotAVertex("point is off the polytope's affine hull");
    IntVec v((size_t)p.dim());
    for (int i = 0; i < p.dim(); ++i) {
        if (!is_integer((*vs)[i])) throw NotAVertex("point is not a lattice point");
        v[i] = (*vs)[i].get_num();
    }
    int vi = p.vertex_index_sec(v);
    if (vi < 0) throw NotAVertex("point is not a vertex of the polytope");

    std::vector<IntVec> gens;
    for (const IntVec& w : p.vertices_sec())
        if (w != v) gens.push_back(sub(w, v));
    return RationalCone::from_rays(AffineLattice::standard(p.dim()), gens);
}

VeryAmpleReport is_very_ample(const LatticePolytope& p) {
    VeryAmpleReport rep;
    for (const IntVec& v : p.vertices_sec()) {
        RatVec v_amb = p.sec_to_ambient(to_rat(v));
        RationalCone c = corner_cone(p, v_amb);
        for (const IntVec& h : c.hilbert_basis()) {
            RatVec shifted = to_rat(add(v, h));
            if (!p.contains_sec(shifted)) {
                rep.very_ample = false;
                rep.vertex = v_amb;
                // Ambient direction of the escaping element.
                rep.element = sub(p.sec_to_ambient(shifted), v_amb);
                return rep;
            }
        }
    }
    return rep;
}

namespace {

Int triple_det(const std::vector<IntVec>& rays) {
    IntMat m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = rays[i][j];
    return abs(det(m));
}

struct PieceSolver {
    const std::vector<IntVec>& hb;
    std::map<std::vector<IntVec>, std::optional<std::vector<std::vector<IntVec>>>> memo;
    bool relaxed = false;
    int depth_cap = 64;

    std::optional<std::vector<std::vector<IntVec>>> solve(std::vector<IntVec> piece,
                                                          int depth) {
        std::sort(piece.begin(), piece.end(), LexLess{});
        Int mult = triple_det(piece);
        if (mult == 1) return std::vector<std::vector<IntVec>>{piece};
        if (depth > depth_cap) return std::nullopt;
        auto it = memo.find(piece);
        if (it != memo.end()) return it->second;

        RatMat a(3, 3);  // columns are the piece rays
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) a.at(i, j) = Rat(piece[j][i]);

        // Candidate Hilbert elements inside the piece, smallest degree first.
        std::vector<std::pair<Rat, IntVec>> cands;
        for (const IntVec& h : hb) {
            if (h == piece[0] || h == piece[1] || h == piece[2]) continue;
            std::optional<RatVec> lam = latcover::solve(a, to_rat(h));
            if (!lam) continue;
            bool inside = true, shrinks = true;
            Rat degree(0);
            for (const Rat& l : *lam) {
                if (l < 0) inside = false;
                if (l >= 1) shrinks = false;
                degree += l;
            }
            if (!inside) continue;
            if (!relaxed && !shrinks) continue;
            if (relaxed && degree >= Rat(3)) continue;
            cands.emplace_back(degree, h);
        }
        std::sort(cands.begin(), cands.end(),
                  [](const std::pair<Rat, IntVec>& x, const std::pair<Rat, IntVec>& y) {
                      if (x.first != y.first) return x.first < y.first;
                      return lex_less(x.second, y.second);
                  });

        std::optional<std::vector<std::vector<IntVec>>> result;
        for (const auto& [deg, h] : cands) {
            std::optional<RatVec> lam = latcover::solve(a, to_rat(h));
            std::vector<std::vector<IntVec>> pieces_out;
            bool ok = true;
            for (int i = 0; i < 3 && ok; ++i) {
                if ((*lam)[i] == 0) continue;  // h on that facet: subcone degenerate
                std::vector<IntVec> sub_piece = piece;
                sub_piece[i] = h;
                std::optional<std::vector<std::vector<IntVec>>> r =
                    solve(std::move(sub_piece), depth + 1);
                if (!r) {
                    ok = false;
                    break;
                }
                for (std::vector<IntVec>& t : *r) pieces_out.push_back(std::move(t));
            }
            if (ok) {
                result = std::move(pieces_out);
                break;
            }
        }
        memo[piece] = result;
        return result;
    }
};

}  // namespace

SeboTriangulation sebo_triangulation(const RationalCone& c) {
    if (c.dim() != 3) throw DimensionNot3("Hilbert triangulation is for 3-cones");
    const std::vector<IntVec>& hb = c.hilbert_basis();
    std::vector<std::vector<IntVec>> final_pieces;
    for (const std::vector<IntVec>& piece : triangulate_cone(c)) {
        PieceSolver strict{hb};
        std::optional<std::vector<std::vector<IntVec>>> r = strict.solve(piece, 0);
        if (!r) {
            PieceSolver relaxed{hb};
            relaxed.relaxed = true;
            r = relaxed.solve(piece, 0);
        }
        if (!r)
            throw VerificationFailed(
                "no unimodular Hilbert triangulation found for a cone piece");
        for (std::vector<IntVec>& t : *r) final_pieces.push_back(std::move(t));
    }

    SeboTriangulation out;
    std::set<IntVec, LexLess> basis(hb.begin(), hb.end());
    for (const std::vector<IntVec>& piece : final_pieces) {
        assert(triple_det(piece) == 1);
        for (const IntVec& r : piece) assert(basis.count(r));
        out.pieces.push_back(RationalCone::from_rays(c.lattice(), piece));
    }
    return out;
}

std::vector<Simplex> vertex_cover_simplices(const LatticePolytope& p,
                                            const RatVec& vertex) {
    if (p.dim() != 3) throw DimensionNot3("vertex covers are for 3-polytopes");
    std::optional<RatVec> vs_r = p.ambient_to_sec(vertex);
    if (!vs_r) throw NotAVertex("point is off the polytope's affine hull");
    IntVec v(3);
    for (int i = 0; i < 3; ++i) {
        if (!is_integer((*vs_r)[i])) throw NotAVertex("point is not a lattice point");
        v[i] = (*vs_r)[i].get_num();
    }

    RationalCone c = corner_cone(p, vertex);
    for (const IntVec& h : c.hilbert_basis())
        if (!p.contains_sec(to_rat(add(v, h))))
            throw NotVeryAmple("corner Hilbert basis escapes the polytope");

    std::vector<Simplex> out;
    for (const RationalCone& piece : sebo_triangulation(c).pieces) {
        Simplex s;
        s.verts.push_back(p.sec_to_lat(v));
        for (const IntVec& r : piece.rays()) s.verts.push_back(p.sec_to_lat(add(v, r)));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace latcover
