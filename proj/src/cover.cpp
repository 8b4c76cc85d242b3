#include "latcover/cover.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdlib>
#include <map>
#include <set>

#include "latcover/cones.hpp"
#include "latcover/errors.hpp"
#include "latcover/normality.hpp"

namespace latcover {

namespace {

struct VertsLess {
    bool operator()(const std::vector<IntVec>& a, const std::vector<IntVec>& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            LexLess{});
    }
};

Simplex canon(std::vector<IntVec> verts) {
    std::sort(verts.begin(), verts.end(), LexLess{});
    return Simplex{std::move(verts)};
}

void dedupe(std::vector<Simplex>& sims) {
    for (Simplex& s : sims) s = canon(std::move(s.verts));
    std::sort(sims.begin(), sims.end(),
              [](const Simplex& a, const Simplex& b) { return VertsLess{}(a.verts, b.verts); });
    sims.erase(std::unique(sims.begin(), sims.end()), sims.end());
}

std::string fmt_vec(const RatVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

long cell_cap() {
    if (const char* s = std::getenv("LATCOVER_CELL_CAP")) {
        long v = std::atol(s);
        if (v > 0) return v;
    }
    return 1000000;
}

// ---- exact coverage machinery, in the target's section coordinates ----

// Closed halfspace description a[i] . s <= c[i] of a full-dimensional
// simplex, with the opposite facet's vertices kept alongside.
struct SimplexHS {
    std::vector<IntVec> a;
    std::vector<Int> c;
    std::vector<std::vector<IntVec>> fverts;
};

SimplexHS make_hs(const std::vector<IntVec>& verts) {
    SimplexHS h;
    int m = (int)verts.size() - 1;
    for (int omit = 0; omit <= m; ++omit) {
        std::vector<IntVec> others;
        for (int j = 0; j <= m; ++j)
            if (j != omit) others.push_back(verts[j]);
        std::vector<IntVec> rows;
        for (size_t j = 1; j < others.size(); ++j) rows.push_back(sub(others[j], others[0]));
        IntVec n = rows.empty() ? IntVec{Int(1)} : hyperplane_normal(rows);
        Int off = dot(n, others[0]);
        if (dot(n, verts[omit]) > off) {
            n = neg(n);
            off = -off;
        }
        h.a.push_back(std::move(n));
        h.c.push_back(std::move(off));
        h.fverts.push_back(std::move(others));
    }
    return h;
}

bool hs_contains(const SimplexHS& h, const RatVec& s) {
    for (size_t i = 0; i < h.a.size(); ++i)
        if (dot(h.a[i], s) > h.c[i]) return false;
    return true;
}

bool region_inside(const std::vector<RatVec>& region, const SimplexHS& h) {
    for (const RatVec& v : region)
        if (!hs_contains(h, v)) return false;
    return true;
}

bool covered_whole(const std::vector<RatVec>& region, const std::vector<SimplexHS>& fulls) {
    for (const SimplexHS& h : fulls)
        if (region_inside(region, h)) return true;
    return false;
}

RatVec centroid(const std::vector<RatVec>& pts) {
    RatVec c(pts[0].size(), Rat(0));
    for (const RatVec& p : pts) c = add(c, p);
    return scale(Rat(1, (unsigned long)pts.size()), c);
}

// Distinct facet planes of the simplices, sign-canonicalized.
std::vector<std::pair<IntVec, Int>> collect_planes(const std::vector<SimplexHS>& fulls) {
    std::set<std::pair<IntVec, Int>> seen;
    for (const SimplexHS& h : fulls)
        for (size_t i = 0; i < h.a.size(); ++i) {
            IntVec n = h.a[i];
            Int c = h.c[i];
            for (const Int& x : n) {
                if (x == 0) continue;
                if (x < 0) {
                    n = neg(n);
                    c = -c;
                }
                break;
            }
            seen.emplace(std::move(n), std::move(c));
        }
    return {seen.begin(), seen.end()};
}

void prune_region(std::vector<RatVec>& verts) {
    std::sort(verts.begin(), verts.end(), LexLess{});
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    size_t m = verts[0].size();
    if (verts.size() > 8 * (m + 1)) {
        HullResult h = convex_hull(verts);
        std::vector<RatVec> kept;
        for (int i : h.vertices) kept.push_back(std::move(verts[i]));
        verts = std::move(kept);
    }
}

// Split a full-dimensional region by a plane that strictly cuts it.
void cut_region(const std::vector<RatVec>& verts, const IntVec& a, const Int& c,
                std::vector<RatVec>& lo, std::vector<RatVec>& hi) {
    std::vector<Rat> val(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) val[i] = dot(a, verts[i]);
    Rat cr(c);
    for (size_t i = 0; i < verts.size(); ++i) {
        if (val[i] <= cr) lo.push_back(verts[i]);
        if (val[i] >= cr) hi.push_back(verts[i]);
    }
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = 0; j < verts.size(); ++j) {
            if (!(val[i] < cr && cr < val[j])) continue;
            Rat t = (cr - val[i]) / (val[j] - val[i]);
            RatVec p = add(verts[i], scale(t, sub(verts[j], verts[i])));
            lo.push_back(p);
            hi.push_back(std::move(p));
        }
    prune_region(lo);
    prune_region(hi);
}

struct BspResult {
    bool covered = false;
    std::optional<RatVec> witness;  // section coordinates
    bool resolved = true;
};

// Recursive splitting of the region along the given planes. Each leaf lies
// weakly on one side of every plane, so it sits inside a single arrangement
// cell and either lies inside one simplex or its centroid misses all of
// them. Plane indices only move forward: a plane that fails to cut a region
// cannot cut any subregion.
BspResult bsp_check(std::vector<RatVec> region, const std::vector<SimplexHS>& fulls,
                    const std::vector<std::pair<IntVec, Int>>& planes, long cap) {
    long cells = 1;
    std::vector<std::pair<std::vector<RatVec>, size_t>> stack;
    stack.emplace_back(std::move(region), 0);
    while (!stack.empty()) {
        auto [r, pi] = std::move(stack.back());
        stack.pop_back();
        if (covered_whole(r, fulls)) continue;
        bool split = false;
        for (size_t j = pi; j < planes.size(); ++j) {
            bool any_lo = false, any_hi = false;
            Rat cr(planes[j].second);
            for (const RatVec& v : r) {
                Rat d = dot(planes[j].first, v);
                if (d < cr) any_lo = true;
                if (d > cr) any_hi = true;
                if (any_lo && any_hi) break;
            }
            if (!(any_lo && any_hi)) continue;
            std::vector<RatVec> lo, hi;
            cut_region(r, planes[j].first, planes[j].second, lo, hi);
            if (++cells > cap) throw TooManyCells("region split into more than " +
                                                  std::to_string(cap) + " cells");
            stack.emplace_back(std::move(lo), j + 1);
            stack.emplace_back(std::move(hi), j + 1);
            split = true;
            break;
        }
        if (!split) return {false, centroid(r), true};
    }
    return {true, std::nullopt, true};
}

// Bounded-depth bisection fallback: covered leaves are exact, witnesses are
// exact, but a leaf can stay unresolved at the depth cap.
BspResult subdivision_check(std::vector<std::vector<RatVec>> regions,
                            const std::vector<SimplexHS>& fulls, int depth, long cap) {
    long cells = (long)regions.size();
    bool unresolved = false;
    std::vector<std::pair<std::vector<RatVec>, int>> stack;
    for (auto& r : regions) stack.emplace_back(std::move(r), depth);
    while (!stack.empty()) {
        auto [r, dep] = std::move(stack.back());
        stack.pop_back();
        if (covered_whole(r, fulls)) continue;
        RatVec mid = centroid(r);
        bool mid_in = false;
        for (const SimplexHS& h : fulls)
            if (hs_contains(h, mid)) { mid_in = true; break; }
        if (dep == 0 || cells > cap) {
            if (!mid_in) return {false, mid, true};
            unresolved = true;
            continue;
        }
        // bisect the longest edge
        size_t bi = 0, bj = 1;
        Rat best(-1);
        for (size_t i = 0; i < r.size(); ++i)
            for (size_t j = i + 1; j < r.size(); ++j) {
                RatVec d = sub(r[i], r[j]);
                Rat len2 = dot(d, d);
                if (len2 > best) {
                    best = len2;
                    bi = i;
                    bj = j;
                }
            }
        RatVec m = scale(Rat(1, 2), add(r[bi], r[bj]));
        std::vector<RatVec> a = r, b = r;
        a[bi] = m;
        b[bj] = std::move(m);
        cells += 2;
        stack.emplace_back(std::move(a), dep - 1);
        stack.emplace_back(std::move(b), dep - 1);
    }
    if (unresolved) return {false, std::nullopt, false};
    return {true, std::nullopt, true};
}

// Triangulation of the section polytope: fan from the vertex centroid over
// the boundary simplices.
std::vector<std::vector<RatVec>> fan_triangulation(const LatticePolytope& p) {
    std::vector<RatVec> verts;
    for (const IntVec& v : p.vertices_sec()) verts.push_back(to_rat(v));
    if (p.dim() == 0 || verts.size() == (size_t)p.dim() + 1) return {verts};
    HullResult h = convex_hull(verts);
    RatVec cen = centroid(verts);
    std::vector<std::vector<RatVec>> out;
    for (const BoundarySimplex& b : h.boundary) {
        std::vector<RatVec> r;
        for (int i : b.pts) r.push_back(verts[i]);
        r.push_back(cen);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SimplexHS> section_halfspaces(const LatticePolytope& p,
                                          const std::vector<Simplex>& sims) {
    std::vector<SimplexHS> fulls;
    for (const Simplex& s : sims) {
        if ((int)s.verts.size() != p.dim() + 1) continue;
        std::vector<IntVec> sec;
        for (const IntVec& v : s.verts) {
            std::optional<IntVec> sv = p.lat_to_sec(v);
            assert(sv.has_value());
            sec.push_back(std::move(*sv));
        }
        fulls.push_back(make_hs(sec));
    }
    return fulls;
}

// ---- plane triangulation ----

Int cross2(const IntVec& u, const IntVec& v) { return u[0] * v[1] - u[1] * v[0]; }

// Vertex indices of a 2-polytope in boundary order, via its edge graph.
std::vector<int> boundary_cycle(const LatticePolytope& f) {
    int nv = (int)f.vertices_sec().size();
    std::vector<std::vector<int>> adj(nv);
    for (int i = 0; i < (int)f.facets().size(); ++i) {
        std::vector<int> e = f.facet_vertex_indices(i);
        assert(e.size() == 2);
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    std::vector<int> cyc{0};
    int prev = -1, cur = 0;
    while ((int)cyc.size() < nv) {
        int nxt = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
        cyc.push_back(nxt);
        prev = cur;
        cur = nxt;
    }
    return cyc;
}

// Split (a, b, c) at lattice points until every piece is empty; emits
// positively oriented empty triangles.
void split_triangle(IntVec a, IntVec b, IntVec c, const std::vector<IntVec>& pts,
                    std::vector<std::array<IntVec, 3>>& out) {
    if (cross2(sub(b, a), sub(c, a)) < 0) std::swap(b, c);
    for (const IntVec& q : pts) {
        if (q == a || q == b || q == c) continue;
        Int s1 = cross2(sub(b, a), sub(q, a));
        Int s2 = cross2(sub(c, b), sub(q, b));
        Int s3 = cross2(sub(a, c), sub(q, c));
        if (s1 < 0 || s2 < 0 || s3 < 0) continue;
        if (s1 > 0 && s2 > 0 && s3 > 0) {
            split_triangle(a, b, q, pts, out);
            split_triangle(b, c, q, pts, out);
            split_triangle(c, a, q, pts, out);
            return;
        }
        if (s1 == 0) {
            split_triangle(a, q, c, pts, out);
            split_triangle(q, b, c, pts, out);
            return;
        }
        if (s2 == 0) {
            split_triangle(b, q, a, pts, out);
            split_triangle(q, c, a, pts, out);
            return;
        }
        split_triangle(c, q, b, pts, out);
        split_triangle(q, a, b, pts, out);
        return;
    }
    assert(cross2(sub(b, a), sub(c, a)) == 1);
    out.push_back({std::move(a), std::move(b), std::move(c)});
}

// ---- join construction ----

// Joins for a positive-dimensional proper face: keep the simplices of the
// vertex cover meeting the face full-dimensionally, and replace their
// on-face vertices with each simplex of the face triangulation.
std::vector<Simplex> joins_for_face(const LatticePolytope& p, const FaceHandle& face,
                                    const std::vector<Simplex>& vertex_cover) {
    std::vector<IntVec> fverts;
    for (int vi : face.vertices) fverts.push_back(p.sec_to_lat(p.vertices_sec()[vi]));
    LatticePolytope fp = LatticePolytope::from_lattice_coords(fverts, p.lattice());
    std::vector<Simplex> tf = facet_triangulation(fp);

    std::vector<Simplex> out;
    std::set<std::vector<IntVec>, VertsLess> seen;
    for (const Simplex& t : vertex_cover) {
        std::vector<IntVec> opp;
        int on_count = 0;
        for (const IntVec& w : t.verts) {
            std::optional<IntVec> s = p.lat_to_sec(w);
            assert(s.has_value());
            bool on = true;
            for (int fi : face.facets)
                if (dot(p.facets()[fi].normal, *s) != p.facets()[fi].offset) {
                    on = false;
                    break;
                }
            if (on)
                ++on_count;
            else
                opp.push_back(w);
        }
        // the simplex meets the face in a face of itself; full-dimensional
        // contact means exactly dim(face) + 1 vertices land on it
        if (on_count != face.dim + 1) continue;
        for (const Simplex& tau : tf) {
            std::vector<IntVec> jv = opp;
            jv.insert(jv.end(), tau.verts.begin(), tau.verts.end());
            std::sort(jv.begin(), jv.end(), LexLess{});
            if (!seen.insert(jv).second) continue;
            if (!is_unimodular_simplex(jv))
                throw VerificationFailed("join simplex is not unimodular");
            for (const IntVec& w : jv)
                if (!p.contains_lat(w))
                    throw VerificationFailed("join simplex leaves the polytope");
            out.push_back(Simplex{std::move(jv)});
        }
    }
    if (out.empty())
        throw VerificationFailed("no vertex simplex meets the face full-dimensionally");
    return out;
}

RatVec vertex_ambient(const LatticePolytope& p, int vi) {
    return p.sec_to_ambient(to_rat(p.vertices_sec()[vi]));
}

// Drop simplices whose region is covered by the union of the others.
std::vector<Simplex> prune_cover(const LatticePolytope& p, std::vector<Simplex> sims) {
    dedupe(sims);
    std::vector<SimplexHS> fulls = section_halfspaces(p, sims);
    if (fulls.size() != sims.size()) return sims;  // mixed dimensions: keep as-is
    std::vector<char> alive(sims.size(), 1);
    for (size_t i = 0; i < sims.size(); ++i) {
        std::vector<RatVec> region;
        for (const IntVec& v : sims[i].verts) region.push_back(to_rat(*p.lat_to_sec(v)));
        std::vector<SimplexHS> others;
        for (size_t j = 0; j < sims.size(); ++j)
            if (j != i && alive[j]) others.push_back(fulls[j]);
        bool verts_in = true;
        for (const RatVec& v : region) {
            bool in = false;
            for (const SimplexHS& h : others)
                if (hs_contains(h, v)) { in = true; break; }
            if (!in) { verts_in = false; break; }
        }
        if (!verts_in) continue;  // a private vertex keeps the simplex
        try {
            BspResult r = bsp_check(region, others, collect_planes(others), 20000);
            if (r.covered) alive[i] = 0;
        } catch (const TooManyCells&) {
        }
    }
    std::vector<Simplex> kept;
    for (size_t i = 0; i < sims.size(); ++i)
        if (alive[i]) kept.push_back(std::move(sims[i]));
    return kept;
}

}  // namespace

std::vector<Simplex> facet_triangulation(const LatticePolytope& f) {
    if (f.dim() > 2)
        throw PreconditionUnmet("triangulation input must have dimension at most 2");
    std::vector<IntVec> pts = f.lattice_points_sec();
    std::vector<Simplex> out;
    if (f.dim() == 0) {
        out.push_back(Simplex{{f.sec_to_lat(pts[0])}});
        return out;
    }
    if (f.dim() == 1) {
        for (size_t i = 0; i + 1 < pts.size(); ++i)
            out.push_back(canon({f.sec_to_lat(pts[i]), f.sec_to_lat(pts[i + 1])}));
        return out;
    }
    std::vector<int> cyc = boundary_cycle(f);
    std::vector<std::array<IntVec, 3>> tris;
    for (size_t i = 1; i + 1 < cyc.size(); ++i)
        split_triangle(f.vertices_sec()[cyc[0]], f.vertices_sec()[cyc[i]],
                       f.vertices_sec()[cyc[i + 1]], pts, tris);
    for (const auto& t : tris)
        out.push_back(canon({f.sec_to_lat(t[0]), f.sec_to_lat(t[1]), f.sec_to_lat(t[2])}));
    dedupe(out);
    return out;
}

std::vector<Simplex> join_cover(const RatVec& x, const LatticePolytope& p) {
    if (p.dim() != 3) throw DimensionNot3("join covers need a 3-polytope");
    if (!p.contains(x)) throw PointNotOnBoundary("point " + fmt_vec(x) + " is outside");
    FaceHandle face = minimal_face_containing(p, x);
    if (face.dim == p.dim())
        throw PointNotOnBoundary("point " + fmt_vec(x) + " is interior");
    RatVec v = vertex_ambient(p, face.vertices[0]);
    std::vector<Simplex> vc = vertex_cover_simplices(p, v);
    if (face.dim == 0) {
        dedupe(vc);
        return vc;
    }
    std::vector<Simplex> out = joins_for_face(p, face, vc);
    dedupe(out);
    return out;
}

UnimodularCover boundary_cover(const LatticePolytope& p) {
    if (p.dim() != 3) throw DimensionNot3("boundary covers need a 3-polytope");
    VeryAmpleReport va = is_very_ample(p);
    if (!va.very_ample)
        throw NotVeryAmple("corner cone at " + fmt_vec(va.vertex) +
                           " has Hilbert basis element " + fmt_vec(va.element) +
                           " outside the polytope");
    std::vector<Simplex> sims;
    std::vector<std::vector<Simplex>> vcover(p.vertices_sec().size());
    for (size_t i = 0; i < p.vertices_sec().size(); ++i) {
        vcover[i] = vertex_cover_simplices(p, vertex_ambient(p, (int)i));
        sims.insert(sims.end(), vcover[i].begin(), vcover[i].end());
    }
    for (const FaceHandle& face : faces(p)) {
        if (face.dim < 1 || face.dim >= p.dim()) continue;
        std::vector<Simplex> js = joins_for_face(p, face, vcover[face.vertices[0]]);
        sims.insert(sims.end(), js.begin(), js.end());
        if (face.dim == 2) {
            std::vector<IntVec> fverts;
            for (int vi : face.vertices) fverts.push_back(p.sec_to_lat(p.vertices_sec()[vi]));
            std::vector<Simplex> ft = facet_triangulation(
                LatticePolytope::from_lattice_coords(fverts, p.lattice()));
            sims.insert(sims.end(), ft.begin(), ft.end());
        }
    }
    dedupe(sims);
    return {p, std::move(sims), "boundary-neighborhood"};
}

UnimodularCover ellipsoid_cover_3d(const Ellipsoid& e) {
    if ((int)e.center.size() != 3)
        throw PreconditionUnmet("the ellipsoid must live in dimension 3");
    AffineLattice z3 = AffineLattice::standard(3);
    EllipsoidalSet s = make_ellipsoidal_set(e, z3);
    if (s.points.empty()) throw EmptyEllipsoid("no lattice points in the solid");
    std::vector<EllipsoidalSet> chain = descent_chain(s);
    std::reverse(chain.begin(), chain.end());  // singleton first

    std::vector<LatticePolytope> polys;
    polys.reserve(chain.size());
    for (const EllipsoidalSet& es : chain) {
        LatticePolytope pi = LatticePolytope::from_points(es.points, z3);
        NormalityReport nr = is_normal(pi);
        if (!nr.is_normal)
            throw ChainStepNotNormal("hull of " + std::to_string(es.points.size()) +
                                     " chain points fails at dilation " + std::to_string(nr.c) +
                                     " with " + fmt_vec(nr.x));
        polys.push_back(std::move(pi));
    }

    std::vector<Simplex> cover{Simplex{{polys[0].sec_to_lat(polys[0].vertices_sec()[0])}}};
    for (size_t i = 1; i < polys.size(); ++i) {
        const LatticePolytope& cur = polys[i];
        int dc = cur.dim(), dp = polys[i - 1].dim();
        if (dc == dp + 1) {
            std::vector<RatVec> fresh;
            std::set_difference(chain[i].points.begin(), chain[i].points.end(),
                                chain[i - 1].points.begin(), chain[i - 1].points.end(),
                                std::back_inserter(fresh), LexLess{});
            assert(fresh.size() == 1);
            cover = pyramid_cover_lift(cover, cur, z3.to_int_coords(fresh[0]));
        } else if (dc == dp && dc <= 2) {
            cover = facet_triangulation(cur);
        } else if (dc == dp) {
            UnimodularCover bc = boundary_cover(cur);
            for (Simplex& t : bc.simplices)
                if ((int)t.verts.size() == dc + 1) cover.push_back(std::move(t));
        } else {
            throw VerificationFailed("descent chain dimensions out of order");
        }
    }

    LatticePolytope target = std::move(polys.back());
    cover = prune_cover(target, std::move(cover));
    CoverVerdict cv = verify_cover(target, cover);
    if (!cv.covered)
        throw VerificationFailed("ascent cover rejected" +
                                 (cv.witness ? " at " + fmt_vec(*cv.witness) : std::string()));
    return {std::move(target), std::move(cover), "full"};
}

UnimodularCover symmetric_cover_3d(const Ellipsoid& e) {
    if ((int)e.center.size() != 3)
        throw PreconditionUnmet("the ellipsoid must live in dimension 3");
    for (const Rat& c : e.center)
        if (!is_integer(c * 2))
            throw CenterNotHalfIntegral("center " + fmt_vec(e.center));
    AffineLattice z3 = AffineLattice::standard(3);
    LatticePolytope p = hull_of_ellipsoid(e, z3);
    if (p.dim() != 3)
        throw PreconditionUnmet("the lattice points do not span a 3-polytope");

    // Full-dimensional over the standard lattice: section, lattice and
    // ambient coordinates all agree.
    const std::vector<IntVec>& all_pts = p.lattice_points_sec();
    std::set<std::vector<IntVec>, VertsLess> seen;
    std::vector<Simplex> tets;
    std::vector<SimplexHS> hs;

    auto apex_for = [&](const std::vector<IntVec>& tri, const IntVec& normal,
                        const Int& plane_off) -> std::optional<IntVec> {
        RatVec cen = centroid({to_rat(tri[0]), to_rat(tri[1]), to_rat(tri[2])});
        std::optional<IntVec> best;
        Rat best_d;
        for (const IntVec& z : all_pts) {
            if (dot(normal, z) != plane_off) continue;
            RatVec d = sub(to_rat(z), cen);
            Rat dist = dot(d, d);
            if (!best || dist < best_d || (dist == best_d && lex_less(z, *best))) {
                best = z;
                best_d = dist;
            }
        }
        return best;
    };
    auto add_tet = [&](const std::vector<IntVec>& tri, const IntVec& apex) -> bool {
        std::vector<IntVec> jv = tri;
        jv.push_back(apex);
        std::sort(jv.begin(), jv.end(), LexLess{});
        if (!seen.insert(jv).second) return false;
        if (!is_unimodular_simplex(jv))
            throw VerificationFailed("boundary join is not unimodular");
        tets.push_back(Simplex{jv});
        hs.push_back(make_hs(jv));
        return true;
    };

    for (int fi = 0; fi < (int)p.facets().size(); ++fi) {
        const PolyFacet& fac = p.facets()[fi];
        std::vector<IntVec> fverts;
        for (int vi : p.facet_vertex_indices(fi)) fverts.push_back(p.vertices_sec()[vi]);
        LatticePolytope fp = LatticePolytope::from_lattice_coords(fverts, z3);
        for (const Simplex& tri : facet_triangulation(fp)) {
            std::optional<IntVec> z = apex_for(tri.verts, fac.normal, fac.offset - 1);
            if (!z)
                throw VerificationFailed("no lattice point one plane inside facet " +
                                         std::to_string(fi));
            add_tet(tri.verts, *z);
        }
    }

    for (int round = 0; round < 32; ++round) {
        CoverVerdict cv = verify_cover(p, tets);
        if (cv.covered) return {std::move(p), std::move(tets), "full"};
        if (!cv.witness) throw VerificationFailed("coverage verdict unresolved");
        const RatVec& w = *cv.witness;
        // The uncovered pocket around the witness reaches the existing tets
        // on their center-facing sides: walk outward from the center and
        // cross into the first tet hit.
        RatVec dir = sub(w, e.center);
        if (std::all_of(dir.begin(), dir.end(), [](const Rat& x) { return x == 0; }))
            dir = sub(to_rat(p.vertices_sec()[0]), w);

        std::optional<Rat> t_best;
        std::vector<std::pair<Rat, int>> entries;
        for (int k = 0; k < (int)hs.size(); ++k) {
            Rat lo(0);
            std::optional<Rat> hi;
            bool feasible = true;
            for (size_t i = 0; i < hs[k].a.size() && feasible; ++i) {
                Rat av = dot(hs[k].a[i], w), bv = dot(hs[k].a[i], dir), cv2(hs[k].c[i]);
                if (bv == 0) {
                    if (av > cv2) feasible = false;
                } else if (bv > 0) {
                    Rat b = (cv2 - av) / bv;
                    if (!hi || b < *hi) hi = b;
                } else {
                    lo = std::max(lo, Rat((cv2 - av) / bv));
                }
            }
            if (!feasible || (hi && lo > *hi)) continue;
            entries.emplace_back(lo, k);
            if (!t_best || lo < *t_best) t_best = lo;
        }
        bool progress = false;
        if (t_best) {
            RatVec hit = add(w, scale(*t_best, dir));
            for (const auto& [lo, k] : entries) {
                if (lo != *t_best || progress) continue;
                for (size_t i = 0; i < hs[k].a.size() && !progress; ++i) {
                    if (dot(hs[k].a[i], hit) != Rat(hs[k].c[i])) continue;
                    if (dot(hs[k].a[i], w) <= Rat(hs[k].c[i])) continue;
                    // join the crossed triangle with a lattice point one
                    // plane toward the witness side
                    const std::vector<IntVec>& tri = hs[k].fverts[i];
                    std::optional<IntVec> z = apex_for(tri, hs[k].a[i], hs[k].c[i] + 1);
                    if (z) progress = add_tet(tri, *z);
                }
            }
        }
        if (!progress)
            throw VerificationFailed("cannot extend the cover toward witness " + fmt_vec(w));
    }
    throw VerificationFailed("gap-closing loop exhausted its budget");
}

IntVec johnson_witness(const Ellipsoid& e2, const AffineLattice& l, const RatVec& v) {
    if (l.dim() != 2 || (int)e2.center.size() != 2)
        throw PreconditionUnmet("planar input required");
    std::vector<RatVec> s = ellipsoid_lattice_points(e2, l, true);
    std::vector<RatVec> diffs;
    for (size_t i = 1; i < s.size(); ++i) diffs.push_back(sub(s[i], s[0]));
    if (s.size() < 3 || rank_of_rows(diffs) != 2)
        throw PreconditionUnmet("the solid holds no lattice triangle");
    Ellipsoid moved = Ellipsoid::make(e2.a, add(e2.center, v));
    std::vector<RatVec> pts = ellipsoid_lattice_points(moved, l, true);
    if (pts.empty())
        throw VerificationFailed("translate misses the lattice");  // refutes the planar fact
    return l.to_int_coords(pts[0]);
}

CoverVerdict verify_cover(const LatticePolytope& p, const std::vector<Simplex>& simplices,
                          const std::string& method) {
    if (method != "auto" && method != "arrangement" && method != "subdivision")
        throw PreconditionUnmet("unknown verification method " + method);
    for (const Simplex& s : simplices) {
        if (!affinely_independent(s.verts)) throw PreconditionUnmet("degenerate simplex");
        for (const IntVec& v : s.verts)
            if (!p.contains_lat(v))
                throw PreconditionUnmet("simplex vertex outside the target");
    }
    if (p.dim() == 0) {
        CoverVerdict out{!simplices.empty(), std::nullopt,
                         method == "subdivision" ? "subdivision" : "arrangement"};
        if (!out.covered) out.witness = p.sec_to_ambient(RatVec{});
        return out;
    }
    std::vector<SimplexHS> fulls = section_halfspaces(p, simplices);

    auto finish = [&](const BspResult& r, const char* how) {
        CoverVerdict out{r.covered, std::nullopt, how};
        if (r.witness) out.witness = p.sec_to_ambient(*r.witness);
        return out;
    };
    long cap = cell_cap();
    if (method != "subdivision") {
        std::vector<RatVec> region;
        for (const IntVec& v : p.vertices_sec()) region.push_back(to_rat(v));
        try {
            return finish(bsp_check(std::move(region), fulls, collect_planes(fulls), cap),
                          "arrangement");
        } catch (const TooManyCells&) {
            if (method == "arrangement") throw;
        }
    }
    return finish(subdivision_check(fan_triangulation(p), fulls, 12, cap), "subdivision");
}

bool point_covered(const std::vector<Simplex>& simplices, const RatVec& x_lat) {
    for (const Simplex& s : simplices)
        if (simplex_contains_lat(s, x_lat)) return true;
    return false;
}

}  // namespace latcover
