#include "latcover/hull.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>

#include "latcover/errors.hpp"

namespace latcover {

int affine_rank(const std::vector<RatVec>& pts) {
    if (pts.empty()) return -1;
    std::vector<RatVec> diffs;
    for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    return rank_of_rows(diffs);
}

std::vector<int> affine_basis_indices(const std::vector<RatVec>& pts) {
    std::vector<int> chosen;
    if (pts.empty()) return chosen;
    chosen.push_back(0);
    std::vector<RatVec> diffs;
    int r = 0;
    for (int i = 1; i < (int)pts.size(); ++i) {
        diffs.push_back(sub(pts[i], pts[0]));
        int nr = rank_of_rows(diffs);
        if (nr > r) {
            r = nr;
            chosen.push_back(i);
        } else {
            diffs.pop_back();
        }
    }
    return chosen;
}

namespace {

// Exact but allocation-free evaluation path for the common case of integer
// input coordinates.  All products are pre-bounded so that a plain int64
// accumulation cannot overflow; anything outside the bounds falls back to
// arbitrary-precision arithmetic.
struct FastCtx {
    bool ok = false;
    long long nlimit = 0;  // usable normal entries satisfy |n_i| <= nlimit
    std::vector<std::vector<long long>> p64;
};

struct Fast64 {
    bool ok = false;
    std::vector<long long> n;
    long long c = 0;
};

bool fits_ll(const Int& z, long long& out) {
    if (!z.fits_slong_p()) return false;
    out = (long long)z.get_si();
    return true;
}

FastCtx make_fast_ctx(const std::vector<RatVec>& pts, int d) {
    FastCtx fc;
    long long maxabs = 0;
    std::vector<std::vector<long long>> p64(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        p64[i].resize(d);
        for (int j = 0; j < d; ++j) {
            const Rat& q = pts[i][j];
            long long v;
            if (q.get_den() != 1 || !fits_ll(q.get_num(), v)) return fc;
            if (v > (1LL << 40) || v < -(1LL << 40)) return fc;
            p64[i][j] = v;
            maxabs = std::max(maxabs, std::abs(v));
        }
    }
    fc.ok = true;
    // With |n_i| <= nlimit and |p_j| <= maxabs every partial sum of a dot
    // product stays below 2^62.
    fc.nlimit = (1LL << 62) / ((long long)d * (maxabs + 1));
    fc.p64 = std::move(p64);
    return fc;
}

Fast64 make_fast(const IntVec& n, const Rat& c, const FastCtx& fc) {
    Fast64 f;
    if (!fc.ok || c.get_den() != 1) return f;
    if (!fits_ll(c.get_num(), f.c)) return f;
    f.n.resize(n.size());
    for (size_t i = 0; i < n.size(); ++i) {
        if (!fits_ll(n[i], f.n[i])) return f;
        if (f.n[i] > fc.nlimit || f.n[i] < -fc.nlimit) return f;
    }
    f.ok = true;
    return f;
}

long long dot64(const std::vector<long long>& a, const std::vector<long long>& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct WorkFacet {
    std::vector<int> pts;  // sorted, size d
    IntVec normal;
    Rat offset;
    Fast64 fast;
};

// Fraction-free Bareiss determinant on a row-major n*n buffer, destroying it;
// false when an entry leaves int64 range.
bool det64(long long* m, int n, long long& out) {
    long long prev = 1;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m[i * n + k] != 0) { piv = i; break; }
        if (piv < 0) { out = 0; return true; }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m[piv * n + j], m[k * n + j]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                __int128 t = (__int128)m[k * n + k] * m[i * n + j] -
                             (__int128)m[i * n + k] * m[k * n + j];
                t /= prev;  // exact by the Sylvester identity
                if (t > INT64_MAX || t < INT64_MIN) return false;
                m[i * n + j] = (long long)t;
            }
        prev = m[k * n + k];
    }
    out = sign * m[(n - 1) * n + (n - 1)];
    return true;
}

// int64 version of oriented_plane: primitive normal from cofactor minors of
// the difference rows, oriented against isum = (#basis points) * interior.
// Falls back (returns false) whenever a bound check fails.
bool plane64(const FastCtx& fc, const std::vector<int>& idx,
             const std::vector<long long>& isum, WorkFacet& out) {
    int d = (int)idx.size();
    std::vector<long long> rows((size_t)(d - 1) * d);
    for (int i = 0; i + 1 < d; ++i)
        for (int j = 0; j < d; ++j)
            rows[i * d + j] = fc.p64[idx[i + 1]][j] - fc.p64[idx[0]][j];
    std::vector<long long> n(d);
    std::vector<long long> minor((size_t)(d - 1) * (d - 1));
    for (int omit = 0; omit < d; ++omit) {
        for (int i = 0; i + 1 < d; ++i)
            for (int j = 0, c = 0; j < d; ++j)
                if (j != omit) minor[i * (d - 1) + c++] = rows[i * d + j];
        long long det;
        if (!det64(minor.data(), d - 1, det)) return false;
        n[omit] = (omit % 2 == 0) ? det : -det;
    }
    long long g = 0;
    for (long long v : n) g = std::gcd(g, v);
    if (g == 0) return false;
    for (long long& v : n) v /= g;
    for (long long v : n)
        if (v > fc.nlimit || v < -fc.nlimit) return false;
    long long c = dot64(n, fc.p64[idx[0]]);
    __int128 side = 0;
    for (int j = 0; j < d; ++j) side += (__int128)n[j] * isum[j];
    __int128 rhs = (__int128)c * (d + 1);
    if (side == rhs) throw PreconditionUnmet("interior reference on facet plane");
    if (side > rhs) {
        for (long long& v : n) v = -v;
        c = -c;
    }
    out.normal.resize(d);
    for (int j = 0; j < d; ++j) out.normal[j] = Int((long)n[j]);
    out.offset = Rat(Int((long)c));
    out.fast.ok = true;
    out.fast.n = std::move(n);
    out.fast.c = c;
    return true;
}

// Incremental exact rank with early exit; rows are reduced fraction-free
// against the stored pivots and kept primitive.
struct IntRowBasis {
    std::vector<IntVec> rows;
    std::vector<int> lead;
    bool add(IntVec r) {
        for (size_t k = 0; k < rows.size(); ++k) {
            if (r[lead[k]] == 0) continue;
            Int p = rows[k][lead[k]], x = r[lead[k]];
            for (size_t j = 0; j < r.size(); ++j) r[j] = p * r[j] - x * rows[k][j];
        }
        int l = -1;
        for (size_t j = 0; j < r.size(); ++j)
            if (r[j] != 0) { l = (int)j; break; }
        if (l < 0) return false;
        Int g = abs(r[l]);
        for (size_t j = l + 1; j < r.size(); ++j) g = gcd(g, r[j]);
        for (Int& v : r) v /= g;
        rows.push_back(std::move(r));
        lead.push_back(l);
        return true;
    }
};

// Hyperplane through the given points, oriented so that `inside` satisfies
// normal . inside < offset strictly.
std::pair<IntVec, Rat> oriented_plane(const std::vector<RatVec>& pts,
                                      const std::vector<int>& idx, const RatVec& inside) {
    std::vector<RatVec> rows;
    for (size_t i = 1; i < idx.size(); ++i) rows.push_back(sub(pts[idx[i]], pts[idx[0]]));
    IntVec n = hyperplane_normal(rows);
    Rat c = dot(n, pts[idx[0]]);
    Rat side = dot(n, inside);
    if (side == c) throw PreconditionUnmet("interior reference on facet plane");
    if (side > c) {
        n = neg(n);
        c = -c;
    }
    return {std::move(n), std::move(c)};
}

bool plane_less(const Hyperplane& a, const Hyperplane& b) {
    if (a.normal != b.normal) return lex_less(a.normal, b.normal);
    return a.offset < b.offset;
}

HullResult hull_1d(const std::vector<RatVec>& pts) {
    int lo = 0, hi = 0;
    for (int i = 1; i < (int)pts.size(); ++i) {
        if (pts[i][0] < pts[lo][0]) lo = i;
        if (pts[i][0] > pts[hi][0]) hi = i;
    }
    HullResult res;
    res.vertices = {std::min(lo, hi), std::max(lo, hi)};
    Hyperplane upper{IntVec{Int(1)}, pts[hi][0]};
    Hyperplane lower{IntVec{Int(-1)}, -pts[lo][0]};
    std::vector<Hyperplane> planes = {lower, upper};
    std::sort(planes.begin(), planes.end(), plane_less);
    for (const Hyperplane& h : planes) {
        res.facets.push_back(h);
        std::vector<int> on;
        for (int i = 0; i < (int)pts.size(); ++i)
            if (dot(h.normal, pts[i]) == h.offset) on.push_back(i);
        res.facet_points.push_back(std::move(on));
    }
    res.boundary.push_back({{lo}, lower});
    res.boundary.push_back({{hi}, upper});
    return res;
}

}  // namespace

HullResult convex_hull(const std::vector<RatVec>& pts) {
    if (pts.empty()) throw PreconditionUnmet("hull of empty point set");
    int d = (int)pts[0].size();
    for (const RatVec& p : pts)
        if ((int)p.size() != d) throw PreconditionUnmet("mixed point dimensions");
    if (affine_rank(pts) != d)
        throw PreconditionUnmet("point set does not span the ambient space");
    if (d == 1) return hull_1d(pts);

    // Keep one representative per distinct coordinate vector.
    std::vector<int> rep;
    {
        std::map<RatVec, int> seen;
        for (int i = 0; i < (int)pts.size(); ++i)
            if (seen.emplace(pts[i], i).second) rep.push_back(i);
    }
    std::vector<int> basis_local = affine_basis_indices([&] {
        std::vector<RatVec> r;
        for (int i : rep) r.push_back(pts[i]);
        return r;
    }());
    std::vector<int> basis;
    for (int b : basis_local) basis.push_back(rep[b]);
    assert((int)basis.size() == d + 1);

    RatVec interior(d, Rat(0));
    for (int b : basis) interior = add(interior, pts[b]);
    interior = scale(Rat(1, d + 1), interior);

    FastCtx fc = make_fast_ctx(pts, d);
    std::vector<long long> isum;
    if (fc.ok) {
        isum.assign(d, 0);
        for (int b : basis)
            for (int j = 0; j < d; ++j) isum[j] += fc.p64[b][j];
    }
    std::vector<WorkFacet> facets;
    auto add_facet = [&](std::vector<int> f) {
        WorkFacet w;
        if (!fc.ok || !plane64(fc, f, isum, w)) {
            auto [n, c] = oriented_plane(pts, f, interior);
            w.normal = std::move(n);
            w.offset = std::move(c);
            w.fast = make_fast(w.normal, w.offset, fc);
        }
        w.pts = std::move(f);
        facets.push_back(std::move(w));
    };
    for (int omit = 0; omit <= d; ++omit) {
        std::vector<int> f;
        for (int j = 0; j <= d; ++j)
            if (j != omit) f.push_back(basis[j]);
        std::sort(f.begin(), f.end());
        add_facet(std::move(f));
    }

    // Insertion order strongly affects how many transient facets get built;
    // a fixed pseudo-random order avoids the worst cases of structured input.
    // The output is canonical regardless of order, so this stays deterministic.
    std::mt19937_64 rng(0x6c617463ULL);
    for (size_t i = rep.size(); i > 1; --i)
        std::swap(rep[i - 1], rep[rng() % i]);

    std::vector<char> in_basis(pts.size(), 0);
    for (int b : basis) in_basis[b] = 1;
    for (int p : rep) {
        if (in_basis[p]) continue;
        std::vector<int> visible;
        for (int f = 0; f < (int)facets.size(); ++f) {
            const WorkFacet& w = facets[f];
            bool vis = w.fast.ok ? dot64(w.fast.n, fc.p64[p]) > w.fast.c
                                 : dot(w.normal, pts[p]) > w.offset;
            if (vis) visible.push_back(f);
        }
        if (visible.empty()) continue;
        // Horizon ridges appear in exactly one visible facet.
        std::map<std::vector<int>, int> ridge_count;
        for (int f : visible)
            for (int omit = 0; omit < d; ++omit) {
                std::vector<int> r;
                for (int j = 0; j < d; ++j)
                    if (j != omit) r.push_back(facets[f].pts[j]);
                ++ridge_count[r];
            }
        // Drop visible facets; descending order keeps the swap targets valid.
        for (int i = (int)visible.size() - 1; i >= 0; --i) {
            int f = visible[i];
            if (f != (int)facets.size() - 1) facets[f] = std::move(facets.back());
            facets.pop_back();
        }
        for (const auto& [ridge, cnt] : ridge_count) {
            if (cnt != 1) continue;
            std::vector<int> f = ridge;
            f.push_back(p);
            std::sort(f.begin(), f.end());
            add_facet(std::move(f));
        }
    }

    HullResult res;
    for (WorkFacet& f : facets)
        res.boundary.push_back({std::move(f.pts), {std::move(f.normal), std::move(f.offset)}});

    std::map<std::pair<IntVec, Rat>, int> plane_ids;
    for (const BoundarySimplex& b : res.boundary)
        plane_ids.emplace(std::make_pair(b.plane.normal, b.plane.offset), 0);
    for (auto& [key, id] : plane_ids) {
        id = (int)res.facets.size();
        res.facets.push_back({key.first, key.second});
        Fast64 fp = make_fast(key.first, key.second, fc);
        std::vector<int> on;
        for (int i = 0; i < (int)pts.size(); ++i) {
            bool hit = fp.ok ? dot64(fp.n, fc.p64[i]) == fp.c
                             : dot(key.first, pts[i]) == key.second;
            if (hit) on.push_back(i);
        }
        res.facet_points.push_back(std::move(on));
    }

    // A point is extreme when its active facet normals span the whole space.
    std::vector<Fast64> ff;
    for (const Hyperplane& h : res.facets) ff.push_back(make_fast(h.normal, h.offset, fc));
    std::map<RatVec, int> first_at;
    for (int i = 0; i < (int)pts.size(); ++i) first_at.emplace(pts[i], i);
    for (int i = 0; i < (int)pts.size(); ++i) {
        if (first_at[pts[i]] != i) continue;
        IntRowBasis rb;
        int rnk = 0;
        for (int k = 0; k < (int)res.facets.size() && rnk < d; ++k) {
            bool on = ff[k].ok ? dot64(ff[k].n, fc.p64[i]) == ff[k].c
                               : dot(res.facets[k].normal, pts[i]) == res.facets[k].offset;
            if (on && rb.add(res.facets[k].normal)) ++rnk;
        }
        if (rnk == d) res.vertices.push_back(i);
    }
    return res;
}

}  // namespace latcover
