#include "latcover/normality.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "latcover/errors.hpp"
#include "latcover/linalg.hpp"

namespace latcover {

NormalityReport is_normal(const LatticePolytope& p) {
    NormalityReport rep;
    if (p.dim() <= 0) return rep;

    std::vector<IntVec> gens;
    for (const IntVec& s : p.lattice_points_sec()) gens.push_back(p.sec_to_lat(s));

    // Level-by-level: once every point of (c-1)P decomposes, x in cP
    // decomposes iff x - g lies in (c-1)P for some generator g.
    std::set<IntVec, LexLess> prev(gens.begin(), gens.end());
    int cmax = std::max(2, p.dim() - 1);
    for (int c = 2; c <= cmax; ++c) {
        LatticePolytope cp = p.dilate(c);
        std::set<IntVec, LexLess> cur;
        for (const IntVec& s : cp.lattice_points_sec()) {
            IntVec x = cp.sec_to_lat(s);
            bool ok = false;
            for (const IntVec& g : gens)
                if (prev.count(sub(x, g))) {
                    ok = true;
                    break;
                }
            if (!ok) {
                rep.is_normal = false;
                rep.c = c;
                rep.x = p.lattice().from_int_coords(x);
                return rep;
            }
            cur.insert(std::move(x));
        }
        prev = std::move(cur);
    }
    return rep;
}

bool is_elementary_relation(const LatticePolytope& q, const LatticePolytope& p) {
    if (!q.lattice().same_lattice(p.lattice()))
        throw PreconditionUnmet("polytopes live over different lattices");
    for (const IntVec& v : q.vertices_lat())
        if (!p.contains_lat(v)) return false;
    return p.lattice_points_sec().size() == q.lattice_points_sec().size() + 1;
}

std::vector<Simplex> pyramid_cover_lift(const std::vector<Simplex>& base_cover,
                                        const LatticePolytope& p,
                                        const IntVec& apex) {
    std::vector<IntVec> base_verts;
    bool apex_seen = false;
    for (const IntVec& v : p.vertices_lat()) {
        if (v == apex)
            apex_seen = true;
        else
            base_verts.push_back(v);
    }
    if (!apex_seen || base_verts.empty())
        throw NotUnimodularPyramid("apex is not a vertex of the pyramid");
    LatticePolytope base =
        LatticePolytope::from_lattice_coords(base_verts, p.lattice());
    IntVec found;
    if (!is_unimodular_pyramid(p, base, &found) || found != apex)
        throw NotUnimodularPyramid("polytope is not a height-1 pyramid over its base");

    std::vector<Simplex> out;
    out.reserve(base_cover.size());
    for (const Simplex& s : base_cover) {
        Simplex t = s;
        for (const IntVec& v : t.verts)
            if (!base.contains_lat(v))
                throw NotUnimodularPyramid("cover simplex leaves the base");
        t.verts.push_back(apex);
        if (!is_unimodular_simplex(t.verts))
            throw NotUnimodularPyramid("lifted simplex is not unimodular");
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace latcover
