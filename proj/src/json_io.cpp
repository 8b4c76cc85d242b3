#include "latcover/json_io.hpp"

#include <algorithm>
#include <map>

#include "latcover/errors.hpp"

namespace latcover {

namespace {

[[noreturn]] void bad(const std::string& what) { throw PreconditionUnmet("bad JSON: " + what); }

}  // namespace

Json to_json(const Rat& x) { return x.get_str(); }

Json to_json(const Int& x) { return x.get_str(); }

Json to_json(const RatVec& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const IntVec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const RatMat& m) {
    Json a = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(to_json(m.at(i, j)));
        a.push_back(std::move(row));
    }
    return a;
}

Json to_json(const AffineLattice& l) {
    return Json{{"basis", to_json(l.basis())}, {"shift", to_json(l.shift())}};
}

Json to_json(const LatticePolytope& p) {
    Json verts = Json::array();
    std::vector<RatVec> vs;
    for (const IntVec& v : p.vertices_sec()) vs.push_back(p.sec_to_ambient(to_rat(v)));
    std::sort(vs.begin(), vs.end(), LexLess{});
    for (const RatVec& v : vs) verts.push_back(to_json(v));
    return Json{{"lattice", to_json(p.lattice())}, {"vertices", std::move(verts)}};
}

Json to_json(const PolyFacet& f) {
    return Json{{"normal", to_json(f.normal)}, {"offset", to_json(f.offset)}};
}

Json to_json(const RationalCone& c) {
    Json rays = Json::array();
    for (const IntVec& r : c.rays()) rays.push_back(to_json(r));
    return Json{{"lattice", to_json(c.lattice())}, {"rays", std::move(rays)}};
}

Json to_json(const Ellipsoid& e) {
    return Json{{"A", to_json(e.a)}, {"center", to_json(e.center)}};
}

Json to_json(const EllipsoidalSet& s) {
    Json pts = Json::array();
    for (const RatVec& p : s.points) pts.push_back(to_json(p));
    return Json{{"certificate", to_json(s.certificate)},
                {"lattice", to_json(s.lattice)},
                {"points", std::move(pts)}};
}

Json cover_to_json(const UnimodularCover& c, bool verified) {
    std::map<IntVec, int, LexLess> index;
    for (const Simplex& s : c.simplices)
        for (const IntVec& v : s.verts) index.emplace(v, 0);
    int next = 0;
    for (auto& [v, i] : index) i = next++;
    Json pts = Json::array();
    for (const auto& [v, i] : index) pts.push_back(to_json(v));
    std::vector<std::vector<int>> sims;
    for (const Simplex& s : c.simplices) {
        std::vector<int> idx;
        for (const IntVec& v : s.verts) idx.push_back(index.at(v));
        std::sort(idx.begin(), idx.end());
        sims.push_back(std::move(idx));
    }
    std::sort(sims.begin(), sims.end());
    return Json{{"target", to_json(c.target)},
                {"points", std::move(pts)},
                {"simplices", Json(sims)},
                {"scope", c.scope},
                {"verified", verified}};
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat((long)j.get<long long>());
    if (!j.is_string()) bad("expected a rational string");
    try {
        Rat r(j.get<std::string>());
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        bad("unparsable rational " + j.get<std::string>());
    }
}

Int int_from_json(const Json& j) {
    Rat r = rat_from_json(j);
    if (!is_integer(r)) bad("expected an integer, got " + r.get_str());
    return r.get_num();
}

RatVec ratvec_from_json(const Json& j) {
    if (!j.is_array()) bad("expected an array of rationals");
    RatVec v;
    for (const Json& x : j) v.push_back(rat_from_json(x));
    return v;
}

IntVec intvec_from_json(const Json& j) {
    if (!j.is_array()) bad("expected an array of integers");
    IntVec v;
    for (const Json& x : j) v.push_back(int_from_json(x));
    return v;
}

RatMat ratmat_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) bad("expected a matrix");
    RatMat m((int)j.size(), (int)j[0].size());
    for (int i = 0; i < m.rows; ++i) {
        if ((int)j[i].size() != m.cols) bad("ragged matrix");
        for (int k = 0; k < m.cols; ++k) m.at(i, k) = rat_from_json(j[i][k]);
    }
    return m;
}

AffineLattice lattice_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("basis") || !j.contains("shift"))
        bad("lattice needs basis and shift");
    return AffineLattice(ratmat_from_json(j["basis"]), ratvec_from_json(j["shift"]));
}

LatticePolytope polytope_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vertices")) bad("polytope needs vertices");
    std::vector<RatVec> pts;
    for (const Json& v : j["vertices"]) pts.push_back(ratvec_from_json(v));
    if (pts.empty()) bad("polytope needs at least one vertex");
    AffineLattice l = j.contains("lattice") ? lattice_from_json(j["lattice"])
                                            : AffineLattice::standard((int)pts[0].size());
    return LatticePolytope::from_points(pts, l);
}

RationalCone cone_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rays")) bad("cone needs rays");
    std::vector<IntVec> rays;
    for (const Json& r : j["rays"]) rays.push_back(intvec_from_json(r));
    if (rays.empty()) bad("cone needs at least one ray");
    AffineLattice l = j.contains("lattice") ? lattice_from_json(j["lattice"])
                                            : AffineLattice::standard((int)rays[0].size());
    return RationalCone::from_rays(std::move(l), rays);
}

Ellipsoid ellipsoid_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("A") || !j.contains("center"))
        bad("ellipsoid needs A and center");
    return Ellipsoid::make(ratmat_from_json(j["A"]), ratvec_from_json(j["center"]));
}

EllipsoidalSet eset_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("certificate")) bad("set needs a certificate");
    Ellipsoid e = ellipsoid_from_json(j["certificate"]);
    AffineLattice l = j.contains("lattice")
                          ? lattice_from_json(j["lattice"])
                          : AffineLattice::standard((int)e.center.size());
    EllipsoidalSet s = make_ellipsoidal_set(e, l);
    if (j.contains("points")) {
        std::vector<RatVec> pts;
        for (const Json& p : j["points"]) pts.push_back(ratvec_from_json(p));
        std::sort(pts.begin(), pts.end(), LexLess{});
        if (pts != s.points) bad("advertised points do not match the certificate");
    }
    return s;
}

std::pair<LatticePolytope, std::vector<Simplex>> cover_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("target") || !j.contains("points") ||
        !j.contains("simplices"))
        bad("cover needs target, points and simplices");
    LatticePolytope target = polytope_from_json(j["target"]);
    std::vector<IntVec> pts;
    for (const Json& p : j["points"]) pts.push_back(intvec_from_json(p));
    std::vector<Simplex> sims;
    for (const Json& s : j["simplices"]) {
        Simplex sx;
        for (const Json& ij : s) {
            long long i = ij.is_number_integer() ? ij.get<long long>()
                                                 : int_from_json(ij).get_si();
            if (i < 0 || i >= (long long)pts.size()) bad("simplex index out of range");
            sx.verts.push_back(pts[i]);
        }
        sims.push_back(std::move(sx));
    }
    return {std::move(target), std::move(sims)};
}

}  // namespace latcover
