#include "latcover/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latcover/corpus.hpp"
#include "latcover/errors.hpp"
#include "latcover/json_io.hpp"
#include "latcover/normality.hpp"

namespace latcover {

namespace {

enum class Status { ok, fail, error };

struct Result {
    Status status = Status::ok;
    Json payload = Json::object();
    std::vector<std::string> diagnostics;
};

Json read_input(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) throw PreconditionUnmet("cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw PreconditionUnmet(std::string("malformed JSON: ") + e.what());
    }
}

const char* status_name(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::fail: return "fail";
        default: return "error";
    }
}

void emit(const Result& r, const std::string& format) {
    if (format == "summary") {
        std::cout << status_name(r.status);
        if (r.payload.is_object())
            for (const auto& [k, v] : r.payload.items())
                if (v.is_primitive()) std::cout << " " << k << "=" << v.dump();
        std::cout << "\n";
        for (const std::string& d : r.diagnostics) std::cout << "  " << d << "\n";
        return;
    }
    Json env{{"status", status_name(r.status)},
             {"payload", r.payload},
             {"diagnostics", r.diagnostics}};
    std::cout << env.dump(2) << "\n";
}

// polytope input: accepts {"vertices"| "points", "lattice"?}
LatticePolytope polytope_input(const Json& j) {
    if (j.is_object() && j.contains("points") && !j.contains("vertices")) {
        Json alias = j;
        alias["vertices"] = alias["points"];
        alias.erase("points");
        return polytope_from_json(alias);
    }
    return polytope_from_json(j);
}

AffineLattice lattice_or_standard(const Json& j, int dim) {
    if (j.is_object() && j.contains("lattice")) return lattice_from_json(j["lattice"]);
    return AffineLattice::standard(dim);
}

Result cmd_hilbert_basis(const Json& in) {
    RationalCone c = cone_from_json(in);
    Json basis = Json::array();
    for (const IntVec& h : c.hilbert_basis()) basis.push_back(to_json(h));
    return {Status::ok,
            Json{{"basis", std::move(basis)}, {"count", c.hilbert_basis().size()}},
            {}};
}

Result cmd_sebo_triangulate(const Json& in) {
    RationalCone c = cone_from_json(in);
    SeboTriangulation t = sebo_triangulation(c);
    std::vector<IntVec> rays;
    for (const RationalCone& piece : t.pieces)
        for (const IntVec& r : piece.rays()) rays.push_back(r);
    std::sort(rays.begin(), rays.end(), LexLess{});
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    std::vector<std::vector<size_t>> tris;
    for (const RationalCone& piece : t.pieces) {
        std::vector<size_t> idx;
        for (const IntVec& r : piece.rays())
            idx.push_back(std::lower_bound(rays.begin(), rays.end(), r, LexLess{}) -
                          rays.begin());
        std::sort(idx.begin(), idx.end());
        tris.push_back(std::move(idx));
    }
    std::sort(tris.begin(), tris.end());
    Json jr = Json::array();
    for (const IntVec& r : rays) jr.push_back(to_json(r));
    return {Status::ok,
            Json{{"rays", std::move(jr)},
                 {"triangles", Json(tris)},
                 {"pieces", t.pieces.size()}},
            {}};
}

Result cmd_is_normal(const Json& in) {
    LatticePolytope p = polytope_input(in);
    NormalityReport r = is_normal(p);
    if (r.is_normal) return {Status::ok, Json{{"normal", true}}, {}};
    return {Status::fail,
            Json{{"normal", false}, {"c", r.c}, {"x", to_json(r.x)}},
            {"dilate point admits no decomposition"}};
}

Result cmd_is_very_ample(const Json& in) {
    LatticePolytope p = polytope_input(in);
    VeryAmpleReport r = is_very_ample(p);
    if (r.very_ample) return {Status::ok, Json{{"very_ample", true}}, {}};
    return {Status::fail,
            Json{{"very_ample", false},
                 {"vertex", to_json(r.vertex)},
                 {"element", to_json(r.element)}},
            {"corner cone Hilbert basis element escapes the polytope"}};
}

Result cmd_gp(const Json& in) {
    LatticePolytope p = polytope_input(in);
    DifferenceGroup g = difference_group(p);
    Json basis = Json::array();
    for (const IntVec& b : g.basis) basis.push_back(to_json(b));
    return {Status::ok,
            Json{{"basis", std::move(basis)},
                 {"rank", g.basis.size()},
                 {"ambient_dim", g.ambient_dim},
                 {"direct_summand", spans_direct_summand(g)},
                 {"index_in_saturation", to_json(index_in_saturation(g))}},
            {}};
}

Result cmd_ellipsoid_points(const Json& in, bool surface) {
    Ellipsoid e = ellipsoid_from_json(in);
    AffineLattice l = lattice_or_standard(in, (int)e.center.size());
    std::vector<RatVec> pts = ellipsoid_lattice_points(e, l, !surface);
    Json jp = Json::array();
    for (const RatVec& p : pts) jp.push_back(to_json(p));
    return {Status::ok, Json{{"points", std::move(jp)}, {"count", pts.size()}}, {}};
}

Result cmd_hull(const Json& in) {
    LatticePolytope p = polytope_input(in);
    std::vector<const PolyFacet*> facets;
    for (const PolyFacet& f : p.facets()) facets.push_back(&f);
    std::sort(facets.begin(), facets.end(), [](const PolyFacet* a, const PolyFacet* b) {
        return lex_less(a->normal, b->normal) ||
               (a->normal == b->normal && a->offset < b->offset);
    });
    Json jf = Json::array();
    for (const PolyFacet* f : facets) jf.push_back(to_json(*f));
    return {Status::ok,
            Json{{"polytope", to_json(p)},
                 {"dim", p.dim()},
                 {"facets", std::move(jf)},
                 {"lattice_point_count", p.lattice_points_sec().size()}},
            {}};
}

Result cmd_boundary_cover(const Json& in) {
    LatticePolytope p = polytope_input(in);
    VeryAmpleReport va = is_very_ample(p);
    if (!va.very_ample)
        return {Status::fail,
                Json{{"very_ample", false},
                     {"vertex", to_json(va.vertex)},
                     {"element", to_json(va.element)}},
                {"polytope is not very ample"}};
    UnimodularCover c = boundary_cover(p);
    bool verified = true;
    for (const Simplex& s : c.simplices) {
        if (!is_unimodular_simplex(s.verts)) verified = false;
        for (const IntVec& v : s.verts)
            if (!p.contains_lat(v)) verified = false;
    }
    return {verified ? Status::ok : Status::fail, cover_to_json(c, verified), {}};
}

Result cmd_cover_ellipsoid3(const Json& in, const std::string& method) {
    Ellipsoid e = ellipsoid_from_json(in);
    UnimodularCover c =
        method == "symmetric" ? symmetric_cover_3d(e) : ellipsoid_cover_3d(e);
    bool verified = verify_cover(c.target, c.simplices).covered;
    return {verified ? Status::ok : Status::fail, cover_to_json(c, verified), {}};
}

Result cmd_verify_cover(const Json& in, const std::string& method) {
    auto [target, sims] = cover_from_json(in);
    CoverVerdict v = verify_cover(target, sims, method);
    Json payload{{"covered", v.covered}, {"method", v.method}};
    if (v.covered) return {Status::ok, std::move(payload), {}};
    if (v.witness) {
        payload["witness"] = to_json(*v.witness);
        return {Status::fail, std::move(payload), {"witness point is uncovered"}};
    }
    payload["unresolved"] = true;
    return {Status::fail, std::move(payload),
            {"subdivision depth exhausted before a verdict"}};
}

Result cmd_peel_chain(const Json& in) {
    EllipsoidalSet s = in.is_object() && in.contains("certificate")
                           ? eset_from_json(in)
                           : [&] {
                                 Ellipsoid e = ellipsoid_from_json(in);
                                 return make_ellipsoidal_set(
                                     e, lattice_or_standard(in, (int)e.center.size()));
                             }();
    std::vector<EllipsoidalSet> chain = descent_chain(s);
    Json jc = Json::array();
    Json sizes = Json::array();
    for (const EllipsoidalSet& x : chain) {
        jc.push_back(to_json(x));
        sizes.push_back(x.points.size());
    }
    return {Status::ok,
            Json{{"chain", std::move(jc)}, {"sizes", std::move(sizes)}},
            {}};
}

Result cmd_build_qd(int d) {
    QdFamily f = build_qd_family(d);
    LatticePolytope delta =
        LatticePolytope::from_lattice_coords(f.delta.verts, f.lambda);
    Json dv = Json::array();
    for (const IntVec& v : f.delta.verts) dv.push_back(to_json(v));
    return {Status::ok,
            Json{{"d", d},
                 {"lattice", to_json(f.lambda)},
                 {"p_point_count", f.p.lattice_points_sec().size()},
                 {"q_point_count", f.q.lattice_points_sec().size()},
                 {"q_facet_count", f.q.facets().size()},
                 {"delta_vertices", std::move(dv)},
                 {"delta_lattice_point_count", delta.lattice_points_sec().size()},
                 {"beta", to_json(f.beta)}},
            {}};
}

Result cmd_verify_counterexample(int d) {
    CounterexampleReport r = verify_counterexample(d);
    Json payload{{"d", r.d},
                 {"point_count", r.point_count},
                 {"target", to_json(r.target)},
                 {"target_in_dilate", r.target_in_dilate},
                 {"representable", !r.no_short_representation},
                 {"gp_is_whole_lattice", r.gp_is_whole_lattice},
                 {"normal", r.normality.is_normal},
                 {"ok", r.ok}};
    if (!r.normality.is_normal) {
        payload["witness_c"] = r.normality.c;
        payload["witness_x"] = to_json(r.normality.x);
    }
    if (r.ok) return {Status::ok, std::move(payload), {}};
    return {Status::fail, std::move(payload), {"counterexample did not verify"}};
}

Result cmd_stack(const Json& in, const std::string& b_text) {
    Rat b(b_text);
    b.canonicalize();
    EllipsoidalSet s = in.is_object() && in.contains("certificate")
                           ? eset_from_json(in)
                           : [&] {
                                 Ellipsoid e = ellipsoid_from_json(in);
                                 return make_ellipsoidal_set(
                                     e, lattice_or_standard(in, (int)e.center.size()));
                             }();
    EllipsoidalSet up = stack(s, b);
    return {Status::ok,
            Json{{"set", to_json(up)},
                 {"dim", up.points.empty() ? 0 : up.points[0].size()},
                 {"point_count", up.points.size()}},
            {}};
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"exact lattice-polytope, cone and unimodular-cover toolkit"};
    app.require_subcommand(1);
    std::string format = "json";
    unsigned seed = 0;
    int jobs = 1;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "summary"}));
    app.add_option("--seed", seed, "seed for randomized generators");
    app.add_option("--jobs", jobs, "worker cap")->check(CLI::PositiveNumber);

    struct Sub {
        CLI::App* cmd = nullptr;
        std::string input = "-";
    };
    auto add_sub = [&](const char* name, const char* desc, bool takes_input = true) {
        Sub s;
        s.cmd = app.add_subcommand(name, desc);
        s.cmd->fallthrough();
        if (takes_input)
            s.cmd->add_option("input", s.input, "input file, or - for stdin");
        return s;
    };

    Sub hilbert = add_sub("hilbert-basis", "Hilbert basis of a pointed cone");
    Sub sebo = add_sub("sebo-triangulate",
                       "unimodular Hilbert triangulation of a 3-cone");
    Sub isnormal = add_sub("is-normal", "decide normality of a lattice polytope");
    Sub isva = add_sub("is-very-ample", "decide very-ampleness of a lattice polytope");
    Sub gp = add_sub("gp", "difference group of a lattice polytope");
    Sub epts = add_sub("ellipsoid-points", "lattice points of an ellipsoid");
    bool surface = false;
    epts.cmd->add_flag("--surface", surface, "surface points only");
    Sub hull = add_sub("hull", "lattice-point hull with facet description");
    Sub bcover = add_sub("boundary-cover",
                         "unimodular cover of a boundary neighborhood");
    Sub ecover = add_sub("cover-ellipsoid3",
                         "full unimodular cover of a 3D ellipsoid hull");
    std::string method = "chain";
    ecover.cmd->add_option("--method", method, "chain or symmetric")
        ->check(CLI::IsMember({"chain", "symmetric"}));
    Sub vcover = add_sub("verify-cover", "exact coverage check of a simplex list");
    std::string vmethod = "auto";
    vcover.cmd->add_option("--method", vmethod, "arrangement, subdivision or auto")
        ->check(CLI::IsMember({"arrangement", "subdivision", "auto"}));
    Sub peel = add_sub("peel-chain", "extremal-point descent chain of an ellipsoid");
    Sub qd = add_sub("build-qd", "half-integer lattice ball family", false);
    int qd_d = 6;
    qd.cmd->add_option("--d", qd_d, "dimension")->required();
    Sub cex = add_sub("verify-counterexample",
                      "verify the non-normal ellipsoidal polytope", false);
    int cex_d = 6;
    cex.cmd->add_option("--d", cex_d, "even dimension >= 6")->required();
    Sub stk = add_sub("stack", "lift an ellipsoidal set one dimension up");
    std::string b_text = "1";
    stk.cmd->add_option("--b", b_text, "stacking parameter, rational in (1/2, 3/2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Result r;
    try {
        if (hilbert.cmd->parsed())
            r = cmd_hilbert_basis(read_input(hilbert.input));
        else if (sebo.cmd->parsed())
            r = cmd_sebo_triangulate(read_input(sebo.input));
        else if (isnormal.cmd->parsed())
            r = cmd_is_normal(read_input(isnormal.input));
        else if (isva.cmd->parsed())
            r = cmd_is_very_ample(read_input(isva.input));
        else if (gp.cmd->parsed())
            r = cmd_gp(read_input(gp.input));
        else if (epts.cmd->parsed())
            r = cmd_ellipsoid_points(read_input(epts.input), surface);
        else if (hull.cmd->parsed())
            r = cmd_hull(read_input(hull.input));
        else if (bcover.cmd->parsed())
            r = cmd_boundary_cover(read_input(bcover.input));
        else if (ecover.cmd->parsed())
            r = cmd_cover_ellipsoid3(read_input(ecover.input), method);
        else if (vcover.cmd->parsed())
            r = cmd_verify_cover(read_input(vcover.input), vmethod);
        else if (peel.cmd->parsed())
            r = cmd_peel_chain(read_input(peel.input));
        else if (qd.cmd->parsed())
            r = cmd_build_qd(qd_d);
        else if (cex.cmd->parsed())
            r = cmd_verify_counterexample(cex_d);
        else if (stk.cmd->parsed())
            r = cmd_stack(read_input(stk.input), b_text);
    } catch (const std::exception& e) {
        r = {Status::error, Json::object(), {e.what()}};
    }
    emit(r, format);
    switch (r.status) {
        case Status::ok: return 0;
        case Status::fail: return 1;
        default: return 2;
    }
}

}  // namespace latcover
