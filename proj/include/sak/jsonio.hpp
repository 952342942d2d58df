#pragma once

// JSON parsing/serialization for every domain type, plus dot export.  All
// emitted JSON uses sorted keys and canonical orderings so outputs are
// byte-stable across runs.

#include "sak/annulus.hpp"
#include "sak/cuts.hpp"
#include "sak/equivalence.hpp"
#include "sak/grading.hpp"
#include "sak/moves.hpp"
#include "sak/quiver.hpp"
#include "sak/surface.hpp"

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <string>

namespace sak {

using json = nlohmann::ordered_json;

inline TriangulatedSurface surface_from_json(const json& j) {
    TriangulatedSurface s;
    s.name = j.value("name", "");
    for (const auto& a : j.at("arcs")) s.arcs.push_back(a.get<EdgeId>());
    for (const auto& b : j.at("boundary")) s.boundary_segments.push_back(b.get<EdgeId>());
    for (const auto& t : j.at("triangles")) {
        if (!t.is_array() || t.size() != 3)
            throw error("triangle entries must be 3-element arrays of edge labels");
        s.triangles.push_back({{t[0].get<EdgeId>(), t[1].get<EdgeId>(), t[2].get<EdgeId>()}});
    }
    return s;
}

inline json surface_to_json(const TriangulatedSurface& s) {
    json j;
    j["name"] = s.name;
    j["arcs"] = s.arcs;
    j["boundary"] = s.boundary_segments;
    json ts = json::array();
    for (const auto& t : s.triangles) ts.push_back({t.sides[0], t.sides[1], t.sides[2]});
    j["triangles"] = ts;
    return j;
}

// Accepts both cut spellings: arrow pairs [["i","j"],...] and explicit
// corners [{"triangle":t,"corner":k},...].
inline AdmissibleCut cut_from_json(const TriangulatedSurface& s, const json& j) {
    const json& cs = j.at("cuts");
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    std::vector<std::pair<TriangleId, int>> corners;
    for (const auto& e : cs) {
        if (e.is_array() && e.size() == 2)
            pairs.push_back({e[0].get<EdgeId>(), e[1].get<EdgeId>()});
        else if (e.is_object())
            corners.push_back({e.at("triangle").get<TriangleId>(), e.at("corner").get<int>()});
        else
            throw error("cut entries must be [source, target] pairs or {triangle, corner}");
    }
    if (!pairs.empty() && !corners.empty())
        throw error("cut file mixes arrow-pair and triangle-corner entries");
    return pairs.empty() ? cut_from_corners(s, corners) : cut_from_arrow_pairs(s, pairs);
}

inline json cut_to_json(const AdmissibleCut& c) {
    json arr = json::array();
    for (const auto& [t, lc] : c.locals) {
        json e;
        e["triangle"] = t;
        e["corner"] = lc.corner;
        e["removes"] = lc.removed_arrow;
        e["source_arc"] = lc.source_arc;
        e["target_arc"] = lc.target_arc;
        e["marked_point"] = lc.marked_point;
        arr.push_back(e);
    }
    return json{{"cuts", arr}};
}

inline json quiver_to_json(const QuiverWithRelations& q) {
    json j;
    j["vertices"] = q.quiver.vertices;
    json as = json::array();
    for (const auto& a : q.quiver.arrows) as.push_back({{"id", a.id}, {"from", a.from}, {"to", a.to}});
    j["arrows"] = as;
    json rs = json::array();
    for (const auto& r : q.relations) rs.push_back({r.first, r.second});
    j["relations"] = rs;
    return j;
}

inline QuiverWithRelations quiver_from_json(const json& j) {
    QuiverWithRelations q;
    for (const auto& v : j.at("vertices")) q.quiver.vertices.push_back(v.get<VertexId>());
    for (const auto& a : j.at("arrows"))
        q.quiver.arrows.push_back(
            {a.at("id").get<ArrowId>(), a.at("from").get<VertexId>(), a.at("to").get<VertexId>()});
    if (j.contains("relations"))
        for (const auto& r : j.at("relations"))
            q.relations.push_back({r.at(0).get<ArrowId>(), r.at(1).get<ArrowId>()});
    std::sort(q.relations.begin(), q.relations.end());
    for (const auto& r : q.relations)
        if (q.quiver.arrow(r.first).to != q.quiver.arrow(r.second).from)
            throw error("relation " + r.first + "*" + r.second + " is not a length-2 path");
    return q;
}

inline json report_to_json(const ValidationReport& r) {
    json j;
    j["pass"] = r.pass;
    j["errors"] = r.errors;
    j["V"] = r.V;
    j["E"] = r.E;
    j["F"] = r.F;
    j["euler"] = r.euler;
    j["genus"] = r.genus;
    j["boundary_components"] = r.boundary_components;
    j["marked_points"] = r.marked_points;
    j["arcs"] = r.arc_count;
    j["small_disc"] = r.small_disc;
    return j;
}

inline json distribution_to_json(const CutDistribution& d) {
    json j = json::object();
    for (const auto& [b, n] : d.counts) j[std::to_string(b)] = n;
    return j;
}

inline json labeling_to_json(const LevelLabeling& lab) {
    json j;
    json r = json::object();
    for (const auto& [v, x] : lab.r) r[v] = x;
    j["r"] = r;
    json levels = json::array();
    for (const auto& comp : lab.components) levels.push_back(comp);
    j["levels"] = levels;
    return j;
}

inline json conflict_to_json(const ConflictWitness& w) {
    json j;
    j["cycle"] = w.cycle;
    json walk = json::array();
    for (const auto& st : w.walk) walk.push_back({{"arrow", st.first}, {"forward", st.second}});
    j["walk"] = walk;
    j["discrepancy"] = w.discrepancy;
    return j;
}

inline json window_to_json(const CoveringWindow& w) {
    json j;
    j["lo"] = w.lo;
    j["hi"] = w.hi;
    json vs = json::array();
    for (const auto& v : w.vertices) vs.push_back({{"vertex", v.v}, {"level", v.level}});
    j["vertices"] = vs;
    json as = json::array();
    for (const auto& a : w.arrows)
        as.push_back({{"base", a.base},
                      {"from", a.from},
                      {"from_level", a.from_level},
                      {"to", a.to},
                      {"to_level", a.to_level},
                      {"bridge", a.bridge}});
    j["arrows"] = as;
    json rs = json::array();
    for (const auto& r : w.relations) rs.push_back({r.first, r.second});
    j["relations"] = rs;
    return j;
}

inline json automorphism_to_json(const QuiverAutomorphism& f) {
    json vm = json::object();
    for (const auto& [v, w] : f.vertex_map) vm[v] = w;
    json am = json::object();
    for (const auto& [a, b] : f.arrow_map) am[a] = b;
    return json{{"vertex_map", vm}, {"arrow_map", am}, {"identity", f.is_identity()}};
}

inline json equivalence_to_json(const DerivedEquivResult& r) {
    json j;
    j["found"] = r.certificate.has_value();
    if (r.certificate) {
        const auto& c = *r.certificate;
        j["direction"] = c.direction;
        j["automorphism"] = automorphism_to_json(c.f);
        j["labeling"] = labeling_to_json(c.labeling);
        json tilt = json::object();
        for (const auto& [v, x] : c.tilting) tilt[v] = x;
        j["tilting"] = tilt;
    }
    j["automorphisms_tried"] = r.automorphisms_tried;
    j["distribution1"] = distribution_to_json(r.dist1);
    j["distribution2"] = distribution_to_json(r.dist2);
    return j;
}

namespace detail {

inline std::string fnv1a_digest(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace detail

inline std::string quiver_digest(const QuiverWithRelations& q) {
    return detail::fnv1a_digest(canonical_key(q));
}

inline json plan_to_json(const PlanResult& r) {
    json j;
    j["found"] = r.plan.has_value();
    j["states_expanded"] = r.states_expanded;
    j["depth_reached"] = r.depth_reached;
    j["depth_limit"] = r.depth_limit;
    if (!r.warning.empty()) j["warning"] = r.warning;
    if (r.plan) {
        const auto& p = *r.plan;
        json moves = json::array();
        QuiverWithRelations q = apply_cut(p.start_surface, p.start_cut);
        for (const auto& m : p.moves) {
            q = m.kind == MoveKind::reflect ? reflect(q, m.vertex) : coreflect(q, m.vertex);
            moves.push_back({{"vertex", m.vertex},
                             {"kind", m.kind == MoveKind::reflect ? "reflect" : "coreflect"},
                             {"digest", quiver_digest(q)}});
        }
        j["moves"] = moves;
        j["end"] = quiver_to_json(p.certified_end);
    }
    return j;
}

inline json dict_to_json(const DictResult& r) {
    json j;
    j["found"] = r.witness.has_value();
    j["cuts_tried"] = r.cuts_tried;
    j["target"] = quiver_to_json(r.target);
    if (r.witness) {
        const auto& w = *r.witness;
        json mb = json::array();
        for (const auto& a : w.mutated_base.arrows)
            mb.push_back({{"id", a.id}, {"from", a.from}, {"to", a.to}});
        j["mutated_base"] = mb;
        j["flipped"] = surface_to_json(w.flipped);
        j["cut"] = cut_to_json(w.cut);
        j["matched"] = quiver_to_json(w.matched);
        if (w.iso) j["isomorphism"] = automorphism_to_json(*w.iso);
    }
    return j;
}

// Graphviz export: one node per vertex, solid arrows, relations listed as a
// graph label (pairs of arrow ids).
inline std::string quiver_to_dot(const QuiverWithRelations& q, const std::string& name = "Q") {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    auto vs = q.quiver.vertices;
    std::sort(vs.begin(), vs.end());
    for (const auto& v : vs) os << "  \"" << v << "\";\n";
    for (const auto& a : q.quiver.arrows)
        os << "  \"" << a.from << "\" -> \"" << a.to << "\" [label=\"" << a.id << "\"];\n";
    if (!q.relations.empty()) {
        os << "  label=\"relations:";
        for (const auto& r : q.relations) os << " " << r.first << "*" << r.second;
        os << "\";\n";
    }
    os << "}\n";
    return os.str();
}

inline std::string window_to_dot(const CoveringWindow& w) {
    auto nm = [](const VertexId& v, int lvl) { return v + "@" + std::to_string(lvl); };
    std::ostringstream os;
    os << "digraph \"covering\" {\n";
    for (const auto& v : w.vertices) os << "  \"" << nm(v.v, v.level) << "\";\n";
    for (const auto& a : w.arrows)
        os << "  \"" << nm(a.from, a.from_level) << "\" -> \"" << nm(a.to, a.to_level)
           << "\" [label=\"" << a.base << "\"" << (a.bridge ? ", style=bold, color=red" : "")
           << "];\n";
    os << "}\n";
    return os.str();
}

}  // namespace sak
