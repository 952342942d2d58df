#pragma once

// Quivers with length-two relations.  Arrows carry stable string ids:
// "t<T>.<K>" for the arrow at corner K of triangle T, synthetic ids
// otherwise.  A relation (first, second) is the composable path
// first-then-second, i.e. target(first) = source(second).

#include "sak/surface.hpp"

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace sak {

using VertexId = std::string;
using ArrowId = std::string;

struct Arrow {
    ArrowId id;
    VertexId from, to;
};

struct Relation {
    ArrowId first, second;
    friend auto operator<=>(const Relation&, const Relation&) = default;
};

struct Quiver {
    std::vector<VertexId> vertices;
    std::vector<Arrow> arrows;

    const Arrow& arrow(const ArrowId& id) const {
        for (const auto& a : arrows)
            if (a.id == id) return a;
        throw error("unknown arrow id " + id);
    }
    bool has_vertex(const VertexId& v) const {
        return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
    }
};

struct QuiverWithRelations {
    Quiver quiver;
    std::vector<Relation> relations;

    bool in_relations(const ArrowId& a, const ArrowId& b) const {
        for (const auto& r : relations)
            if (r.first == a && r.second == b) return true;
        return false;
    }
};

inline ArrowId corner_arrow_id(TriangleId t, int corner) {
    return "t" + std::to_string(t) + "." + std::to_string(corner);
}

// Vertices = arcs; one arrow per triangle corner flanked by two arcs, running
// side[k] -> side[k+1]; relations = the three consecutive arrow pairs of each
// internal triangle's 3-cycle.
inline QuiverWithRelations quiver_of(const TriangulatedSurface& s) {
    QuiverWithRelations q;
    q.quiver.vertices = s.arcs;
    std::sort(q.quiver.vertices.begin(), q.quiver.vertices.end());
    for (TriangleId t = 0; t < static_cast<TriangleId>(s.triangles.size()); ++t) {
        const auto& sides = s.triangles[t].sides;
        for (int k = 0; k < 3; ++k) {
            const EdgeId& a = sides[k];
            const EdgeId& b = sides[(k + 1) % 3];
            if (s.is_arc(a) && s.is_arc(b))
                q.quiver.arrows.push_back({corner_arrow_id(t, k), a, b});
        }
        if (triangle_type(s, t) == TriangleType::internal)
            for (int k = 0; k < 3; ++k)
                q.relations.push_back({corner_arrow_id(t, k), corner_arrow_id(t, (k + 1) % 3)});
    }
    return q;
}

struct GentleViolation {
    int condition;  // 1..4
    std::string witness;
};

struct GentleReport {
    bool pass = true;
    std::vector<GentleViolation> violations;
    void fail(int c, std::string w) {
        pass = false;
        violations.push_back({c, std::move(w)});
    }
};

// The four gentle conditions: (1) at most two arrows in and out of each
// vertex; (2) at most one non-relation predecessor/successor per arrow;
// (3) relations are composable length-2 pairs; (4) at most one relation
// predecessor/successor per arrow.
inline GentleReport is_gentle(const QuiverWithRelations& qr) {
    GentleReport rep;
    const auto& q = qr.quiver;
    std::map<VertexId, int> indeg, outdeg;
    for (const auto& a : q.arrows) {
        ++outdeg[a.from];
        ++indeg[a.to];
    }
    for (const auto& v : q.vertices) {
        if (indeg[v] > 2) rep.fail(1, "vertex " + v + " has in-degree " + std::to_string(indeg[v]));
        if (outdeg[v] > 2)
            rep.fail(1, "vertex " + v + " has out-degree " + std::to_string(outdeg[v]));
    }
    for (const auto& r : qr.relations) {
        const Arrow &a = q.arrow(r.first), &b = q.arrow(r.second);
        if (a.to != b.from)
            rep.fail(3, "relation (" + r.first + "," + r.second + ") is not composable");
    }
    for (const auto& b : q.arrows) {
        int pred_free = 0, succ_free = 0, pred_rel = 0, succ_rel = 0;
        for (const auto& a : q.arrows) {
            if (a.to == b.from) (qr.in_relations(a.id, b.id) ? pred_rel : pred_free)++;
            if (a.from == b.to) (qr.in_relations(b.id, a.id) ? succ_rel : succ_free)++;
        }
        if (pred_free > 1) rep.fail(2, "arrow " + b.id + " has " + std::to_string(pred_free) +
                                           " non-relation predecessors");
        if (succ_free > 1) rep.fail(2, "arrow " + b.id + " has " + std::to_string(succ_free) +
                                           " non-relation successors");
        if (pred_rel > 1) rep.fail(4, "arrow " + b.id + " has " + std::to_string(pred_rel) +
                                          " relation predecessors");
        if (succ_rel > 1) rep.fail(4, "arrow " + b.id + " has " + std::to_string(succ_rel) +
                                          " relation successors");
    }
    return rep;
}

// Fomin-Zelevinsky mutation at v: composites through v, reversal at v,
// maximal 2-cycle cancellation.  Relations are not tracked; mutated quivers
// are only consumed as bare quivers.
inline Quiver mutate(const Quiver& q, const VertexId& v) {
    if (!q.has_vertex(v)) throw error("unknown vertex " + v);
    for (const auto& a : q.arrows)
        if (a.from == v && a.to == v) throw error("loop at " + v);
    for (const auto& a : q.arrows)
        for (const auto& b : q.arrows)
            if (a.to == v && b.from == v && b.to == a.from)
                throw error("2-cycle at " + v);

    Quiver out;
    out.vertices = q.vertices;
    int synth = 0;
    for (const auto& a : q.arrows)
        for (const auto& b : q.arrows)
            if (a.to == v && b.from == v)
                out.arrows.push_back({"m" + std::to_string(synth++), a.from, b.to});
    for (const auto& a : q.arrows) {
        if (a.from == v || a.to == v)
            out.arrows.push_back({a.id + "'", a.to, a.from});
        else
            out.arrows.push_back(a);
    }
    // cancel 2-cycles pairwise, smallest endpoints first
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < out.arrows.size() && !changed; ++i)
            for (size_t j = 0; j < out.arrows.size() && !changed; ++j)
                if (out.arrows[i].from == out.arrows[j].to &&
                    out.arrows[i].to == out.arrows[j].from && i != j) {
                    out.arrows.erase(out.arrows.begin() + std::max(i, j));
                    out.arrows.erase(out.arrows.begin() + std::min(i, j));
                    changed = true;
                }
    }
    return out;
}

namespace detail {

inline std::vector<std::pair<VertexId, VertexId>> arrow_pairs(const Quiver& q) {
    std::vector<std::pair<VertexId, VertexId>> ps;
    for (const auto& a : q.arrows) ps.push_back({a.from, a.to});
    std::sort(ps.begin(), ps.end());
    return ps;
}

inline std::vector<std::array<VertexId, 3>> relation_triples(const QuiverWithRelations& qr) {
    std::vector<std::array<VertexId, 3>> ts;
    for (const auto& r : qr.relations) {
        const Arrow &a = qr.quiver.arrow(r.first), &b = qr.quiver.arrow(r.second);
        ts.push_back({a.from, a.to, b.to});
    }
    std::sort(ts.begin(), ts.end());
    return ts;
}

}  // namespace detail

// Same vertex set, equal (from,to) arrow multisets, and relation sets that
// agree as multisets of vertex triples (source, midpoint, target).
inline bool equal_on_vertices(const QuiverWithRelations& q1, const QuiverWithRelations& q2) {
    auto v1 = q1.quiver.vertices, v2 = q2.quiver.vertices;
    std::sort(v1.begin(), v1.end());
    std::sort(v2.begin(), v2.end());
    if (v1 != v2) throw error("equal_on_vertices: vertex sets differ");
    return detail::arrow_pairs(q1.quiver) == detail::arrow_pairs(q2.quiver) &&
           detail::relation_triples(q1) == detail::relation_triples(q2);
}

// Canonical content key: vertices + arrow pair multiset + relation triples.
// Arrow identities are deliberately forgotten.
inline std::string canonical_key(const QuiverWithRelations& qr) {
    std::ostringstream os;
    auto vs = qr.quiver.vertices;
    std::sort(vs.begin(), vs.end());
    for (const auto& v : vs) os << v << ';';
    os << '|';
    for (const auto& [f, t] : detail::arrow_pairs(qr.quiver)) os << f << '>' << t << ';';
    os << '|';
    for (const auto& t : detail::relation_triples(qr)) os << t[0] << '>' << t[1] << '>' << t[2] << ';';
    return os.str();
}

}  // namespace sak
