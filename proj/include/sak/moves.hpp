#pragma once

// Reflections and coreflections of gentle quivers with relations, the
// flip-and-recut dictionary check, and the surface-level twist that realizes
// a (co)reflection as a flip with transported cut.

#include "sak/cuts.hpp"
#include "sak/equivalence.hpp"
#include "sak/quiver.hpp"
#include "sak/surface.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sak {

struct ReflectionStatus {
    bool defined = false;
    std::string reason;              // first obstruction when not defined
    bool source_of_relation = false; // i starts some relation path
    bool target_of_relation = false; // i ends some relation path
};

namespace detail {

inline void require_gentle(const QuiverWithRelations& q, const char* who) {
    GentleReport g = is_gentle(q);
    if (!g.pass)
        throw error(std::string(who) + " requires a gentle quiver: " + g.violations.front().witness);
}

inline void relation_endpoints(const QuiverWithRelations& q, const VertexId& i,
                               ReflectionStatus& st) {
    for (const auto& r : q.relations) {
        if (q.quiver.arrow(r.first).from == i) st.source_of_relation = true;
        if (q.quiver.arrow(r.second).to == i) st.target_of_relation = true;
    }
}

// reverse all arrows and relation pairs; reflections dualize through this
inline QuiverWithRelations opposite(const QuiverWithRelations& q) {
    QuiverWithRelations out;
    out.quiver.vertices = q.quiver.vertices;
    for (const auto& a : q.quiver.arrows) out.quiver.arrows.push_back({a.id, a.to, a.from});
    for (const auto& r : q.relations) out.relations.push_back({r.second, r.first});
    std::sort(out.relations.begin(), out.relations.end());
    return out;
}

}  // namespace detail

// Defined iff every arrow leaving i has a (necessarily unique) non-relation
// predecessor arriving at i.  Also reports whether i is an endpoint of a
// relation path, the side condition of the dictionary theorem.
inline ReflectionStatus reflection_defined(const QuiverWithRelations& q, const VertexId& i) {
    detail::require_gentle(q, "reflection_defined");
    if (!q.quiver.has_vertex(i)) throw error("unknown vertex: " + i);
    ReflectionStatus st;
    st.defined = true;
    detail::relation_endpoints(q, i, st);
    for (const auto& a : q.quiver.arrows) {
        if (a.from != i) continue;
        bool found = false;
        for (const auto& b : q.quiver.arrows)
            if (b.to == i && !q.in_relations(b.id, a.id)) found = true;
        if (!found) {
            st.defined = false;
            st.reason = "arrow " + a.id + " leaving " + i +
                        " has no relation-free predecessor arriving at " + i;
            return st;
        }
    }
    return st;
}

inline ReflectionStatus coreflection_defined(const QuiverWithRelations& q, const VertexId& i) {
    detail::require_gentle(q, "coreflection_defined");
    ReflectionStatus st = reflection_defined(detail::opposite(q), i);
    std::swap(st.source_of_relation, st.target_of_relation);
    if (!st.defined)
        st.reason = "arrow arriving at " + i + " has no relation-free successor leaving " + i;
    return st;
}

// Reflection at i.  Arrows keep their identity; only endpoints move.  All
// membership tests below use the ORIGINAL endpoint maps; only the resulting
// pairs are read as paths of the new quiver.
inline QuiverWithRelations reflect(const QuiverWithRelations& q, const VertexId& i) {
    ReflectionStatus st = reflection_defined(q, i);
    if (!st.defined) throw error("reflection undefined at " + i + ": " + st.reason);

    // unique relation-free predecessor of each arrow leaving i
    std::map<ArrowId, ArrowId> beta;
    for (const auto& a : q.quiver.arrows) {
        if (a.from != i) continue;
        for (const auto& b : q.quiver.arrows)
            if (b.to == i && !q.in_relations(b.id, a.id)) {
                beta[a.id] = b.id;
                break;
            }
    }

    auto relation_successor_at_i = [&](const Arrow& a) {
        for (const auto& b : q.quiver.arrows)
            if (b.to == i && b.from == a.to && q.in_relations(a.id, b.id)) return true;
        return false;
    };

    QuiverWithRelations out;
    out.quiver.vertices = q.quiver.vertices;
    for (const auto& a : q.quiver.arrows) {
        VertexId from = a.from, to = a.to;
        if (a.to == i)
            from = i;
        else if (a.from == i)
            from = q.quiver.arrow(beta.at(a.id)).from;
        if (a.to == i)
            to = a.from;
        else if (relation_successor_at_i(a))
            to = i;
        out.quiver.arrows.push_back({a.id, from, to});
    }

    std::set<Relation> rels;
    // transferred around i: relation (b, g) ending at i passes to the other
    // arrow arriving at i
    for (const auto& r : q.relations) {
        const Arrow& g = q.quiver.arrow(r.second);
        if (g.to != i) continue;
        for (const auto& a : q.quiver.arrows)
            if (a.id != g.id && a.to == i) rels.insert({r.first, a.id});
    }
    // untouched: relations whose second leg avoids i entirely
    for (const auto& r : q.relations) {
        const Arrow& b = q.quiver.arrow(r.second);
        if (b.to != i && b.from != i) rels.insert(r);
    }
    // created: each arrow leaving i now composes with its chosen predecessor
    for (const auto& [a, b] : beta) rels.insert({b, a});

    for (const auto& r : rels)
        if (out.quiver.arrow(r.first).to != out.quiver.arrow(r.second).from)
            throw error("internal: reflected relation " + r.first + "*" + r.second +
                        " is not a path");
    out.relations.assign(rels.begin(), rels.end());
    return out;
}

inline QuiverWithRelations coreflect(const QuiverWithRelations& q, const VertexId& i) {
    ReflectionStatus st = coreflection_defined(q, i);
    if (!st.defined) throw error("coreflection undefined at " + i + ": " + st.reason);
    return detail::opposite(reflect(detail::opposite(q), i));
}

struct DictWitness {
    Quiver mutated_base;           // arrow mutation of the uncut quiver at i
    TriangulatedSurface flipped;   // the triangulation realizing it
    AdmissibleCut cut;             // transported cut on the flipped surface
    QuiverWithRelations matched;   // its cut quiver, equal to the reflection
    std::optional<QuiverAutomorphism> iso;  // set only in relaxed mode
};

struct DictResult {
    std::optional<DictWitness> witness;
    QuiverWithRelations target;  // the reflection that was searched for
    int cuts_tried = 0;
};

// Search the flipped triangulation for a cut whose quiver equals R_i of the
// cut quiver.  An empty witness would falsify the dictionary theorem.
inline DictResult dict_check(const TriangulatedSurface& s, const AdmissibleCut& c,
                             const VertexId& i, bool relaxed = false) {
    QuiverWithRelations qc = apply_cut(s, c);
    ReflectionStatus st = reflection_defined(qc, i);
    if (st.source_of_relation)
        throw error("dictionary check requires " + i + " not to start a relation");
    if (!st.defined) throw error("reflection undefined at " + i + ": " + st.reason);

    DictResult res;
    res.target = reflect(qc, i);
    TriangulatedSurface flipped = flip(s, i);
    Quiver mutated = mutate(quiver_of(s).quiver, i);

    for (const auto& c2 : enumerate_cuts(flipped)) {
        ++res.cuts_tried;
        QuiverWithRelations q2 = apply_cut(flipped, c2);
        if (equal_on_vertices(q2, res.target)) {
            res.witness = DictWitness{mutated, flipped, c2, q2, std::nullopt};
            return res;
        }
        if (relaxed) {
            if (auto f = quiver_isomorphism(q2, res.target)) {
                res.witness = DictWitness{mutated, flipped, c2, q2, f};
                return res;
            }
        }
    }
    return res;
}

enum class TwistDirection { cw, ccw };

struct TwistResult {
    TriangulatedSurface surface;
    AdmissibleCut cut;
};

// Flip the arc and transport the cut so that the cut quiver of the result is
// exactly the (co)reflection at the arc: cw pairs with reflection, ccw with
// coreflection.  Cuts of surviving internal triangles ride along unchanged;
// the at-most-two rebuilt triangles get the unique admissible choice that
// matches the reflected quiver.
inline TwistResult twist(const TriangulatedSurface& s, const AdmissibleCut& c, const EdgeId& arc,
                         TwistDirection dir) {
    QuiverWithRelations qc = apply_cut(s, c);
    QuiverWithRelations target;
    if (dir == TwistDirection::cw) {
        ReflectionStatus st = reflection_defined(qc, arc);
        if (!st.defined) throw error("clockwise twist undefined at " + arc + ": " + st.reason);
        target = reflect(qc, arc);
    } else {
        ReflectionStatus st = coreflection_defined(qc, arc);
        if (!st.defined)
            throw error("counterclockwise twist undefined at " + arc + ": " + st.reason);
        target = coreflect(qc, arc);
    }

    TriangulatedSurface flipped = flip(s, arc);
    Topology topo = derive_topology(flipped);

    std::vector<TriangleId> rebuilt;
    for (TriangleId t = 0; t < static_cast<TriangleId>(s.triangles.size()); ++t)
        for (int k = 0; k < 3; ++k)
            if (s.triangles[t].sides[k] == arc && (rebuilt.empty() || rebuilt.back() != t))
                rebuilt.push_back(t);

    AdmissibleCut carried;
    for (const auto& [t, lc] : c.locals)
        if (std::find(rebuilt.begin(), rebuilt.end(), t) == rebuilt.end())
            carried.locals[t] = make_local_cut(flipped, topo, t, lc.corner);

    std::vector<TriangleId> open;  // rebuilt triangles that are internal after the flip
    for (TriangleId t : rebuilt)
        if (triangle_type(flipped, t) == TriangleType::internal) open.push_back(t);

    int combos = 1;
    for (size_t j = 0; j < open.size(); ++j) combos *= 3;
    for (int pick = 0; pick < combos; ++pick) {
        AdmissibleCut cand = carried;
        int rest = pick;
        for (TriangleId t : open) {
            cand.locals[t] = make_local_cut(flipped, topo, t, rest % 3);
            rest /= 3;
        }
        validate_cut(flipped, cand);
        if (equal_on_vertices(apply_cut(flipped, cand), target)) return {flipped, cand};
    }
    throw error("twist at " + arc + " does not transport the cut");
}

}  // namespace sak
