#pragma once

// Admissible cuts: one corner choice per internal triangle.  Each local cut
// removes the 3-cycle arrow at its corner and sits at the corner's marked
// point; distributions count local cuts per boundary component.

#include "sak/quiver.hpp"
#include "sak/surface.hpp"

#include <map>
#include <vector>

namespace sak {

struct LocalCut {
    TriangleId triangle = -1;
    int corner = -1;
    ArrowId removed_arrow;
    int marked_point = -1;  // vertex orbit id
    VertexId source_arc, target_arc;
    friend auto operator<=>(const LocalCut&, const LocalCut&) = default;
};

struct AdmissibleCut {
    std::map<TriangleId, LocalCut> locals;
    friend auto operator<=>(const AdmissibleCut&, const AdmissibleCut&) = default;

    std::vector<ArrowId> removed_arrows() const {
        std::vector<ArrowId> out;
        for (const auto& [t, lc] : locals) out.push_back(lc.removed_arrow);
        return out;
    }
};

struct CutDistribution {
    std::map<int, int> counts;  // boundary component -> number of local cuts
    friend bool operator==(const CutDistribution&, const CutDistribution&) = default;
};

inline LocalCut make_local_cut(const TriangulatedSurface& s, const Topology& topo,
                               TriangleId t, int corner) {
    if (triangle_type(s, t) != TriangleType::internal)
        throw error("cut names non-internal triangle " + std::to_string(t));
    if (corner < 0 || corner > 2) throw error("cut corner out of range");
    LocalCut lc;
    lc.triangle = t;
    lc.corner = corner;
    lc.removed_arrow = corner_arrow_id(t, corner);
    lc.marked_point = topo.orbit_of(Corner{t, corner});
    lc.source_arc = s.triangles[t].sides[corner];
    lc.target_arc = s.triangles[t].sides[(corner + 1) % 3];
    return lc;
}

inline void validate_cut(const TriangulatedSurface& s, const AdmissibleCut& c) {
    auto internals = internal_triangles(s);
    if (c.locals.size() != internals.size())
        throw error("cut has " + std::to_string(c.locals.size()) + " local cuts for " +
                    std::to_string(internals.size()) + " internal triangles");
    for (TriangleId t : internals)
        if (!c.locals.count(t))
            throw error("cut misses internal triangle " + std::to_string(t));
}

inline AdmissibleCut cut_from_corners(const TriangulatedSurface& s,
                                      const std::vector<std::pair<TriangleId, int>>& corners) {
    Topology topo = derive_topology(s);
    AdmissibleCut c;
    for (auto [t, k] : corners) {
        if (c.locals.count(t)) throw error("duplicate local cut at triangle " + std::to_string(t));
        c.locals[t] = make_local_cut(s, topo, t, k);
    }
    validate_cut(s, c);
    return c;
}

// Resolve chi_{i,j} arrow-pair notation; errors when the pair is not an
// internal 3-cycle arrow or is ambiguous (parallel arrows).
inline AdmissibleCut cut_from_arrow_pairs(
    const TriangulatedSurface& s, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    std::vector<std::pair<TriangleId, int>> corners;
    for (const auto& [i, j] : pairs) {
        std::vector<std::pair<TriangleId, int>> hits;
        for (TriangleId t : internal_triangles(s)) {
            const auto& sides = s.triangles[t].sides;
            for (int k = 0; k < 3; ++k)
                if (sides[k] == i && sides[(k + 1) % 3] == j) hits.push_back({t, k});
        }
        if (hits.empty())
            throw error("arrow " + i + "->" + j + " is not in an internal 3-cycle");
        if (hits.size() > 1)
            throw error("arrow pair " + i + "->" + j +
                        " is ambiguous; use {triangle, corner} form");
        corners.push_back(hits.front());
    }
    return cut_from_corners(s, corners);
}

// All 3^k cuts in lexicographic (triangle-sorted, corner-counting) order.
inline std::vector<AdmissibleCut> enumerate_cuts(const TriangulatedSurface& s) {
    ValidationReport rep = validate(s);
    if (!rep.pass) throw error("invalid surface: " + rep.errors.front());
    if (rep.small_disc) throw error("cuts are not defined on a disc with fewer than 5 marked points");
    Topology topo = derive_topology(s);
    auto internals = internal_triangles(s);
    std::vector<AdmissibleCut> out;
    std::vector<int> odo(internals.size(), 0);
    while (true) {
        AdmissibleCut c;
        for (size_t i = 0; i < internals.size(); ++i)
            c.locals[internals[i]] = make_local_cut(s, topo, internals[i], odo[i]);
        out.push_back(std::move(c));
        int pos = static_cast<int>(odo.size()) - 1;
        while (pos >= 0 && odo[pos] == 2) odo[pos--] = 0;
        if (pos < 0) break;
        ++odo[pos];
    }
    return out;
}

// Q_T minus the cut arrows; each internal triangle keeps the single relation
// avoiding its cut arrow.
inline QuiverWithRelations apply_cut(const TriangulatedSurface& s, const AdmissibleCut& c) {
    validate_cut(s, c);
    QuiverWithRelations full = quiver_of(s);
    QuiverWithRelations out;
    out.quiver.vertices = full.quiver.vertices;
    std::set<ArrowId> removed;
    for (const auto& [t, lc] : c.locals) removed.insert(lc.removed_arrow);
    for (const auto& a : full.quiver.arrows)
        if (!removed.count(a.id)) out.quiver.arrows.push_back(a);
    for (const auto& [t, lc] : c.locals)
        out.relations.push_back(
            {corner_arrow_id(t, (lc.corner + 1) % 3), corner_arrow_id(t, (lc.corner + 2) % 3)});
    std::sort(out.relations.begin(), out.relations.end());
    return out;
}

inline CutDistribution distribution(const TriangulatedSurface& s, const AdmissibleCut& c) {
    validate_cut(s, c);
    Topology topo = derive_topology(s);
    CutDistribution d;
    for (const auto& bc : topo.components) d.counts[bc.id] = 0;
    for (const auto& [t, lc] : c.locals)
        ++d.counts[topo.orbits[lc.marked_point].boundary_component];
    return d;
}

inline bool equidistributed(const TriangulatedSurface& s, const AdmissibleCut& c1,
                            const AdmissibleCut& c2) {
    return distribution(s, c1) == distribution(s, c2);
}

enum class SlidingKind { one = 1, two = 2 };

// Arcs incident to both cuts in triangles where the cuts differ: the side
// shared by the two chosen corners.  Classified by how many differing
// triangles exhibit the edge.
inline std::map<EdgeId, SlidingKind> sliding_edges(const TriangulatedSurface& s,
                                                   const AdmissibleCut& c1,
                                                   const AdmissibleCut& c2) {
    validate_cut(s, c1);
    validate_cut(s, c2);
    std::map<EdgeId, int> hits;
    for (const auto& [t, lc1] : c1.locals) {
        const LocalCut& lc2 = c2.locals.at(t);
        if (lc1.corner == lc2.corner) continue;
        const auto& sides = s.triangles[t].sides;
        std::set<EdgeId> s1{sides[lc1.corner], sides[(lc1.corner + 1) % 3]};
        std::set<EdgeId> s2{sides[lc2.corner], sides[(lc2.corner + 1) % 3]};
        for (const auto& e : s1)
            if (s2.count(e)) ++hits[e];
    }
    std::map<EdgeId, SlidingKind> out;
    for (const auto& [e, n] : hits) out[e] = (n == 1 ? SlidingKind::one : SlidingKind::two);
    return out;
}

}  // namespace sak
