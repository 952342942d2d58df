#pragma once

// Constructive planner on the annulus: find a sequence of (co)reflections
// carrying one cut quiver to another whenever the cuts are equi-distributed.

#include "sak/cuts.hpp"
#include "sak/moves.hpp"
#include "sak/quiver.hpp"
#include "sak/surface.hpp"

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace sak {

inline bool is_annulus(const TriangulatedSurface& s) {
    ValidationReport rep = validate(s);
    return rep.pass && rep.genus == 0 && rep.boundary_components == 2;
}

struct DiffSet {
    std::set<TriangleId> triangles;
};

// Internal triangles whose local cuts sit on different boundary components.
inline DiffSet diff_set(const TriangulatedSurface& s, const AdmissibleCut& c1,
                        const AdmissibleCut& c2) {
    if (!is_annulus(s)) throw error("diff_set requires an annulus");
    validate_cut(s, c1);
    validate_cut(s, c2);
    Topology topo = derive_topology(s);
    DiffSet d;
    for (const auto& [t, lc] : c1.locals) {
        int b1 = topo.orbits[lc.marked_point].boundary_component;
        int b2 = topo.orbits[c2.locals.at(t).marked_point].boundary_component;
        if (b1 != b2) d.triangles.insert(t);
    }
    return d;
}

enum class MoveKind { reflect, coreflect };

struct ReflectionMove {
    VertexId vertex;
    MoveKind kind;
};

struct ReflectionPlan {
    std::vector<ReflectionMove> moves;
    TriangulatedSurface start_surface;
    AdmissibleCut start_cut;
    QuiverWithRelations certified_end;
};

struct PlanResult {
    std::optional<ReflectionPlan> plan;
    long states_expanded = 0;
    int depth_reached = 0;
    int depth_limit = 0;
    std::string warning;  // set when the default depth had to be doubled
};

namespace detail {

inline PlanResult plan_reflections_bounded(const TriangulatedSurface& s, const AdmissibleCut& c1,
                                           const AdmissibleCut& c2, int depth_limit) {
    QuiverWithRelations start = apply_cut(s, c1);
    QuiverWithRelations target = apply_cut(s, c2);
    std::string goal = canonical_key(target);

    PlanResult res;
    res.depth_limit = depth_limit;

    auto finish = [&](const std::vector<ReflectionMove>& moves, const QuiverWithRelations& q) {
        res.plan = ReflectionPlan{moves, s, c1, q};
        return res;
    };
    if (canonical_key(start) == goal) return finish({}, start);

    struct Node {
        QuiverWithRelations q;
        std::vector<ReflectionMove> moves;
    };
    std::deque<Node> frontier{{start, {}}};
    std::unordered_set<std::string> seen{canonical_key(start)};

    auto vertices = start.quiver.vertices;
    std::sort(vertices.begin(), vertices.end());

    while (!frontier.empty()) {
        Node cur = std::move(frontier.front());
        frontier.pop_front();
        if (static_cast<int>(cur.moves.size()) >= res.depth_limit) continue;
        ++res.states_expanded;

        for (const auto& v : vertices) {
            for (MoveKind kind : {MoveKind::reflect, MoveKind::coreflect}) {
                bool ok = kind == MoveKind::reflect ? reflection_defined(cur.q, v).defined
                                                    : coreflection_defined(cur.q, v).defined;
                if (!ok) continue;
                QuiverWithRelations nq =
                    kind == MoveKind::reflect ? reflect(cur.q, v) : coreflect(cur.q, v);
                std::string key = canonical_key(nq);
                if (!seen.insert(key).second) continue;
                auto moves = cur.moves;
                moves.push_back({v, kind});
                res.depth_reached = std::max(res.depth_reached, static_cast<int>(moves.size()));
                if (key == goal) return finish(moves, nq);
                frontier.push_back({std::move(nq), std::move(moves)});
            }
        }
    }
    return res;
}

}  // namespace detail

// Breadth-first search over (co)reflections from the c1 cut quiver to the c2
// cut quiver, states deduplicated by canonical key (vertex-identity
// equality).  depth_limit < 0 selects the default bound 4*|diff_set| + 8 and
// retries once at double depth (with a warning) if that bound is exhausted.
inline PlanResult plan_reflections(const TriangulatedSurface& s, const AdmissibleCut& c1,
                                   const AdmissibleCut& c2, int depth_limit = -1) {
    if (!is_annulus(s)) throw error("plan_reflections requires an annulus");
    if (!equidistributed(s, c1, c2))
        throw error("plan_reflections requires equi-distributed cuts");

    if (depth_limit >= 0) return detail::plan_reflections_bounded(s, c1, c2, depth_limit);

    int base = 4 * static_cast<int>(diff_set(s, c1, c2).triangles.size()) + 8;
    PlanResult res = detail::plan_reflections_bounded(s, c1, c2, base);
    if (res.plan) return res;
    PlanResult retry = detail::plan_reflections_bounded(s, c1, c2, 2 * base);
    retry.warning = "default depth " + std::to_string(base) + " exhausted; retried at " +
                    std::to_string(2 * base);
    return retry;
}

// Replay a plan from (s, c1), enforcing every move's precondition.
inline QuiverWithRelations apply_plan(const TriangulatedSurface& s, const AdmissibleCut& c1,
                                      const ReflectionPlan& plan) {
    QuiverWithRelations q = apply_cut(s, c1);
    for (size_t i = 0; i < plan.moves.size(); ++i) {
        const auto& m = plan.moves[i];
        ReflectionStatus st = m.kind == MoveKind::reflect ? reflection_defined(q, m.vertex)
                                                          : coreflection_defined(q, m.vertex);
        if (!st.defined)
            throw error("illegal move " + std::to_string(i + 1) + " at " + m.vertex + ": " +
                        st.reason);
        q = m.kind == MoveKind::reflect ? reflect(q, m.vertex) : coreflect(q, m.vertex);
    }
    return q;
}

}  // namespace sak
