#pragma once

// Integer gradings from cuts, finite windows of the covering quiver, and the
// per-arrow difference-constraint solver deciding graded equivalence via the
// identity: r(target) - r(source) = w1 - w2 on every arrow.

#include "sak/cuts.hpp"
#include "sak/quiver.hpp"

#include <map>
#include <variant>
#include <vector>

namespace sak {

struct WeightedQuiver {
    QuiverWithRelations base;
    std::map<ArrowId, int> weight;

    int w(const ArrowId& id) const {
        auto it = weight.find(id);
        return it == weight.end() ? 0 : it->second;
    }
};

// Weight 1 on the removed arrows, 0 elsewhere, over the full Q_T; every
// 3-cycle relation becomes homogeneous of total weight 1.
inline WeightedQuiver weight_of_cut(const TriangulatedSurface& s, const AdmissibleCut& c) {
    validate_cut(s, c);
    WeightedQuiver wq;
    wq.base = quiver_of(s);
    for (const auto& a : wq.base.quiver.arrows) wq.weight[a.id] = 0;
    for (const auto& [t, lc] : c.locals) wq.weight[lc.removed_arrow] = 1;
    return wq;
}

struct WindowVertex {
    VertexId v;
    int level;
    friend auto operator<=>(const WindowVertex&, const WindowVertex&) = default;
};

struct WindowArrow {
    ArrowId base;
    VertexId from, to;
    int from_level, to_level;
    bool bridge;  // weight > 0 connects different levels
};

struct CoveringWindow {
    int lo = 0, hi = 0;
    std::vector<WindowVertex> vertices;
    std::vector<WindowArrow> arrows;
    std::vector<std::pair<size_t, size_t>> relations;  // indices into arrows
};

// The [lo,hi] slice of the covering quiver: vertex copies (v,i), arrow copies
// (v,i) -> (v', i+w), relation copies whenever both legs fit the window.
inline CoveringWindow covering_window(const WeightedQuiver& wq, int lo, int hi) {
    if (lo > hi) throw error("covering window: lo > hi");
    CoveringWindow cw;
    cw.lo = lo;
    cw.hi = hi;
    auto vs = wq.base.quiver.vertices;
    std::sort(vs.begin(), vs.end());
    for (int i = lo; i <= hi; ++i)
        for (const auto& v : vs) cw.vertices.push_back({v, i});
    std::map<std::pair<ArrowId, int>, size_t> index;
    for (int i = lo; i <= hi; ++i)
        for (const auto& a : wq.base.quiver.arrows) {
            int j = i + wq.w(a.id);
            if (j < lo || j > hi) continue;
            index[{a.id, i}] = cw.arrows.size();
            cw.arrows.push_back({a.id, a.from, a.to, i, j, wq.w(a.id) > 0});
        }
    for (const auto& r : wq.base.relations)
        for (int i = lo; i <= hi; ++i) {
            auto a = index.find({r.first, i});
            if (a == index.end()) continue;
            auto b = index.find({r.second, i + wq.w(r.first)});
            if (b == index.end()) continue;
            cw.relations.push_back({a->second, b->second});
        }
    return cw;
}

struct LevelLabeling {
    std::map<VertexId, int> r;
    // connected components of each constant-r class, sorted by (r, members)
    std::vector<std::vector<VertexId>> components;
};

struct ConflictWitness {
    std::vector<VertexId> cycle;            // closed walk, cycle[0] repeated implicitly
    std::vector<std::pair<ArrowId, bool>> walk;  // (arrow, traversed forward?)
    int discrepancy = 0;                    // signed (w1-w2) sum around the walk
};

using LevelResult = std::variant<LevelLabeling, ConflictWitness>;

inline bool levels_ok(const LevelResult& r) { return std::holds_alternative<LevelLabeling>(r); }

namespace detail {

struct TreeEdge {
    ArrowId arrow;
    size_t parent;
    bool forward;  // arrow points parent -> child
    int depth = 0;
};

}  // namespace detail

// Difference-constraint propagation.  BFS discovery prefers vertex pairs
// joined by a single arrow; parallel pairs seed the tree only when a
// component is reachable no other way.  All arrows are then checked in
// construction order and the first violated one closes its fundamental
// cycle, which is returned as the witness.
inline LevelResult solve_levels(const WeightedQuiver& wq1, const WeightedQuiver& wq2) {
    const Quiver& q = wq1.base.quiver;
    {
        const Quiver& q2 = wq2.base.quiver;
        auto key = [](const Quiver& qq) {
            std::vector<std::string> k;
            for (const auto& a : qq.arrows) k.push_back(a.id + ":" + a.from + ">" + a.to);
            std::sort(k.begin(), k.end());
            return k;
        };
        if (q.vertices.size() != q2.vertices.size() || key(q) != key(q2))
            throw error("solve_levels: weighted quivers have different bases");
    }

    std::vector<VertexId> vs = q.vertices;
    std::sort(vs.begin(), vs.end());
    std::map<VertexId, size_t> vi;
    for (size_t i = 0; i < vs.size(); ++i) vi[vs[i]] = i;

    auto d = [&](const Arrow& a) { return wq1.w(a.id) - wq2.w(a.id); };

    // arrows grouped by unordered vertex pair
    std::map<std::pair<size_t, size_t>, std::vector<const Arrow*>> by_pair;
    for (const auto& a : q.arrows) {
        auto p = std::minmax(vi.at(a.from), vi.at(a.to));
        by_pair[{p.first, p.second}].push_back(&a);
    }

    std::vector<int> r(vs.size(), 0);
    std::vector<bool> assigned(vs.size(), false);
    std::map<size_t, detail::TreeEdge> tree;  // child index -> edge up

    auto discover = [&](size_t from, size_t to, const Arrow& a) {
        bool forward = vi.at(a.from) == from;
        r[to] = forward ? r[from] + d(a) : r[from] - d(a);
        assigned[to] = true;
        tree[to] = {a.id, from, forward, tree.count(from) ? tree[from].depth + 1 : 1};
    };

    for (size_t root = 0; root < vs.size(); ++root) {
        if (assigned[root]) continue;
        r[root] = 0;
        assigned[root] = true;
        while (true) {
            bool progress = false;
            std::vector<size_t> queue;
            for (size_t i = 0; i < vs.size(); ++i)
                if (assigned[i]) queue.push_back(i);
            for (size_t qi = 0; qi < queue.size(); ++qi) {
                size_t u = queue[qi];
                for (const auto& [pair, arrows] : by_pair) {
                    if (arrows.size() != 1) continue;
                    if (pair.first != u && pair.second != u) continue;
                    size_t v = pair.first == u ? pair.second : pair.first;
                    if (assigned[v]) continue;
                    discover(u, v, *arrows.front());
                    queue.push_back(v);
                    progress = true;
                }
            }
            if (progress) continue;
            // fallback: seed across the smallest parallel pair touching the tree
            for (const auto& [pair, arrows] : by_pair) {
                if (arrows.size() < 2) continue;
                auto [a, b] = pair;
                if (assigned[a] != assigned[b]) {
                    assigned[a] ? discover(a, b, *arrows.front())
                                : discover(b, a, *arrows.front());
                    progress = true;
                    break;
                }
            }
            if (!progress) break;
        }
        // normalization: r = 0 at the component's smallest vertex = root
    }

    // validate every arrow in construction order
    for (const auto& a : q.arrows) {
        size_t u = vi.at(a.from), v = vi.at(a.to);
        if (r[v] - r[u] == d(a)) continue;

        // fundamental cycle: tree path target..source, then a forward
        ConflictWitness cw;
        auto depth = [&](size_t n) { return tree.count(n) ? tree.at(n).depth : 0; };
        std::vector<std::pair<ArrowId, bool>> down_to_u, up_from_v;
        std::vector<size_t> path_u{u}, path_v{v};
        size_t x = u, y = v;
        while (depth(x) > depth(y)) {
            down_to_u.push_back({tree.at(x).arrow, tree.at(x).forward});
            x = tree.at(x).parent;
            path_u.push_back(x);
        }
        while (depth(y) > depth(x)) {
            up_from_v.push_back({tree.at(y).arrow, !tree.at(y).forward});
            y = tree.at(y).parent;
            path_v.push_back(y);
        }
        while (x != y) {
            down_to_u.push_back({tree.at(x).arrow, tree.at(x).forward});
            x = tree.at(x).parent;
            path_u.push_back(x);
            up_from_v.push_back({tree.at(y).arrow, !tree.at(y).forward});
            y = tree.at(y).parent;
            path_v.push_back(y);
        }
        cw.walk = up_from_v;
        cw.walk.insert(cw.walk.end(), down_to_u.rbegin(), down_to_u.rend());
        cw.walk.push_back({a.id, true});
        for (size_t n : path_v) cw.cycle.push_back(vs[n]);
        for (auto it = std::next(path_u.rbegin()); it != path_u.rend(); ++it)
            cw.cycle.push_back(vs[*it]);
        cw.discrepancy = d(a) - (r[v] - r[u]);
        return cw;
    }

    LevelLabeling lab;
    for (size_t i = 0; i < vs.size(); ++i) lab.r[vs[i]] = r[i];

    // constant-r components (arrows between equal-r vertices)
    std::map<VertexId, size_t> comp;
    std::vector<std::vector<VertexId>> comps;
    for (const auto& v : vs) {
        if (comp.count(v)) continue;
        std::vector<VertexId> stack{v}, members;
        comp[v] = comps.size();
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (const auto& a : q.arrows) {
                VertexId other;
                if (a.from == u) other = a.to;
                else if (a.to == u) other = a.from;
                else continue;
                if (lab.r.at(other) == lab.r.at(u) && !comp.count(other)) {
                    comp[other] = comps.size();
                    stack.push_back(other);
                }
            }
        }
        std::sort(members.begin(), members.end());
        comps.push_back(std::move(members));
    }
    std::sort(comps.begin(), comps.end(), [&](const auto& a, const auto& b) {
        auto ka = std::make_pair(lab.r.at(a.front()), a);
        auto kb = std::make_pair(lab.r.at(b.front()), b);
        return ka < kb;
    });
    lab.components = std::move(comps);
    return lab;
}

struct LevelRegion {
    int r = 0;
    std::vector<VertexId> vertices;
    std::vector<TriangleId> triangles;
};

// Map each constant-r component to the triangles it covers.  A triangle where
// the cuts differ belongs to the region of its two same-level arcs; the
// odd-one-out is that triangle's sliding edge.
inline std::vector<LevelRegion> level_partitions(const TriangulatedSurface& s,
                                                 const LevelLabeling& lab,
                                                 const AdmissibleCut& c1,
                                                 const AdmissibleCut& c2) {
    validate_cut(s, c1);
    validate_cut(s, c2);
    std::map<VertexId, size_t> comp_of;
    std::vector<LevelRegion> regions;
    for (const auto& members : lab.components) {
        LevelRegion reg;
        reg.r = lab.r.at(members.front());
        reg.vertices = members;
        for (const auto& v : members) comp_of[v] = regions.size();
        regions.push_back(std::move(reg));
    }
    for (TriangleId t = 0; t < static_cast<TriangleId>(s.triangles.size()); ++t) {
        std::vector<VertexId> arcs;
        for (const auto& e : s.triangles[t].sides)
            if (s.is_arc(e)) arcs.push_back(e);
        if (arcs.empty()) continue;
        std::map<size_t, int> votes;
        for (const auto& a : arcs) ++votes[comp_of.at(a)];
        size_t best = votes.begin()->first;
        for (const auto& [c, n] : votes)
            if (n > votes.at(best)) best = c;
        regions[best].triangles.push_back(t);
    }
    return regions;
}

// The certificate payload: the normalized r-vector.
inline std::map<VertexId, int> tilting_data(const LevelLabeling& lab) { return lab.r; }

}  // namespace sak
