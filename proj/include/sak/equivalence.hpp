#pragma once

// Mapping-class certificates through quiver automorphisms: enumeration by
// pruned backtracking, the action on cuts, the genus-0 decision procedure,
// and extension of an automorphism to a surface self-map.

#include "sak/cuts.hpp"
#include "sak/grading.hpp"
#include "sak/quiver.hpp"
#include "sak/surface.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sak {

struct QuiverAutomorphism {
    std::map<VertexId, VertexId> vertex_map;
    std::map<ArrowId, ArrowId> arrow_map;

    bool is_identity() const {
        for (const auto& [v, w] : vertex_map)
            if (v != w) return false;
        return true;
    }
};

namespace detail {

// per-vertex invariant used to prune the search
struct VertexSignature {
    int indeg = 0, outdeg = 0;
    int rel_start = 0, rel_mid = 0, rel_end = 0;
    friend auto operator<=>(const VertexSignature&, const VertexSignature&) = default;
};

inline std::map<VertexId, VertexSignature> signatures(const QuiverWithRelations& qr) {
    std::map<VertexId, VertexSignature> sig;
    for (const auto& v : qr.quiver.vertices) sig[v];
    for (const auto& a : qr.quiver.arrows) {
        ++sig[a.from].outdeg;
        ++sig[a.to].indeg;
    }
    for (const auto& r : qr.relations) {
        const Arrow &a = qr.quiver.arrow(r.first), &b = qr.quiver.arrow(r.second);
        ++sig[a.from].rel_start;
        ++sig[a.to].rel_mid;
        ++sig[b.to].rel_end;
    }
    return sig;
}

inline int pair_count(const Quiver& q, const VertexId& u, const VertexId& v) {
    int n = 0;
    for (const auto& a : q.arrows)
        if (a.from == u && a.to == v) ++n;
    return n;
}

// Extend a vertex bijection to arrows, respecting relations; parallel arrows
// may need both matchings tried.
inline std::optional<std::map<ArrowId, ArrowId>> arrow_extension(
    const QuiverWithRelations& src, const QuiverWithRelations& dst,
    const std::map<VertexId, VertexId>& vm) {
    std::vector<std::vector<const Arrow*>> groups;  // source arrows by (from,to)
    std::map<std::pair<VertexId, VertexId>, size_t> group_of;
    for (const auto& a : src.quiver.arrows) {
        auto key = std::make_pair(a.from, a.to);
        if (!group_of.count(key)) {
            group_of[key] = groups.size();
            groups.push_back({});
        }
        groups[group_of[key]].push_back(&a);
    }
    std::vector<std::vector<const Arrow*>> images(groups.size());
    for (const auto& [key, gi] : group_of) {
        for (const auto& b : dst.quiver.arrows)
            if (b.from == vm.at(key.first) && b.to == vm.at(key.second))
                images[gi].push_back(&b);
        if (images[gi].size() != groups[gi].size()) return std::nullopt;
    }

    std::vector<std::vector<size_t>> perms(groups.size());
    std::function<std::optional<std::map<ArrowId, ArrowId>>(size_t)> rec =
        [&](size_t gi) -> std::optional<std::map<ArrowId, ArrowId>> {
        if (gi == groups.size()) {
            std::map<ArrowId, ArrowId> am;
            for (size_t g = 0; g < groups.size(); ++g)
                for (size_t k = 0; k < groups[g].size(); ++k)
                    am[groups[g][k]->id] = images[g][perms[g][k]]->id;
            // relation sets must correspond exactly under the arrow map
            std::set<std::pair<ArrowId, ArrowId>> want;
            for (const auto& r : dst.relations) want.insert({r.first, r.second});
            std::set<std::pair<ArrowId, ArrowId>> got;
            for (const auto& r : src.relations) got.insert({am.at(r.first), am.at(r.second)});
            if (want != got) return std::nullopt;
            return am;
        }
        std::vector<size_t> idx(groups[gi].size());
        for (size_t k = 0; k < idx.size(); ++k) idx[k] = k;
        do {
            perms[gi] = idx;
            if (auto am = rec(gi + 1)) return am;
        } while (std::next_permutation(idx.begin(), idx.end()));
        return std::nullopt;
    };
    return rec(0);
}

}  // namespace detail

// All relation-preserving quiver automorphisms; identity first, the rest in
// lexicographic image order.  Backtracking over vertices with signature and
// incremental arrow-count pruning.
inline std::vector<QuiverAutomorphism> quiver_automorphisms(const QuiverWithRelations& qr) {
    auto vs = qr.quiver.vertices;
    std::sort(vs.begin(), vs.end());
    auto sig = detail::signatures(qr);

    std::vector<QuiverAutomorphism> out;
    std::map<VertexId, VertexId> vm;
    std::set<VertexId> used;

    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == vs.size()) {
            if (auto am = detail::arrow_extension(qr, qr, vm)) out.push_back({vm, *am});
            return;
        }
        const VertexId& v = vs[i];
        for (const auto& w : vs) {
            if (used.count(w) || sig.at(v) != sig.at(w)) continue;
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j) {
                ok = detail::pair_count(qr.quiver, v, vs[j]) ==
                         detail::pair_count(qr.quiver, w, vm[vs[j]]) &&
                     detail::pair_count(qr.quiver, vs[j], v) ==
                         detail::pair_count(qr.quiver, vm[vs[j]], w);
            }
            if (detail::pair_count(qr.quiver, v, v) != detail::pair_count(qr.quiver, w, w))
                ok = false;
            if (!ok) continue;
            vm[v] = w;
            used.insert(w);
            rec(i + 1);
            used.erase(w);
            vm.erase(v);
        }
    };
    rec(0);

    std::sort(out.begin(), out.end(), [](const QuiverAutomorphism& a, const QuiverAutomorphism& b) {
        if (a.is_identity() != b.is_identity()) return a.is_identity();
        return a.vertex_map < b.vertex_map;
    });
    return out;
}

// Isomorphism q1 -> q2 on possibly different vertex sets (used by the relaxed
// dictionary check); empty when none exists.
inline std::optional<QuiverAutomorphism> quiver_isomorphism(const QuiverWithRelations& q1,
                                                            const QuiverWithRelations& q2) {
    if (q1.quiver.vertices.size() != q2.quiver.vertices.size() ||
        q1.quiver.arrows.size() != q2.quiver.arrows.size() ||
        q1.relations.size() != q2.relations.size())
        return std::nullopt;
    auto vs1 = q1.quiver.vertices, vs2 = q2.quiver.vertices;
    std::sort(vs1.begin(), vs1.end());
    std::sort(vs2.begin(), vs2.end());
    auto sig1 = detail::signatures(q1), sig2 = detail::signatures(q2);

    std::map<VertexId, VertexId> vm;
    std::set<VertexId> used;
    std::function<std::optional<QuiverAutomorphism>(size_t)> rec =
        [&](size_t i) -> std::optional<QuiverAutomorphism> {
        if (i == vs1.size()) {
            if (auto am = detail::arrow_extension(q1, q2, vm)) return QuiverAutomorphism{vm, *am};
            return std::nullopt;
        }
        const VertexId& v = vs1[i];
        for (const auto& w : vs2) {
            if (used.count(w) || sig1.at(v) != sig2.at(w)) continue;
            bool ok = detail::pair_count(q1.quiver, v, v) == detail::pair_count(q2.quiver, w, w);
            for (size_t j = 0; j < i && ok; ++j) {
                ok = detail::pair_count(q1.quiver, v, vs1[j]) ==
                         detail::pair_count(q2.quiver, w, vm[vs1[j]]) &&
                     detail::pair_count(q1.quiver, vs1[j], v) ==
                         detail::pair_count(q2.quiver, vm[vs1[j]], w);
            }
            if (!ok) continue;
            vm[v] = w;
            used.insert(w);
            if (auto res = rec(i + 1)) return res;
            used.erase(w);
            vm.erase(v);
        }
        return std::nullopt;
    };
    return rec(0);
}

// chi_{i,j} -> chi_{f(i),f(j)}: the image local cut is read off the arrow
// map, whose ids carry (triangle, corner).
inline AdmissibleCut act_on_cut(const TriangulatedSurface& s, const QuiverAutomorphism& f,
                                const AdmissibleCut& c) {
    validate_cut(s, c);
    Topology topo = derive_topology(s);
    AdmissibleCut out;
    for (const auto& [t, lc] : c.locals) {
        auto it = f.arrow_map.find(lc.removed_arrow);
        if (it == f.arrow_map.end())
            throw error("automorphism does not map cut arrow " + lc.removed_arrow);
        const ArrowId& img = it->second;
        // parse "t<T>.<K>"
        auto dot = img.find('.');
        if (img.empty() || img[0] != 't' || dot == std::string::npos)
            throw error("cut image is not a triangle-corner arrow: " + img);
        TriangleId t2 = std::stoi(img.substr(1, dot - 1));
        int k2 = std::stoi(img.substr(dot + 1));
        if (out.locals.count(t2))
            throw error("automorphism image of cut is not admissible (two cuts in triangle " +
                        std::to_string(t2) + ")");
        out.locals[t2] = make_local_cut(s, topo, t2, k2);
    }
    validate_cut(s, out);
    return out;
}

struct EquivalenceCertificate {
    QuiverAutomorphism f;
    std::string direction;  // "identity" | "f(c1),c2" | "c1,f(c2)"
    LevelLabeling labeling;
    std::map<VertexId, int> tilting;
};

struct DerivedEquivResult {
    std::optional<EquivalenceCertificate> certificate;
    int automorphisms_tried = 0;
    CutDistribution dist1, dist2;
    bool via_identity = false;  // definitive sub-verdict for the identity case
};

// Try the identity, then every automorphism in both directions.  Success
// requires equi-distribution and a solvable labeling.  A miss is not a proof
// of inequivalence.
inline DerivedEquivResult derived_equivalence_certificate(const TriangulatedSurface& s,
                                                          const AdmissibleCut& c1,
                                                          const AdmissibleCut& c2) {
    ValidationReport rep = validate(s);
    if (!rep.pass) throw error("invalid surface: " + rep.errors.front());
    if (rep.genus != 0)
        throw error("derived equivalence certificates require genus 0 (got genus " +
                    std::to_string(rep.genus) + ")");
    validate_cut(s, c1);
    validate_cut(s, c2);

    DerivedEquivResult res;
    res.dist1 = distribution(s, c1);
    res.dist2 = distribution(s, c2);

    auto try_pair = [&](const QuiverAutomorphism& f, const AdmissibleCut& a,
                        const AdmissibleCut& b, const std::string& dir) -> bool {
        if (!equidistributed(s, a, b)) return false;
        auto lv = solve_levels(weight_of_cut(s, a), weight_of_cut(s, b));
        if (!levels_ok(lv)) return false;
        auto lab = std::get<LevelLabeling>(lv);
        res.certificate = EquivalenceCertificate{f, dir, lab, tilting_data(lab)};
        return true;
    };

    auto autos = quiver_automorphisms(quiver_of(s));
    for (const auto& f : autos) {
        ++res.automorphisms_tried;
        if (f.is_identity()) {
            if (try_pair(f, c1, c2, "identity")) {
                res.via_identity = true;
                return res;
            }
            continue;
        }
        if (try_pair(f, act_on_cut(s, f, c1), c2, "f(c1),c2")) return res;
        if (try_pair(f, c1, act_on_cut(s, f, c2), "c1,f(c2)")) return res;
    }
    return res;
}

struct SurfaceMap {
    std::map<TriangleId, TriangleId> triangle_map;
    std::map<TriangleId, int> rotation;  // side k of t maps to side (k+rot)%3
    std::map<EdgeId, EdgeId> edge_map;   // arcs and boundary segments
    std::map<int, int> boundary_component_map;
    std::map<int, int> vertex_orbit_map;
};

// Extend a quiver automorphism to an orientation-preserving surface self-map:
// per-triangle image + rotation consistent with the arc images, then segment,
// orbit, and component maps.  Backtracking handles triangles that the arc
// images alone do not pin down.
inline SurfaceMap induced_surface_map(const TriangulatedSurface& s, const QuiverAutomorphism& f) {
    Topology topo = derive_topology(s);
    int n = static_cast<int>(s.triangles.size());

    // candidate (image, rotation) pairs per triangle
    std::vector<std::vector<std::pair<TriangleId, int>>> cand(n);
    for (TriangleId t = 0; t < n; ++t) {
        for (TriangleId u = 0; u < n; ++u) {
            if (triangle_type(s, t) != triangle_type(s, u)) continue;
            for (int rot = 0; rot < 3; ++rot) {
                bool ok = true;
                for (int k = 0; k < 3 && ok; ++k) {
                    const EdgeId& e = s.triangles[t].sides[k];
                    const EdgeId& e2 = s.triangles[u].sides[(k + rot) % 3];
                    if (s.is_arc(e))
                        ok = s.is_arc(e2) && f.vertex_map.at(e) == e2;
                    else
                        ok = s.is_boundary(e2);
                }
                if (ok) cand[t].push_back({u, rot});
            }
        }
        if (cand[t].empty()) throw error("automorphism does not extend to the surface");
    }

    std::vector<int> pick(n, -1);
    std::vector<bool> taken(n, false);
    std::map<EdgeId, EdgeId> seg_map;
    std::function<bool(TriangleId)> rec = [&](TriangleId t) -> bool {
        if (t == n) return true;
        for (size_t ci = 0; ci < cand[t].size(); ++ci) {
            auto [u, rot] = cand[t][ci];
            if (taken[u]) continue;
            // segments must map consistently (each segment has one slot)
            std::map<EdgeId, EdgeId> added;
            bool ok = true;
            for (int k = 0; k < 3 && ok; ++k) {
                const EdgeId& e = s.triangles[t].sides[k];
                if (!s.is_boundary(e)) continue;
                const EdgeId& e2 = s.triangles[u].sides[(k + rot) % 3];
                auto it = seg_map.find(e);
                if (it != seg_map.end())
                    ok = it->second == e2;
                else
                    added[e] = e2;
            }
            if (!ok) continue;
            for (const auto& [e, e2] : added) seg_map[e] = e2;
            taken[u] = true;
            pick[t] = static_cast<int>(ci);
            if (rec(t + 1)) return true;
            taken[u] = false;
            pick[t] = -1;
            for (const auto& kv : added) seg_map.erase(kv.first);
        }
        return false;
    };
    if (!rec(0)) throw error("automorphism does not extend to the surface");

    SurfaceMap m;
    for (TriangleId t = 0; t < n; ++t) {
        auto [u, rot] = cand[t][pick[t]];
        m.triangle_map[t] = u;
        m.rotation[t] = rot;
    }
    for (const auto& [v, w] : f.vertex_map) m.edge_map[v] = w;
    for (const auto& [e, e2] : seg_map) m.edge_map[e] = e2;

    // orbits: image of any corner determines the image orbit; verify all agree
    for (const auto& o : topo.orbits) {
        int img = -1;
        for (const auto& c : o.corners) {
            Corner c2{m.triangle_map.at(c.triangle), (c.position + m.rotation.at(c.triangle)) % 3};
            int o2 = topo.orbit_of(c2);
            if (img < 0) img = o2;
            if (img != o2) throw error("surface map does not respect vertex orbits");
        }
        m.vertex_orbit_map[o.id] = img;
    }
    for (const auto& bc : topo.components) {
        int img = topo.orbits[m.vertex_orbit_map.at(bc.marked_points.front())].boundary_component;
        for (int mp : bc.marked_points)
            if (topo.orbits[m.vertex_orbit_map.at(mp)].boundary_component != img)
                throw error("surface map does not respect boundary components");
        m.boundary_component_map[bc.id] = img;
    }
    return m;
}

}  // namespace sak
