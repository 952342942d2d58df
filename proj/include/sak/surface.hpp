#pragma once

// Combinatorial model of a triangulated, unpunctured, oriented surface with
// marked points on the boundary.  Triangles list their sides in ccw order;
// that ordering is the only orientation data.  Everything else (marked
// points, boundary components, genus) is derived.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sak {

using EdgeId = std::string;
using TriangleId = int;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Triangle {
    std::array<EdgeId, 3> sides;  // ccw
};

// Corner `position` sits between sides[position] and sides[position+1 mod 3].
struct Corner {
    TriangleId triangle = -1;
    int position = -1;
    friend auto operator<=>(const Corner&, const Corner&) = default;
};

enum class TriangleType { internal, basic, corner };

struct TriangulatedSurface {
    std::string name;
    std::vector<EdgeId> arcs;
    std::vector<EdgeId> boundary_segments;
    std::vector<Triangle> triangles;

    bool is_arc(const EdgeId& e) const {
        return std::find(arcs.begin(), arcs.end(), e) != arcs.end();
    }
    bool is_boundary(const EdgeId& e) const {
        return std::find(boundary_segments.begin(), boundary_segments.end(), e) !=
               boundary_segments.end();
    }
    const EdgeId& side(const Corner& c, int offset = 0) const {
        return triangles[c.triangle].sides[(c.position + offset + 3) % 3];
    }
};

struct VertexOrbit {
    int id = -1;
    std::vector<Corner> corners;
    int boundary_component = -1;
};

struct BoundaryComponent {
    int id = -1;
    std::vector<EdgeId> segments;      // cyclic walk order
    std::vector<int> marked_points;    // orbit ids, marked_points[k] follows segments[k]
};

struct Topology {
    std::vector<VertexOrbit> orbits;
    std::vector<BoundaryComponent> components;
    int genus = 0;
    int orbit_of(const Corner& c) const {
        for (const auto& o : orbits)
            for (const auto& k : o.corners)
                if (k == c) return o.id;
        throw error("corner not in any vertex orbit");
    }
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> errors;
    int V = 0, E = 0, F = 0;
    int euler = 0;
    int genus = -1;
    int boundary_components = 0;
    int marked_points = 0;
    int arc_count = 0;
    bool small_disc = false;  // disc with fewer than 5 marked points

    void fail(std::string msg) {
        pass = false;
        errors.push_back(std::move(msg));
    }
};

namespace detail {

// slot = (triangle, side index); arcs own two slots, boundary segments one.
struct Slots {
    std::map<EdgeId, std::vector<std::pair<TriangleId, int>>> of;
};

inline Slots side_slots(const TriangulatedSurface& s) {
    Slots sl;
    for (TriangleId t = 0; t < static_cast<TriangleId>(s.triangles.size()); ++t)
        for (int k = 0; k < 3; ++k) sl.of[s.triangles[t].sides[k]].push_back({t, k});
    return sl;
}

// Twin slot of an arc slot (the arc's other occurrence).
inline std::optional<std::pair<TriangleId, int>> twin(const Slots& sl,
                                                      const TriangulatedSurface& s,
                                                      TriangleId t, int k) {
    const EdgeId& e = s.triangles[t].sides[k];
    auto it = sl.of.find(e);
    if (it == sl.of.end() || it->second.size() != 2) return std::nullopt;
    for (auto& slot : it->second)
        if (slot != std::make_pair(t, k)) return slot;
    return std::nullopt;
}

}  // namespace detail

inline TriangleType triangle_type(const TriangulatedSurface& s, TriangleId t) {
    if (t < 0 || t >= static_cast<TriangleId>(s.triangles.size()))
        throw error("unknown triangle id " + std::to_string(t));
    int nb = 0;
    for (const auto& e : s.triangles[t].sides)
        if (s.is_boundary(e)) ++nb;
    if (nb == 0) return TriangleType::internal;
    if (nb == 1) return TriangleType::basic;
    return TriangleType::corner;
}

inline std::vector<TriangleId> internal_triangles(const TriangulatedSurface& s) {
    std::vector<TriangleId> out;
    for (TriangleId t = 0; t < static_cast<TriangleId>(s.triangles.size()); ++t)
        if (triangle_type(s, t) == TriangleType::internal) out.push_back(t);
    return out;
}

// Rotate around the vertex at `c`, crossing side position+1.  The vertex is
// the tail of that side's half-edge; head-to-tail gluing lands on the twin
// slot's own corner.  Empty when the crossed side is a boundary segment.
inline std::optional<Corner> next_corner(const TriangulatedSurface& s,
                                         const detail::Slots& sl, const Corner& c) {
    int k1 = (c.position + 1) % 3;
    if (s.is_boundary(s.triangles[c.triangle].sides[k1])) return std::nullopt;
    auto tw = detail::twin(sl, s, c.triangle, k1);
    if (!tw) throw error("arc without twin slot: " + s.triangles[c.triangle].sides[k1]);
    return Corner{tw->first, tw->second};
}

// Rotate the other way, crossing side position (whose half-edge heads into
// the vertex; the twin's tail corner is position-1 on the far side).
inline std::optional<Corner> prev_corner(const TriangulatedSurface& s,
                                         const detail::Slots& sl, const Corner& c) {
    if (s.is_boundary(s.triangles[c.triangle].sides[c.position])) return std::nullopt;
    auto tw = detail::twin(sl, s, c.triangle, c.position);
    if (!tw) throw error("arc without twin slot: " + s.triangles[c.triangle].sides[c.position]);
    return Corner{tw->first, (tw->second + 2) % 3};
}

namespace detail {

// Corner chains around each marked point.  A chain that closes into a cycle
// is an interior vertex (a puncture) and is rejected by validate().
inline std::vector<std::vector<Corner>> corner_chains(const TriangulatedSurface& s,
                                                      const Slots& sl) {
    std::set<Corner> seen;
    std::vector<std::vector<Corner>> chains;
    for (TriangleId t = 0; t < static_cast<TriangleId>(s.triangles.size()); ++t) {
        for (int k = 0; k < 3; ++k) {
            Corner c{t, k};
            if (seen.count(c)) continue;
            std::vector<Corner> chain{c};
            bool cyclic = false;
            for (auto cur = next_corner(s, sl, c); cur; cur = next_corner(s, sl, *cur)) {
                if (*cur == c) { cyclic = true; break; }
                chain.push_back(*cur);
            }
            if (!cyclic) {
                std::vector<Corner> back;
                for (auto cur = prev_corner(s, sl, c); cur; cur = prev_corner(s, sl, *cur)) {
                    if (*cur == c) { cyclic = true; break; }
                    back.push_back(*cur);
                }
                std::reverse(back.begin(), back.end());
                back.insert(back.end(), chain.begin(), chain.end());
                chain = std::move(back);
            }
            if (cyclic)
                throw error("interior vertex orbit (puncture) at triangle " +
                            std::to_string(t) + " corner " + std::to_string(k));
            for (const auto& x : chain) seen.insert(x);
            chains.push_back(std::move(chain));
        }
    }
    return chains;
}

inline std::vector<std::pair<EdgeId, EdgeId>> chain_key(const TriangulatedSurface& s,
                                                        const std::vector<Corner>& chain) {
    std::vector<std::pair<EdgeId, EdgeId>> key;
    for (const auto& c : chain) key.push_back({s.side(c, 0), s.side(c, 1)});
    std::sort(key.begin(), key.end());
    return key;
}

}  // namespace detail

// Vertex orbits, boundary components, genus.  Requires multiplicity checks to
// have passed (validate() runs them first); throws sak::error on non-manifold
// or punctured input.
inline Topology derive_topology(const TriangulatedSurface& s) {
    auto sl = detail::side_slots(s);
    for (const auto& [e, slots] : sl.of) {
        size_t want = s.is_arc(e) ? 2 : 1;
        if (slots.size() != want)
            throw error("edge " + e + " appears in " + std::to_string(slots.size()) +
                        " triangle slots, expected " + std::to_string(want));
    }

    auto chains = detail::corner_chains(s, sl);
    std::sort(chains.begin(), chains.end(),
              [&](const auto& a, const auto& b) {
                  return detail::chain_key(s, a) < detail::chain_key(s, b);
              });

    Topology topo;
    for (size_t i = 0; i < chains.size(); ++i)
        topo.orbits.push_back({static_cast<int>(i), chains[i], -1});

    // Boundary walks.  The head of a chain's last corner is flanked by the
    // boundary side at position+1; walking that side leads to the chain whose
    // first corner starts past it.
    std::map<EdgeId, int> head_orbit;   // segment -> orbit at its forward end
    std::map<EdgeId, EdgeId> next_seg;  // segment -> following segment
    for (const auto& o : topo.orbits) {
        const Corner& first = o.corners.front();
        const Corner& last = o.corners.back();
        EdgeId before = s.side(first, 0);      // boundary side entering the vertex
        EdgeId after = s.side(last, 1);        // boundary side leaving the vertex
        if (!s.is_boundary(before) || !s.is_boundary(after))
            throw error("vertex orbit not flanked by boundary segments");
        head_orbit[before] = o.id;
        if (next_seg.count(before)) throw error("boundary segment " + before + " walked twice");
        next_seg[before] = after;
    }
    if (next_seg.size() != s.boundary_segments.size())
        throw error("boundary walk does not cover every boundary segment");

    std::set<EdgeId> used;
    std::vector<EdgeId> starts = s.boundary_segments;
    std::sort(starts.begin(), starts.end());
    for (const auto& start : starts) {
        if (used.count(start)) continue;
        BoundaryComponent bc;
        bc.id = static_cast<int>(topo.components.size());
        EdgeId cur = start;
        do {
            used.insert(cur);
            bc.segments.push_back(cur);
            bc.marked_points.push_back(head_orbit.at(cur));
            cur = next_seg.at(cur);
        } while (cur != start);
        for (int orbit : bc.marked_points) topo.orbits[orbit].boundary_component = bc.id;
        topo.components.push_back(std::move(bc));
    }
    for (const auto& o : topo.orbits)
        if (o.boundary_component < 0)
            throw error("vertex orbit not on any boundary component");

    int V = static_cast<int>(topo.orbits.size());
    int E = static_cast<int>(s.arcs.size() + s.boundary_segments.size());
    int F = static_cast<int>(s.triangles.size());
    int chi = V - E + F;
    int b = static_cast<int>(topo.components.size());
    int twice_genus = 2 - chi - b;
    if (twice_genus < 0 || twice_genus % 2 != 0)
        throw error("Euler characteristic inconsistent: chi=" + std::to_string(chi) +
                    " b=" + std::to_string(b));
    topo.genus = twice_genus / 2;
    return topo;
}

inline ValidationReport validate(const TriangulatedSurface& s) {
    ValidationReport r;
    if (s.triangles.empty()) r.fail("empty triangle list");

    std::set<EdgeId> declared;
    for (const auto& e : s.arcs) {
        if (e.empty()) r.fail("empty arc label");
        if (!declared.insert(e).second) r.fail("duplicate edge label: " + e);
    }
    for (const auto& e : s.boundary_segments) {
        if (e.empty()) r.fail("empty boundary label");
        if (!declared.insert(e).second) r.fail("duplicate edge label: " + e);
    }
    for (size_t t = 0; t < s.triangles.size(); ++t) {
        const auto& tri = s.triangles[t].sides;
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            r.fail("triangle " + std::to_string(t) + " has repeated sides");
        for (const auto& e : tri)
            if (!declared.count(e))
                r.fail("triangle " + std::to_string(t) + " uses undeclared edge " + e);
    }
    if (!r.pass) return r;

    auto sl = detail::side_slots(s);
    for (const auto& e : s.arcs) {
        size_t n = sl.of.count(e) ? sl.of[e].size() : 0;
        if (n != 2) r.fail("arc " + e + " appears in " + std::to_string(n) + " slots, expected 2");
    }
    for (const auto& e : s.boundary_segments) {
        size_t n = sl.of.count(e) ? sl.of[e].size() : 0;
        if (n != 1)
            r.fail("boundary segment " + e + " appears in " + std::to_string(n) +
                   " slots, expected 1");
    }
    if (!r.pass) return r;

    // Connectivity of the triangle-adjacency graph (shared arcs).
    std::vector<int> comp(s.triangles.size(), -1);
    std::vector<size_t> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        size_t t = stack.back();
        stack.pop_back();
        for (int k = 0; k < 3; ++k) {
            auto tw = detail::twin(sl, s, static_cast<TriangleId>(t), k);
            if (tw && comp[tw->first] < 0) {
                comp[tw->first] = 0;
                stack.push_back(tw->first);
            }
        }
    }
    for (size_t t = 0; t < s.triangles.size(); ++t)
        if (comp[t] < 0) r.fail("triangle-adjacency graph is disconnected");
    if (!r.pass) return r;

    Topology topo;
    try {
        topo = derive_topology(s);
    } catch (const error& e) {
        r.fail(e.what());
        return r;
    }

    r.V = static_cast<int>(topo.orbits.size());
    r.E = static_cast<int>(s.arcs.size() + s.boundary_segments.size());
    r.F = static_cast<int>(s.triangles.size());
    r.euler = r.V - r.E + r.F;
    r.genus = topo.genus;
    r.boundary_components = static_cast<int>(topo.components.size());
    r.marked_points = r.V;
    r.arc_count = static_cast<int>(s.arcs.size());

    int expected = 6 * r.genus + 3 * r.boundary_components + r.marked_points - 6;
    if (r.arc_count != expected)
        r.fail("arc count " + std::to_string(r.arc_count) + " != 6g+3b+m-6 = " +
               std::to_string(expected));
    for (const auto& bc : topo.components)
        if (bc.marked_points.empty()) r.fail("boundary component with no marked point");
    r.small_disc = (r.genus == 0 && r.boundary_components == 1 && r.marked_points < 5);
    return r;
}

// Replace `arc` by the other diagonal of its quadrilateral.  The new diagonal
// keeps the old label, so flip is an involution on the nose.
inline TriangulatedSurface flip(const TriangulatedSurface& s, const EdgeId& arc) {
    if (s.is_boundary(arc)) throw error("cannot flip boundary segment " + arc);
    if (!s.is_arc(arc)) throw error("unknown arc " + arc);
    auto sl = detail::side_slots(s);
    const auto& slots = sl.of.at(arc);
    if (slots.size() != 2) throw error("arc " + arc + " does not have two triangle slots");
    auto [t1, k1] = slots[0];
    auto [t2, k2] = slots[1];
    if (t1 == t2) throw error("flip at " + arc + ": degenerate self-glued quadrilateral");

    const auto& s1 = s.triangles[t1].sides;
    const auto& s2 = s.triangles[t2].sides;
    // t1 = (a,x,y), t2 = (a,z,w) up to rotation.
    EdgeId x = s1[(k1 + 1) % 3], y = s1[(k1 + 2) % 3];
    EdgeId z = s2[(k2 + 1) % 3], w = s2[(k2 + 2) % 3];

    TriangulatedSurface out = s;
    out.triangles[t1].sides = {x, arc, w};
    out.triangles[t2].sides = {y, z, arc};
    return out;
}

}  // namespace sak
