#pragma once

// Shared test utilities: fixture loading, structural comparisons, and small
// oracle helpers kept independent of the code under test where possible.

#include "sak/jsonio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

inline sak::json load_json(const std::string& name) {
    std::string path = std::string(SAK_FIXTURE_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) throw sak::error("missing fixture: " + path);
    return sak::json::parse(in);
}

inline sak::TriangulatedSurface load_surface(const std::string& name) {
    return sak::surface_from_json(load_json(name));
}

inline sak::AdmissibleCut load_cut(const sak::TriangulatedSurface& s, const std::string& name) {
    return sak::cut_from_json(s, load_json(name));
}

// multiset of (from, to) pairs, the relabeling-insensitive view of a quiver
inline std::vector<std::pair<std::string, std::string>> arrow_pairs(const sak::Quiver& q) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& a : q.arrows) out.push_back({a.from, a.to});
    std::sort(out.begin(), out.end());
    return out;
}

inline std::array<sak::EdgeId, 3> least_rotation(const std::array<sak::EdgeId, 3>& t) {
    std::array<sak::EdgeId, 3> best = t;
    for (int r = 1; r < 3; ++r) {
        std::array<sak::EdgeId, 3> cand{t[r % 3], t[(r + 1) % 3], t[(r + 2) % 3]};
        if (cand < best) best = cand;
    }
    return best;
}

// same triangulation up to triangle order and rotation of each side list
inline bool same_triangulation(const sak::TriangulatedSurface& a,
                               const sak::TriangulatedSurface& b) {
    auto key = [](const sak::TriangulatedSurface& s) {
        std::vector<std::array<sak::EdgeId, 3>> ts;
        for (const auto& t : s.triangles) ts.push_back(least_rotation(t.sides));
        std::sort(ts.begin(), ts.end());
        auto arcs = s.arcs, bd = s.boundary_segments;
        std::sort(arcs.begin(), arcs.end());
        std::sort(bd.begin(), bd.end());
        return std::make_tuple(arcs, bd, ts);
    };
    return key(a) == key(b);
}

// abstract quiver builder for symbolic oracles
inline sak::QuiverWithRelations make_quiver(
    std::vector<std::string> vertices,
    std::vector<std::tuple<std::string, std::string, std::string>> arrows,  // id, from, to
    std::vector<std::pair<std::string, std::string>> relations = {}) {
    sak::QuiverWithRelations q;
    q.quiver.vertices = std::move(vertices);
    for (auto& [id, f, t] : arrows) q.quiver.arrows.push_back({id, f, t});
    for (auto& [a, b] : relations) q.relations.push_back({a, b});
    std::sort(q.relations.begin(), q.relations.end());
    return q;
}

// strict equality of quivers-with-relations as labeled objects
inline bool same_labeled_quiver(const sak::QuiverWithRelations& a,
                                const sak::QuiverWithRelations& b) {
    auto va = a.quiver.vertices, vb = b.quiver.vertices;
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    if (va != vb) return false;
    auto ka = [](const sak::QuiverWithRelations& q) {
        std::vector<std::tuple<std::string, std::string, std::string>> as;
        for (const auto& x : q.quiver.arrows) as.push_back({x.id, x.from, x.to});
        std::sort(as.begin(), as.end());
        auto rs = q.relations;
        std::sort(rs.begin(), rs.end());
        return std::make_pair(as, rs);
    };
    return ka(a) == ka(b);
}
