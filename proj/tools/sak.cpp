// Command-line front end: inspect triangulated surfaces, build their gentle
// quivers, enumerate and compare admissible cuts, solve level labelings,
// search for derived-equivalence certificates, and drive the move calculus.
//
// Exit codes: 0 affirmative, 3 negative answer (no certificate, conflict,
// not equi-distributed, no witness, no plan, invalid surface), 2 bad input.

#include <CLI11.hpp>

#include "sak/annulus.hpp"
#include "sak/equivalence.hpp"
#include "sak/grading.hpp"
#include "sak/jsonio.hpp"
#include "sak/moves.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <utility>

namespace {

using sak::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sak::error("cannot open " + path);
    return json::parse(in);
}

sak::TriangulatedSurface load_surface(const std::string& path) {
    return sak::surface_from_json(load_json(path));
}

sak::AdmissibleCut load_cut(const sak::TriangulatedSurface& s, const std::string& path) {
    return sak::cut_from_json(s, load_json(path));
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw sak::error("cannot write " + path);
    out << text;
}

std::pair<int, int> parse_range(const std::string& text) {
    auto pos = text.find("..");
    if (pos == std::string::npos) throw sak::error("level range must look like LO..HI");
    return {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 2))};
}

void print_quiver(const sak::QuiverWithRelations& q, bool as_json) {
    if (as_json) {
        std::cout << sak::quiver_to_json(q).dump(2) << "\n";
        return;
    }
    std::cout << q.quiver.vertices.size() << " vertices, " << q.quiver.arrows.size()
              << " arrows, " << q.relations.size() << " relations\n";
    for (const auto& a : q.quiver.arrows)
        std::cout << "  " << a.id << ": " << a.from << " -> " << a.to << "\n";
    for (const auto& r : q.relations) std::cout << "  relation " << r.first << " * " << r.second
                                                << "\n";
}

std::string describe_cut(const sak::AdmissibleCut& c) {
    std::string out;
    for (const auto& [t, lc] : c.locals) {
        if (!out.empty()) out += " ";
        out += "t" + std::to_string(t) + ":" + std::to_string(lc.corner);
    }
    return out.empty() ? std::string("(empty)") : out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"surface algebra kit: cuts, gradings, and derived-equivalence certificates"};
    app.require_subcommand(1);
    int rc = 0;

    // validate SURFACE
    {
        auto* cmd = app.add_subcommand("validate", "check a triangulated surface");
        auto surface = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_flag("--json", *as_json, "emit the full report as JSON");
        cmd->callback([=, &rc] {
            auto rep = sak::validate(load_surface(*surface));
            if (*as_json) {
                std::cout << sak::report_to_json(rep).dump(2) << "\n";
            } else if (rep.pass) {
                std::cout << "pass: genus " << rep.genus << ", " << rep.boundary_components
                          << " boundary components, " << rep.marked_points << " marked points, "
                          << rep.arc_count << " arcs\n";
            } else {
                for (const auto& e : rep.errors) std::cout << "fail: " << e << "\n";
            }
            rc = rep.pass ? 0 : 3;
        });
    }

    // quiver SURFACE
    {
        auto* cmd = app.add_subcommand("quiver", "gentle quiver of the triangulation");
        auto surface = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        auto dot = std::make_shared<std::string>();
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->add_option("--dot", *dot, "also write a Graphviz file");
        cmd->callback([=] {
            auto s = load_surface(*surface);
            auto q = sak::quiver_of(s);
            if (!dot->empty()) write_file(*dot, sak::quiver_to_dot(q, s.name));
            print_quiver(q, *as_json);
        });
    }

    // cuts SURFACE
    {
        auto* cmd = app.add_subcommand("cuts", "enumerate admissible cuts");
        auto surface = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->callback([=] {
            auto s = load_surface(*surface);
            auto cuts = sak::enumerate_cuts(s);
            if (*as_json) {
                json j;
                j["count"] = cuts.size();
                j["cuts"] = json::array();
                for (const auto& c : cuts) j["cuts"].push_back(sak::cut_to_json(c));
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << cuts.size() << " admissible cuts\n";
                for (const auto& c : cuts) std::cout << "  " << describe_cut(c) << "\n";
            }
        });
    }

    // cut-apply SURFACE CUT
    {
        auto* cmd = app.add_subcommand("cut-apply", "quiver of the cut algebra");
        auto surface = std::make_shared<std::string>();
        auto cut = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        auto dot = std::make_shared<std::string>();
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_option("cut", *cut, "cut JSON file")->required();
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->add_option("--dot", *dot, "also write a Graphviz file");
        cmd->callback([=] {
            auto s = load_surface(*surface);
            auto q = sak::apply_cut(s, load_cut(s, *cut));
            if (!dot->empty()) write_file(*dot, sak::quiver_to_dot(q, s.name));
            print_quiver(q, *as_json);
        });
    }

    // distribution SURFACE CUT
    {
        auto* cmd = app.add_subcommand("distribution", "cut count per boundary component");
        auto surface = std::make_shared<std::string>();
        auto cut = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_option("cut", *cut, "cut JSON file")->required();
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->callback([=] {
            auto s = load_surface(*surface);
            auto d = sak::distribution(s, load_cut(s, *cut));
            if (*as_json) {
                std::cout << sak::distribution_to_json(d).dump(2) << "\n";
            } else {
                for (const auto& [b, n] : d.counts)
                    std::cout << "component " << b << ": " << n << "\n";
            }
        });
    }

    // equidist SURFACE CUT1 CUT2
    {
        auto* cmd = app.add_subcommand("equidist", "are two cuts equi-distributed?");
        auto surface = std::make_shared<std::string>();
        auto cut1 = std::make_shared<std::string>();
        auto cut2 = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_option("cut1", *cut1, "first cut JSON file")->required();
        cmd->add_option("cut2", *cut2, "second cut JSON file")->required();
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->callback([=, &rc] {
            auto s = load_surface(*surface);
            auto c1 = load_cut(s, *cut1);
            auto c2 = load_cut(s, *cut2);
            bool eq = sak::equidistributed(s, c1, c2);
            if (*as_json) {
                json j;
                j["equidistributed"] = eq;
                j["dist1"] = sak::distribution_to_json(sak::distribution(s, c1));
                j["dist2"] = sak::distribution_to_json(sak::distribution(s, c2));
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << (eq ? "equi-distributed" : "not equi-distributed") << "\n";
            }
            rc = eq ? 0 : 3;
        });
    }

    // levels SURFACE CUT1 CUT2
    {
        auto* cmd = app.add_subcommand("levels", "solve the level labeling of a cut pair");
        auto surface = std::make_shared<std::string>();
        auto cut1 = std::make_shared<std::string>();
        auto cut2 = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_option("cut1", *cut1, "first cut JSON file")->required();
        cmd->add_option("cut2", *cut2, "second cut JSON file")->required();
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->callback([=, &rc] {
            auto s = load_surface(*surface);
            auto w1 = sak::weight_of_cut(s, load_cut(s, *cut1));
            auto w2 = sak::weight_of_cut(s, load_cut(s, *cut2));
            auto res = sak::solve_levels(w1, w2);
            if (sak::levels_ok(res)) {
                const auto& lab = std::get<sak::LevelLabeling>(res);
                if (*as_json) {
                    std::cout << sak::labeling_to_json(lab).dump(2) << "\n";
                } else {
                    for (const auto& [v, r] : lab.r) std::cout << v << ": " << r << "\n";
                }
                rc = 0;
            } else {
                const auto& w = std::get<sak::ConflictWitness>(res);
                if (*as_json) {
                    std::cout << sak::conflict_to_json(w).dump(2) << "\n";
                } else {
                    std::cout << "conflict: cycle of " << w.cycle.size()
                              << " vertices, discrepancy " << w.discrepancy << "\n";
                }
                rc = 3;
            }
        });
    }

    // covering SURFACE CUT --levels LO..HI
    {
        auto* cmd = app.add_subcommand("covering", "finite window of the graded covering");
        auto surface = std::make_shared<std::string>();
        auto cut = std::make_shared<std::string>();
        auto range = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        auto dot = std::make_shared<std::string>();
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_option("cut", *cut, "cut JSON file")->required();
        cmd->add_option("--levels", *range, "level range LO..HI")->required();
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->add_option("--dot", *dot, "also write a Graphviz file");
        cmd->callback([=] {
            auto s = load_surface(*surface);
            auto [lo, hi] = parse_range(*range);
            auto w = sak::covering_window(sak::weight_of_cut(s, load_cut(s, *cut)), lo, hi);
            if (!dot->empty()) write_file(*dot, sak::window_to_dot(w));
            if (*as_json) {
                std::cout << sak::window_to_json(w).dump(2) << "\n";
            } else {
                size_t bridges = 0;
                for (const auto& a : w.arrows) bridges += a.bridge ? 1 : 0;
                std::cout << "levels " << w.lo << ".." << w.hi << ": " << w.vertices.size()
                          << " vertices, " << w.arrows.size() << " arrows (" << bridges
                          << " bridges), " << w.relations.size() << " relations\n";
            }
        });
    }

    // autos SURFACE
    {
        auto* cmd = app.add_subcommand("autos", "quiver automorphisms of the triangulation");
        auto surface = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->callback([=] {
            auto autos = sak::quiver_automorphisms(sak::quiver_of(load_surface(*surface)));
            if (*as_json) {
                json j;
                j["count"] = autos.size();
                j["automorphisms"] = json::array();
                for (const auto& f : autos)
                    j["automorphisms"].push_back(sak::automorphism_to_json(f));
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << autos.size() << " automorphisms\n";
                for (const auto& f : autos) {
                    std::string line;
                    for (const auto& [v, w] : f.vertex_map) {
                        if (!line.empty()) line += " ";
                        line += v + ">" + w;
                    }
                    std::cout << "  " << line << "\n";
                }
            }
        });
    }

    // derived-equiv SURFACE CUT1 CUT2
    {
        auto* cmd = app.add_subcommand("derived-equiv",
                                       "search for a derived-equivalence certificate");
        auto surface = std::make_shared<std::string>();
        auto cut1 = std::make_shared<std::string>();
        auto cut2 = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_option("cut1", *cut1, "first cut JSON file")->required();
        cmd->add_option("cut2", *cut2, "second cut JSON file")->required();
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->callback([=, &rc] {
            auto s = load_surface(*surface);
            auto res = sak::derived_equivalence_certificate(s, load_cut(s, *cut1),
                                                            load_cut(s, *cut2));
            if (*as_json) {
                std::cout << sak::equivalence_to_json(res).dump(2) << "\n";
            } else if (res.certificate) {
                std::cout << "equivalent via " << res.certificate->direction
                          << (res.via_identity ? " (identity)" : " (non-identity symmetry)")
                          << ", " << res.automorphisms_tried << " symmetries tried\n";
            } else {
                std::cout << "no certificate (" << res.automorphisms_tried
                          << " symmetries tried)\n";
            }
            rc = res.certificate ? 0 : 3;
        });
    }

    // flip SURFACE ARC
    {
        auto* cmd = app.add_subcommand("flip", "flip an arc of the triangulation");
        auto surface = std::make_shared<std::string>();
        auto arc = std::make_shared<std::string>();
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_option("arc", *arc, "arc to flip")->required();
        cmd->callback([=] {
            std::cout << sak::surface_to_json(sak::flip(load_surface(*surface), *arc)).dump(2)
                      << "\n";
        });
    }

    // mutate FILE VERTEX
    {
        auto* cmd = app.add_subcommand("mutate", "quiver mutation at a vertex");
        auto input = std::make_shared<std::string>();
        auto vertex = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("input", *input, "quiver or surface JSON file")->required();
        cmd->add_option("vertex", *vertex, "vertex (arc) to mutate at")->required();
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->callback([=] {
            json j = load_json(*input);
            sak::Quiver q = j.contains("triangles")
                                ? sak::quiver_of(sak::surface_from_json(j)).quiver
                                : sak::quiver_from_json(j).quiver;
            print_quiver({sak::mutate(q, *vertex), {}}, *as_json);
        });
    }

    // reflect INPUT [--cut CUT] [--co] VERTEX
    {
        auto* cmd = app.add_subcommand("reflect", "reflection at a vertex");
        auto input = std::make_shared<std::string>();
        auto vertex = std::make_shared<std::string>();
        auto cut = std::make_shared<std::string>();
        auto co = std::make_shared<bool>(false);
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("input", *input, "quiver JSON file, or surface JSON with --cut")
            ->required();
        cmd->add_option("vertex", *vertex, "vertex to reflect at")->required();
        cmd->add_option("--cut", *cut, "cut JSON file (input is then a surface)");
        cmd->add_flag("--co", *co, "coreflection instead of reflection");
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->callback([=] {
            json j = load_json(*input);
            sak::QuiverWithRelations q;
            if (j.contains("triangles")) {
                if (cut->empty())
                    throw sak::error("input is a surface; pass the cut with --cut");
                auto s = sak::surface_from_json(j);
                q = sak::apply_cut(s, load_cut(s, *cut));
            } else {
                if (!cut->empty()) throw sak::error("--cut requires a surface input");
                q = sak::quiver_from_json(j);
            }
            print_quiver(*co ? sak::coreflect(q, *vertex) : sak::reflect(q, *vertex), *as_json);
        });
    }

    // dict-check SURFACE CUT VERTEX
    {
        auto* cmd = app.add_subcommand(
            "dict-check", "match a reflection against flips of the underlying surface");
        auto surface = std::make_shared<std::string>();
        auto cut = std::make_shared<std::string>();
        auto vertex = std::make_shared<std::string>();
        auto relaxed = std::make_shared<bool>(false);
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_option("cut", *cut, "cut JSON file")->required();
        cmd->add_option("vertex", *vertex, "vertex to reflect at")->required();
        cmd->add_flag("--relaxed-iso", *relaxed, "accept matches up to quiver isomorphism");
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->callback([=, &rc] {
            auto s = load_surface(*surface);
            auto res = sak::dict_check(s, load_cut(s, *cut), *vertex, *relaxed);
            if (*as_json) {
                std::cout << sak::dict_to_json(res).dump(2) << "\n";
            } else if (res.witness) {
                std::cout << "witness: flip at " << *vertex << ", cut " << describe_cut(res.witness->cut)
                          << (res.witness->iso ? " (up to isomorphism)" : "") << "\n";
            } else {
                std::cout << "no witness among " << res.cuts_tried << " cuts\n";
            }
            rc = res.witness ? 0 : 3;
        });
    }

    // annulus-plan SURFACE CUT1 CUT2 [--depth N]
    {
        auto* cmd = app.add_subcommand("annulus-plan",
                                       "plan a reflection sequence between annulus cuts");
        auto surface = std::make_shared<std::string>();
        auto cut1 = std::make_shared<std::string>();
        auto cut2 = std::make_shared<std::string>();
        auto depth = std::make_shared<int>(-1);
        auto as_json = std::make_shared<bool>(false);
        cmd->add_option("surface", *surface, "surface JSON file")->required();
        cmd->add_option("cut1", *cut1, "start cut JSON file")->required();
        cmd->add_option("cut2", *cut2, "goal cut JSON file")->required();
        cmd->add_option("--depth", *depth, "explicit search depth (default: adaptive)");
        cmd->add_flag("--json", *as_json, "emit JSON");
        cmd->callback([=, &rc] {
            auto s = load_surface(*surface);
            auto res = sak::plan_reflections(s, load_cut(s, *cut1), load_cut(s, *cut2), *depth);
            if (!res.warning.empty()) std::cerr << "warning: " << res.warning << "\n";
            if (*as_json) {
                std::cout << sak::plan_to_json(res).dump(2) << "\n";
            } else if (res.plan) {
                std::cout << res.plan->moves.size() << " moves\n";
                for (const auto& m : res.plan->moves)
                    std::cout << "  " << (m.kind == sak::MoveKind::reflect ? "reflect " : "coreflect ")
                              << m.vertex << "\n";
            } else {
                std::cout << "no plan within depth " << res.depth_limit << " ("
                          << res.states_expanded << " states expanded)\n";
            }
            rc = res.plan ? 0 : 3;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
