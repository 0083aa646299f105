#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coh/confluence.hpp"
#include "coh/decide.hpp"
#include "coh/graph.hpp"
#include "coh/parse.hpp"
#include "coh/polytope.hpp"
#include "coh/rewrite.hpp"

namespace coh::cli {

namespace {

Budgets budgets_from_env() {
    Budgets b;
    if (const char* v = std::getenv("COHERENCE_MAX_STATES")) {
        char* end = nullptr;
        unsigned long long n = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && n > 0) b.max_states = static_cast<std::size_t>(n);
    }
    return b;
}

const RewriteSystem& system_or_throw(const std::string& name) {
    const RewriteSystem* sys = system_by_name(name);
    if (!sys) throw std::invalid_argument("unknown rewrite system: " + name);
    return *sys;
}

const Theory& theory_or_throw(const std::string& name) {
    const Theory* th = Theory::by_name(name);
    if (!th) throw std::invalid_argument("unknown theory: " + name);
    return *th;
}

std::vector<std::string> split_letters(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void print_steps(std::ostream& out, const std::vector<Step>& steps) {
    for (const auto& s : steps) out << "  " << to_string(s) << "\n";
}

std::string type_line(const ArrowType& t) {
    return to_string(t.source) + " => " + to_string(t.target);
}

nlohmann::ordered_json step_json(const Step& s) {
    nlohmann::ordered_json j;
    j["rule"] = s.rule;
    j["position"] = s.pos.path;
    j["direction"] = s.dir == Direction::Forward ? "forward" : "inverse";
    return j;
}

int cmd_parse(std::ostream& out, const std::string& text, bool as_arrow,
              const std::string& format) {
    if (as_arrow) {
        ArrowTerm a = parse_arrow(text);
        if (format == "json") {
            nlohmann::ordered_json j;
            ArrowType t = infer_type(a);
            j["arrow"] = to_string(a);
            j["source"] = to_string(t.source);
            j["target"] = to_string(t.target);
            out << j.dump(2) << "\n";
        } else {
            out << to_string(a) << "\n";
        }
        return 0;
    }
    Formula f = parse_formula(text);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["formula"] = to_string(f);
        auto ls = nlohmann::ordered_json::array();
        auto letters = leaves(f);
        for (std::size_t i = 0; i < letters.size(); ++i) {
            nlohmann::ordered_json leaf;
            leaf["index"] = i + 1;
            leaf["letter"] = letters[i];
            ls.push_back(std::move(leaf));
        }
        j["leaves"] = std::move(ls);
        out << j.dump(2) << "\n";
    } else {
        out << to_string(f) << "\n";
    }
    return 0;
}

int cmd_type(std::ostream& out, const std::string& text, const std::string& format) {
    ArrowType t = infer_type(parse_arrow(text));
    if (format == "json") {
        nlohmann::ordered_json j;
        j["source"] = to_string(t.source);
        j["target"] = to_string(t.target);
        out << j.dump(2) << "\n";
    } else {
        out << "source: " << to_string(t.source) << "\n";
        out << "target: " << to_string(t.target) << "\n";
    }
    return 0;
}

int cmd_graph(std::ostream& out, const std::string& text, const std::string& format) {
    LinkGraph g = evaluate(parse_arrow(text));
    if (format == "json") {
        out << to_json(g) << "\n";
    } else if (format == "dot") {
        out << to_dot(g);
    } else {
        out << "source: " << to_string(g.source()) << "\n";
        out << "target: " << to_string(g.target()) << "\n";
        out << "links: " << links_to_string(g) << "\n";
    }
    return 0;
}

int cmd_equal(std::ostream& out, const std::string& theory, const std::string& f_text,
              const std::string& g_text, const std::string& format) {
    const Theory& th = theory_or_throw(theory);
    ArrowTerm f = parse_arrow(f_text);
    ArrowTerm g = parse_arrow(g_text);
    Verdict v = decide_equal(f, g, th);
    if (format == "json") {
        out << verdict_json(v, f, g) << "\n";
    } else {
        out << "verdict: " << to_string(v) << "\n";
        out << "type_f: " << type_line(infer_type(f)) << "\n";
        out << "type_g: " << type_line(infer_type(g)) << "\n";
        out << "graph_f: " << links_to_string(evaluate(f)) << "\n";
        out << "graph_g: " << links_to_string(evaluate(g)) << "\n";
    }
    return v == Verdict::Equal || v == Verdict::ModelEqualOnly ? 0 : 1;
}

int cmd_normalize(std::ostream& out, const std::string& system, const std::string& text,
                  const std::string& format) {
    const RewriteSystem& sys = system_or_throw(system);
    NormalizeResult res = normalize(parse_formula(text), sys, budgets_from_env());
    if (format == "json") {
        out << to_json(res.path, sys) << "\n";
    } else {
        out << "nf: " << to_string(res.nf) << "\n";
        out << "path (" << res.path.steps.size() << " steps):\n";
        print_steps(out, res.path.steps);
    }
    return 0;
}

int cmd_reachable(std::ostream& out, const std::string& system, const std::string& from_text,
                  const std::string& to_text, const std::string& format) {
    const RewriteSystem& sys = system_or_throw(system);
    auto path = reachable(parse_formula(from_text), parse_formula(to_text), sys,
                          budgets_from_env());
    if (format == "json") {
        nlohmann::ordered_json j;
        j["reachable"] = path.has_value();
        if (path) j["path"] = nlohmann::ordered_json::parse(to_json(*path, sys));
        out << j.dump(2) << "\n";
    } else if (path) {
        out << "reachable in " << path->steps.size() << " step(s)\n";
        print_steps(out, path->steps);
    } else {
        out << "unreachable\n";
    }
    return path ? 0 : 1;
}

int cmd_critical_pairs(std::ostream& out, const std::string& system, bool disjoint,
                       std::size_t bound, const std::string& format) {
    const RewriteSystem& sys = system_or_throw(system);
    auto reports = analyze_divergences(critical_pairs(sys, disjoint), sys, bound,
                                       budgets_from_env());
    bool all_good = std::all_of(reports.begin(), reports.end(), [](const DivergenceReport& r) {
        return r.tile.has_value() && r.commutes;
    });
    if (format == "json") {
        out << report_json(reports, sys) << "\n";
    } else {
        for (const auto& r : reports) {
            out << "peak: " << to_string(r.divergence.peak) << "\n";
            out << "  left:  " << to_string(r.divergence.left_step) << "\n";
            out << "  right: " << to_string(r.divergence.right_step) << "\n";
            if (r.tile) {
                out << "  joined: yes (" << r.tile->left_path.steps.size() << "+"
                    << r.tile->right_path.steps.size() << " steps at "
                    << to_string(replay(r.tile->left_path, sys)) << ")\n";
                out << "  commutes: " << (r.commutes ? "yes" : "NO") << "\n";
            } else {
                out << "  joined: NO (within bound " << bound << ")\n";
            }
        }
        out << (all_good ? "all divergences join and commute\n"
                         : "some divergence fails to join or commute\n");
    }
    return all_good ? 0 : 1;
}

int cmd_newman(std::ostream& out, const std::string& system, const std::string& text,
               std::size_t bound, const std::string& format) {
    const RewriteSystem& sys = system_or_throw(system);
    NewmanResult res = newman_check(sys, parse_formula(text), bound, budgets_from_env());
    std::string verdict = res.verdict == NewmanResult::Verdict::UniqueNF ? "UniqueNF"
                          : res.verdict == NewmanResult::Verdict::BoundExceeded
                              ? "BoundExceeded"
                              : "NotLocallyConfluent";
    if (format == "json") {
        nlohmann::ordered_json j;
        j["verdict"] = verdict;
        if (res.nf) j["nf"] = to_string(*res.nf);
        if (res.witness) {
            nlohmann::ordered_json w;
            w["peak"] = to_string(res.witness->peak);
            w["left_step"] = step_json(res.witness->left_step);
            w["right_step"] = step_json(res.witness->right_step);
            j["witness"] = std::move(w);
        }
        out << j.dump(2) << "\n";
    } else {
        out << "verdict: " << verdict << "\n";
        if (res.nf) out << "nf: " << to_string(*res.nf) << "\n";
        if (res.witness) {
            out << "witness peak: " << to_string(res.witness->peak) << "\n";
            out << "  left:  " << to_string(res.witness->left_step) << "\n";
            out << "  right: " << to_string(res.witness->right_step) << "\n";
        }
    }
    return res.verdict == NewmanResult::Verdict::UniqueNF ? 0 : 1;
}

int cmd_associahedron(std::ostream& out, int n, const std::string& letters_csv, int max_n,
                      const std::string& format) {
    Complex c = letters_csv.empty() ? associahedron(n, max_n)
                                    : associahedron(n, split_letters(letters_csv), max_n);
    if (format == "json") {
        out << to_json(c) << "\n";
    } else if (format == "dot") {
        out << to_dot(c);
    } else {
        out << "n: " << n << "\n";
        out << "vertices: " << c.vertices.size() << "\n";
        out << "edges: " << c.edges.size() << "\n";
        out << "faces: " << c.faces.size() << " (" << pentagon_count(c) << " pentagons, "
            << square_count(c) << " squares)\n";
        out << "connected: " << (connected(c) ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_check_faces(std::ostream& out, int n, int max_n, const std::string& format) {
    Complex c = associahedron(n, max_n);
    bool ok = check_faces_commute(c);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["n"] = n;
        j["faces"] = c.faces.size();
        j["all_commute"] = ok;
        out << j.dump(2) << "\n";
    } else {
        out << "n: " << n << "\n";
        out << "faces: " << c.faces.size() << "\n";
        out << (ok ? "all faces commute\n" : "face commutation FAILED\n");
    }
    return ok ? 0 : 1;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"decide equality of arrows in freely generated categorical theories"};
    app.name("coherence");
    app.require_subcommand(1);

    int status = 0;
    std::string text, second, format = "text", theory, system, letters;
    bool as_arrow = false, disjoint = false;
    std::size_t bound = 10;
    int n = 0, max_n = 10;

    auto add_format = [&](CLI::App* cmd, std::vector<std::string> choices) {
        cmd->add_option("--format", format, "output format")
            ->default_val("text")
            ->check(CLI::IsMember(choices));
    };

    CLI::App* parse_cmd = app.add_subcommand("parse", "parse a formula (or arrow) and reprint it");
    parse_cmd->add_option("text", text)->required();
    parse_cmd->add_flag("--arrow", as_arrow, "parse an arrow term instead of a formula");
    add_format(parse_cmd, {"text", "json"});
    parse_cmd->callback([&] { status = cmd_parse(out, text, as_arrow, format); });

    CLI::App* type_cmd = app.add_subcommand("type", "source and target of an arrow term");
    type_cmd->add_option("arrow", text)->required();
    add_format(type_cmd, {"text", "json"});
    type_cmd->callback([&] { status = cmd_type(out, text, format); });

    CLI::App* graph_cmd = app.add_subcommand("graph", "the link graph of an arrow term");
    graph_cmd->add_option("arrow", text)->required();
    add_format(graph_cmd, {"text", "json", "dot"});
    graph_cmd->callback([&] { status = cmd_graph(out, text, format); });

    CLI::App* equal_cmd = app.add_subcommand("equal", "decide equality of two arrow terms");
    equal_cmd->add_option("--theory", theory, "monoidal | symmetric | assoc-dissoc | model")
        ->required();
    equal_cmd->add_option("f", text)->required();
    equal_cmd->add_option("g", second)->required();
    add_format(equal_cmd, {"text", "json"});
    equal_cmd->callback([&] { status = cmd_equal(out, theory, text, second, format); });

    CLI::App* norm_cmd = app.add_subcommand("normalize", "normalize an object term");
    norm_cmd->add_option("--system", system, "monoidal-nf | dissoc")->required();
    norm_cmd->add_option("formula", text)->required();
    add_format(norm_cmd, {"text", "json"});
    norm_cmd->callback([&] { status = cmd_normalize(out, system, text, format); });

    CLI::App* reach_cmd =
        app.add_subcommand("reachable", "search for a reduction path between object terms");
    reach_cmd->add_option("--system", system, "monoidal-nf | dissoc")->required();
    reach_cmd->add_option("from", text)->required();
    reach_cmd->add_option("to", second)->required();
    add_format(reach_cmd, {"text", "json"});
    reach_cmd->callback([&] { status = cmd_reachable(out, system, text, second, format); });

    CLI::App* cp_cmd =
        app.add_subcommand("critical-pairs", "critical pairs, joins and tile commutation");
    cp_cmd->add_option("--system", system, "monoidal-nf | dissoc")->required();
    cp_cmd->add_flag("--disjoint", disjoint, "also emit canonical disjoint-redex peaks");
    cp_cmd->add_option("--bound", bound, "join search bound")->default_val(10);
    add_format(cp_cmd, {"text", "json"});
    cp_cmd->callback([&] { status = cmd_critical_pairs(out, system, disjoint, bound, format); });

    CLI::App* newman_cmd =
        app.add_subcommand("newman", "bounded termination + local confluence check");
    newman_cmd->add_option("--system", system, "monoidal-nf | dissoc")->required();
    newman_cmd->add_option("--bound", bound, "maximal reduction length accepted")
        ->default_val(10000);
    newman_cmd->add_option("formula", text)->required();
    add_format(newman_cmd, {"text", "json"});
    newman_cmd->callback([&] { status = cmd_newman(out, system, text, bound, format); });

    CLI::App* assoc_cmd = app.add_subcommand("associahedron", "build the bracketing complex");
    assoc_cmd->add_option("--n", n, "number of letters")->required();
    assoc_cmd->add_option("--letters", letters, "comma-separated letter names");
    assoc_cmd->add_option("--max-n", max_n, "size guard")->default_val(10);
    add_format(assoc_cmd, {"text", "json", "dot"});
    assoc_cmd->callback([&] { status = cmd_associahedron(out, n, letters, max_n, format); });

    CLI::App* faces_cmd =
        app.add_subcommand("check-faces", "verify every 2-face of the complex commutes");
    faces_cmd->add_option("--n", n, "number of letters")->required();
    faces_cmd->add_option("--max-n", max_n, "size guard")->default_val(10);
    add_format(faces_cmd, {"text", "json"});
    faces_cmd->callback([&] { status = cmd_check_faces(out, n, max_n, format); });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const TypeError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return status;
}

} // namespace coh::cli
