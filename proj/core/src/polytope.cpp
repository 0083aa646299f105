#include "coh/polytope.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "coh/graph.hpp"

namespace coh {

namespace {

void bracketings(const std::vector<std::string>& letters, std::size_t lo, std::size_t hi,
                 std::vector<Formula>& out) {
    if (hi - lo == 1) {
        out.push_back(Formula::letter(letters[lo]));
        return;
    }
    for (std::size_t split = lo + 1; split < hi; ++split) {
        std::vector<Formula> lefts, rights;
        bracketings(letters, lo, split, lefts);
        bracketings(letters, split, hi, rights);
        for (const auto& l : lefts)
            for (const auto& r : rights) out.push_back(Formula::conj(l, r));
    }
}

// Positions of assocR steps, transported across an assocR application at
// `applied`: X (at L,L), Y (at L,R) and Z (at R) move to L, (R,L) and (R,R).
Position transport(const Position& pos, const Position& applied) {
    if (!pos.path.starts_with(applied.path)) return pos;
    std::string rest = pos.path.substr(applied.path.size());
    std::string moved;
    if (rest.rfind("LL", 0) == 0)
        moved = "L" + rest.substr(2);
    else if (rest.rfind("LR", 0) == 0)
        moved = "RL" + rest.substr(2);
    else if (rest.rfind("R", 0) == 0)
        moved = "R" + rest; // R... -> RR...
    else
        throw std::logic_error("transport: position " + pos.path + " overlaps redex at " +
                               applied.path);
    return Position{applied.path + moved};
}

} // namespace

std::vector<std::string> default_letters(int n) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i))
                             : "x" + std::to_string(i - 25));
    return out;
}

Complex associahedron(int n, int max_n) { return associahedron(n, default_letters(n), max_n); }

Complex associahedron(int n, const std::vector<std::string>& letters, int max_n) {
    if (n < 2) throw std::invalid_argument("associahedron requires n >= 2");
    if (n > max_n)
        throw std::invalid_argument("associahedron: n = " + std::to_string(n) +
                                    " exceeds configured maximum " + std::to_string(max_n));
    if (letters.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("associahedron: expected " + std::to_string(n) + " letters, got " +
                                    std::to_string(letters.size()));

    Complex c;
    bracketings(letters, 0, letters.size(), c.vertices);
    std::unordered_map<Formula, int, FormulaHash> index;
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
        index.emplace(c.vertices[i], static_cast<int>(i));

    const RewriteSystem& sys = monoidal_nf();
    std::map<std::pair<int, int>, int> edge_index;
    auto add_edge = [&](int from, const Step& step) {
        int to = index.at(apply_step(c.vertices[static_cast<std::size_t>(from)], step, sys));
        auto [it, inserted] = edge_index.emplace(std::make_pair(from, to),
                                                 static_cast<int>(c.edges.size()));
        if (inserted) c.edges.push_back({from, to, step});
        return it->second;
    };

    for (int u = 0; u < static_cast<int>(c.vertices.size()); ++u) {
        const Formula& t = c.vertices[static_cast<std::size_t>(u)];
        for (const Step& s : redexes(t, sys)) add_edge(u, s);
    }

    auto vertex_of = [&](const Formula& f) { return index.at(f); };
    auto step_at = [&](const Position& pos) { return Step{"assocR", pos, Direction::Forward}; };

    for (int u = 0; u < static_cast<int>(c.vertices.size()); ++u) {
        const Formula& t = c.vertices[static_cast<std::size_t>(u)];
        const std::vector<Step> steps = redexes(t, sys);
        for (std::size_t i = 0; i < steps.size(); ++i) {
            for (std::size_t j = i + 1; j < steps.size(); ++j) {
                const Position& p = steps[i].pos; // p < q lexicographically
                const Position& q = steps[j].pos;
                if (q.path == p.path + "L") {
                    // Mac Lane pentagon: t|p = ((A/\B)/\C)/\D.
                    Formula v1 = apply_step(t, step_at(p), sys);
                    Formula v2 = apply_step(v1, step_at(p), sys);
                    Formula w1 = apply_step(t, step_at(q), sys);
                    Formula w2 = apply_step(w1, step_at(p), sys);
                    ComplexFace face{FaceKind::Pentagon,
                                     {u, vertex_of(v1), vertex_of(v2), vertex_of(w2), vertex_of(w1)},
                                     {}};
                    face.edges = {add_edge(u, step_at(p)),
                                  add_edge(vertex_of(v1), step_at(p)),
                                  add_edge(vertex_of(w2), step_at(p.child('R'))),
                                  add_edge(vertex_of(w1), step_at(p)),
                                  add_edge(u, step_at(q))};
                    c.faces.push_back(std::move(face));
                } else {
                    // Independent redexes commute in a square.
                    Position q_after_p = transport(q, p);
                    Formula u1 = apply_step(t, step_at(p), sys);
                    Formula u2 = apply_step(t, step_at(q), sys);
                    Formula bottom = apply_step(u1, step_at(q_after_p), sys);
                    ComplexFace face{FaceKind::Square,
                                     {u, vertex_of(u1), vertex_of(bottom), vertex_of(u2)},
                                     {}};
                    face.edges = {add_edge(u, step_at(p)),
                                  add_edge(vertex_of(u1), step_at(q_after_p)),
                                  add_edge(vertex_of(u2), step_at(p)),
                                  add_edge(u, step_at(q))};
                    c.faces.push_back(std::move(face));
                }
            }
        }
    }
    return c;
}

namespace {

// The two directed edge-paths of a face from its peak to its sink, as
// sequences of edge indices.
std::pair<std::vector<int>, std::vector<int>> face_sides(const Complex& c, const ComplexFace& f) {
    const std::size_t n = f.vertices.size();
    auto edge_between = [&](int a, int b) -> int {
        for (int e : f.edges) {
            if ((c.edges[static_cast<std::size_t>(e)].from == a &&
                 c.edges[static_cast<std::size_t>(e)].to == b) ||
                (c.edges[static_cast<std::size_t>(e)].from == b &&
                 c.edges[static_cast<std::size_t>(e)].to == a))
                return e;
        }
        throw std::logic_error("face edge between " + std::to_string(a) + " and " +
                               std::to_string(b) + " missing");
    };
    // Peak: both incident cycle edges leave it.
    int peak = -1;
    for (std::size_t i = 0; i < n; ++i) {
        int prev = f.vertices[(i + n - 1) % n];
        int curr = f.vertices[i];
        int next = f.vertices[(i + 1) % n];
        if (c.edges[static_cast<std::size_t>(edge_between(curr, next))].from == curr &&
            c.edges[static_cast<std::size_t>(edge_between(prev, curr))].from == curr) {
            peak = static_cast<int>(i);
            break;
        }
    }
    if (peak < 0) throw std::logic_error("face has no peak vertex");
    auto walk = [&](int dir) {
        std::vector<int> side;
        std::size_t i = static_cast<std::size_t>(peak);
        for (;;) {
            std::size_t nxt = (i + n + static_cast<std::size_t>(dir)) % n;
            int e = edge_between(f.vertices[i], f.vertices[nxt]);
            if (c.edges[static_cast<std::size_t>(e)].from != f.vertices[i]) break;
            side.push_back(e);
            i = nxt;
        }
        return side;
    };
    return {walk(1), walk(-1)};
}

Path side_path(const Complex& c, int start_vertex, const std::vector<int>& side) {
    Path p{c.vertices[static_cast<std::size_t>(start_vertex)], {}};
    for (int e : side) p.steps.push_back(c.edges[static_cast<std::size_t>(e)].step);
    return p;
}

} // namespace

bool check_faces_commute(const Complex& c) {
    const RewriteSystem& sys = monoidal_nf();
    for (const auto& f : c.faces) {
        auto [side_a, side_b] = face_sides(c, f);
        if (side_a.empty() || side_b.empty()) return false;
        int peak = c.edges[static_cast<std::size_t>(side_a.front())].from;
        Path pa = side_path(c, peak, side_a);
        Path pb = side_path(c, peak, side_b);
        if (replay(pa, sys) != replay(pb, sys)) return false;
        if (!graphs_equal(evaluate(path_arrow(pa, sys)), evaluate(path_arrow(pb, sys))))
            return false;
    }
    return true;
}

bool connected(const Complex& c) {
    if (c.vertices.size() <= 1) return true;
    std::vector<std::vector<int>> adj(c.vertices.size());
    for (const auto& e : c.edges) {
        adj[static_cast<std::size_t>(e.from)].push_back(e.to);
        adj[static_cast<std::size_t>(e.to)].push_back(e.from);
    }
    std::vector<bool> seen(c.vertices.size(), false);
    std::deque<int> queue{0};
    seen[0] = true;
    std::size_t visited = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++visited;
                queue.push_back(w);
            }
        }
    }
    return visited == c.vertices.size();
}

std::size_t pentagon_count(const Complex& c) {
    return static_cast<std::size_t>(std::count_if(c.faces.begin(), c.faces.end(), [](const auto& f) {
        return f.kind == FaceKind::Pentagon;
    }));
}

std::size_t square_count(const Complex& c) { return c.faces.size() - pentagon_count(c); }

std::string to_dot(const Complex& c) {
    std::string out = "digraph associahedron {\n  node [shape=box];\n";
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
        out += "  v" + std::to_string(i) + " [label=\"" + to_string(c.vertices[i]) + "\"];\n";
    for (const auto& e : c.edges)
        out += "  v" + std::to_string(e.from) + " -> v" + std::to_string(e.to) + " [label=\"" +
               to_string(e.step.pos) + "\"];\n";
    for (const auto& f : c.faces) {
        out += f.kind == FaceKind::Pentagon ? "  // pentagon:" : "  // square:";
        for (int v : f.vertices) out += " v" + std::to_string(v);
        out += "\n";
    }
    out += "}\n";
    return out;
}

std::string to_json(const Complex& c) {
    nlohmann::ordered_json j;
    j["vertex_count"] = c.vertices.size();
    j["edge_count"] = c.edges.size();
    j["face_count"] = c.faces.size();
    j["pentagon_count"] = pentagon_count(c);
    j["square_count"] = square_count(c);
    auto vs = nlohmann::ordered_json::array();
    for (const auto& v : c.vertices) vs.push_back(to_string(v));
    j["vertices"] = std::move(vs);
    auto es = nlohmann::ordered_json::array();
    for (const auto& e : c.edges) {
        nlohmann::ordered_json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["position"] = e.step.pos.path;
        es.push_back(std::move(je));
    }
    j["edges"] = std::move(es);
    auto fs = nlohmann::ordered_json::array();
    for (const auto& f : c.faces) {
        nlohmann::ordered_json jf;
        jf["kind"] = f.kind == FaceKind::Pentagon ? "pentagon" : "square";
        jf["vertices"] = f.vertices;
        jf["edges"] = f.edges;
        fs.push_back(std::move(jf));
    }
    j["faces"] = std::move(fs);
    return j.dump(2);
}

} // namespace coh
