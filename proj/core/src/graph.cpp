#include "coh/graph.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace coh {

Link make_link(LeafRef a, LeafRef b) {
    if (b < a) std::swap(a, b);
    return {a, b};
}

LinkGraph::LinkGraph(Formula source, Formula target, std::vector<Link> links)
    : source_(std::move(source)), target_(std::move(target)) {
    const auto src_letters = leaves(source_);
    const auto tgt_letters = leaves(target_);
    auto letter_of = [&](const LeafRef& r) -> const std::string& {
        const auto& row = r.side == LeafRef::Side::Source ? src_letters : tgt_letters;
        if (r.index < 1 || static_cast<std::size_t>(r.index) > row.size())
            throw std::invalid_argument("leaf index " + std::to_string(r.index) +
                                        " out of range for " +
                                        (r.side == LeafRef::Side::Source ? "source " : "target ") +
                                        to_string(r.side == LeafRef::Side::Source ? source_
                                                                                  : target_));
        return row[static_cast<std::size_t>(r.index) - 1];
    };
    for (auto& l : links) {
        l = make_link(l.first, l.second);
        if (l.first == l.second)
            throw std::invalid_argument("self-link at " + to_string(l.first));
        if (letter_of(l.first) != letter_of(l.second))
            throw std::invalid_argument("link " + to_string(l) +
                                        " joins different letters: " + letter_of(l.first) +
                                        " vs " + letter_of(l.second));
    }
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    links_ = std::move(links);
}

bool LinkGraph::is_relational() const {
    return std::all_of(links_.begin(), links_.end(), [](const Link& l) {
        return l.first.side == LeafRef::Side::Source && l.second.side == LeafRef::Side::Target;
    });
}

namespace {

std::vector<Link> identity_links(std::size_t n) {
    std::vector<Link> links;
    links.reserve(n);
    for (int i = 1; i <= static_cast<int>(n); ++i)
        links.push_back(make_link(src_ref(i), tgt_ref(i)));
    return links;
}

} // namespace

LinkGraph identity_graph(const Formula& a) {
    return LinkGraph(a, a, identity_links(leaves(a).size()));
}

LinkGraph generator_graph(const ArrowTerm& g) {
    if (!g.is_generator())
        throw std::invalid_argument("generator_graph requires a generator, got " + to_string(g));
    const ArrowType type = infer_type(g);
    const auto& p = g.params();
    std::vector<Link> links;
    switch (g.kind()) {
    case ArrowKind::Id:
    case ArrowKind::Alpha:
    case ArrowKind::AlphaInv:
    case ArrowKind::AlphaOr:
    case ArrowKind::AlphaOrInv:
    case ArrowKind::Lambda:
    case ArrowKind::LambdaInv:
    case ArrowKind::Rho:
    case ArrowKind::RhoInv:
    case ArrowKind::D:
        // These generators preserve the leaf sequence.
        links = identity_links(leaves(type.source).size());
        break;
    case ArrowKind::Sigma: {
        const int a = static_cast<int>(leaves(p[0]).size());
        const int b = static_cast<int>(leaves(p[1]).size());
        for (int i = 1; i <= a; ++i) links.push_back(make_link(src_ref(i), tgt_ref(b + i)));
        for (int j = 1; j <= b; ++j) links.push_back(make_link(src_ref(a + j), tgt_ref(j)));
        break;
    }
    case ArrowKind::W: {
        const int a = static_cast<int>(leaves(p[0]).size());
        for (int i = 1; i <= a; ++i) {
            links.push_back(make_link(src_ref(i), tgt_ref(i)));
            links.push_back(make_link(src_ref(i), tgt_ref(a + i)));
        }
        break;
    }
    case ArrowKind::K1: {
        const int a = static_cast<int>(leaves(p[0]).size());
        for (int i = 1; i <= a; ++i) links.push_back(make_link(src_ref(i), tgt_ref(i)));
        break;
    }
    case ArrowKind::K2: {
        const int a = static_cast<int>(leaves(p[0]).size());
        const int b = static_cast<int>(leaves(p[1]).size());
        for (int j = 1; j <= b; ++j) links.push_back(make_link(src_ref(a + j), tgt_ref(j)));
        break;
    }
    case ArrowKind::Eta: {
        // B -> A -> (A /\ B): caps over the two copies of A in the target.
        const int a = static_cast<int>(leaves(p[0]).size());
        const int b = static_cast<int>(leaves(p[1]).size());
        for (int i = 1; i <= a; ++i) links.push_back(make_link(tgt_ref(i), tgt_ref(a + i)));
        for (int j = 1; j <= b; ++j) links.push_back(make_link(src_ref(j), tgt_ref(2 * a + j)));
        break;
    }
    case ArrowKind::Eps: {
        // A /\ (A -> B) -> B: cups under the two copies of A in the source.
        const int a = static_cast<int>(leaves(p[0]).size());
        const int b = static_cast<int>(leaves(p[1]).size());
        for (int i = 1; i <= a; ++i) links.push_back(make_link(src_ref(i), src_ref(a + i)));
        for (int j = 1; j <= b; ++j) links.push_back(make_link(src_ref(2 * a + j), tgt_ref(j)));
        break;
    }
    case ArrowKind::Comp:
    case ArrowKind::Tensor:
        throw std::invalid_argument("generator_graph requires a generator");
    }
    return LinkGraph(type.source, type.target, std::move(links));
}

namespace {

// Vertex numbering for composition: 0..a-1 outer source, a..a+m-1 middle,
// a+m..a+m+c-1 outer target.
struct ComposeSpace {
    int a, m, c;

    int of_f(const LeafRef& r) const {
        return r.side == LeafRef::Side::Source ? r.index - 1 : a + r.index - 1;
    }
    int of_g(const LeafRef& r) const {
        return r.side == LeafRef::Side::Source ? a + r.index - 1 : a + m + r.index - 1;
    }
    bool is_middle(int v) const { return v >= a && v < a + m; }
    LeafRef to_outer(int v) const {
        return v < a ? src_ref(v + 1) : tgt_ref(v - a - m + 1);
    }
};

} // namespace

LinkGraph compose(const LinkGraph& f, const LinkGraph& g) {
    if (f.target() != g.source())
        throw TypeError("compose: middle formula mismatch: " + to_string(f.target()) + " vs " +
                            to_string(g.source()),
                        to_string(f.target()), to_string(g.source()), "compose");
    ComposeSpace sp{static_cast<int>(leaves(f.source()).size()),
                    static_cast<int>(leaves(f.target()).size()),
                    static_cast<int>(leaves(g.target()).size())};

    // Adjacency per edge family; alternation means a path entering a middle
    // vertex along an f-link must leave along a g-link and vice versa.
    std::vector<std::vector<int>> adj_f(sp.a + sp.m + sp.c), adj_g(sp.a + sp.m + sp.c);
    for (const auto& l : f.links()) {
        int u = sp.of_f(l.first), v = sp.of_f(l.second);
        adj_f[u].push_back(v);
        adj_f[v].push_back(u);
    }
    for (const auto& l : g.links()) {
        int u = sp.of_g(l.first), v = sp.of_g(l.second);
        adj_g[u].push_back(v);
        adj_g[v].push_back(u);
    }

    std::vector<Link> out;
    std::vector<int> stack;
    // seen[v][need] over middle vertices; need 0 = f-link next, 1 = g-link next.
    std::vector<std::array<bool, 2>> seen(sp.a + sp.m + sp.c);
    for (int x = 0; x < sp.a + sp.m + sp.c; ++x) {
        if (sp.is_middle(x)) continue;
        for (auto& s : seen) s = {false, false};
        // Endpoints in the outer source can only be touched by f-links,
        // outer-target endpoints only by g-links.
        stack.clear();
        stack.push_back(x * 2 + (x < sp.a ? 0 : 1));
        while (!stack.empty()) {
            int state = stack.back();
            stack.pop_back();
            int v = state / 2;
            int need = state % 2;
            const auto& nbrs = need == 0 ? adj_f[v] : adj_g[v];
            for (int w : nbrs) {
                if (!sp.is_middle(w)) {
                    if (w != x) out.push_back(make_link(sp.to_outer(x), sp.to_outer(w)));
                    continue;
                }
                int next = w * 2 + (1 - need);
                if (!seen[w][1 - need]) {
                    seen[w][1 - need] = true;
                    stack.push_back(next);
                }
            }
        }
    }
    return LinkGraph(f.source(), g.target(), std::move(out));
}

LinkGraph tensor(const LinkGraph& f, const LinkGraph& g, Connective conn) {
    const int src_shift = static_cast<int>(leaves(f.source()).size());
    const int tgt_shift = static_cast<int>(leaves(f.target()).size());
    std::vector<Link> links = f.links();
    auto shifted = [&](const LeafRef& r) {
        return LeafRef{r.side,
                       r.index + (r.side == LeafRef::Side::Source ? src_shift : tgt_shift)};
    };
    for (const auto& l : g.links()) links.push_back(make_link(shifted(l.first), shifted(l.second)));
    return LinkGraph(Formula::bin(conn, f.source(), g.source()),
                     Formula::bin(conn, f.target(), g.target()), std::move(links));
}

LinkGraph evaluate(const ArrowTerm& f) {
    switch (f.kind()) {
    case ArrowKind::Comp:
        return compose(evaluate(f.before()), evaluate(f.after()));
    case ArrowKind::Tensor:
        return tensor(evaluate(f.left()), evaluate(f.right()), f.conn());
    default:
        return generator_graph(f);
    }
}

bool graphs_equal(const LinkGraph& f, const LinkGraph& g) { return f == g; }

std::string to_string(const LeafRef& r) {
    return (r.side == LeafRef::Side::Source ? "s" : "t") + std::to_string(r.index);
}

std::string to_string(const Link& l) { return to_string(l.first) + "-" + to_string(l.second); }

std::string links_to_string(const LinkGraph& g) {
    std::string out;
    for (const auto& l : g.links()) {
        if (!out.empty()) out += ' ';
        out += to_string(l);
    }
    return out;
}

std::string to_dot(const LinkGraph& g) {
    const auto src = leaves(g.source());
    const auto tgt = leaves(g.target());
    std::string out = "graph linkgraph {\n";
    out += "  // source: " + to_string(g.source()) + "\n";
    out += "  // target: " + to_string(g.target()) + "\n";
    out += "  node [shape=plaintext];\n  { rank=min;";
    for (std::size_t i = 0; i < src.size(); ++i)
        out += " s" + std::to_string(i + 1) + " [label=\"s" + std::to_string(i + 1) + ":" +
               src[i] + "\"];";
    out += " }\n  { rank=max;";
    for (std::size_t i = 0; i < tgt.size(); ++i)
        out += " t" + std::to_string(i + 1) + " [label=\"t" + std::to_string(i + 1) + ":" +
               tgt[i] + "\"];";
    out += " }\n";
    for (const auto& l : g.links())
        out += "  " + to_string(l.first) + " -- " + to_string(l.second) + ";\n";
    out += "}\n";
    return out;
}

std::string to_json(const LinkGraph& g) {
    nlohmann::ordered_json j;
    j["source"] = to_string(g.source());
    j["target"] = to_string(g.target());
    auto ref = [](const LeafRef& r) {
        nlohmann::ordered_json o;
        o["side"] = r.side == LeafRef::Side::Source ? "s" : "t";
        o["index"] = r.index;
        return o;
    };
    auto links = nlohmann::ordered_json::array();
    for (const auto& l : g.links())
        links.push_back(nlohmann::ordered_json::array({ref(l.first), ref(l.second)}));
    j["links"] = std::move(links);
    return j.dump(2);
}

} // namespace coh
