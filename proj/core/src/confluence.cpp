#include "coh/confluence.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace coh {

namespace {

void pattern_positions(const Pattern& p, const Position& pos, std::vector<Position>& out) {
    if (p.kind() == Pattern::Kind::Var) return; // variable positions carry no overlap
    out.push_back(pos);
    if (p.kind() == Pattern::Kind::Bin) {
        pattern_positions(p.left(), pos.child('L'), out);
        pattern_positions(p.right(), pos.child('R'), out);
    }
}

std::optional<Pattern> pattern_subterm(const Pattern& p, const Position& pos) {
    Pattern cur = p;
    for (char c : pos.path) {
        if (cur.kind() != Pattern::Kind::Bin) return std::nullopt;
        cur = c == 'L' ? cur.left() : cur.right();
    }
    return cur;
}

/// Does the pattern (placed at the root) have `rel` inside its non-variable
/// skeleton? True = a critical overlap, false = the position is at or
/// below a metavariable.
bool overlaps_nonvar(const Pattern& p, const std::string& rel) {
    Pattern cur = p;
    for (char c : rel) {
        if (cur.kind() == Pattern::Kind::Var) return false;
        if (cur.kind() != Pattern::Kind::Bin) return false; // cannot happen for valid redexes
        cur = c == 'L' ? cur.left() : cur.right();
    }
    return cur.kind() != Pattern::Kind::Var;
}

const Pattern& from_pattern(const RewriteRule& rule, Direction dir) {
    return dir == Direction::Forward ? rule.lhs : rule.rhs;
}

} // namespace

std::vector<Divergence> critical_pairs(const RewriteSystem& sys, bool include_disjoint) {
    std::vector<Divergence> out;
    for (std::size_t j = 0; j < sys.rules.size(); ++j) {
        const Pattern outer = rename_vars(sys.rules[j].lhs, "#o");
        std::vector<Position> positions;
        pattern_positions(outer, Position{}, positions);
        for (std::size_t i = 0; i < sys.rules.size(); ++i) {
            const Pattern inner = rename_vars(sys.rules[i].lhs, "#i");
            for (const auto& pos : positions) {
                if (pos.is_root() && i >= j) continue; // trivial or symmetric root overlap
                auto sub = pattern_subterm(outer, pos);
                auto mgu = unify(inner, *sub);
                if (!mgu) continue;
                Formula peak = ground(substitute(outer, *mgu));
                out.push_back({peak,
                               Step{sys.rules[i].name, pos, Direction::Forward},
                               Step{sys.rules[j].name, Position{}, Direction::Forward},
                               DivergenceOrigin::CriticalOverlap});
            }
        }
    }
    if (include_disjoint) {
        for (std::size_t i = 0; i < sys.rules.size(); ++i) {
            for (std::size_t j = i; j < sys.rules.size(); ++j) {
                Pattern peak_pattern = Pattern::conj(rename_vars(sys.rules[i].lhs, "#1"),
                                                     rename_vars(sys.rules[j].lhs, "#2"));
                out.push_back({ground(peak_pattern),
                               Step{sys.rules[i].name, Position{"L"}, Direction::Forward},
                               Step{sys.rules[j].name, Position{"R"}, Direction::Forward},
                               DivergenceOrigin::DisjointPair});
            }
        }
    }
    return out;
}

std::vector<Divergence> forkings(const Formula& t, const RewriteSystem& sys) {
    const std::vector<Step> steps = redexes(t, sys);
    std::vector<Divergence> out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        for (std::size_t j = i + 1; j < steps.size(); ++j) {
            const Step& a = steps[i];
            const Step& b = steps[j]; // a.pos <= b.pos by redex ordering
            DivergenceOrigin origin = DivergenceOrigin::DisjointPair;
            if (a.pos == b.pos) {
                origin = DivergenceOrigin::CriticalOverlap;
            } else if (b.pos.path.starts_with(a.pos.path)) {
                const Pattern& pat = from_pattern(*sys.find(a.rule), a.dir);
                if (overlaps_nonvar(pat, b.pos.path.substr(a.pos.path.size())))
                    origin = DivergenceOrigin::CriticalOverlap;
            }
            out.push_back({t, a, b, origin});
        }
    }
    return out;
}

namespace {

// Incremental breadth-first enumeration of descendants, one layer a time.
struct LayeredBfs {
    LayeredBfs(Formula root_, std::size_t budget_) : root(std::move(root_)), budget(budget_) {
        dist.emplace(root, 0);
        frontier.push_back(root);
    }

    bool exhausted() const { return frontier.empty(); }

    void expand(const RewriteSystem& sys) {
        std::deque<Formula> next_frontier;
        for (const Formula& cur : frontier) {
            for (const Step& s : redexes(cur, sys)) {
                Formula next = apply_step(cur, s, sys);
                if (dist.count(next)) continue;
                if (dist.size() >= budget)
                    throw BudgetExceeded("join: state budget (" + std::to_string(budget) +
                                         ") exceeded");
                dist.emplace(next, depth + 1);
                parent.emplace(next, std::make_pair(cur, s));
                next_frontier.push_back(next);
            }
        }
        frontier = std::move(next_frontier);
        ++depth;
    }

    std::vector<Step> path_to(const Formula& f) const {
        std::vector<Step> steps;
        Formula cur = f;
        while (cur != root) {
            const auto& [p, s] = parent.at(cur);
            steps.push_back(s);
            cur = p;
        }
        std::reverse(steps.begin(), steps.end());
        return steps;
    }

    Formula root;
    std::size_t budget;
    std::size_t depth = 0;
    std::deque<Formula> frontier;
    std::unordered_map<Formula, std::size_t, FormulaHash> dist;
    std::unordered_map<Formula, std::pair<Formula, Step>, FormulaHash> parent;
};

} // namespace

std::optional<Tile> join(const Divergence& d, const RewriteSystem& sys, std::size_t bound,
                         const Budgets& budgets) {
    Formula u = apply_step(d.peak, d.left_step, sys);
    Formula v = apply_step(d.peak, d.right_step, sys);
    LayeredBfs bu(u, budgets.max_states), bv(v, budgets.max_states);
    // Grow both sides in lockstep; the first combined distance with a
    // common descendant is minimal, ties broken by printed form.
    for (std::size_t k = 0; k <= 2 * bound; ++k) {
        std::size_t want = std::min(k, bound);
        while (bu.depth < want && !bu.exhausted()) bu.expand(sys);
        while (bv.depth < want && !bv.exhausted()) bv.expand(sys);
        std::optional<Formula> best;
        std::string best_print;
        const auto& smaller = bu.dist.size() <= bv.dist.size() ? bu.dist : bv.dist;
        const auto& other = bu.dist.size() <= bv.dist.size() ? bv.dist : bu.dist;
        for (const auto& [f, df] : smaller) {
            auto it = other.find(f);
            if (it == other.end() || df + it->second != k) continue;
            std::string printed = to_string(f);
            if (!best || printed < best_print) {
                best = f;
                best_print = std::move(printed);
            }
        }
        if (best) return Tile{d, Path{u, bu.path_to(*best)}, Path{v, bv.path_to(*best)}};
        if (bu.exhausted() && bv.exhausted() && k >= bu.depth + bv.depth) break;
    }
    return std::nullopt;
}

bool tile_commutes(const Tile& t, const RewriteSystem& sys) {
    Path left{t.divergence.peak, {}};
    left.steps.push_back(t.divergence.left_step);
    left.steps.insert(left.steps.end(), t.left_path.steps.begin(), t.left_path.steps.end());
    Path right{t.divergence.peak, {}};
    right.steps.push_back(t.divergence.right_step);
    right.steps.insert(right.steps.end(), t.right_path.steps.begin(), t.right_path.steps.end());
    return graphs_equal(evaluate(path_arrow(left, sys)), evaluate(path_arrow(right, sys)));
}

NewmanResult newman_check(const RewriteSystem& sys, const Formula& t, std::size_t bound,
                          const Budgets& budgets) {
    // Reachable step graph.
    std::unordered_map<Formula, std::vector<Formula>, FormulaHash> succs;
    std::deque<Formula> queue{t};
    succs.emplace(t, std::vector<Formula>{});
    std::vector<Formula> order{t};
    while (!queue.empty()) {
        Formula cur = queue.front();
        queue.pop_front();
        for (const Step& s : redexes(cur, sys)) {
            Formula next = apply_step(cur, s, sys);
            succs.at(cur).push_back(next);
            if (succs.count(next)) continue;
            if (succs.size() >= budgets.max_states)
                return {NewmanResult::Verdict::BoundExceeded, std::nullopt, std::nullopt};
            succs.emplace(next, std::vector<Formula>{});
            order.push_back(next);
            queue.push_back(next);
        }
    }

    // Longest path from t; a cycle makes maximal sequences unbounded.
    std::unordered_map<Formula, std::size_t, FormulaHash> longest;
    std::unordered_map<Formula, int, FormulaHash> state; // 0 new, 1 open, 2 done
    bool cyclic = false;
    std::function<std::size_t(const Formula&)> dfs = [&](const Formula& f) -> std::size_t {
        auto it = state.find(f);
        if (it != state.end()) {
            if (it->second == 1) {
                cyclic = true;
                return 0;
            }
            return longest.at(f);
        }
        state[f] = 1;
        std::size_t best = 0;
        for (const auto& nxt : succs.at(f)) {
            if (cyclic) break;
            best = std::max(best, 1 + dfs(nxt));
        }
        state[f] = 2;
        longest[f] = best;
        return best;
    };
    std::size_t max_len = dfs(t);
    if (cyclic || max_len > bound)
        return {NewmanResult::Verdict::BoundExceeded, std::nullopt, std::nullopt};

    // Local confluence of every reachable forking.
    for (const auto& f : order) {
        for (const auto& d : forkings(f, sys)) {
            if (!join(d, sys, bound, budgets))
                return {NewmanResult::Verdict::NotLocallyConfluent, std::nullopt, d};
        }
    }

    // Bounded + locally confluent: the sinks must be a single normal form.
    std::vector<Formula> sinks;
    for (const auto& f : order)
        if (succs.at(f).empty()) sinks.push_back(f);
    if (sinks.size() != 1)
        throw std::logic_error("newman_check: bounded and locally confluent but " +
                               std::to_string(sinks.size()) + " normal forms");
    return {NewmanResult::Verdict::UniqueNF, sinks.front(), std::nullopt};
}

std::vector<DivergenceReport> analyze_divergences(const std::vector<Divergence>& ds,
                                                  const RewriteSystem& sys, std::size_t bound,
                                                  const Budgets& budgets) {
    std::vector<DivergenceReport> out;
    out.reserve(ds.size());
    for (const auto& d : ds) {
        DivergenceReport r{d, join(d, sys, bound, budgets), false};
        if (r.tile) r.commutes = tile_commutes(*r.tile, sys);
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

nlohmann::ordered_json step_json(const Step& s) {
    nlohmann::ordered_json j;
    j["rule"] = s.rule;
    j["position"] = s.pos.path;
    j["direction"] = s.dir == Direction::Forward ? "forward" : "inverse";
    return j;
}

} // namespace

std::string report_json(const std::vector<DivergenceReport>& reports, const RewriteSystem& sys) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["peak"] = to_string(r.divergence.peak);
        j["left_step"] = step_json(r.divergence.left_step);
        j["right_step"] = step_json(r.divergence.right_step);
        j["origin"] = r.divergence.origin == DivergenceOrigin::CriticalOverlap ? "critical-overlap"
                                                                               : "disjoint-pair";
        j["joined"] = r.tile.has_value();
        j["commutes"] = r.commutes;
        if (r.tile) {
            nlohmann::ordered_json tile;
            tile["left"] = nlohmann::ordered_json::parse(to_json(r.tile->left_path, sys));
            tile["right"] = nlohmann::ordered_json::parse(to_json(r.tile->right_path, sys));
            j["tile"] = std::move(tile);
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

} // namespace coh
