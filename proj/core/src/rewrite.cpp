#include "coh/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace coh {

Pattern Pattern::var(std::string name) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Var;
    node->name = std::move(name);
    return Pattern(std::move(node));
}

Pattern Pattern::letter(std::string name) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Letter;
    node->name = std::move(name);
    return Pattern(std::move(node));
}

Pattern Pattern::unit() {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Unit;
    return Pattern(std::move(node));
}

Pattern Pattern::bin(Connective conn, Pattern left, Pattern right) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Bin;
    node->conn = conn;
    node->left = left.node_;
    node->right = right.node_;
    return Pattern(std::move(node));
}

Pattern Pattern::of(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Letter: return letter(f.letter_name());
    case Formula::Kind::Unit: return unit();
    case Formula::Kind::Bin: return bin(f.conn(), of(f.left()), of(f.right()));
    }
    throw std::logic_error("unknown formula kind");
}

const std::string& Pattern::name() const {
    if (kind() != Kind::Var && kind() != Kind::Letter)
        throw std::logic_error("name on unnamed pattern node");
    return node_->name;
}

Connective Pattern::conn() const {
    if (kind() != Kind::Bin) throw std::logic_error("conn on non-binary pattern");
    return node_->conn;
}

Pattern Pattern::left() const {
    if (kind() != Kind::Bin) throw std::logic_error("left on non-binary pattern");
    return Pattern(node_->left);
}

Pattern Pattern::right() const {
    if (kind() != Kind::Bin) throw std::logic_error("right on non-binary pattern");
    return Pattern(node_->right);
}

bool operator==(const Pattern& a, const Pattern& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Pattern::Kind::Var:
    case Pattern::Kind::Letter: return a.name() == b.name();
    case Pattern::Kind::Unit: return true;
    case Pattern::Kind::Bin:
        return a.conn() == b.conn() && a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

namespace {

void collect_vars(const Pattern& p, std::vector<std::string>& out) {
    switch (p.kind()) {
    case Pattern::Kind::Var: out.push_back(p.name()); break;
    case Pattern::Kind::Letter:
    case Pattern::Kind::Unit: break;
    case Pattern::Kind::Bin:
        collect_vars(p.left(), out);
        collect_vars(p.right(), out);
        break;
    }
}

bool match_into(const Pattern& pat, const Formula& f, Subst& s) {
    switch (pat.kind()) {
    case Pattern::Kind::Var: {
        auto [it, inserted] = s.emplace(pat.name(), f);
        return inserted || it->second == f;
    }
    case Pattern::Kind::Letter: return f.is_letter() && f.letter_name() == pat.name();
    case Pattern::Kind::Unit: return f.is_unit();
    case Pattern::Kind::Bin:
        return f.is_bin() && f.conn() == pat.conn() && match_into(pat.left(), f.left(), s) &&
               match_into(pat.right(), f.right(), s);
    }
    return false;
}

bool occurs(const std::string& var, const Pattern& p) {
    switch (p.kind()) {
    case Pattern::Kind::Var: return p.name() == var;
    case Pattern::Kind::Letter:
    case Pattern::Kind::Unit: return false;
    case Pattern::Kind::Bin: return occurs(var, p.left()) || occurs(var, p.right());
    }
    return false;
}

} // namespace

std::vector<std::string> Pattern::variables() const {
    std::vector<std::string> out;
    collect_vars(*this, out);
    return out;
}

bool Pattern::is_linear() const {
    auto vars = variables();
    std::sort(vars.begin(), vars.end());
    return std::adjacent_find(vars.begin(), vars.end()) == vars.end();
}

std::optional<Subst> match(const Pattern& pat, const Formula& f) {
    Subst s;
    if (!match_into(pat, f, s)) return std::nullopt;
    return s;
}

Formula instantiate(const Pattern& pat, const Subst& s) {
    switch (pat.kind()) {
    case Pattern::Kind::Var: {
        auto it = s.find(pat.name());
        if (it == s.end())
            throw std::invalid_argument("unbound metavariable " + pat.name());
        return it->second;
    }
    case Pattern::Kind::Letter: return Formula::letter(pat.name());
    case Pattern::Kind::Unit: return Formula::unit();
    case Pattern::Kind::Bin:
        return Formula::bin(pat.conn(), instantiate(pat.left(), s), instantiate(pat.right(), s));
    }
    throw std::logic_error("unknown pattern kind");
}

Pattern substitute(const Pattern& pat, const PatternSubst& s) {
    switch (pat.kind()) {
    case Pattern::Kind::Var: {
        auto it = s.find(pat.name());
        return it == s.end() ? pat : it->second;
    }
    case Pattern::Kind::Letter:
    case Pattern::Kind::Unit: return pat;
    case Pattern::Kind::Bin:
        return Pattern::bin(pat.conn(), substitute(pat.left(), s), substitute(pat.right(), s));
    }
    throw std::logic_error("unknown pattern kind");
}

Pattern rename_vars(const Pattern& pat, const std::string& suffix) {
    switch (pat.kind()) {
    case Pattern::Kind::Var: return Pattern::var(pat.name() + suffix);
    case Pattern::Kind::Letter:
    case Pattern::Kind::Unit: return pat;
    case Pattern::Kind::Bin:
        return Pattern::bin(pat.conn(), rename_vars(pat.left(), suffix),
                            rename_vars(pat.right(), suffix));
    }
    throw std::logic_error("unknown pattern kind");
}

std::optional<PatternSubst> unify(const Pattern& a, const Pattern& b) {
    PatternSubst s;
    std::vector<std::pair<Pattern, Pattern>> work{{a, b}};
    auto bind = [&](const std::string& var, const Pattern& value) -> bool {
        if (occurs(var, value)) return false;
        PatternSubst single{{var, value}};
        for (auto& [k, v] : s) v = substitute(v, single);
        s.emplace(var, value);
        return true;
    };
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        x = substitute(x, s);
        y = substitute(y, s);
        if (x == y) continue;
        if (x.kind() == Pattern::Kind::Var) {
            if (!bind(x.name(), y)) return std::nullopt;
        } else if (y.kind() == Pattern::Kind::Var) {
            if (!bind(y.name(), x)) return std::nullopt;
        } else if (x.kind() == Pattern::Kind::Bin && y.kind() == Pattern::Kind::Bin &&
                   x.conn() == y.conn()) {
            work.emplace_back(x.left(), y.left());
            work.emplace_back(x.right(), y.right());
        } else {
            return std::nullopt;
        }
    }
    return s;
}

namespace {

void collect_letters(const Pattern& p, std::set<std::string>& out) {
    switch (p.kind()) {
    case Pattern::Kind::Letter: out.insert(p.name()); break;
    case Pattern::Kind::Var:
    case Pattern::Kind::Unit: break;
    case Pattern::Kind::Bin:
        collect_letters(p.left(), out);
        collect_letters(p.right(), out);
        break;
    }
}

} // namespace

Formula ground(const Pattern& pat) {
    std::set<std::string> taken;
    collect_letters(pat, taken);
    Subst assignment;
    std::size_t next = 0;
    auto fresh = [&]() {
        for (;;) {
            std::string candidate = next < 26 ? std::string(1, static_cast<char>('a' + next))
                                              : "x" + std::to_string(next - 25);
            ++next;
            if (!taken.count(candidate)) return candidate;
        }
    };
    for (const auto& v : pat.variables())
        if (!assignment.count(v)) assignment.emplace(v, Formula::letter(fresh()));
    return instantiate(pat, assignment);
}

std::string to_string(const Position& p) { return p.is_root() ? "root" : p.path; }

std::optional<Formula> subterm(const Formula& t, const Position& p) {
    Formula cur = t;
    for (char c : p.path) {
        if (!cur.is_bin()) return std::nullopt;
        cur = c == 'L' ? cur.left() : cur.right();
    }
    return cur;
}

Formula replace(const Formula& t, const Position& p, const Formula& sub) {
    if (p.is_root()) return sub;
    if (!t.is_bin())
        throw std::invalid_argument("position " + p.path + " invalid in " + to_string(t));
    Position rest{p.path.substr(1)};
    if (p.path[0] == 'L') return Formula::bin(t.conn(), replace(t.left(), rest, sub), t.right());
    return Formula::bin(t.conn(), t.left(), replace(t.right(), rest, sub));
}

std::string to_string(const Step& s) {
    std::string out = s.rule;
    if (s.dir == Direction::Inverse) out += "^-1";
    out += " @ ";
    out += to_string(s.pos);
    return out;
}

const RewriteRule* RewriteSystem::find(const std::string& rule_name) const {
    for (const auto& r : rules)
        if (r.name == rule_name) return &r;
    return nullptr;
}

const RewriteSystem& monoidal_nf() {
    static const RewriteSystem sys = [] {
        Pattern A = Pattern::var("A"), B = Pattern::var("B"), C = Pattern::var("C");
        RewriteSystem s;
        s.name = "monoidal-nf";
        s.rules.push_back(
            {"assocR", Pattern::conj(Pattern::conj(A, B), C), Pattern::conj(A, Pattern::conj(B, C)),
             [](const Subst& m) { return ArrowTerm::alpha(m.at("A"), m.at("B"), m.at("C")); },
             nullptr});
        s.rules.push_back({"unitL", Pattern::conj(Pattern::unit(), A), A,
                           [](const Subst& m) { return ArrowTerm::lambda(m.at("A")); }, nullptr});
        s.rules.push_back({"unitR", Pattern::conj(A, Pattern::unit()), A,
                           [](const Subst& m) { return ArrowTerm::rho(m.at("A")); }, nullptr});
        return s;
    }();
    return sys;
}

const RewriteSystem& dissoc() {
    static const RewriteSystem sys = [] {
        Pattern A = Pattern::var("A"), B = Pattern::var("B"), C = Pattern::var("C");
        RewriteSystem s;
        s.name = "dissoc";
        s.rules.push_back(
            {"assocAndR", Pattern::conj(Pattern::conj(A, B), C), Pattern::conj(A, Pattern::conj(B, C)),
             [](const Subst& m) { return ArrowTerm::alpha(m.at("A"), m.at("B"), m.at("C")); },
             [](const Subst& m) { return ArrowTerm::alpha_inv(m.at("A"), m.at("B"), m.at("C")); }});
        s.rules.push_back(
            {"assocOrR", Pattern::disj(Pattern::disj(A, B), C), Pattern::disj(A, Pattern::disj(B, C)),
             [](const Subst& m) { return ArrowTerm::alpha_or(m.at("A"), m.at("B"), m.at("C")); },
             [](const Subst& m) {
                 return ArrowTerm::alpha_or_inv(m.at("A"), m.at("B"), m.at("C"));
             }});
        s.rules.push_back(
            {"d", Pattern::conj(A, Pattern::disj(B, C)), Pattern::disj(Pattern::conj(A, B), C),
             [](const Subst& m) { return ArrowTerm::dissoc(m.at("A"), m.at("B"), m.at("C")); },
             nullptr});
        s.invertible = {"assocAndR", "assocOrR"};
        return s;
    }();
    return sys;
}

const RewriteSystem* system_by_name(const std::string& name) {
    if (name == "monoidal-nf") return &monoidal_nf();
    if (name == "dissoc") return &dissoc();
    return nullptr;
}

namespace {

void positions_preorder(const Formula& t, const Position& pos, std::vector<Position>& out) {
    out.push_back(pos);
    if (t.is_bin()) {
        positions_preorder(t.left(), pos.child('L'), out);
        positions_preorder(t.right(), pos.child('R'), out);
    }
}

} // namespace

std::vector<Step> redexes(const Formula& t, const RewriteSystem& sys) {
    std::vector<Position> positions;
    positions_preorder(t, Position{}, positions);
    std::vector<Step> out;
    for (const auto& pos : positions) {
        Formula at = *subterm(t, pos);
        for (const auto& rule : sys.rules) {
            if (match(rule.lhs, at)) out.push_back({rule.name, pos, Direction::Forward});
            if (sys.is_invertible(rule.name) && match(rule.rhs, at))
                out.push_back({rule.name, pos, Direction::Inverse});
        }
    }
    std::sort(out.begin(), out.end(), [](const Step& a, const Step& b) {
        if (a.pos != b.pos) return a.pos < b.pos;
        if (a.rule != b.rule) return a.rule < b.rule;
        return a.dir < b.dir;
    });
    return out;
}

Formula apply_step(const Formula& t, const Step& s, const RewriteSystem& sys) {
    const RewriteRule* rule = sys.find(s.rule);
    if (!rule) throw std::invalid_argument("unknown rule " + s.rule);
    if (s.dir == Direction::Inverse && !sys.is_invertible(s.rule))
        throw std::invalid_argument("rule " + s.rule + " is not invertible");
    auto at = subterm(t, s.pos);
    if (!at) throw std::invalid_argument("position " + to_string(s.pos) + " invalid in " + to_string(t));
    const Pattern& from = s.dir == Direction::Forward ? rule->lhs : rule->rhs;
    const Pattern& to = s.dir == Direction::Forward ? rule->rhs : rule->lhs;
    auto m = match(from, *at);
    if (!m)
        throw std::invalid_argument("rule " + s.rule + " does not match at " + to_string(s.pos) +
                                    " in " + to_string(t));
    return replace(t, s.pos, instantiate(to, *m));
}

Formula replay(const Path& p, const RewriteSystem& sys) {
    Formula cur = p.start;
    for (const auto& s : p.steps) cur = apply_step(cur, s, sys);
    return cur;
}

NormalizeResult normalize(const Formula& t, const RewriteSystem& sys, const Budgets& budgets) {
    Path path{t, {}};
    Formula cur = t;
    for (;;) {
        std::vector<Step> steps = redexes(cur, sys);
        auto it = std::find_if(steps.begin(), steps.end(),
                               [](const Step& s) { return s.dir == Direction::Forward; });
        if (it == steps.end()) break;
        if (path.steps.size() >= budgets.max_steps)
            throw BudgetExceeded("normalize: step budget (" + std::to_string(budgets.max_steps) +
                                 ") exceeded; suspected nontermination");
        cur = apply_step(cur, *it, sys);
        path.steps.push_back(*it);
    }
    return {cur, std::move(path)};
}

std::optional<Path> reachable(const Formula& from, const Formula& to, const RewriteSystem& sys,
                              const Budgets& budgets) {
    if (from == to) return Path{from, {}};
    struct ParentInfo {
        Formula parent;
        Step step;
    };
    std::unordered_map<Formula, ParentInfo, FormulaHash> parent;
    std::deque<Formula> queue{from};
    std::unordered_map<Formula, bool, FormulaHash> seen;
    seen.emplace(from, true);
    while (!queue.empty()) {
        Formula cur = queue.front();
        queue.pop_front();
        for (const Step& s : redexes(cur, sys)) {
            Formula next = apply_step(cur, s, sys);
            if (seen.count(next)) continue;
            if (seen.size() >= budgets.max_states)
                throw BudgetExceeded("reachable: state budget (" +
                                     std::to_string(budgets.max_states) + ") exceeded");
            seen.emplace(next, true);
            parent.emplace(next, ParentInfo{cur, s});
            if (next == to) {
                std::vector<Step> steps;
                Formula walk = next;
                while (walk != from) {
                    const auto& info = parent.at(walk);
                    steps.push_back(info.step);
                    walk = info.parent;
                }
                std::reverse(steps.begin(), steps.end());
                return Path{from, std::move(steps)};
            }
            queue.push_back(next);
        }
    }
    return std::nullopt;
}

namespace {

ArrowTerm embed(const Formula& context, const std::string& pos, std::size_t at, ArrowTerm inner) {
    if (at == pos.size()) return inner;
    if (!context.is_bin())
        throw std::invalid_argument("position runs past a leaf while embedding an arrow");
    if (context.conn() == Connective::Imp)
        throw std::invalid_argument("cannot embed an arrow under ->: no tensoring at implications");
    if (pos[at] == 'L')
        return ArrowTerm::tensor(context.conn(), embed(context.left(), pos, at + 1, std::move(inner)),
                                 ArrowTerm::id(context.right()));
    return ArrowTerm::tensor(context.conn(), ArrowTerm::id(context.left()),
                             embed(context.right(), pos, at + 1, std::move(inner)));
}

} // namespace

ArrowTerm path_arrow(const Path& p, const RewriteSystem& sys) {
    std::optional<ArrowTerm> acc;
    Formula cur = p.start;
    for (const Step& s : p.steps) {
        const RewriteRule* rule = sys.find(s.rule);
        if (!rule) throw std::invalid_argument("unknown rule " + s.rule);
        if (s.dir == Direction::Inverse && !sys.is_invertible(s.rule))
            throw std::invalid_argument("rule " + s.rule + " is not invertible");
        auto at = subterm(cur, s.pos);
        if (!at)
            throw std::invalid_argument("position " + to_string(s.pos) + " invalid in " +
                                        to_string(cur));
        const Pattern& from = s.dir == Direction::Forward ? rule->lhs : rule->rhs;
        auto m = match(from, *at);
        if (!m)
            throw std::invalid_argument("rule " + s.rule + " does not match at " +
                                        to_string(s.pos) + " in " + to_string(cur));
        const auto& builder = s.dir == Direction::Forward ? rule->forward_arrow : rule->inverse_arrow;
        if (!builder)
            throw std::invalid_argument("rule " + s.rule + " has no arrow for " +
                                        (s.dir == Direction::Forward ? "forward" : "inverse") +
                                        " steps");
        ArrowTerm step_arrow = embed(cur, s.pos.path, 0, builder(*m));
        acc = acc ? ArrowTerm::comp(std::move(step_arrow), std::move(*acc)) : std::move(step_arrow);
        cur = apply_step(cur, s, sys);
    }
    return acc ? *acc : ArrowTerm::id(p.start);
}

std::string to_json(const Path& p, const RewriteSystem& sys) {
    nlohmann::ordered_json j;
    j["start"] = to_string(p.start);
    auto steps = nlohmann::ordered_json::array();
    for (const auto& s : p.steps) {
        nlohmann::ordered_json step;
        step["rule"] = s.rule;
        step["position"] = s.pos.path;
        step["direction"] = s.dir == Direction::Forward ? "forward" : "inverse";
        steps.push_back(std::move(step));
    }
    j["steps"] = std::move(steps);
    j["end"] = to_string(replay(p, sys));
    return j.dump(2);
}

std::size_t monoidal_measure(const Formula& t) {
    if (!t.is_bin()) return 0;
    std::size_t m = monoidal_measure(t.left()) + monoidal_measure(t.right());
    if (t.conn() == Connective::And) m += node_count(t.left());
    return m;
}

Formula right_comb(const Formula& t) {
    const auto ls = leaves(t);
    if (ls.empty()) return Formula::unit();
    Formula acc = Formula::letter(ls.back());
    for (std::size_t i = ls.size() - 1; i-- > 0;)
        acc = Formula::conj(Formula::letter(ls[i]), std::move(acc));
    return acc;
}

} // namespace coh
