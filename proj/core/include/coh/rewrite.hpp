#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "coh/arrow.hpp"
#include "coh/formula.hpp"

namespace coh {

/// Formula pattern with metavariables, for rule sides and unification.
class Pattern {
public:
    enum class Kind { Var, Letter, Unit, Bin };

    static Pattern var(std::string name);
    static Pattern letter(std::string name);
    static Pattern unit();
    static Pattern bin(Connective conn, Pattern left, Pattern right);
    static Pattern conj(Pattern l, Pattern r) { return bin(Connective::And, std::move(l), std::move(r)); }
    static Pattern disj(Pattern l, Pattern r) { return bin(Connective::Or, std::move(l), std::move(r)); }
    static Pattern of(const Formula& f);

    Kind kind() const { return node_->kind; }
    const std::string& name() const; // Var or Letter
    Connective conn() const;
    Pattern left() const;
    Pattern right() const;

    bool is_linear() const; // every metavariable occurs at most once
    std::vector<std::string> variables() const;

    friend bool operator==(const Pattern& a, const Pattern& b);
    friend bool operator!=(const Pattern& a, const Pattern& b) { return !(a == b); }

private:
    struct Node {
        Kind kind;
        std::string name;
        Connective conn = Connective::And;
        std::shared_ptr<const Node> left, right;
    };
    explicit Pattern(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

using Subst = std::map<std::string, Formula>;

/// Match a pattern against a ground formula.
std::optional<Subst> match(const Pattern& pat, const Formula& f);

/// Instantiate; every variable of pat must be bound.
Formula instantiate(const Pattern& pat, const Subst& s);

/// Most general unifier of two patterns (caller renames variables apart).
using PatternSubst = std::map<std::string, Pattern>;
std::optional<PatternSubst> unify(const Pattern& a, const Pattern& b);
Pattern substitute(const Pattern& pat, const PatternSubst& s);
Pattern rename_vars(const Pattern& pat, const std::string& suffix);

/// Ground a pattern by assigning fresh letters (a, b, c, ...) to its
/// variables in first-occurrence order.
Formula ground(const Pattern& pat);

/// Path from the root: L selects the left subterm, R the right.
struct Position {
    std::string path; // chars 'L' and 'R'

    bool is_root() const { return path.empty(); }
    Position child(char step) const { return {path + step}; }
    friend auto operator<=>(const Position&, const Position&) = default;
};

std::string to_string(const Position& p); // "root" or the LR string

std::optional<Formula> subterm(const Formula& t, const Position& p);
/// Replace the subterm at p; throws std::invalid_argument when p is invalid.
Formula replace(const Formula& t, const Position& p, const Formula& sub);

enum class Direction { Forward, Inverse };

struct Step {
    std::string rule;
    Position pos;
    Direction dir = Direction::Forward;

    friend auto operator<=>(const Step&, const Step&) = default;
};

std::string to_string(const Step& s);

/// A schematic object-term rewrite. The arrow builders turn a matched
/// substitution into the generator arrow witnessing one application; they
/// may be empty for artificial systems that never compile to arrows.
struct RewriteRule {
    std::string name;
    Pattern lhs;
    Pattern rhs;
    std::function<ArrowTerm(const Subst&)> forward_arrow;
    std::function<ArrowTerm(const Subst&)> inverse_arrow;
};

struct RewriteSystem {
    std::string name;
    std::vector<RewriteRule> rules;
    std::set<std::string> invertible; // rules whose Inverse steps are allowed

    const RewriteRule* find(const std::string& rule_name) const;
    bool is_invertible(const std::string& rule_name) const {
        return invertible.count(rule_name) > 0;
    }
};

/// assocR: (A/\B)/\C => A/\(B/\C); unitL: T/\A => A; unitR: A/\T => A.
const RewriteSystem& monoidal_nf();

/// assocAndR and assocOrR (both invertible) plus d: A/\(B\/C) => (A/\B)\/C.
const RewriteSystem& dissoc();

/// Lookup by CLI name: "monoidal-nf" or "dissoc"; null when unknown.
const RewriteSystem* system_by_name(const std::string& name);

/// All rule matches at all positions, position-lexicographically, then by
/// rule name, Forward before Inverse. Invertible rules also match their
/// rhs, reported as Inverse steps.
std::vector<Step> redexes(const Formula& t, const RewriteSystem& sys);

/// One rewrite; throws std::invalid_argument when the step does not match.
Formula apply_step(const Formula& t, const Step& s, const RewriteSystem& sys);

struct Path {
    Formula start;
    std::vector<Step> steps;
};

/// Replays the path and returns the end formula; throws when a step fails.
Formula replay(const Path& p, const RewriteSystem& sys);

struct Budgets {
    std::size_t max_states = 1000000; // reachability / join state budget
    std::size_t max_steps = 10000;    // normalization step budget
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NormalizeResult {
    Formula nf;
    Path path;
};

/// Repeatedly applies the first Forward redex in redexes() order until no
/// Forward redex remains. Throws BudgetExceeded past budgets.max_steps.
NormalizeResult normalize(const Formula& t, const RewriteSystem& sys, const Budgets& budgets = {});

/// Breadth-first search over all redexes (including Inverse steps of
/// invertible rules); returns a shortest path from `from` to `to`, the
/// lexicographically least one among those, or nullopt when the reachable
/// set is exhausted. Throws BudgetExceeded past budgets.max_states.
std::optional<Path> reachable(const Formula& from, const Formula& to, const RewriteSystem& sys,
                              const Budgets& budgets = {});

/// Compiles a path into the composite arrow term: each step's generator is
/// embedded in context by tensoring with identities along its position and
/// the steps are composed in order. An empty path yields Id(start).
/// Throws std::invalid_argument for Inverse steps of non-invertible rules
/// and for positions that descend through ->.
ArrowTerm path_arrow(const Path& p, const RewriteSystem& sys);

/// {"start":..., "steps":[{rule,position,direction},...], "end":...}.
std::string to_json(const Path& p, const RewriteSystem& sys);

/// Termination measure for monoidal_nf: sum over /\-nodes of the node
/// count of the left child. Every monoidal_nf step decreases it.
std::size_t monoidal_measure(const Formula& t);

/// The unit-free right comb over the leaf sequence (T when no leaves);
/// the normal form of monoidal_nf, computed independently of the rules.
Formula right_comb(const Formula& t);

} // namespace coh
