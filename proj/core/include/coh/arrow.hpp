#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coh/formula.hpp"

namespace coh {

/// Generator kinds plus the two closure operations. Generators carry
/// explicit formula parameters; no index inference happens anywhere.
enum class ArrowKind {
    Id,         // A -> A
    Alpha,      // (A /\ B) /\ C -> A /\ (B /\ C)
    AlphaInv,   // A /\ (B /\ C) -> (A /\ B) /\ C
    AlphaOr,    // (A \/ B) \/ C -> A \/ (B \/ C)
    AlphaOrInv, // A \/ (B \/ C) -> (A \/ B) \/ C
    Lambda,     // T /\ A -> A
    LambdaInv,  // A -> T /\ A
    Rho,        // A /\ T -> A
    RhoInv,     // A -> A /\ T
    Sigma,      // A /\ B -> B /\ A
    W,          // A -> A /\ A
    K1,         // A /\ B -> A
    K2,         // A /\ B -> B
    Eta,        // B -> A -> (A /\ B)
    Eps,        // A /\ (A -> B) -> B
    D,          // A /\ (B \/ C) -> (A /\ B) \/ C
    Comp,       // g . f (f applies first)
    Tensor,     // f /\ g or f \/ g
};

/// Arrow terms of the free category before quotienting: generator
/// applications closed under composition and /\, \/ tensoring.
class ArrowTerm {
public:
    static ArrowTerm generator(ArrowKind kind, std::vector<Formula> params);

    static ArrowTerm id(Formula a) { return generator(ArrowKind::Id, {std::move(a)}); }
    static ArrowTerm alpha(Formula a, Formula b, Formula c) { return generator(ArrowKind::Alpha, {std::move(a), std::move(b), std::move(c)}); }
    static ArrowTerm alpha_inv(Formula a, Formula b, Formula c) { return generator(ArrowKind::AlphaInv, {std::move(a), std::move(b), std::move(c)}); }
    static ArrowTerm alpha_or(Formula a, Formula b, Formula c) { return generator(ArrowKind::AlphaOr, {std::move(a), std::move(b), std::move(c)}); }
    static ArrowTerm alpha_or_inv(Formula a, Formula b, Formula c) { return generator(ArrowKind::AlphaOrInv, {std::move(a), std::move(b), std::move(c)}); }
    static ArrowTerm lambda(Formula a) { return generator(ArrowKind::Lambda, {std::move(a)}); }
    static ArrowTerm lambda_inv(Formula a) { return generator(ArrowKind::LambdaInv, {std::move(a)}); }
    static ArrowTerm rho(Formula a) { return generator(ArrowKind::Rho, {std::move(a)}); }
    static ArrowTerm rho_inv(Formula a) { return generator(ArrowKind::RhoInv, {std::move(a)}); }
    static ArrowTerm sigma(Formula a, Formula b) { return generator(ArrowKind::Sigma, {std::move(a), std::move(b)}); }
    static ArrowTerm diag(Formula a) { return generator(ArrowKind::W, {std::move(a)}); }
    static ArrowTerm k1(Formula a, Formula b) { return generator(ArrowKind::K1, {std::move(a), std::move(b)}); }
    static ArrowTerm k2(Formula a, Formula b) { return generator(ArrowKind::K2, {std::move(a), std::move(b)}); }
    static ArrowTerm eta(Formula a, Formula b) { return generator(ArrowKind::Eta, {std::move(a), std::move(b)}); }
    static ArrowTerm eps(Formula a, Formula b) { return generator(ArrowKind::Eps, {std::move(a), std::move(b)}); }
    static ArrowTerm dissoc(Formula a, Formula b, Formula c) { return generator(ArrowKind::D, {std::move(a), std::move(b), std::move(c)}); }

    /// comp(g, f) is g after f; typing requires target(f) == source(g).
    static ArrowTerm comp(ArrowTerm g, ArrowTerm f);
    static ArrowTerm tensor(Connective conn, ArrowTerm f, ArrowTerm g);

    ArrowKind kind() const { return node_->kind; }
    bool is_generator() const { return kind() != ArrowKind::Comp && kind() != ArrowKind::Tensor; }

    /// Formula parameters of a generator (empty for Comp/Tensor).
    const std::vector<Formula>& params() const { return node_->params; }

    /// Comp accessors: after() applies second, before() first.
    ArrowTerm after() const;
    ArrowTerm before() const;

    /// Tensor accessors.
    Connective conn() const;
    ArrowTerm left() const;
    ArrowTerm right() const;

    std::size_t hash() const { return node_->hash; }

    friend bool operator==(const ArrowTerm& a, const ArrowTerm& b);
    friend bool operator!=(const ArrowTerm& a, const ArrowTerm& b) { return !(a == b); }

private:
    struct Node {
        ArrowKind kind;
        std::vector<Formula> params;
        Connective conn = Connective::And;
        std::shared_ptr<const Node> first, second; // Comp: after/before; Tensor: left/right
        std::size_t hash = 0;
    };

    explicit ArrowTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

struct ArrowType {
    Formula source;
    Formula target;
    friend bool operator==(const ArrowType& a, const ArrowType& b) {
        return a.source == b.source && a.target == b.target;
    }
};

/// Composition of ill-matched arrows. Carries the two incompatible
/// formulas and the path (of after/before/left/right hops) to the Comp.
class TypeError : public std::runtime_error {
public:
    TypeError(std::string message, std::string expected, std::string found, std::string subterm_path);
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }
    const std::string& subterm_path() const { return subterm_path_; }

private:
    std::string expected_, found_, subterm_path_;
};

/// Source and target of an arrow term, by the generator typing table and
/// induction through Comp/Tensor. Throws TypeError on a mismatched Comp.
ArrowType infer_type(const ArrowTerm& f);

/// Canonical text form; parse_arrow inverts it.
std::string to_string(const ArrowTerm& f);

/// Generator name table used by the parser and printer.
const char* generator_name(ArrowKind kind);
std::optional<ArrowKind> generator_by_name(const std::string& name);
std::size_t generator_arity(ArrowKind kind);

struct ArrowTermHash {
    std::size_t operator()(const ArrowTerm& f) const { return f.hash(); }
};

} // namespace coh
