#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace coh {

enum class Connective { And, Or, Imp };

/// Object terms of the free category: letters, the unit object, and the
/// binary connectives. Immutable; copies share structure.
class Formula {
public:
    enum class Kind { Letter, Unit, Bin };

    static Formula letter(std::string name);
    static Formula unit();
    static Formula bin(Connective conn, Formula left, Formula right);

    // Shorthands for the three connectives.
    static Formula conj(Formula l, Formula r) { return bin(Connective::And, std::move(l), std::move(r)); }
    static Formula disj(Formula l, Formula r) { return bin(Connective::Or, std::move(l), std::move(r)); }
    static Formula imp(Formula l, Formula r) { return bin(Connective::Imp, std::move(l), std::move(r)); }

    Kind kind() const { return node_->kind; }
    bool is_letter() const { return kind() == Kind::Letter; }
    bool is_unit() const { return kind() == Kind::Unit; }
    bool is_bin() const { return kind() == Kind::Bin; }

    const std::string& letter_name() const;
    Connective conn() const;
    Formula left() const;
    Formula right() const;

    /// Structural hash, precomputed at construction.
    std::size_t hash() const { return node_->hash; }

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    struct Node {
        Kind kind;
        std::string name;                  // Letter
        Connective conn = Connective::And; // Bin
        std::shared_ptr<const Node> left, right;
        std::size_t hash = 0;
    };

    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

/// Total structural order (letters by name, then children); used for
/// deterministic containers and tie-breaking.
int compare(const Formula& a, const Formula& b);
inline bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

/// Left-to-right letter occurrences; Unit contributes nothing. The i-th
/// entry (0-based here) is occurrence i+1 in 1-based leaf indexing.
std::vector<std::string> leaves(const Formula& f);

/// Total node count (letters, units and binary nodes all count one).
std::size_t node_count(const Formula& f);

/// Canonical text form; parse_formula inverts it. Compound operands are
/// always parenthesized, so bracketing is visible.
std::string to_string(const Formula& f);

std::string to_string(Connective c);

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

} // namespace coh
