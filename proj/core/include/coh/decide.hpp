#pragma once

#include <optional>
#include <set>
#include <string>

#include "coh/graph.hpp"

namespace coh {

enum class TheoryKind { Monoidal, Symmetric, AssocDissoc, GraphModelOnly };

/// A fragment of the free category. Monoidal and AssocDissoc are preorder
/// theories (all parallel arrows equal); Symmetric decides by graphs; the
/// bare graph model never claims equality, only model-level verdicts.
struct Theory {
    TheoryKind kind;
    std::set<ArrowKind> allowed_generators;
    std::set<Connective> tensor_connectives;

    static const Theory& monoidal();
    static const Theory& symmetric();
    static const Theory& assoc_dissoc();
    static const Theory& graph_model_only();

    /// "monoidal" | "symmetric" | "assoc-dissoc" | "model"; null if unknown.
    static const Theory* by_name(const std::string& name);
    std::string name() const;
};

bool in_fragment(const ArrowTerm& f, const Theory& th);

class FragmentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Verdict { Equal, NotEqual, ModelDistinct, ModelEqualOnly };

std::string to_string(Verdict v);

/// Per-theory equality of two well-typed arrow terms.
///   Monoidal, AssocDissoc: Equal iff the types agree (preorder coherence).
///   Symmetric: Equal iff the types agree and the graphs agree.
///   GraphModelOnly: ModelDistinct when the graphs differ (a sound proof of
///   inequality wherever G is a functor), ModelEqualOnly when they agree
///   (no completeness claim).
/// Throws FragmentError when a term uses generators outside the theory.
Verdict decide_equal(const ArrowTerm& f, const ArrowTerm& g, const Theory& th);

enum class NatTransKind { W, K1 };

struct NaturalitySquare {
    ArrowTerm lhs;
    ArrowTerm rhs;
    bool commutes_in_model;
};

/// The two composites of the naturality square of w or k1 against h.
/// For w with h : A -> B, compares w_B . h with (h /\ h) . w_A.
/// For k1 a context object X is required (the retained factor): with
/// h : B -> B', compares k1[X,B] with k1[X,B'] . (id[X] /\ h).
NaturalitySquare naturality_square(NatTransKind t, const ArrowTerm& h,
                                   const std::optional<Formula>& context = std::nullopt);

/// {"verdict":..., "type_f":..., "type_g":..., "graph_f":..., "graph_g":...}
std::string verdict_json(Verdict v, const ArrowTerm& f, const ArrowTerm& g);

} // namespace coh
