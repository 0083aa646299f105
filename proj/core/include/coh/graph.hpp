#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "coh/arrow.hpp"
#include "coh/formula.hpp"

namespace coh {

/// One letter occurrence of either the source or the target formula,
/// 1-based in the left-to-right leaf order.
struct LeafRef {
    enum class Side { Source, Target };
    Side side;
    int index;

    friend auto operator<=>(const LeafRef&, const LeafRef&) = default;
};

inline LeafRef src_ref(int index) { return {LeafRef::Side::Source, index}; }
inline LeafRef tgt_ref(int index) { return {LeafRef::Side::Target, index}; }

/// Unordered, normalized to (smaller, larger).
using Link = std::pair<LeafRef, LeafRef>;

Link make_link(LeafRef a, LeafRef b);

/// An arrow of the model category: a linking of letter occurrences between
/// (and within) a source and a target formula. Links join occurrences of
/// the same letter; they form a set with no self-pairs.
class LinkGraph {
public:
    /// Validates index ranges, letter compatibility and absence of
    /// self-pairs; normalizes, sorts and dedups the link set.
    LinkGraph(Formula source, Formula target, std::vector<Link> links);

    const Formula& source() const { return source_; }
    const Formula& target() const { return target_; }
    const std::vector<Link>& links() const { return links_; } // sorted, unique

    /// True when every link joins a Source leaf to a Target leaf, i.e. the
    /// graph is a relation between finite ordinals (the Rel restriction).
    bool is_relational() const;

    friend bool operator==(const LinkGraph& a, const LinkGraph& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.links_ == b.links_;
    }
    friend bool operator!=(const LinkGraph& a, const LinkGraph& b) { return !(a == b); }

private:
    Formula source_;
    Formula target_;
    std::vector<Link> links_;
};

/// Graph of a single generator arrow. Throws std::invalid_argument for
/// Comp/Tensor input.
LinkGraph generator_graph(const ArrowTerm& g);

/// The identity linking s_i - t_i on A.
LinkGraph identity_graph(const Formula& a);

/// Diagrammatic composition: f first, then g; requires f.target == g.source.
/// Result links join the outer leaves connected by a path whose interior
/// vertices lie in the middle formula and whose edges alternate between
/// f-links and g-links. Closed alternating loops inside the middle formula
/// are discarded.
LinkGraph compose(const LinkGraph& f, const LinkGraph& g);

/// Side-by-side juxtaposition under conn; g's indices are shifted past f's.
LinkGraph tensor(const LinkGraph& f, const LinkGraph& g, Connective conn);

/// The functor G: generators via generator_graph, Comp via compose, Tensor
/// via tensor. Throws TypeError on ill-typed terms.
LinkGraph evaluate(const ArrowTerm& f);

/// Same source, same target, same link set.
bool graphs_equal(const LinkGraph& f, const LinkGraph& g);

/// "s1-t3" rendering of one link / of the sorted link set.
std::string to_string(const LeafRef& r);
std::string to_string(const Link& l);
std::string links_to_string(const LinkGraph& g);

/// DOT: two ranked rows of leaf nodes with letter annotations, links as
/// undirected edges.
std::string to_dot(const LinkGraph& g);

/// {"source":..., "target":..., "links":[[{side,index},...],...]} with the
/// link list sorted; byte-stable for equal graphs.
std::string to_json(const LinkGraph& g);

} // namespace coh
