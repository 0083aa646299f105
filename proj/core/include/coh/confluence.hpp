#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coh/graph.hpp"
#include "coh/rewrite.hpp"

namespace coh {

enum class DivergenceOrigin { CriticalOverlap, DisjointPair };

/// A one-step forking: two distinct steps out of the same peak.
struct Divergence {
    Formula peak;
    Step left_step;
    Step right_step;
    DivergenceOrigin origin = DivergenceOrigin::CriticalOverlap;
};

/// A closed forking: paths from the two step-results to a common formula.
struct Tile {
    Divergence divergence;
    Path left_path;
    Path right_path;
};

/// All overlaps of one rule's lhs with a non-variable subterm of another's
/// (including self-overlaps, excluding the trivial root self-overlap),
/// found by unification and grounded with fresh letters; deterministic
/// order. With include_disjoint, canonical side-by-side peaks
/// lhs_i /\ lhs_j are appended, flagged DisjointPair.
std::vector<Divergence> critical_pairs(const RewriteSystem& sys, bool include_disjoint = false);

/// All unordered pairs of distinct redexes of a concrete term, classified
/// by whether the shallower redex pattern overlaps the deeper position.
std::vector<Divergence> forkings(const Formula& t, const RewriteSystem& sys);

/// BFS (over the same step relation as reachable) for a common descendant
/// of the two step-results, each side within `bound` steps. Among common
/// descendants the one with the least combined distance wins, tie-broken
/// by printed form. nullopt signals possible non-joinability, not a proof.
std::optional<Tile> join(const Divergence& d, const RewriteSystem& sys, std::size_t bound = 10,
                         const Budgets& budgets = {});

/// True iff the two composites peak -> common formula compile (via
/// path_arrow) to arrows with equal graphs.
bool tile_commutes(const Tile& t, const RewriteSystem& sys);

struct NewmanResult {
    enum class Verdict { UniqueNF, BoundExceeded, NotLocallyConfluent };
    Verdict verdict;
    std::optional<Formula> nf;         // set for UniqueNF
    std::optional<Divergence> witness; // set for NotLocallyConfluent
};

/// Verifies every maximal step sequence from t has length <= bound (cycles
/// count as exceeding any bound) and every one-step forking of every
/// reachable term is joinable within bound; then all maximal sequences end
/// in one normal form, which is returned.
NewmanResult newman_check(const RewriteSystem& sys, const Formula& t, std::size_t bound,
                          const Budgets& budgets = {});

struct DivergenceReport {
    Divergence divergence;
    std::optional<Tile> tile;
    bool commutes = false; // meaningful only when tile is present
};

std::vector<DivergenceReport> analyze_divergences(const std::vector<Divergence>& ds,
                                                  const RewriteSystem& sys, std::size_t bound = 10,
                                                  const Budgets& budgets = {});

/// [{peak, left_step, right_step, joined, commutes, tile}, ...]
std::string report_json(const std::vector<DivergenceReport>& reports, const RewriteSystem& sys);

} // namespace coh
