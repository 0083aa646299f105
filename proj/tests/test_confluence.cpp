#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "coh/confluence.hpp"
#include "coh/parse.hpp"

#include "generators.hpp"

using namespace coh;

namespace {

Formula F(const std::string& text) { return parse_formula(text); }

// a => b, a => c: not locally confluent, and never compiles to arrows.
RewriteSystem fork_system() {
    RewriteSystem s;
    s.name = "fork";
    s.rules.push_back({"toB", Pattern::letter("a"), Pattern::letter("b"), nullptr, nullptr});
    s.rules.push_back({"toC", Pattern::letter("a"), Pattern::letter("c"), nullptr, nullptr});
    return s;
}

std::vector<Formula> all_connective_terms(int leaf_positions) {
    std::function<std::vector<Formula>(int, int)> build = [&](int lo, int hi) {
        std::vector<Formula> result;
        if (hi - lo == 1) {
            result.push_back(Formula::letter(std::string(1, static_cast<char>('a' + lo))));
            return result;
        }
        for (int split = lo + 1; split < hi; ++split)
            for (const auto& l : build(lo, split))
                for (const auto& r : build(split, hi))
                    for (Connective c : {Connective::And, Connective::Or})
                        result.push_back(Formula::bin(c, l, r));
        return result;
    };
    return build(0, leaf_positions);
}

} // namespace

TEST_CASE("critical_pairs: monoidal_nf has the pentagon peak and the unit overlaps") {
    auto pairs = critical_pairs(monoidal_nf());
    REQUIRE(pairs.size() == 5);

    const Divergence& pentagon = pairs[0];
    CHECK(pentagon.peak == F("((a /\\ b) /\\ c) /\\ d"));
    CHECK(pentagon.left_step == Step{"assocR", Position{"L"}, Direction::Forward});
    CHECK(pentagon.right_step == Step{"assocR", Position{}, Direction::Forward});
    CHECK(pentagon.origin == DivergenceOrigin::CriticalOverlap);

    CHECK(pairs[1].peak == F("(T /\\ a) /\\ b"));
    CHECK(pairs[1].left_step.rule == "unitL");
    CHECK(pairs[2].peak == F("(a /\\ T) /\\ b"));
    CHECK(pairs[3].peak == F("(a /\\ b) /\\ T"));
    CHECK(pairs[4].peak == F("T /\\ T"));
    CHECK(pairs[4].left_step.rule == "unitL");
    CHECK(pairs[4].right_step.rule == "unitR");
}

TEST_CASE("critical_pairs: non-unifiable rules give no pair") {
    RewriteSystem s;
    s.name = "nopairs";
    s.rules.push_back({"r1", Pattern::conj(Pattern::var("A"), Pattern::var("B")),
                       Pattern::var("A"), nullptr, nullptr});
    s.rules.push_back({"r2", Pattern::disj(Pattern::var("A"), Pattern::var("B")),
                       Pattern::var("A"), nullptr, nullptr});
    CHECK(critical_pairs(s).empty());
}

TEST_CASE("critical_pairs: disjoint peaks on demand") {
    auto pairs = critical_pairs(monoidal_nf(), true);
    REQUIRE(pairs.size() == 5 + 6); // 3 rules: 6 unordered pairs with repetition
    const Divergence& d = pairs[5];
    CHECK(d.origin == DivergenceOrigin::DisjointPair);
    CHECK(d.left_step.pos == Position{"L"});
    CHECK(d.right_step.pos == Position{"R"});
    // Both steps really apply at the constructed peak.
    CHECK_NOTHROW(apply_step(d.peak, d.left_step, monoidal_nf()));
    CHECK_NOTHROW(apply_step(d.peak, d.right_step, monoidal_nf()));
}

TEST_CASE("join: the pentagon closes with sides 1 and 2") {
    auto pairs = critical_pairs(monoidal_nf());
    auto tile = join(pairs[0], monoidal_nf(), 3);
    REQUIRE(tile.has_value());
    Formula bottom = F("a /\\ (b /\\ (c /\\ d))");
    CHECK(replay(tile->left_path, monoidal_nf()) == bottom);
    CHECK(replay(tile->right_path, monoidal_nf()) == bottom);
    std::set<std::size_t> sides{tile->left_path.steps.size(), tile->right_path.steps.size()};
    CHECK(sides == std::set<std::size_t>{1, 2});
}

TEST_CASE("join: disjoint redexes close in a square") {
    Formula peak = F("((a /\\ b) /\\ c) /\\ ((d /\\ e) /\\ f)");
    Divergence d{peak, Step{"assocR", Position{"L"}, Direction::Forward},
                 Step{"assocR", Position{"R"}, Direction::Forward},
                 DivergenceOrigin::DisjointPair};
    auto tile = join(d, monoidal_nf(), 10);
    REQUIRE(tile.has_value());
    CHECK(tile->left_path.steps.size() == 1);
    CHECK(tile->right_path.steps.size() == 1);
    CHECK(tile_commutes(*tile, monoidal_nf()));
}

TEST_CASE("join: the forked system does not close") {
    auto sys = fork_system();
    Divergence d{Formula::letter("a"), Step{"toB", Position{}, Direction::Forward},
                 Step{"toC", Position{}, Direction::Forward}, DivergenceOrigin::CriticalOverlap};
    CHECK(!join(d, sys, 10).has_value());
}

TEST_CASE("join soundness: both sides replay to the same formula") {
    TestRng rng(2025);
    for (int i = 0; i < 200; ++i) {
        Formula t = random_formula(rng, 3, false, false);
        for (const auto& d : forkings(t, dissoc())) {
            auto tile = join(d, dissoc(), 6);
            if (!tile) continue;
            Formula left_end = replay(tile->left_path, dissoc());
            CHECK(left_end == replay(tile->right_path, dissoc()));
            CHECK(tile->left_path.start == apply_step(t, d.left_step, dissoc()));
        }
    }
}

TEST_CASE("tile_commutes: every monoidal_nf critical pair yields a commuting tile") {
    for (const auto& d : critical_pairs(monoidal_nf())) {
        auto tile = join(d, monoidal_nf(), 3);
        REQUIRE(tile.has_value());
        CHECK(tile->left_path.steps.size() <= 3);
        CHECK(tile->right_path.steps.size() <= 3);
        CHECK(tile_commutes(*tile, monoidal_nf()));
    }
}

TEST_CASE("tile_commutes: corrupted tiles raise") {
    auto pairs = critical_pairs(monoidal_nf());
    auto tile = join(pairs[0], monoidal_nf(), 3);
    REQUIRE(tile.has_value());
    Tile bad = *tile;
    // A step that matches nowhere along the left side.
    bad.left_path.steps.push_back(Step{"d", Position{}, Direction::Forward});
    CHECK_THROWS_AS(tile_commutes(bad, dissoc()), std::invalid_argument);
    Tile bad2 = *tile;
    bad2.left_path.steps.push_back(Step{"unitL", Position{}, Direction::Forward});
    CHECK_THROWS_AS(tile_commutes(bad2, monoidal_nf()), std::invalid_argument);
}

TEST_CASE("newman_check: verdicts") {
    auto r1 = newman_check(monoidal_nf(), F("((a /\\ b) /\\ c) /\\ d"), 9);
    CHECK(r1.verdict == NewmanResult::Verdict::UniqueNF);
    REQUIRE(r1.nf.has_value());
    CHECK(*r1.nf == F("a /\\ (b /\\ (c /\\ d))"));

    auto r2 = newman_check(monoidal_nf(), Formula::letter("x"), 0);
    CHECK(r2.verdict == NewmanResult::Verdict::UniqueNF);
    CHECK(*r2.nf == Formula::letter("x"));

    auto r3 = newman_check(fork_system(), Formula::letter("a"), 10);
    CHECK(r3.verdict == NewmanResult::Verdict::NotLocallyConfluent);
    REQUIRE(r3.witness.has_value());
    CHECK(r3.witness->peak == Formula::letter("a"));

    // Invertible rules make step sequences unbounded (two-step cycles).
    auto r4 = newman_check(dissoc(), F("(a /\\ b) /\\ c"), 100);
    CHECK(r4.verdict == NewmanResult::Verdict::BoundExceeded);

    // A bound below the longest reduction sequence is reported.
    auto r5 = newman_check(monoidal_nf(), F("((a /\\ b) /\\ c) /\\ d"), 2);
    CHECK(r5.verdict == NewmanResult::Verdict::BoundExceeded);
}

TEST_CASE("newman_check: unique nf with node-count bound up to 6 unit-free leaves") {
    // The node count bounds the longest reduction sequence only up to six
    // leaves; the 7-leaf left comb already has a 15-step maximal chain
    // against 13 nodes, so the full-scale sweep (acceptance) uses the
    // measure bound instead.
    for (int n = 2; n <= 6; ++n) {
        std::function<std::vector<Formula>(int, int)> build = [&](int lo, int hi) {
            std::vector<Formula> result;
            if (hi - lo == 1) {
                result.push_back(Formula::letter(std::string(1, static_cast<char>('a' + lo))));
                return result;
            }
            for (int split = lo + 1; split < hi; ++split)
                for (const auto& l : build(lo, split))
                    for (const auto& r : build(split, hi))
                        result.push_back(Formula::conj(l, r));
            return result;
        };
        for (const auto& t : build(0, n)) {
            auto r = newman_check(monoidal_nf(), t, node_count(t));
            CHECK(r.verdict == NewmanResult::Verdict::UniqueNF);
            CHECK(*r.nf == right_comb(t));
        }
    }
}

TEST_CASE("dissoc divergences that join have commuting tiles (exhaustive sweep)") {
    int joined = 0, commuted = 0, total = 0;
    for (int n = 2; n <= 6; ++n) {
        for (const auto& t : all_connective_terms(n)) {
            for (const auto& d : forkings(t, dissoc())) {
                ++total;
                auto tile = join(d, dissoc(), 10);
                if (!tile) continue;
                ++joined;
                if (tile_commutes(*tile, dissoc())) ++commuted;
            }
        }
    }
    CHECK(total > 1000);
    CHECK(joined == commuted);
    // The dissociativity fragment closes every one-step forking.
    CHECK(joined == total);
}

TEST_CASE("report_json: shape and stability") {
    auto reports = analyze_divergences(critical_pairs(monoidal_nf()), monoidal_nf(), 3);
    std::string j = report_json(reports, monoidal_nf());
    CHECK(j.find("\"peak\": \"((a /\\\\ b) /\\\\ c) /\\\\ d\"") != std::string::npos);
    CHECK(j.find("\"joined\": true") != std::string::npos);
    CHECK(j.find("\"commutes\": true") != std::string::npos);
    CHECK(j.find("\"tile\"") != std::string::npos);
    CHECK(j == report_json(analyze_divergences(critical_pairs(monoidal_nf()), monoidal_nf(), 3),
                           monoidal_nf()));
}
