#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "coh/graph.hpp"
#include "coh/parse.hpp"
#include "coh/polytope.hpp"

using namespace coh;

namespace {

// Independent Catalan oracle: C(k) = binom(2k, k) / (k + 1).
unsigned long long catalan(unsigned k) {
    unsigned long long c = 1;
    for (unsigned i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

} // namespace

TEST_CASE("catalan oracle sanity") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(1) == 1);
    CHECK(catalan(2) == 2);
    CHECK(catalan(3) == 5);
    CHECK(catalan(4) == 14);
    CHECK(catalan(5) == 42);
    CHECK(catalan(9) == 4862);
}

TEST_CASE("associahedron: n=3 is a single associativity edge") {
    Complex c = associahedron(3);
    CHECK(c.vertices.size() == 2);
    CHECK(c.edges.size() == 1);
    CHECK(c.faces.empty());
    CHECK(check_faces_commute(c)); // vacuous
    CHECK(connected(c));
}

TEST_CASE("associahedron: n=2 is a point") {
    Complex c = associahedron(2);
    CHECK(c.vertices.size() == 1);
    CHECK(c.edges.empty());
    CHECK(connected(c));
}

TEST_CASE("associahedron: n=4 is the Mac Lane pentagon") {
    Complex c = associahedron(4);
    CHECK(c.vertices.size() == 5);
    CHECK(c.edges.size() == 5);
    REQUIRE(c.faces.size() == 1);
    CHECK(c.faces[0].kind == FaceKind::Pentagon);
    CHECK(check_faces_commute(c));
}

TEST_CASE("associahedron: n=5 counts and Euler characteristic") {
    Complex c = associahedron(5);
    CHECK(c.vertices.size() == 14);
    CHECK(c.vertices.size() == catalan(4));
    CHECK(c.edges.size() == 21);
    CHECK(c.faces.size() == 9);
    CHECK(pentagon_count(c) == 6);
    CHECK(square_count(c) == 3);
    CHECK(static_cast<long>(c.vertices.size()) - static_cast<long>(c.edges.size()) +
              static_cast<long>(c.faces.size()) ==
          2);
    CHECK(connected(c));

    // No duplicate vertices, and every vertex is a bracketing of a..e.
    std::set<std::string> printed;
    for (const auto& v : c.vertices) {
        CHECK(printed.insert(to_string(v)).second);
        CHECK(leaves(v) == std::vector<std::string>{"a", "b", "c", "d", "e"});
    }
}

TEST_CASE("associahedron: n=6 has 42 vertices") {
    Complex c = associahedron(6);
    CHECK(c.vertices.size() == 42);
    CHECK(c.vertices.size() == catalan(5));
    CHECK(connected(c));
}

TEST_CASE("associahedron: vertex degree is n-2") {
    for (int n : {3, 4, 5, 6}) {
        Complex c = associahedron(n);
        std::vector<int> degree(c.vertices.size(), 0);
        for (const auto& e : c.edges) {
            ++degree[static_cast<std::size_t>(e.from)];
            ++degree[static_cast<std::size_t>(e.to)];
        }
        for (int d : degree) CHECK(d == n - 2);
    }
}

TEST_CASE("associahedron: orientation has the right comb as unique sink") {
    for (int n : {4, 5, 6}) {
        Complex c = associahedron(n);
        std::vector<int> out_degree(c.vertices.size(), 0);
        for (const auto& e : c.edges) ++out_degree[static_cast<std::size_t>(e.from)];
        std::vector<int> sinks;
        for (std::size_t i = 0; i < c.vertices.size(); ++i)
            if (out_degree[i] == 0) sinks.push_back(static_cast<int>(i));
        REQUIRE(sinks.size() == 1);
        Formula sink = c.vertices[static_cast<std::size_t>(sinks[0])];
        CHECK(sink == right_comb(sink));
        CHECK(sink == normalize(c.vertices[0], monoidal_nf()).nf);
    }
}

TEST_CASE("associahedron: faces found by exhaustive redex-pair enumeration") {
    // Cross-check the face counts against a direct enumeration over all
    // vertices of all unordered pairs of assocR redexes.
    for (int n : {4, 5, 6}) {
        Complex c = associahedron(n);
        std::size_t pentagons = 0, squares = 0;
        for (const auto& v : c.vertices) {
            auto steps = redexes(v, monoidal_nf());
            for (std::size_t i = 0; i < steps.size(); ++i) {
                for (std::size_t j = i + 1; j < steps.size(); ++j) {
                    const std::string& p = steps[i].pos.path;
                    const std::string& q = steps[j].pos.path;
                    if (q == p + "L" || p == q + "L")
                        ++pentagons;
                    else
                        ++squares;
                }
            }
        }
        CHECK(pentagon_count(c) == pentagons);
        CHECK(square_count(c) == squares);
    }
}

TEST_CASE("check_faces_commute: all faces commute for n in {4,5,6}") {
    for (int n : {4, 5, 6}) {
        Complex c = associahedron(n);
        CHECK(check_faces_commute(c));
    }
}

TEST_CASE("connected: artificial complex with an isolated vertex") {
    Complex c = associahedron(3);
    c.vertices.push_back(parse_formula("x"));
    CHECK(!connected(c));
}

TEST_CASE("associahedron: argument validation") {
    CHECK_THROWS_AS(associahedron(1), std::invalid_argument);
    CHECK_THROWS_AS(associahedron(11), std::invalid_argument);
    CHECK_THROWS_AS(associahedron(3, {"a", "b"}, 10), std::invalid_argument);
    CHECK_THROWS_AS(associahedron(5, default_letters(5), 4), std::invalid_argument);
    CHECK_NOTHROW(associahedron(4, default_letters(4), 4));
}

TEST_CASE("custom letters show up in vertices") {
    Complex c = associahedron(3, {"x", "y", "z"});
    std::set<std::string> printed;
    for (const auto& v : c.vertices) printed.insert(to_string(v));
    CHECK(printed == std::set<std::string>{"(x /\\ y) /\\ z", "x /\\ (y /\\ z)"});
}

TEST_CASE("exports: json counts and dot shape") {
    Complex c = associahedron(5);
    std::string j = to_json(c);
    CHECK(j.find("\"vertex_count\": 14") != std::string::npos);
    CHECK(j.find("\"edge_count\": 21") != std::string::npos);
    CHECK(j.find("\"face_count\": 9") != std::string::npos);
    CHECK(j == to_json(associahedron(5)));

    std::string dot = to_dot(c);
    CHECK(dot.find("digraph associahedron {") == 0);
    CHECK(dot.find("// pentagon:") != std::string::npos);
    CHECK(dot.find("// square:") != std::string::npos);
}
