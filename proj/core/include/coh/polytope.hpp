#pragma once

#include <string>
#include <vector>

#include "coh/rewrite.hpp"

namespace coh {

/// Directed toward the right-associated normal form: the step applies at
/// vertices[from] and yields vertices[to].
struct ComplexEdge {
    int from;
    int to;
    Step step;
};

enum class FaceKind { Square, Pentagon };

/// A closed 2-face. edges[i] joins vertices[i] and vertices[(i+1) % size]
/// (in either direction); the cycle has one source (the peak) and one sink.
struct ComplexFace {
    FaceKind kind;
    std::vector<int> vertices;
    std::vector<int> edges;
};

struct Complex {
    std::vector<Formula> vertices;
    std::vector<ComplexEdge> edges;
    std::vector<ComplexFace> faces;
};

std::vector<std::string> default_letters(int n); // a, b, c, ...

/// The associahedron over n letters: vertices are all bracketings of the
/// leaf sequence under /\, edges are single associativity applications,
/// faces are the squares (independent redex pairs) and pentagons (nested
/// assocR self-overlaps). Throws std::invalid_argument for n < 2 or
/// n > max_n.
Complex associahedron(int n, const std::vector<std::string>& letters, int max_n = 10);
Complex associahedron(int n, int max_n = 10);

/// Every face's two directed edge-paths from its peak to its sink compile
/// to arrows with equal graphs.
bool check_faces_commute(const Complex& c);

/// The edge graph is connected (true for zero or one vertex).
bool connected(const Complex& c);

std::size_t pentagon_count(const Complex& c);
std::size_t square_count(const Complex& c);

/// DOT digraph, vertices labeled by printed formulas, faces as comments.
std::string to_dot(const Complex& c);

/// {"vertex_count":..., "edge_count":..., "face_count":..., vertices,
/// edges, faces}; byte-stable.
std::string to_json(const Complex& c);

} // namespace coh
