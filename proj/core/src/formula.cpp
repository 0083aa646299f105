#include "coh/formula.hpp"

#include <functional>
#include <stdexcept>

namespace coh {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Formula Formula::letter(std::string name) {
    if (name.empty()) throw std::invalid_argument("letter name must be nonempty");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Letter;
    node->hash = mix(1, std::hash<std::string>{}(name));
    node->name = std::move(name);
    return Formula(std::move(node));
}

Formula Formula::unit() {
    static const Formula u = [] {
        auto node = std::make_shared<Node>();
        node->kind = Kind::Unit;
        node->hash = 2;
        return Formula(std::move(node));
    }();
    return u;
}

Formula Formula::bin(Connective conn, Formula left, Formula right) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Bin;
    node->conn = conn;
    node->hash = mix(mix(mix(3, static_cast<std::size_t>(conn)), left.hash()), right.hash());
    node->left = left.node_;
    node->right = right.node_;
    return Formula(std::move(node));
}

const std::string& Formula::letter_name() const {
    if (!is_letter()) throw std::logic_error("letter_name on non-letter formula");
    return node_->name;
}

Connective Formula::conn() const {
    if (!is_bin()) throw std::logic_error("conn on non-binary formula");
    return node_->conn;
}

Formula Formula::left() const {
    if (!is_bin()) throw std::logic_error("left on non-binary formula");
    return Formula(node_->left);
}

Formula Formula::right() const {
    if (!is_bin()) throw std::logic_error("right on non-binary formula");
    return Formula(node_->right);
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash()) return false;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Formula::Kind::Letter: return a.letter_name() == b.letter_name();
    case Formula::Kind::Unit: return true;
    case Formula::Kind::Bin:
        return a.conn() == b.conn() && a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

int compare(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind())
        return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    switch (a.kind()) {
    case Formula::Kind::Letter: return a.letter_name().compare(b.letter_name());
    case Formula::Kind::Unit: return 0;
    case Formula::Kind::Bin: {
        if (a.conn() != b.conn())
            return static_cast<int>(a.conn()) < static_cast<int>(b.conn()) ? -1 : 1;
        if (int c = compare(a.left(), b.left()); c != 0) return c;
        return compare(a.right(), b.right());
    }
    }
    return 0;
}

namespace {

void collect_leaves(const Formula& f, std::vector<std::string>& out) {
    switch (f.kind()) {
    case Formula::Kind::Letter: out.push_back(f.letter_name()); break;
    case Formula::Kind::Unit: break;
    case Formula::Kind::Bin:
        collect_leaves(f.left(), out);
        collect_leaves(f.right(), out);
        break;
    }
}

void print(const Formula& f, std::string& out, bool parenthesize) {
    switch (f.kind()) {
    case Formula::Kind::Letter: out += f.letter_name(); break;
    case Formula::Kind::Unit: out += 'T'; break;
    case Formula::Kind::Bin:
        if (parenthesize) out += '(';
        print(f.left(), out, f.left().is_bin());
        out += ' ';
        out += to_string(f.conn());
        out += ' ';
        print(f.right(), out, f.right().is_bin());
        if (parenthesize) out += ')';
        break;
    }
}

} // namespace

std::vector<std::string> leaves(const Formula& f) {
    std::vector<std::string> out;
    collect_leaves(f, out);
    return out;
}

std::size_t node_count(const Formula& f) {
    if (!f.is_bin()) return 1;
    return 1 + node_count(f.left()) + node_count(f.right());
}

std::string to_string(const Formula& f) {
    std::string out;
    print(f, out, false);
    return out;
}

std::string to_string(Connective c) {
    switch (c) {
    case Connective::And: return "/\\";
    case Connective::Or: return "\\/";
    case Connective::Imp: return "->";
    }
    return "?";
}

} // namespace coh
