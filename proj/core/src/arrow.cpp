#include "coh/arrow.hpp"

#include <array>
#include <functional>

namespace coh {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct GeneratorInfo {
    ArrowKind kind;
    const char* name;
    std::size_t arity;
};

constexpr std::array<GeneratorInfo, 16> kGenerators{{
    {ArrowKind::Id, "id", 1},
    {ArrowKind::Alpha, "alpha", 3},
    {ArrowKind::AlphaInv, "alphaInv", 3},
    {ArrowKind::AlphaOr, "alphaOr", 3},
    {ArrowKind::AlphaOrInv, "alphaOrInv", 3},
    {ArrowKind::Lambda, "lambda", 1},
    {ArrowKind::LambdaInv, "lambdaInv", 1},
    {ArrowKind::Rho, "rho", 1},
    {ArrowKind::RhoInv, "rhoInv", 1},
    {ArrowKind::Sigma, "sigma", 2},
    {ArrowKind::W, "w", 1},
    {ArrowKind::K1, "k1", 2},
    {ArrowKind::K2, "k2", 2},
    {ArrowKind::Eta, "eta", 2},
    {ArrowKind::Eps, "eps", 2},
    {ArrowKind::D, "d", 3},
}};

const GeneratorInfo& info_for(ArrowKind kind) {
    for (const auto& g : kGenerators)
        if (g.kind == kind) return g;
    throw std::logic_error("not a generator kind");
}

} // namespace

ArrowTerm ArrowTerm::generator(ArrowKind kind, std::vector<Formula> params) {
    const auto& info = info_for(kind); // rejects Comp/Tensor
    if (params.size() != info.arity)
        throw std::invalid_argument(std::string(info.name) + " takes " +
                                    std::to_string(info.arity) + " formula(s), got " +
                                    std::to_string(params.size()));
    auto node = std::make_shared<Node>();
    node->kind = kind;
    std::size_t h = mix(11, static_cast<std::size_t>(kind));
    for (const auto& p : params) h = mix(h, p.hash());
    node->hash = h;
    node->params = std::move(params);
    return ArrowTerm(std::move(node));
}

ArrowTerm ArrowTerm::comp(ArrowTerm g, ArrowTerm f) {
    auto node = std::make_shared<Node>();
    node->kind = ArrowKind::Comp;
    node->hash = mix(mix(13, g.hash()), f.hash());
    node->first = g.node_;
    node->second = f.node_;
    return ArrowTerm(std::move(node));
}

ArrowTerm ArrowTerm::tensor(Connective conn, ArrowTerm f, ArrowTerm g) {
    if (conn == Connective::Imp)
        throw std::invalid_argument("arrows cannot be tensored with ->");
    auto node = std::make_shared<Node>();
    node->kind = ArrowKind::Tensor;
    node->conn = conn;
    node->hash = mix(mix(mix(17, static_cast<std::size_t>(conn)), f.hash()), g.hash());
    node->first = f.node_;
    node->second = g.node_;
    return ArrowTerm(std::move(node));
}

ArrowTerm ArrowTerm::after() const {
    if (kind() != ArrowKind::Comp) throw std::logic_error("after on non-composition");
    return ArrowTerm(node_->first);
}

ArrowTerm ArrowTerm::before() const {
    if (kind() != ArrowKind::Comp) throw std::logic_error("before on non-composition");
    return ArrowTerm(node_->second);
}

Connective ArrowTerm::conn() const {
    if (kind() != ArrowKind::Tensor) throw std::logic_error("conn on non-tensor");
    return node_->conn;
}

ArrowTerm ArrowTerm::left() const {
    if (kind() != ArrowKind::Tensor) throw std::logic_error("left on non-tensor");
    return ArrowTerm(node_->first);
}

ArrowTerm ArrowTerm::right() const {
    if (kind() != ArrowKind::Tensor) throw std::logic_error("right on non-tensor");
    return ArrowTerm(node_->second);
}

bool operator==(const ArrowTerm& a, const ArrowTerm& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case ArrowKind::Comp:
        return a.after() == b.after() && a.before() == b.before();
    case ArrowKind::Tensor:
        return a.conn() == b.conn() && a.left() == b.left() && a.right() == b.right();
    default:
        return a.params() == b.params();
    }
}

TypeError::TypeError(std::string message, std::string expected, std::string found,
                     std::string subterm_path)
    : std::runtime_error(std::move(message)),
      expected_(std::move(expected)),
      found_(std::move(found)),
      subterm_path_(std::move(subterm_path)) {}

namespace {

ArrowType infer(const ArrowTerm& f, std::string& path) {
    const auto& p = f.params();
    switch (f.kind()) {
    case ArrowKind::Id: return {p[0], p[0]};
    case ArrowKind::Alpha:
        return {Formula::conj(Formula::conj(p[0], p[1]), p[2]),
                Formula::conj(p[0], Formula::conj(p[1], p[2]))};
    case ArrowKind::AlphaInv:
        return {Formula::conj(p[0], Formula::conj(p[1], p[2])),
                Formula::conj(Formula::conj(p[0], p[1]), p[2])};
    case ArrowKind::AlphaOr:
        return {Formula::disj(Formula::disj(p[0], p[1]), p[2]),
                Formula::disj(p[0], Formula::disj(p[1], p[2]))};
    case ArrowKind::AlphaOrInv:
        return {Formula::disj(p[0], Formula::disj(p[1], p[2])),
                Formula::disj(Formula::disj(p[0], p[1]), p[2])};
    case ArrowKind::Lambda: return {Formula::conj(Formula::unit(), p[0]), p[0]};
    case ArrowKind::LambdaInv: return {p[0], Formula::conj(Formula::unit(), p[0])};
    case ArrowKind::Rho: return {Formula::conj(p[0], Formula::unit()), p[0]};
    case ArrowKind::RhoInv: return {p[0], Formula::conj(p[0], Formula::unit())};
    case ArrowKind::Sigma:
        return {Formula::conj(p[0], p[1]), Formula::conj(p[1], p[0])};
    case ArrowKind::W: return {p[0], Formula::conj(p[0], p[0])};
    case ArrowKind::K1: return {Formula::conj(p[0], p[1]), p[0]};
    case ArrowKind::K2: return {Formula::conj(p[0], p[1]), p[1]};
    case ArrowKind::Eta:
        return {p[1], Formula::imp(p[0], Formula::conj(p[0], p[1]))};
    case ArrowKind::Eps:
        return {Formula::conj(p[0], Formula::imp(p[0], p[1])), p[1]};
    case ArrowKind::D:
        return {Formula::conj(p[0], Formula::disj(p[1], p[2])),
                Formula::disj(Formula::conj(p[0], p[1]), p[2])};
    case ArrowKind::Comp: {
        path += "/before";
        ArrowType tf = infer(f.before(), path);
        path.resize(path.size() - 7);
        path += "/after";
        ArrowType tg = infer(f.after(), path);
        path.resize(path.size() - 6);
        if (tf.target != tg.source)
            throw TypeError("composition mismatch at " + (path.empty() ? "root" : path) +
                                ": target of inner arrow is " + to_string(tf.target) +
                                " but source of outer arrow is " + to_string(tg.source),
                            to_string(tg.source), to_string(tf.target),
                            path.empty() ? "root" : path);
        return {tf.source, tg.target};
    }
    case ArrowKind::Tensor: {
        path += "/left";
        ArrowType tl = infer(f.left(), path);
        path.resize(path.size() - 5);
        path += "/right";
        ArrowType tr = infer(f.right(), path);
        path.resize(path.size() - 6);
        return {Formula::bin(f.conn(), tl.source, tr.source),
                Formula::bin(f.conn(), tl.target, tr.target)};
    }
    }
    throw std::logic_error("unknown arrow kind");
}

// Composition chain elements and tensor operands print bare only when they
// are generator applications; everything else is parenthesized.
void print(const ArrowTerm& f, std::string& out);

void print_operand(const ArrowTerm& f, std::string& out) {
    if (f.is_generator()) {
        print(f, out);
    } else {
        out += '(';
        print(f, out);
        out += ')';
    }
}

void print(const ArrowTerm& f, std::string& out) {
    switch (f.kind()) {
    case ArrowKind::Comp:
        print_operand(f.after(), out);
        out += " . ";
        if (f.before().kind() == ArrowKind::Comp)
            print(f.before(), out); // composition chains associate to the right
        else
            print_operand(f.before(), out);
        break;
    case ArrowKind::Tensor:
        print_operand(f.left(), out);
        out += ' ';
        out += to_string(f.conn());
        out += ' ';
        print_operand(f.right(), out);
        break;
    default: {
        out += generator_name(f.kind());
        out += '[';
        bool first = true;
        for (const auto& p : f.params()) {
            if (!first) out += ", ";
            first = false;
            out += to_string(p);
        }
        out += ']';
        break;
    }
    }
}

} // namespace

ArrowType infer_type(const ArrowTerm& f) {
    std::string path;
    return infer(f, path);
}

std::string to_string(const ArrowTerm& f) {
    std::string out;
    print(f, out);
    return out;
}

const char* generator_name(ArrowKind kind) { return info_for(kind).name; }

std::optional<ArrowKind> generator_by_name(const std::string& name) {
    for (const auto& g : kGenerators)
        if (name == g.name) return g.kind;
    return std::nullopt;
}

std::size_t generator_arity(ArrowKind kind) { return info_for(kind).arity; }

} // namespace coh
