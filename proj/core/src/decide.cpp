#include "coh/decide.hpp"

#include <nlohmann/json.hpp>

namespace coh {

namespace {

std::set<ArrowKind> monoidal_generators() {
    return {ArrowKind::Id,     ArrowKind::Alpha,     ArrowKind::AlphaInv, ArrowKind::Lambda,
            ArrowKind::LambdaInv, ArrowKind::Rho,    ArrowKind::RhoInv};
}

std::set<ArrowKind> all_generators() {
    return {ArrowKind::Id,        ArrowKind::Alpha,    ArrowKind::AlphaInv,
            ArrowKind::AlphaOr,   ArrowKind::AlphaOrInv, ArrowKind::Lambda,
            ArrowKind::LambdaInv, ArrowKind::Rho,      ArrowKind::RhoInv,
            ArrowKind::Sigma,     ArrowKind::W,        ArrowKind::K1,
            ArrowKind::K2,        ArrowKind::Eta,      ArrowKind::Eps,
            ArrowKind::D};
}

} // namespace

const Theory& Theory::monoidal() {
    static const Theory th{TheoryKind::Monoidal, monoidal_generators(), {Connective::And}};
    return th;
}

const Theory& Theory::symmetric() {
    static const Theory th = [] {
        Theory t{TheoryKind::Symmetric, monoidal_generators(), {Connective::And}};
        t.allowed_generators.insert(ArrowKind::Sigma);
        return t;
    }();
    return th;
}

const Theory& Theory::assoc_dissoc() {
    static const Theory th{TheoryKind::AssocDissoc,
                           {ArrowKind::Id, ArrowKind::Alpha, ArrowKind::AlphaInv,
                            ArrowKind::AlphaOr, ArrowKind::AlphaOrInv, ArrowKind::D},
                           {Connective::And, Connective::Or}};
    return th;
}

const Theory& Theory::graph_model_only() {
    static const Theory th{TheoryKind::GraphModelOnly, all_generators(),
                           {Connective::And, Connective::Or}};
    return th;
}

const Theory* Theory::by_name(const std::string& name) {
    if (name == "monoidal") return &monoidal();
    if (name == "symmetric") return &symmetric();
    if (name == "assoc-dissoc") return &assoc_dissoc();
    if (name == "model") return &graph_model_only();
    return nullptr;
}

std::string Theory::name() const {
    switch (kind) {
    case TheoryKind::Monoidal: return "monoidal";
    case TheoryKind::Symmetric: return "symmetric";
    case TheoryKind::AssocDissoc: return "assoc-dissoc";
    case TheoryKind::GraphModelOnly: return "model";
    }
    return "?";
}

bool in_fragment(const ArrowTerm& f, const Theory& th) {
    switch (f.kind()) {
    case ArrowKind::Comp:
        return in_fragment(f.after(), th) && in_fragment(f.before(), th);
    case ArrowKind::Tensor:
        return th.tensor_connectives.count(f.conn()) > 0 && in_fragment(f.left(), th) &&
               in_fragment(f.right(), th);
    default:
        return th.allowed_generators.count(f.kind()) > 0;
    }
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::NotEqual: return "NotEqual";
    case Verdict::ModelDistinct: return "ModelDistinct";
    case Verdict::ModelEqualOnly: return "ModelEqualOnly";
    }
    return "?";
}

Verdict decide_equal(const ArrowTerm& f, const ArrowTerm& g, const Theory& th) {
    if (!in_fragment(f, th))
        throw FragmentError("arrow " + to_string(f) + " is outside the " + th.name() + " fragment");
    if (!in_fragment(g, th))
        throw FragmentError("arrow " + to_string(g) + " is outside the " + th.name() + " fragment");
    switch (th.kind) {
    case TheoryKind::Monoidal:
    case TheoryKind::AssocDissoc:
        return infer_type(f) == infer_type(g) ? Verdict::Equal : Verdict::NotEqual;
    case TheoryKind::Symmetric: {
        if (!(infer_type(f) == infer_type(g))) return Verdict::NotEqual;
        return graphs_equal(evaluate(f), evaluate(g)) ? Verdict::Equal : Verdict::NotEqual;
    }
    case TheoryKind::GraphModelOnly:
        return graphs_equal(evaluate(f), evaluate(g)) ? Verdict::ModelEqualOnly
                                                      : Verdict::ModelDistinct;
    }
    throw std::logic_error("unknown theory kind");
}

NaturalitySquare naturality_square(NatTransKind t, const ArrowTerm& h,
                                   const std::optional<Formula>& context) {
    const ArrowType ht = infer_type(h);
    switch (t) {
    case NatTransKind::W: {
        ArrowTerm lhs = ArrowTerm::comp(ArrowTerm::diag(ht.target), h);
        ArrowTerm rhs = ArrowTerm::comp(ArrowTerm::tensor(Connective::And, h, h),
                                        ArrowTerm::diag(ht.source));
        bool eq = graphs_equal(evaluate(lhs), evaluate(rhs));
        return {std::move(lhs), std::move(rhs), eq};
    }
    case NatTransKind::K1: {
        if (!context)
            throw std::invalid_argument("naturality_square for k1 needs a context formula");
        ArrowTerm lhs = ArrowTerm::k1(*context, ht.source);
        ArrowTerm rhs = ArrowTerm::comp(
            ArrowTerm::k1(*context, ht.target),
            ArrowTerm::tensor(Connective::And, ArrowTerm::id(*context), h));
        bool eq = graphs_equal(evaluate(lhs), evaluate(rhs));
        return {std::move(lhs), std::move(rhs), eq};
    }
    }
    throw std::logic_error("unknown transformation kind");
}

std::string verdict_json(Verdict v, const ArrowTerm& f, const ArrowTerm& g) {
    nlohmann::ordered_json j;
    j["verdict"] = to_string(v);
    auto type_json = [](const ArrowTerm& a) {
        nlohmann::ordered_json t;
        ArrowType ty = infer_type(a);
        t["source"] = to_string(ty.source);
        t["target"] = to_string(ty.target);
        return t;
    };
    j["type_f"] = type_json(f);
    j["type_g"] = type_json(g);
    j["graph_f"] = nlohmann::ordered_json::parse(to_json(evaluate(f)));
    j["graph_g"] = nlohmann::ordered_json::parse(to_json(evaluate(g)));
    return j.dump(2);
}

} // namespace coh
