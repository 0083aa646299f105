#include "coh/parse.hpp"

#include <cctype>

namespace coh {

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error(std::move(message)), offset_(offset), expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Unit, LParen, RParen, LBracket, RBracket, Comma, Dot, And, Or, Imp, End };

const char* tok_name(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Unit: return "'T'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::And: return "'/\\'";
    case Tok::Or: return "'\\/'";
    case Tok::Imp: return "'->'";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok tok;
    std::string text;
    std::size_t offset;
};

class Lexer {
public:
    explicit Lexer(std::string_view input) : input_(input) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < input_.size() && std::isspace(static_cast<unsigned char>(input_[pos_])))
            ++pos_;
        std::size_t start = pos_;
        if (pos_ >= input_.size()) {
            current_ = {Tok::End, "", start};
            return;
        }
        char c = input_[pos_];
        auto single = [&](Tok t) {
            ++pos_;
            current_ = {t, std::string(1, c), start};
        };
        switch (c) {
        case '(': single(Tok::LParen); return;
        case ')': single(Tok::RParen); return;
        case '[': single(Tok::LBracket); return;
        case ']': single(Tok::RBracket); return;
        case ',': single(Tok::Comma); return;
        case '.': single(Tok::Dot); return;
        case '/':
            if (pos_ + 1 < input_.size() && input_[pos_ + 1] == '\\') {
                pos_ += 2;
                current_ = {Tok::And, "/\\", start};
                return;
            }
            throw ParseError("unexpected '/' at offset " + std::to_string(start), start, {"'/\\'"});
        case '\\':
            if (pos_ + 1 < input_.size() && input_[pos_ + 1] == '/') {
                pos_ += 2;
                current_ = {Tok::Or, "\\/", start};
                return;
            }
            throw ParseError("unexpected '\\' at offset " + std::to_string(start), start, {"'\\/'"});
        case '-':
            if (pos_ + 1 < input_.size() && input_[pos_ + 1] == '>') {
                pos_ += 2;
                current_ = {Tok::Imp, "->", start};
                return;
            }
            throw ParseError("unexpected '-' at offset " + std::to_string(start), start, {"'->'"});
        default:
            break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < input_.size() &&
                   (std::isalnum(static_cast<unsigned char>(input_[end])) || input_[end] == '_'))
                ++end;
            std::string word(input_.substr(pos_, end - pos_));
            pos_ = end;
            current_ = {word == "T" ? Tok::Unit : Tok::Ident, std::move(word), start};
            return;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " +
                             std::to_string(start),
                         start, {});
    }

    std::string_view input_;
    std::size_t pos_ = 0;
    Token current_{Tok::End, "", 0};
};

[[noreturn]] void fail(const Token& got, std::vector<std::string> expected) {
    std::string msg = "syntax error at offset " + std::to_string(got.offset) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += i + 1 == expected.size() ? " or " : ", ";
        msg += expected[i];
    }
    msg += ", found ";
    msg += tok_name(got.tok);
    throw ParseError(std::move(msg), got.offset, std::move(expected));
}

class Parser {
public:
    explicit Parser(std::string_view input) : lex_(input) {}

    Formula formula_all() {
        Formula f = formula();
        expect_end();
        return f;
    }

    ArrowTerm arrow_all() {
        ArrowTerm a = arrow();
        expect_end();
        return a;
    }

private:
    void expect_end() {
        if (lex_.peek().tok != Tok::End) fail(lex_.peek(), {"end of input"});
    }

    Token expect(Tok t) {
        if (lex_.peek().tok != t) fail(lex_.peek(), {tok_name(t)});
        return lex_.take();
    }

    Formula formula() { return imp(); }

    Formula imp() {
        Formula l = disj();
        if (lex_.peek().tok == Tok::Imp) {
            lex_.take();
            return Formula::imp(std::move(l), imp());
        }
        return l;
    }

    Formula disj() {
        Formula f = conj();
        while (lex_.peek().tok == Tok::Or) {
            lex_.take();
            f = Formula::disj(std::move(f), conj());
        }
        return f;
    }

    Formula conj() {
        Formula f = atom();
        while (lex_.peek().tok == Tok::And) {
            lex_.take();
            f = Formula::conj(std::move(f), atom());
        }
        return f;
    }

    Formula atom() {
        const Token& t = lex_.peek();
        switch (t.tok) {
        case Tok::Ident: return Formula::letter(lex_.take().text);
        case Tok::Unit:
            lex_.take();
            return Formula::unit();
        case Tok::LParen: {
            lex_.take();
            Formula f = formula();
            expect(Tok::RParen);
            return f;
        }
        default:
            fail(t, {"identifier", "'T'", "'('"});
        }
    }

    ArrowTerm arrow() { return comp(); }

    ArrowTerm comp() {
        ArrowTerm g = tens();
        if (lex_.peek().tok == Tok::Dot) {
            lex_.take();
            // "g . f": f applies first.
            return ArrowTerm::comp(std::move(g), comp());
        }
        return g;
    }

    ArrowTerm tens() {
        ArrowTerm f = prim();
        Tok t = lex_.peek().tok;
        if (t == Tok::And || t == Tok::Or) {
            lex_.take();
            return ArrowTerm::tensor(t == Tok::And ? Connective::And : Connective::Or,
                                     std::move(f), prim());
        }
        return f;
    }

    ArrowTerm prim() {
        const Token& t = lex_.peek();
        if (t.tok == Tok::LParen) {
            lex_.take();
            ArrowTerm a = arrow();
            expect(Tok::RParen);
            return a;
        }
        if (t.tok != Tok::Ident) fail(t, {"generator name", "'('"});
        Token name = lex_.take();
        auto kind = generator_by_name(name.text);
        if (!kind)
            throw ParseError("unknown generator name '" + name.text + "' at offset " +
                                 std::to_string(name.offset),
                             name.offset, {"generator name"});
        expect(Tok::LBracket);
        std::vector<Formula> params;
        params.push_back(formula());
        while (lex_.peek().tok == Tok::Comma) {
            lex_.take();
            params.push_back(formula());
        }
        Token close = expect(Tok::RBracket);
        if (params.size() != generator_arity(*kind))
            throw ParseError("generator '" + name.text + "' takes " +
                                 std::to_string(generator_arity(*kind)) + " formula(s), got " +
                                 std::to_string(params.size()),
                             close.offset, {});
        return ArrowTerm::generator(*kind, std::move(params));
    }

    Lexer lex_;
};

} // namespace

Formula parse_formula(std::string_view text) { return Parser(text).formula_all(); }

ArrowTerm parse_arrow(std::string_view text) { return Parser(text).arrow_all(); }

} // namespace coh
