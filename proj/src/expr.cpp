#include "odekit/expr.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace odekit {

namespace {

std::string join_expected(const std::vector<std::string> &expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + expected[i];
    return out;
}

} // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string &found)
    : Error("syntax error at offset " + std::to_string(offset) + ": expected one of {" + join_expected(expected) +
            "}, found " + found),
      offset_(offset), expected_(std::move(expected)) {}

ParseError::ParseError(std::size_t offset, const std::string &message)
    : Error("syntax error at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

SourceExpr SourceExpr::number(const Rational &v, std::size_t at) {
    SourceExpr e;
    e.kind = Kind::Number;
    e.value = v;
    e.offset = at;
    return e;
}

SourceExpr SourceExpr::symbol(std::string n, std::size_t at) {
    SourceExpr e;
    e.kind = Kind::Symbol;
    e.name = std::move(n);
    e.offset = at;
    return e;
}

SourceExpr SourceExpr::derivative(std::string n, unsigned k, std::size_t at) {
    SourceExpr e;
    e.kind = Kind::Derivative;
    e.name = std::move(n);
    e.order = k;
    e.offset = at;
    return e;
}

bool operator==(const SourceExpr &a, const SourceExpr &b) {
    return a.kind == b.kind && a.value == b.value && a.name == b.name && a.order == b.order &&
           a.exponent == b.exponent && a.args == b.args;
}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Equals, Prime, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

std::string describe(const Token &t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            out.push_back({Tok::Number, std::string(src.substr(start, i - start)), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
            out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
            continue;
        }
        Tok k;
        switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case '=': k = Tok::Equals; break;
        case '\'': k = Tok::Prime; break;
        default:
            throw ParseError(start, "unexpected character '" + std::string(1, c) + "'");
        }
        out.push_back({k, std::string(1, c), start});
        ++i;
    }
    out.push_back({Tok::End, "", src.size()});
    return out;
}

// Constant folding for divisors and exponents.
std::optional<Rational> constant_value(const SourceExpr &e) {
    using K = SourceExpr::Kind;
    switch (e.kind) {
    case K::Number: return e.value;
    case K::Symbol:
    case K::Derivative: return std::nullopt;
    case K::Neg: {
        auto v = constant_value(e.args[0]);
        if (v) return -*v;
        return std::nullopt;
    }
    case K::Sum:
    case K::Product: {
        Rational acc(e.kind == K::Sum ? 0 : 1);
        for (const auto &a : e.args) {
            auto v = constant_value(a);
            if (!v) return std::nullopt;
            if (e.kind == K::Sum)
                acc += *v;
            else
                acc *= *v;
        }
        return acc;
    }
    case K::Power: {
        auto v = constant_value(e.args[0]);
        if (!v) return std::nullopt;
        if (e.exponent >= 0) return v->pow(static_cast<unsigned>(e.exponent));
        if (v->is_zero()) return std::nullopt;
        return v->inverse().pow(static_cast<unsigned>(-e.exponent));
    }
    }
    return std::nullopt;
}

SourceExpr make_nary(SourceExpr::Kind kind, SourceExpr lhs, SourceExpr rhs, std::size_t at) {
    SourceExpr e;
    e.kind = kind;
    e.offset = at;
    if (lhs.kind == kind)
        e.args = std::move(lhs.args);
    else
        e.args.push_back(std::move(lhs));
    if (rhs.kind == kind)
        for (auto &a : rhs.args) e.args.push_back(std::move(a));
    else
        e.args.push_back(std::move(rhs));
    return e;
}

SourceExpr negate(SourceExpr e, std::size_t at) {
    if (e.kind == SourceExpr::Kind::Number) {
        e.value = -e.value;
        return e;
    }
    SourceExpr n;
    n.kind = SourceExpr::Kind::Neg;
    n.offset = at;
    n.args.push_back(std::move(e));
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

    SourceExpr parse_equation() {
        SourceExpr lhs = parse_expr(0);
        if (peek().kind == Tok::Equals) {
            const std::size_t at = next().offset;
            SourceExpr rhs = parse_expr(0);
            lhs = make_nary(SourceExpr::Kind::Sum, std::move(lhs), negate(std::move(rhs), at), at);
        }
        if (peek().kind != Tok::End)
            throw ParseError(peek().offset, {"operator", "'='", "end of input"}, describe(peek()));
        return lhs;
    }

private:
    static constexpr int kPrefixMinusBp = 25;

    const Token &peek() const { return toks_[pos_]; }
    const Token &next() { return toks_[pos_++]; }

    void expect(Tok kind, const std::string &what) {
        if (peek().kind != kind) throw ParseError(peek().offset, {what}, describe(peek()));
        ++pos_;
    }

    SourceExpr parse_prefix() {
        const Token t = next();
        switch (t.kind) {
        case Tok::Number: return SourceExpr::number(Rational::parse(t.text), t.offset);
        case Tok::Ident:
            if (peek().kind == Tok::LParen) return parse_call(t);
            return SourceExpr::symbol(t.text, t.offset);
        case Tok::LParen: {
            SourceExpr e = parse_expr(0);
            expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Minus: return negate(parse_expr(kPrefixMinusBp), t.offset);
        case Tok::Plus: return parse_expr(kPrefixMinusBp);
        default:
            throw ParseError(t.offset, {"number", "identifier", "'('", "'-'"}, describe(t));
        }
    }

    SourceExpr parse_call(const Token &fn) {
        if (fn.text != "D") throw ParseError(fn.offset, "unknown function '" + fn.text + "'");
        expect(Tok::LParen, "'('");
        const Token dep = next();
        if (dep.kind != Tok::Ident) throw ParseError(dep.offset, {"identifier"}, describe(dep));
        expect(Tok::Comma, "','");
        const Token k = next();
        if (k.kind != Tok::Number) throw ParseError(k.offset, {"integer"}, describe(k));
        expect(Tok::RParen, "')'");
        const Rational order = Rational::parse(k.text);
        if (order > Rational(1000)) throw ParseError(k.offset, "derivative order too large");
        return SourceExpr::derivative(dep.text, static_cast<unsigned>(order.num().get_ui()), fn.offset);
    }

    SourceExpr parse_expr(int min_bp) {
        SourceExpr lhs = parse_prefix();
        for (;;) {
            const Token &op = peek();
            if (op.kind == Tok::Prime) {
                // postfix, binds tightest
                next();
                if (lhs.kind == SourceExpr::Kind::Symbol)
                    lhs = SourceExpr::derivative(lhs.name, 1, lhs.offset);
                else if (lhs.kind == SourceExpr::Kind::Derivative)
                    ++lhs.order;
                else
                    throw ParseError(op.offset, "prime applied to a non-variable");
                continue;
            }
            int lbp, rbp;
            switch (op.kind) {
            case Tok::Plus:
            case Tok::Minus: lbp = 10, rbp = 11; break;
            case Tok::Star:
            case Tok::Slash: lbp = 20, rbp = 21; break;
            case Tok::Caret: lbp = 31, rbp = 30; break;
            default: return lhs;
            }
            if (lbp < min_bp) return lhs;
            const Token opTok = next();
            SourceExpr rhs = parse_expr(rbp);
            switch (opTok.kind) {
            case Tok::Plus: lhs = make_nary(SourceExpr::Kind::Sum, std::move(lhs), std::move(rhs), opTok.offset); break;
            case Tok::Minus:
                lhs = make_nary(SourceExpr::Kind::Sum, std::move(lhs), negate(std::move(rhs), opTok.offset),
                                opTok.offset);
                break;
            case Tok::Star:
                lhs = make_nary(SourceExpr::Kind::Product, std::move(lhs), std::move(rhs), opTok.offset);
                break;
            case Tok::Slash: lhs = divide(std::move(lhs), rhs, opTok.offset); break;
            case Tok::Caret: lhs = power(std::move(lhs), rhs, opTok.offset); break;
            default: break;
            }
        }
    }

    static SourceExpr divide(SourceExpr lhs, const SourceExpr &rhs, std::size_t at) {
        const auto d = constant_value(rhs);
        if (!d) throw ParseError(at, "non-polynomial: division by a non-constant expression");
        if (d->is_zero()) throw ParseError(at, "division by zero");
        if (lhs.kind == SourceExpr::Kind::Number) {
            lhs.value /= *d;
            return lhs;
        }
        return make_nary(SourceExpr::Kind::Product, std::move(lhs), SourceExpr::number(d->inverse(), at), at);
    }

    static SourceExpr power(SourceExpr base, const SourceExpr &rhs, std::size_t at) {
        const auto e = constant_value(rhs);
        if (!e || !e->is_integer()) throw ParseError(at, "exponent must be an integer");
        if (abs(e->num()) > 100000) throw ParseError(at, "exponent too large");
        SourceExpr p;
        p.kind = SourceExpr::Kind::Power;
        p.offset = at;
        p.exponent = e->num().get_si();
        p.args.push_back(std::move(base));
        return p;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

SourceExpr parse(std::string_view text) { return Parser(text).parse_equation(); }

} // namespace odekit
