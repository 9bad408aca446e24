#include "rba/expr.hpp"

#include <cctype>
#include <sstream>

namespace rba {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
    std::string s;
    for (size_t i = 0; i < expected.size(); ++i) {
        if (i) s += expected.size() == 2 ? " or " : (i + 1 == expected.size() ? ", or " : ", ");
        s += expected[i];
    }
    return s;
}

std::string format_parse_error(int line, int col, const std::string& message,
                               const std::vector<std::string>& expected) {
    std::ostringstream os;
    os << "parse error at " << line << ':' << col << ": " << message;
    if (!expected.empty()) os << " (expected " << join_expected(expected) << ')';
    return os.str();
}

} // namespace

ParseError::ParseError(int line_, int col_, std::string message, std::vector<std::string> expected_)
    : Error(format_parse_error(line_, col_, message, expected_)),
      line(line_), col(col_), expected(std::move(expected_)) {}

EvalError::EvalError(SourceSpan span_, const std::string& message)
    : Error("eval error at " + std::to_string(span_.line) + ':' + std::to_string(span_.col) +
            ": " + message),
      span(span_) {}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Number: return "a number";
        case Tok::Ident: return "an identifier";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Caret: return "'^'";
        case Tok::Slash: return "'/'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        const SourceSpan here{line, col};
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Tok::Number, text.substr(i, j - i), here});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Tok::Ident, text.substr(i, j - i), here});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '^': k = Tok::Caret; break;
            case '/': k = Tok::Slash; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case ',': k = Tok::Comma; break;
            default:
                throw ParseError(line, col, std::string("unexpected character '") + c + "'", {});
        }
        out.push_back({k, std::string(1, c), here});
        ++col;
        ++i;
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    std::unique_ptr<ExprAST> run() {
        auto e = parse_expr();
        if (peek().kind != Tok::End)
            fail("unexpected " + describe(peek()), {"'+'", "'-'", "'*'", "'^'", "end of input"});
        return e;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
        throw ParseError(peek().span.line, peek().span.col, msg, std::move(expected));
    }

    static std::string describe(const Token& t) {
        if (t.kind == Tok::End) return "end of input";
        return "'" + t.text + "'";
    }

    Token expect(Tok kind) {
        if (peek().kind != kind) fail("unexpected " + describe(peek()), {tok_name(kind)});
        return take();
    }

    unsigned long parse_uint() {
        const Token t = expect(Tok::Number);
        if (t.text.size() > 9) throw ParseError(t.span.line, t.span.col, "number too large", {});
        return std::stoul(t.text);
    }

    std::unique_ptr<ExprAST> make(ExprKind kind, SourceSpan span) {
        auto n = std::make_unique<ExprAST>();
        n->kind = kind;
        n->span = span;
        return n;
    }

    std::unique_ptr<ExprAST> parse_expr() {
        auto left = parse_term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token op = take();
            auto node = make(op.kind == Tok::Plus ? ExprKind::Add : ExprKind::Sub, left->span);
            node->children.push_back(std::move(left));
            node->children.push_back(parse_term());
            left = std::move(node);
        }
        return left;
    }

    std::unique_ptr<ExprAST> parse_term() {
        auto left = parse_factor();
        while (peek().kind == Tok::Star) {
            take();
            auto node = make(ExprKind::Mul, left->span);
            node->children.push_back(std::move(left));
            node->children.push_back(parse_factor());
            left = std::move(node);
        }
        return left;
    }

    std::unique_ptr<ExprAST> parse_factor() {
        auto base = parse_atom();
        if (peek().kind == Tok::Caret) {
            take();
            auto node = make(ExprKind::Pow, base->span);
            node->arg = static_cast<int>(parse_uint());
            node->children.push_back(std::move(base));
            return node;
        }
        return base;
    }

    std::unique_ptr<ExprAST> parse_rational(bool negative, SourceSpan span) {
        const Token num = expect(Tok::Number);
        Int n(num.text);
        if (negative) n = -n;
        Int d(1);
        if (peek().kind == Tok::Slash) {
            take();
            const Token den = expect(Tok::Number);
            d = Int(den.text);
            if (d == 0)
                throw ParseError(den.span.line, den.span.col, "zero denominator", {});
        }
        auto node = make(ExprKind::RationalLit, span);
        node->value = Rat(n, d);
        node->value.canonicalize();
        return node;
    }

    std::unique_ptr<ExprAST> parse_call(ExprKind kind, SourceSpan span) {
        take();  // identifier
        expect(Tok::LParen);
        auto node = make(kind, span);
        node->children.push_back(parse_expr());
        expect(Tok::RParen);
        return node;
    }

    std::unique_ptr<ExprAST> parse_atom() {
        const Token& t = peek();
        static const std::vector<std::string> kAtomExpected = {
            "a rational", "'one'", "'w'", "'P'", "'d'", "'geominv'", "'('"};
        switch (t.kind) {
            case Tok::Number:
                return parse_rational(false, t.span);
            case Tok::Minus: {
                const SourceSpan span = t.span;
                take();
                if (peek().kind != Tok::Number)
                    fail("expected a number after '-'", {"a number"});
                return parse_rational(true, span);
            }
            case Tok::LParen: {
                take();
                auto e = parse_expr();
                expect(Tok::RParen);
                return e;
            }
            case Tok::Ident: {
                if (t.text == "one") {
                    take();
                    expect(Tok::LParen);
                    auto node = make(ExprKind::One, t.span);
                    node->arg = static_cast<int>(parse_uint());
                    expect(Tok::RParen);
                    return node;
                }
                if (t.text == "w") {
                    take();
                    expect(Tok::LParen);
                    auto node = make(ExprKind::Word, t.span);
                    node->word.push_back(static_cast<uint32_t>(parse_uint()));
                    while (peek().kind == Tok::Comma) {
                        take();
                        node->word.push_back(static_cast<uint32_t>(parse_uint()));
                    }
                    expect(Tok::RParen);
                    return node;
                }
                if (t.text == "P") return parse_call(ExprKind::RbOp, t.span);
                if (t.text == "d") return parse_call(ExprKind::Derive, t.span);
                if (t.text == "geominv") return parse_call(ExprKind::GeomInv, t.span);
                fail("unknown name '" + t.text + "'", kAtomExpected);
            }
            default:
                fail("unexpected " + describe(t), kAtomExpected);
        }
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

bool is_atomic(const ExprAST& e) {
    switch (e.kind) {
        case ExprKind::One:
        case ExprKind::Word:
        case ExprKind::RbOp:
        case ExprKind::Derive:
        case ExprKind::GeomInv:
            return true;
        case ExprKind::RationalLit:
            return e.value >= 0;
        default:
            return false;
    }
}

void print_node(const ExprAST& e, std::ostream& os) {
    auto parens = [&](const ExprAST& child, bool need) {
        if (need) os << '(';
        print_node(child, os);
        if (need) os << ')';
    };
    switch (e.kind) {
        case ExprKind::RationalLit:
            os << rat_to_string(e.value);
            break;
        case ExprKind::One:
            os << "one(" << e.arg << ')';
            break;
        case ExprKind::Word:
            os << "w(";
            for (size_t i = 0; i < e.word.size(); ++i) {
                if (i) os << ',';
                os << e.word[i];
            }
            os << ')';
            break;
        case ExprKind::Add:
        case ExprKind::Sub: {
            print_node(*e.children[0], os);
            os << (e.kind == ExprKind::Add ? " + " : " - ");
            const ExprAST& r = *e.children[1];
            // Right operand regroups under left association; negative
            // literals would fuse with the operator.
            parens(r, r.kind == ExprKind::Add || r.kind == ExprKind::Sub ||
                          (r.kind == ExprKind::RationalLit && r.value < 0));
            break;
        }
        case ExprKind::Mul: {
            const ExprAST& l = *e.children[0];
            const ExprAST& r = *e.children[1];
            parens(l, l.kind == ExprKind::Add || l.kind == ExprKind::Sub);
            os << '*';
            // A bare right-hand Mul would reassociate on reparse.
            parens(r, r.kind == ExprKind::Add || r.kind == ExprKind::Sub ||
                          r.kind == ExprKind::Mul ||
                          (r.kind == ExprKind::RationalLit && r.value < 0));
            break;
        }
        case ExprKind::Pow:
            parens(*e.children[0], !is_atomic(*e.children[0]));
            os << '^' << e.arg;
            break;
        case ExprKind::RbOp:
            os << "P(";
            print_node(*e.children[0], os);
            os << ')';
            break;
        case ExprKind::Derive:
            os << "d(";
            print_node(*e.children[0], os);
            os << ')';
            break;
        case ExprKind::GeomInv:
            os << "geominv(";
            print_node(*e.children[0], os);
            os << ')';
            break;
    }
}

} // namespace

std::unique_ptr<ExprAST> parse_expr(const std::string& text) {
    return Parser(text).run();
}

std::string print_expr(const ExprAST& ast) {
    std::ostringstream os;
    print_node(ast, os);
    return os.str();
}

bool expr_equal(const ExprAST& a, const ExprAST& b) {
    if (a.kind != b.kind || a.arg != b.arg || a.word != b.word || a.value != b.value)
        return false;
    if (a.children.size() != b.children.size()) return false;
    for (size_t i = 0; i < a.children.size(); ++i) {
        if (!expr_equal(*a.children[i], *b.children[i])) return false;
    }
    return true;
}

RBAElement eval_expr(const ExprAST& ast, const AlgebraContext& ctx) {
    auto guard = [&](auto&& fn) -> RBAElement {
        try {
            return fn();
        } catch (const EvalError&) {
            throw;
        } catch (const Error& e) {
            throw EvalError(ast.span, e.what());
        }
    };
    switch (ast.kind) {
        case ExprKind::RationalLit:
            return element_scale(ast.value, RBAElement::unit());
        case ExprKind::One:
            if (ast.arg > ctx.trunc) return RBAElement();
            return RBAElement::one(ast.arg);
        case ExprKind::Word: {
            const TensorWord w{std::vector<uint32_t>(ast.word)};
            if (w.degree() > ctx.trunc) return RBAElement();
            return RBAElement::from_word(w, 1);
        }
        case ExprKind::Add:
            return element_add(eval_expr(*ast.children[0], ctx), eval_expr(*ast.children[1], ctx));
        case ExprKind::Sub:
            return element_sub(eval_expr(*ast.children[0], ctx), eval_expr(*ast.children[1], ctx));
        case ExprKind::Mul: {
            const RBAElement l = eval_expr(*ast.children[0], ctx);
            const RBAElement r = eval_expr(*ast.children[1], ctx);
            return guard([&] { return element_mul(l, r, ctx); });
        }
        case ExprKind::Pow: {
            const RBAElement base = eval_expr(*ast.children[0], ctx);
            return guard([&] { return element_pow(base, ast.arg, ctx); });
        }
        case ExprKind::RbOp: {
            const RBAElement inner = eval_expr(*ast.children[0], ctx);
            return guard([&] { return rb_apply(inner, ctx); });
        }
        case ExprKind::Derive: {
            const RBAElement inner = eval_expr(*ast.children[0], ctx);
            return guard([&] { return derive(inner, ctx); });
        }
        case ExprKind::GeomInv: {
            const RBAElement inner = eval_expr(*ast.children[0], ctx);
            return guard([&] { return geometric_inverse(inner, ctx); });
        }
    }
    throw EvalError(ast.span, "malformed expression node");
}

} // namespace rba
