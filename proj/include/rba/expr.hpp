#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rba/core.hpp"
#include "rba/errors.hpp"
#include "rba/rational.hpp"

namespace rba {

// Grammar (whitespace-insensitive):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' UINT)?
//   atom   := RATIONAL | 'one' '(' UINT ')' | 'w' '(' UINT (',' UINT)* ')'
//           | 'P' '(' expr ')' | 'd' '(' expr ')' | 'geominv' '(' expr ')'
//           | '(' expr ')'
//   RATIONAL := INT ('/' UINT)?

enum class ExprKind {
    RationalLit,
    One,
    Word,
    Add,
    Sub,
    Mul,
    Pow,
    RbOp,     // P(expr)
    Derive,   // d(expr)
    GeomInv,  // geominv(expr)
};

struct SourceSpan {
    int line = 1;  // 1-based
    int col = 1;
};

struct ExprAST {
    ExprKind kind;
    SourceSpan span;
    Rat value;                   // RationalLit
    int arg = 0;                 // One index / Pow exponent
    std::vector<uint32_t> word;  // Word exponents
    std::vector<std::unique_ptr<ExprAST>> children;
};

struct ParseError : Error {
    ParseError(int line_, int col_, std::string message, std::vector<std::string> expected_);

    int line;
    int col;
    std::vector<std::string> expected;
};

// An algebra-level error surfaced during evaluation, tagged with the
// source location of the offending subexpression.
struct EvalError : Error {
    EvalError(SourceSpan span_, const std::string& message);

    SourceSpan span;
};

std::unique_ptr<ExprAST> parse_expr(const std::string& text);

// Canonical printer; parse_expr(print_expr(a)) reproduces a.
std::string print_expr(const ExprAST& ast);

// Structural equality, ignoring spans.
bool expr_equal(const ExprAST& a, const ExprAST& b);

RBAElement eval_expr(const ExprAST& ast, const AlgebraContext& ctx);

} // namespace rba
