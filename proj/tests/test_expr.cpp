#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_util.hpp"

#include <random>

#include "rba/expr.hpp"

using namespace rba;
using namespace rba::test;

namespace {

std::unique_ptr<ExprAST> random_ast(std::mt19937_64& rng, int depth) {
    auto node = std::make_unique<ExprAST>();
    node->span = {1, 1};
    const int leaf_pick = static_cast<int>(rng() % 3);
    if (depth == 0) {
        if (leaf_pick == 0) {
            node->kind = ExprKind::RationalLit;
            long num = static_cast<long>(rng() % 13) - 6;
            node->value = Q(num, static_cast<long>(rng() % 4) + 1);
        } else if (leaf_pick == 1) {
            node->kind = ExprKind::One;
            node->arg = static_cast<int>(rng() % 6);
        } else {
            node->kind = ExprKind::Word;
            const size_t len = 1 + rng() % 3;
            for (size_t i = 0; i < len; ++i)
                node->word.push_back(static_cast<uint32_t>(rng() % 4));
        }
        return node;
    }
    switch (rng() % 7) {
        case 0: node->kind = ExprKind::Add; break;
        case 1: node->kind = ExprKind::Sub; break;
        case 2: node->kind = ExprKind::Mul; break;
        case 3: node->kind = ExprKind::Pow; break;
        case 4: node->kind = ExprKind::RbOp; break;
        case 5: node->kind = ExprKind::Derive; break;
        default: node->kind = ExprKind::GeomInv; break;
    }
    node->children.push_back(random_ast(rng, depth - 1));
    if (node->kind == ExprKind::Add || node->kind == ExprKind::Sub || node->kind == ExprKind::Mul)
        node->children.push_back(random_ast(rng, depth - 1));
    if (node->kind == ExprKind::Pow) node->arg = static_cast<int>(rng() % 5);
    return node;
}

} // namespace

TEST_CASE("parsing the documented expressions") {
    const auto a = parse_expr("one(1)*one(1)");
    CHECK(a->kind == ExprKind::Mul);
    CHECK(a->children[0]->kind == ExprKind::One);
    CHECK(a->children[0]->arg == 1);
    CHECK(a->children[1]->kind == ExprKind::One);

    const auto b = parse_expr("w(0,1,2)*w(0,3)");
    CHECK(b->kind == ExprKind::Mul);
    CHECK(b->children[0]->word == std::vector<uint32_t>{0, 1, 2});
    CHECK(b->children[1]->word == std::vector<uint32_t>{0, 3});

    const auto c = parse_expr("P(one(2)*d(one(2)))");
    CHECK(c->kind == ExprKind::RbOp);
    CHECK(c->children[0]->kind == ExprKind::Mul);
    CHECK(c->children[0]->children[1]->kind == ExprKind::Derive);

    // whitespace-insensitive
    CHECK(expr_equal(*parse_expr(" one( 1 ) \n * one(1)"), *a));
}

TEST_CASE("rational literals and precedence") {
    const auto r = parse_expr("-3/4");
    CHECK(r->kind == ExprKind::RationalLit);
    CHECK(r->value == Q(-3, 4));

    const auto p = parse_expr("one(1)^3");
    CHECK(p->kind == ExprKind::Pow);
    CHECK(p->arg == 3);

    // '*' binds tighter than '+', '^' tighter than '*'
    const auto e = parse_expr("1 + 2*one(1)^2");
    CHECK(e->kind == ExprKind::Add);
    CHECK(e->children[1]->kind == ExprKind::Mul);
    CHECK(e->children[1]->children[1]->kind == ExprKind::Pow);

    // binary minus vs negative literal
    const auto m = parse_expr("3-2");
    CHECK(m->kind == ExprKind::Sub);
    const auto n = parse_expr("3*-2");
    CHECK(n->kind == ExprKind::Mul);
    CHECK(n->children[1]->value == Q(-2));
}

TEST_CASE("parse errors carry positions and expectations") {
    try {
        parse_expr("one(1) + ");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col == 10);
        CHECK(!e.expected.empty());
    }
    try {
        parse_expr("one(1)\n+ foo(2)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 3);
    }
    CHECK_THROWS_AS(parse_expr("w()"), ParseError);
    CHECK_THROWS_AS(parse_expr("one(1"), ParseError);
    CHECK_THROWS_AS(parse_expr("1/0"), ParseError);
    CHECK_THROWS_AS(parse_expr("one(1) one(2)"), ParseError);
    CHECK_THROWS_AS(parse_expr("(one(1)"), ParseError);
    CHECK_THROWS_AS(parse_expr(""), ParseError);
    CHECK_THROWS_AS(parse_expr("one(1) @ 2"), ParseError);
}

TEST_CASE("canonical printer round-trips") {
    std::mt19937_64 rng(321);
    for (int i = 0; i < 200; ++i) {
        const auto ast = random_ast(rng, 1 + static_cast<int>(rng() % 3));
        const std::string printed = print_expr(*ast);
        CAPTURE(printed);
        const auto reparsed = parse_expr(printed);
        CHECK(expr_equal(*ast, *reparsed));
        CHECK(print_expr(*reparsed) == printed);
    }
}

TEST_CASE("evaluation of documented expressions") {
    const AlgebraContext ctx(Q(1), 5);
    const RBAElement cube = eval_expr(*parse_expr("one(1)^3"), ctx);
    CHECK(cube == el({{TensorWord::one(1), Q(1)},
                      {TensorWord::one(2), Q(6)},
                      {TensorWord::one(3), Q(6)}}));
    CHECK(eval_expr(*parse_expr("d(P(one(4)))"), ctx) == RBAElement::one(4));
    CHECK(eval_expr(*parse_expr("one(1)*one(1)"), ctx) == one_mul_closed(1, 1, ctx));
    CHECK(eval_expr(*parse_expr("2 - 2"), ctx).is_zero());
    CHECK(eval_expr(*parse_expr("one(9)"), ctx).is_zero());  // beyond the cap
    CHECK(eval_expr(*parse_expr("-1/2*one(2)"), ctx) == RBAElement::one(2, Q(-1, 2)));
    // the divided-power step
    const RBAElement dp = eval_expr(*parse_expr("P(one(2)*d(one(2)))"), ctx);
    CHECK(dp == el({{TensorWord::one(4), Q(3)}, {TensorWord::one(3), Q(2)}}));
}

TEST_CASE("evaluation errors carry source spans") {
    try {
        eval_expr(*parse_expr("1 + geominv(one(2))"), AlgebraContext(Q(1), 6));
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.span.col == 5);
        CHECK(std::string(e.what()).find("weight") != std::string::npos);
    }
    CHECK_THROWS_AS(eval_expr(*parse_expr("d(w(0,1))"), AlgebraContext(Q(1), 6)), EvalError);
    CHECK_THROWS_AS(eval_expr(*parse_expr("geominv(1 + one(1))"), AlgebraContext(Q(0), 6)),
                    EvalError);
    // but geominv of a positive-degree element at weight zero is fine
    CHECK_FALSE(eval_expr(*parse_expr("geominv(one(2))"), AlgebraContext(Q(0), 6)).is_zero());
}

TEST_CASE("parser survives junk input") {
    std::mt19937_64 rng(2718);
    const std::string alphabet = "one wdPgeominv()+-*/^,0123456789 \n\t";
    for (int i = 0; i < 2000; ++i) {
        std::string text;
        const size_t len = rng() % 24;
        for (size_t j = 0; j < len; ++j) text += alphabet[rng() % alphabet.size()];
        try {
            const auto ast = parse_expr(text);
            // whatever parsed must round-trip
            CHECK(expr_equal(*ast, *parse_expr(print_expr(*ast))));
        } catch (const ParseError&) {
            // fine: malformed input must fail with a located error
        }
    }
}

TEST_CASE("both backends print identical json over an expression corpus") {
    const std::vector<std::string> corpus = {
        "one(1)*one(1)",
        "w(0,1,2)*w(0,3)",
        "one(1)^3 + one(2)^2",
        "(one(1) + w(0,1))*(one(2) - 2*w(1))",
        "P(one(2)*d(one(2)))",
        "w(2,1)*w(3)*one(1)",
        "(1/2*one(1) + w(0,2))^2",
    };
    for (const Rat& lam : {Q(0), Q(1), Q(5, 3)}) {
        for (const std::string& text : corpus) {
            const auto ast = parse_expr(text);
            const AlgebraContext rec(lam, 8, Backend::Recursive);
            const AlgebraContext stf(lam, 8, Backend::Stuffle);
            CHECK(element_to_json(eval_expr(*ast, rec)) == element_to_json(eval_expr(*ast, stf)));
        }
    }
}
