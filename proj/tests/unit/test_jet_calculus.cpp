#include "jetnoether/jet_calculus.hpp"
#include "jetnoether/parser.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace jetnoether;

namespace {
Expr rnd(const ContextPtr& ctx, std::mt19937& rng, int max_order, int max_degree) {
    std::uniform_int_distribution<int> nterms(1, 3), coef(-3, 3), deg(0, max_degree);
    std::vector<std::size_t> pool;
    for (int i = 0; i < ctx->m(); ++i) pool.push_back(ctx->independent_id(i));
    for (int j = 0; j < ctx->n(); ++j)
        for (const auto& I : ctx->multi_indices_up_to(max_order))
            pool.push_back(ctx->dependent_id(j, I));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    Expr e = Expr::zero(ctx);
    for (int t = nterms(rng); t > 0; --t) {
        Expr term = Expr::constant(ctx, coef(rng));
        for (int f = deg(rng); f > 0; --f) term = term * Expr::coordinate(ctx, pool[pick(rng)]);
        e += term;
    }
    return e;
}
} // namespace

TEST_CASE("context enumerates the full chart") {
    auto a = make_context({"x"}, {"y"}, 2);
    CHECK(a->coordinate_count() == 4); // x, y, y_x, y_xx
    auto b = make_context({"x", "t"}, {"u"}, 1);
    CHECK(b->coordinate_count() == 5); // x, t, u, u_x, u_t
    auto c = make_context({"x0", "x1", "x2", "x3"}, {"A0", "A1", "A2", "A3"}, 2);
    CHECK(c->coordinate_count() == 64); // 4 + 4 + 4*4 + 4*10

    CHECK_THROWS_AS(make_context({"x", "x"}, {"y"}, 1), PreconditionError);
    CHECK_THROWS_AS(make_context({"x"}, {"y"}, 0), PreconditionError);
    CHECK_THROWS_AS(make_context({"x"}, {"x"}, 1), PreconditionError);
}

TEST_CASE("multi-index order follows the graded-lex rule") {
    MultiIndex a(std::vector<std::uint16_t>{1, 0});
    MultiIndex b(std::vector<std::uint16_t>{0, 2});
    MultiIndex c(std::vector<std::uint16_t>{1, 1});
    CHECK(a < b);  // orders 1 < 2
    CHECK(b < c);  // same order, first entries 0 < 1
    CHECK(a == a);
    CHECK((a <=> a) == std::strong_ordering::equal);

    // pairs ordered by J first, then j
    CHECK(compare_index_pair(1, a, 0, b) == std::strong_ordering::less);
    CHECK(compare_index_pair(1, a, 0, a) == std::strong_ordering::greater);

    MultiIndex d(std::vector<std::uint16_t>{2});
    CHECK_THROWS_AS((void)(a < d), ContextError);
}

TEST_CASE("total derivative on the chart") {
    auto ctx = make_context({"x"}, {"y"}, 3);
    CHECK(total_derivative(parse_expr("y", ctx), 0) == parse_expr("y_x", ctx));
    CHECK(total_derivative(parse_expr("x*y_x", ctx), 0) == parse_expr("y_x + x*y_xx", ctx));
    CHECK(total_derivative(parse_expr("5", ctx), 0).is_zero());
    // top-order coordinates raised past k drop out
    CHECK(total_derivative(parse_expr("y_xxx", ctx), 0).is_zero());
    CHECK_THROWS_AS(total_derivative(parse_expr("y", ctx), 2), ContextError);
}

TEST_CASE("iterated total derivative follows the fixed operator order") {
    auto ctx = make_context({"x"}, {"y"}, 4);
    CHECK(iterated_total_derivative(parse_expr("y", ctx), MultiIndex(std::vector<std::uint16_t>{2})) ==
          parse_expr("y_xx", ctx));
    CHECK(iterated_total_derivative(parse_expr("x^2", ctx), MultiIndex(std::vector<std::uint16_t>{2})) ==
          parse_expr("2", ctx));

    auto ctx2 = make_context({"x", "t"}, {"u"}, 2);
    CHECK(iterated_total_derivative(parse_expr("u", ctx2), MultiIndex(std::vector<std::uint16_t>{1, 1})) ==
          parse_expr("u_xt", ctx2));

    // refuses to truncate
    CHECK_THROWS_AS(iterated_total_derivative(parse_expr("y_xx", ctx),
                                              MultiIndex(std::vector<std::uint16_t>{3})),
                    TruncationError);
}

TEST_CASE("total derivatives commute below truncation and satisfy Leibniz") {
    auto ctx = make_context({"x", "t"}, {"u", "v"}, 4);
    std::mt19937 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        Expr a = rnd(ctx, rng, 2, 2);
        Expr b = rnd(ctx, rng, 2, 2);
        CHECK(total_derivative(total_derivative(a, 0), 1) ==
              total_derivative(total_derivative(a, 1), 0));
        CHECK(total_derivative(a * b, 0) ==
              a * total_derivative(b, 0) + b * total_derivative(a, 0));
        CHECK(total_derivative(a, 0).order() <= a.order() + 1);
    }
}

TEST_CASE("total derivative restricted to base expressions is the plain partial") {
    auto ctx = make_context({"x", "t"}, {"u"}, 2);
    Expr f = parse_expr("x^3*t + 2*t^2", ctx);
    CHECK(total_derivative(f, 0) == f.partial(ctx->independent_id(0)));
    CHECK(total_derivative(f, 1) == f.partial(ctx->independent_id(1)));
}

TEST_CASE("expression embedding into a deeper context") {
    auto small = make_context({"x"}, {"y"}, 2, {{"c", true}});
    auto big = small->with_order(5);
    Expr e = parse_expr("c*y_xx + x*y", small);
    Expr f = e.embedded(big);
    CHECK(f == parse_expr("c*y_xx + x*y", big));
    CHECK(f.order() == 2);
}
