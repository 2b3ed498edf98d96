#include "jetnoether/form.hpp"
#include "jetnoether/parser.hpp"

#include "../support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace jetnoether;
using jetnoether::testgen::random_expr;
using jetnoether::testgen::random_form;
using jetnoether::testgen::random_vector_field;

namespace {

ContextPtr ctx1() { return make_context({"x"}, {"y"}, 2); }

/// The coordinate vector field d/dx^i (not the holonomic frame field).
JetVectorField coordinate_dx(const ContextPtr& ctx, int i) {
    JetVectorField X(ctx);
    X.set_component(ctx->independent_id(i), Expr::constant(ctx, 1));
    return X;
}

} // namespace

TEST_CASE("raw differentials expand in the contact basis") {
    auto ctx = ctx1();
    std::size_t y = ctx->dependent_id(0, ctx->zero_index());

    Form dy = contact_differential_of_coordinate(ctx, y);
    Form expected(ctx, 1);
    expected += Form::basis(ctx, ctx->omega_id(0, ctx->zero_index()));
    expected += Form::basis(ctx, ctx->dx_id(0)).scaled(parse_expr("y_x", ctx));
    CHECK(dy == expected);

    CHECK(contact_differential_of_coordinate(ctx, ctx->independent_id(0)) ==
          Form::basis(ctx, ctx->dx_id(0)));

    MultiIndex xx(std::vector<std::uint16_t>{2});
    CHECK(contact_differential_of_coordinate(ctx, ctx->dependent_id(0, xx)) ==
          Form::basis(ctx, ctx->psi_id(0, xx)));

    // to_contact_basis over a two-factor raw term: d x ^ d y
    Form a = to_contact_basis(ctx, {{Expr::constant(ctx, 1), {ctx->independent_id(0), y}}}, 2);
    Form b = wedge(Form::basis(ctx, ctx->dx_id(0)), dy);
    CHECK(a == b);
}

TEST_CASE("wedge is graded antisymmetric and bilinear") {
    auto ctx = ctx1();
    Form dx = Form::basis(ctx, ctx->dx_id(0));
    Form w = Form::basis(ctx, ctx->omega_id(0, ctx->zero_index()));

    CHECK(wedge(dx, dx).is_zero());
    CHECK(wedge(w, dx) == -wedge(dx, w));
    CHECK(wedge(dx.scaled(parse_expr("y", ctx)), w) == wedge(dx, w).scaled(parse_expr("y", ctx)));
}

TEST_CASE("exterior derivative on scalars and basis forms") {
    auto ctx = ctx1();
    Form dx = Form::basis(ctx, ctx->dx_id(0));
    Form w = Form::basis(ctx, ctx->omega_id(0, ctx->zero_index()));
    Form wx = Form::basis(ctx, ctx->omega_id(0, ctx->zero_index().raised(0)));

    CHECK(exterior_derivative(Form::scalar(parse_expr("x", ctx))) == dx);
    // d(w) = -w_x ^ dx for k >= 2, m = 1
    CHECK(exterior_derivative(w) == -wedge(wx, dx));
    // d(y dx) = w ^ dx
    CHECK(exterior_derivative(dx.scaled(parse_expr("y", ctx))) == wedge(w, dx));
}

TEST_CASE("interior product") {
    auto ctx = ctx1();
    JetVectorField ddx = coordinate_dx(ctx, 0);
    Form dx = Form::basis(ctx, ctx->dx_id(0));
    Form w = Form::basis(ctx, ctx->omega_id(0, ctx->zero_index()));

    CHECK(interior_product(ddx, dx) == Form::scalar(Expr::constant(ctx, 1)));

    // iota_{d/dx}(dx ^ dy) = dy as a contact-basis form (dy(d/dx) = 0 fails for
    // the bare coordinate field: omega(d/dx) = -y_x, so the contraction
    // reassembles exactly dy = w + y_x dx).
    std::size_t y = ctx->dependent_id(0, ctx->zero_index());
    Form dxdy = to_contact_basis(ctx, {{Expr::constant(ctx, 1), {ctx->independent_id(0), y}}}, 2);
    Form dy = contact_differential_of_coordinate(ctx, y);
    CHECK(interior_product(ddx, dxdy) == dy);

    JetVectorField zero(ctx);
    CHECK(interior_product(zero, dxdy).is_zero());
    CHECK_THROWS_AS(interior_product(ddx, Form::scalar(parse_expr("y", ctx))),
                    PreconditionError);
}

TEST_CASE("holonomicity and properness predicates") {
    auto ctx = ctx1();
    Form dx = Form::basis(ctx, ctx->dx_id(0));
    Form w = Form::basis(ctx, ctx->omega_id(0, ctx->zero_index()));
    MultiIndex xx(std::vector<std::uint16_t>{2});
    Form psi = Form::basis(ctx, ctx->psi_id(0, xx));

    CHECK(is_holonomic(w));
    CHECK_FALSE(is_holonomic(dx));
    CHECK_FALSE(is_holonomic(wedge(dx, w)));  // q = 2 >= m = 1 and l + s = 1 >= 1
    CHECK_FALSE(is_holonomic(wedge(w, psi))); // psi pairs with d/dy_top, so l + s = 1 >= m
    CHECK(is_holonomic(wedge(w, Form::basis(ctx, ctx->omega_id(0, ctx->zero_index().raised(0))))));
    CHECK(is_holonomic(Form::zero(ctx, 1)));

    CHECK(is_proper(Form::volume(ctx).scaled(parse_expr("y_x", ctx))));
    CHECK_FALSE(is_proper(psi));
    CHECK_FALSE(is_proper(wedge(w, psi)));
}

TEST_CASE("bidegree of proper homogeneous forms") {
    auto ctx2 = make_context({"x", "t"}, {"u"}, 2);
    Form beta = wedge(Form::volume(ctx2), Form::basis(ctx2, ctx2->omega_id(0, ctx2->zero_index())))
                    .scaled(parse_expr("u_xx - u_tt", ctx2));
    auto bd = bidegree(beta);
    REQUIRE(bd.has_value());
    CHECK(*bd == std::make_pair(2, 1));

    Form vol = Form::volume(ctx2);
    auto bd2 = bidegree(vol);
    REQUIRE(bd2.has_value());
    CHECK(*bd2 == std::make_pair(2, 0));

    Form mixed = Form::basis(ctx2, ctx2->dx_id(0)) +
                 Form::basis(ctx2, ctx2->omega_id(0, ctx2->zero_index()));
    CHECK_FALSE(bidegree(mixed).has_value());

    CHECK_THROWS_AS(bidegree(Form::zero(ctx2, 1)), PreconditionError);
}

TEST_CASE("lagrangian part reads the volume coefficient") {
    auto ctx = ctx1();
    Expr L = parse_expr("1/2*y_x^2 - 1/2*y^2", ctx);
    Form alphaL = Form::volume(ctx).scaled(L);
    CHECK(lagrangian_part(alphaL) == L);

    Form cartan = alphaL + Form::basis(ctx, ctx->omega_id(0, ctx->zero_index()))
                               .scaled(parse_expr("y_x", ctx));
    CHECK(lagrangian_part(cartan) == L);

    Form contact = Form::basis(ctx, ctx->omega_id(0, ctx->zero_index()));
    CHECK(lagrangian_part(contact).is_zero());
    CHECK_THROWS_AS(lagrangian_part(wedge(contact, Form::basis(ctx, ctx->dx_id(0)))),
                    PreconditionError);
}

TEST_CASE("d o d = 0, iota o iota = 0, graded Leibniz") {
    auto ctx = make_context({"x", "t"}, {"u", "v"}, 3);
    std::mt19937 rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        int qa = iter % 3;           // degrees 0..2 (m + 1 = 3 covered below)
        int qb = (iter / 3) % 2 + 1; // degrees 1..2
        Form a = random_form(ctx, rng, qa, 2, 2);
        Form b = random_form(ctx, rng, qb, 2, 2);

        CHECK(exterior_derivative(exterior_derivative(a)).is_zero());

        Form lhs = exterior_derivative(wedge(a, b));
        Form rhs = wedge(exterior_derivative(a), b) +
                   (qa % 2 == 0 ? wedge(a, exterior_derivative(b))
                                : -wedge(a, exterior_derivative(b)));
        CHECK(lhs == rhs);

        JetVectorField X = random_vector_field(ctx, rng, 1, 1);
        Form ab = wedge(a, b);
        if (ab.degree() >= 2)
            CHECK(interior_product(X, interior_product(X, ab)).is_zero());
    }
}

TEST_CASE("holonomic wedges stay holonomic while the contact count persists") {
    auto ctx = make_context({"x", "t", "s"}, {"u"}, 2); // m = 3
    std::mt19937 rng(5);
    for (int iter = 0; iter < 100; ++iter) {
        // lambda = random combination of single contact factors (degree 1 < m)
        Form lam(ctx, 1);
        for (const auto& J : ctx->multi_indices_up_to(1))
            lam += Form::basis(ctx, ctx->omega_id(0, J)).scaled(random_expr(ctx, rng, 1, 2));
        REQUIRE(is_holonomic(lam));
        Form wdx = wedge(lam, Form::basis(ctx, ctx->dx_id(iter % 3)));
        CHECK(wdx.degree() + 1 <= ctx->m());
        CHECK(is_holonomic(wdx));
    }
}

TEST_CASE("lagrangian part ignores holonomic additions") {
    auto ctx = make_context({"x", "t"}, {"u"}, 2);
    std::mt19937 rng(17);
    for (int iter = 0; iter < 100; ++iter) {
        Form a = random_form(ctx, rng, 2, 1, 2);
        // holonomic degree-m form: every term keeps a contact factor
        Form lam = wedge(Form::basis(ctx, ctx->omega_id(0, ctx->zero_index())),
                         random_form(ctx, rng, 1, 1, 2));
        REQUIRE(is_holonomic(lam));
        CHECK(lagrangian_part(a + lam) == lagrangian_part(a));
    }
}
