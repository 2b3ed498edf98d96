#pragma once

// Deterministic random generators shared by the unit suites and the
// acceptance property suites. Sizes stay small (m <= 2, n <= 2, k <= 4,
// degree <= 3) so every check is exact and fast.

#include "jetnoether/form.hpp"
#include "jetnoether/parser.hpp"
#include "jetnoether/vector_field.hpp"

#include <random>

namespace jetnoether::testgen {

inline Expr random_expr(const ContextPtr& ctx, std::mt19937& rng, int max_order,
                        int max_degree, int max_terms = 3) {
    std::uniform_int_distribution<int> nterms(0, max_terms), coef(-4, 4), den(1, 3);
    std::vector<std::size_t> pool;
    for (int i = 0; i < ctx->m(); ++i) pool.push_back(ctx->independent_id(i));
    for (int j = 0; j < ctx->n(); ++j)
        for (const auto& I : ctx->multi_indices_up_to(max_order))
            pool.push_back(ctx->dependent_id(j, I));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    Expr e = Expr::zero(ctx);
    for (int t = nterms(rng); t > 0; --t) {
        Expr term = Expr::constant(ctx, Rational(coef(rng)) / den(rng));
        for (int f = deg(rng); f > 0; --f) term = term * Expr::coordinate(ctx, pool[pick(rng)]);
        e += term;
    }
    return e;
}

inline Form random_form(const ContextPtr& ctx, std::mt19937& rng, int degree,
                        int max_order, int max_degree) {
    Form a(ctx, degree);
    if (degree == 0) return Form::scalar(random_expr(ctx, rng, max_order, max_degree));
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<std::size_t> pick(0, ctx->basis_count() - 1);
    for (int t = nterms(rng); t > 0; --t) {
        std::vector<std::uint16_t> ids;
        while (static_cast<int>(ids.size()) < degree) {
            auto id = static_cast<std::uint16_t>(pick(rng));
            if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
        }
        Form term(ctx, degree);
        term.add_unsorted(std::move(ids), random_expr(ctx, rng, max_order, max_degree));
        a += term;
    }
    return a;
}

inline JetVectorField random_vector_field(const ContextPtr& ctx, std::mt19937& rng,
                                          int max_order, int max_degree) {
    JetVectorField X(ctx);
    for (std::size_t id = 0; id < ctx->coordinate_count(); ++id)
        X.set_component(id, random_expr(ctx, rng, max_order, max_degree, 2));
    return X;
}

inline Generator random_generator(const ContextPtr& ctx, std::mt19937& rng,
                                  int max_order, int max_degree) {
    Generator g = Generator::zero(ctx);
    for (int i = 0; i < ctx->m(); ++i) g.xi[i] = random_expr(ctx, rng, max_order, max_degree, 2);
    for (int j = 0; j < ctx->n(); ++j) g.phi[j] = random_expr(ctx, rng, max_order, max_degree, 2);
    return g;
}

} // namespace jetnoether::testgen
