#pragma once

#include "jetnoether/expr.hpp"

namespace jetnoether {

/// Truncated total derivative D_i on J^k:
///   D_i e = de/dx^i + sum_{|I| <= k-1} y^j_{I+1_i} * de/dy^j_I.
/// Partials with respect to top-order coordinates (|I| = k) are dropped;
/// equivalently, coordinates raised past k are treated as zero. This is the
/// holonomic frame field d/dx^i acting on functions of the chart.
inline Expr total_derivative(const Expr& e, int i) {
    const ContextPtr& ctx = e.context();
    if (i < 0 || i >= ctx->m()) throw ContextError("total derivative direction out of range");
    Expr result = e.partial(ctx->independent_id(i));
    for (std::uint32_t id : e.support()) {
        const Coordinate& c = ctx->coordinate(id);
        if (c.kind != CoordKind::Dependent) continue;
        if (c.jet.order() >= ctx->order()) continue; // truncation: y_{k+1} := 0
        Expr raised = Expr::coordinate(ctx, ctx->dependent_id(c.index, c.jet.raised(i)));
        result += raised * e.partial(id);
    }
    return result;
}

/// Iterated total derivative d^{|I|}/dx^I applied in the fixed operator order
/// (D_1)^{I_1} ... (D_m)^{I_m}, i.e. the rightmost factor acts first. Unlike
/// total_derivative this refuses to truncate: the caller must guarantee
/// order(e) + |I| <= k, otherwise a truncated (hence wrong) expression would
/// silently leak into certificates.
inline Expr iterated_total_derivative(const Expr& e, const MultiIndex& I) {
    const ContextPtr& ctx = e.context();
    if (static_cast<int>(I.arity()) != ctx->m())
        throw ContextError("multi-index arity does not match the context");
    if (e.order() + I.order() > ctx->order())
        throw TruncationError("iterated total derivative of order " + std::to_string(I.order()) +
                              " applied to an expression of order " + std::to_string(e.order()) +
                              " overflows the jet order k=" + std::to_string(ctx->order()));
    Expr result = e;
    for (int i = ctx->m() - 1; i >= 0; --i)
        for (int rep = 0; rep < I[i]; ++rep) result = total_derivative(result, i);
    return result;
}

inline int expression_order(const Expr& e) { return e.order(); }

} // namespace jetnoether
