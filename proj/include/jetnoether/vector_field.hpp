#pragma once

#include "jetnoether/jet_calculus.hpp"

#include <vector>

namespace jetnoether {

/// Generating data of a jet vector field: the components in the independent
/// directions (v_B^i) and in the dependent directions (v^j). Prolongation
/// fills in everything above.
struct Generator {
    std::vector<Expr> xi;  // size m
    std::vector<Expr> phi; // size n

    static Generator zero(const ContextPtr& ctx) {
        Generator g;
        g.xi.assign(ctx->m(), Expr::zero(ctx));
        g.phi.assign(ctx->n(), Expr::zero(ctx));
        return g;
    }
};

/// Vector field on J^k with one Expr component per chart coordinate:
/// X = X_B^i d/dx^i + sum X^j_J d/dy^j_J.
class JetVectorField {
public:
    explicit JetVectorField(ContextPtr ctx)
        : ctx_(std::move(ctx)),
          components_(ctx_->coordinate_count(), Expr::zero(ctx_)) {}

    const ContextPtr& context() const { return ctx_; }

    const Expr& component(std::size_t coord_id) const { return components_.at(coord_id); }
    void set_component(std::size_t coord_id, Expr e) {
        require_same_context(ctx_, e.context());
        components_.at(coord_id) = std::move(e);
    }

    const Expr& xi(int i) const { return components_.at(ctx_->independent_id(i)); }
    const Expr& comp(int j, const MultiIndex& J) const {
        return components_.at(ctx_->dependent_id(j, J));
    }

    bool is_zero() const {
        for (const auto& e : components_)
            if (!e.is_zero()) return false;
        return true;
    }

    JetVectorField operator+(const JetVectorField& o) const {
        require_same_context(ctx_, o.ctx_);
        JetVectorField r(ctx_);
        for (std::size_t id = 0; id < components_.size(); ++id)
            r.components_[id] = components_[id] + o.components_[id];
        return r;
    }

    JetVectorField scaled(const Expr& s) const {
        JetVectorField r(ctx_);
        for (std::size_t id = 0; id < components_.size(); ++id)
            r.components_[id] = components_[id] * s;
        return r;
    }

    /// Value of a contact-basis 1-form on this field: dx^i(X) = X_B^i,
    /// w^j_J(X) = X^j_J - sum_l y^j_{J+1_l} X_B^l, psi^j_L(X) = X^j_L.
    Expr pair_with_basis(std::size_t basis_id) const {
        const BasisOneForm& b = ctx_->basis_form(basis_id);
        switch (b.family) {
        case BasisOneForm::Family::Dx:
            return xi(b.index);
        case BasisOneForm::Family::Omega: {
            Expr v = comp(b.index, b.jet);
            for (int l = 0; l < ctx_->m(); ++l) {
                Expr y = Expr::coordinate(ctx_, ctx_->dependent_id(b.index, b.jet.raised(l)));
                v -= y * xi(l);
            }
            return v;
        }
        case BasisOneForm::Family::Psi:
            return comp(b.index, b.jet);
        }
        return Expr::zero(ctx_);
    }

private:
    ContextPtr ctx_;
    std::vector<Expr> components_;
};

/// The holonomic frame field d/dx^i = d/dx^i + sum_{|J|<=k-1} y^j_{J+1_i} d/dy^j_J.
inline JetVectorField frame_field(const ContextPtr& ctx, int i) {
    JetVectorField X(ctx);
    X.set_component(ctx->independent_id(i), Expr::constant(ctx, 1));
    for (int j = 0; j < ctx->n(); ++j)
        for (const auto& J : ctx->multi_indices_up_to(ctx->order() - 1))
            X.set_component(ctx->dependent_id(j, J),
                            Expr::coordinate(ctx, ctx->dependent_id(j, J.raised(i))));
    return X;
}

/// Prolongation X_v of a generator: the jet components follow the recursion
///   v^j_J = D^J(v^j - y^j_{1_r} v_B^r) + y^j_{J+1_r} v_B^r,
/// with coordinates raised past k treated as zero (both inside the truncated
/// total derivatives and in the trailing term at |J| = k). The result is the
/// unique solution of the contact-preservation equations over (v_B, v).
inline JetVectorField prolong(const Generator& g, const ContextPtr& ctx) {
    if (g.xi.size() != static_cast<std::size_t>(ctx->m()) ||
        g.phi.size() != static_cast<std::size_t>(ctx->n()))
        throw ContextError("generator component counts do not match the context");
    for (const auto& e : g.xi) require_same_context(ctx, e.context());
    for (const auto& e : g.phi) require_same_context(ctx, e.context());

    JetVectorField X(ctx);
    for (int i = 0; i < ctx->m(); ++i)
        X.set_component(ctx->independent_id(i), g.xi[i]);

    for (int j = 0; j < ctx->n(); ++j) {
        // characteristic chi^j = v^j - y^j_{1_r} v_B^r
        Expr chi = g.phi[j];
        for (int r = 0; r < ctx->m(); ++r) {
            Expr y1 = Expr::coordinate(ctx, ctx->dependent_id(j, ctx->zero_index().raised(r)));
            chi -= y1 * g.xi[r];
        }
        for (const auto& J : ctx->multi_indices_up_to(ctx->order())) {
            Expr dJchi = chi;
            for (int i = ctx->m() - 1; i >= 0; --i)
                for (int rep = 0; rep < J[i]; ++rep) dJchi = total_derivative(dJchi, i);
            Expr comp = dJchi;
            if (J.order() < ctx->order()) {
                for (int r = 0; r < ctx->m(); ++r) {
                    Expr y = Expr::coordinate(ctx, ctx->dependent_id(j, J.raised(r)));
                    comp += y * g.xi[r];
                }
            } // at |J| = k the trailing term is y^j_{J+1_r} := 0
            X.set_component(ctx->dependent_id(j, J), std::move(comp));
        }
    }
    return X;
}

/// Residuals of the contact-preservation system: one expression
///   X^i_{I+1_j} - D_j X^i_I + y^i_{I+1_r} D_j X_B^r
/// per dependent index i, direction j, and |I| <= k-1. All residuals vanish
/// identically exactly when X is (the truncation of) a prolonged field, i.e.
/// a weak symmetry of the holonomic distribution.
inline std::vector<Expr> d_symmetry_residual(const JetVectorField& X) {
    const ContextPtr& ctx = X.context();
    std::vector<Expr> residuals;
    for (int i = 0; i < ctx->n(); ++i)
        for (int j = 0; j < ctx->m(); ++j)
            for (const auto& I : ctx->multi_indices_up_to(ctx->order() - 1)) {
                Expr res = X.comp(i, I.raised(j)) - total_derivative(X.comp(i, I), j);
                for (int r = 0; r < ctx->m(); ++r) {
                    Expr y = Expr::coordinate(ctx, ctx->dependent_id(i, I.raised(r)));
                    res += y * total_derivative(X.xi(r), j);
                }
                residuals.push_back(std::move(res));
            }
    return residuals;
}

inline bool all_zero(const std::vector<Expr>& es) {
    for (const auto& e : es)
        if (!e.is_zero()) return false;
    return true;
}

} // namespace jetnoether
