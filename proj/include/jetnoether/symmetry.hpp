#pragma once

#include "jetnoether/variational.hpp"

namespace jetnoether {

/// Lie derivative of a form along a jet vector field, by the Cartan formula
/// L_X = iota_X d + d iota_X (for degree 0 only the first summand applies).
inline Form lie_derivative_form(const JetVectorField& X, const Form& a) {
    Form da = exterior_derivative(a);
    Form first = interior_product(X, da);
    if (a.degree() == 0) return first;
    return first + exterior_derivative(interior_product(X, a));
}

/// Evaluation of a degree-(m+1) form on (X, d/dx^1, ..., d/dx^m): contract
/// with X, then read the volume coefficient (contact factors vanish on the
/// holonomic frame).
inline Expr contract_on_frame(const Form& a, const JetVectorField& X) {
    return volume_coefficient(interior_product(X, a));
}

/// Report of the weak I-symmetry test for a fixed Poincare-Cartan
/// representative. `residuals_contact` collects the coefficients of d(iota_X
/// alpha) that obstruct holonomicity in the mixed slots (terms free of
/// contact factors but carrying a psi factor); `residual_volume` is the
/// defect of the contraction identity
///   d(iota_X alpha)(d/dx^1,...,d/dx^m) = -beta(X, d/dx^1,...,d/dx^m).
/// The verdict is equivalent to L_X alpha being holonomic.
struct SymmetryReport {
    std::vector<Expr> residuals_contact_preservation; // the (4.3) system
    std::vector<Expr> residuals_contact;              // the (4.9)-type slots
    Expr residual_volume;                             // the (4.10) identity
    bool contact_preserving = false;
    bool verdict = false;
};

inline SymmetryReport is_weak_symmetry(const JetVectorField& X, const Form& alpha,
                                       const SourceForm& beta) {
    require_same_context(X.context(), alpha.context());
    const ContextPtr& ctx = alpha.context();

    if (!is_poincare_cartan(alpha, beta))
        throw PreconditionError("is_weak_symmetry: alpha is not of Poincare-Cartan type "
                                "for the given source form");

    SymmetryReport report;
    report.residual_volume = Expr::zero(ctx);
    report.residuals_contact_preservation = d_symmetry_residual(X);
    report.contact_preserving = all_zero(report.residuals_contact_preservation);
    if (!report.contact_preserving)
        throw PreconditionError("is_weak_symmetry: X does not preserve the holonomic "
                                "distribution (contact-preservation residuals are nonzero)");

    Form d_iota = exterior_derivative(interior_product(X, alpha));
    for (const auto& [key, coef] : d_iota.terms()) {
        auto fc = detail::count_families(ctx, key);
        if (fc.omega == 0 && fc.psi > 0) report.residuals_contact.push_back(coef);
    }
    report.residual_volume =
        volume_coefficient(d_iota) + contract_on_frame(beta.form(), X);

    report.verdict = all_zero(report.residuals_contact) && report.residual_volume.is_zero();
    return report;
}

} // namespace jetnoether
