#pragma once

#include "jetnoether/vector_field.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace jetnoether {

/// Strictly increasing list of contact-basis ids; the canonical wedge word.
using WedgeKey = std::vector<std::uint16_t>;

/// Differential form on J^k expanded in the contact basis
/// {dx^i, w^j_J, psi^j_L}. Canonical normal form: every term is an Expr
/// coefficient times a strictly increasing basis wedge, with the reordering
/// sign folded into the coefficient. Degree-0 forms carry the empty wedge.
class Form {
public:
    Form(ContextPtr ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {
        if (degree_ < 0) throw PreconditionError("form degree must be nonnegative");
    }

    static Form zero(const ContextPtr& ctx, int degree) { return Form(ctx, degree); }

    static Form scalar(const Expr& f) {
        Form a(f.context(), 0);
        a.add_term({}, f);
        return a;
    }

    static Form basis(const ContextPtr& ctx, std::size_t basis_id) {
        Form a(ctx, 1);
        a.add_term({static_cast<std::uint16_t>(basis_id)}, Expr::constant(ctx, 1));
        return a;
    }

    /// dx^1 ^ ... ^ dx^m
    static Form volume(const ContextPtr& ctx) {
        Form a(ctx, ctx->m());
        WedgeKey key;
        for (int i = 0; i < ctx->m(); ++i) key.push_back(static_cast<std::uint16_t>(ctx->dx_id(i)));
        a.add_term(std::move(key), Expr::constant(ctx, 1));
        return a;
    }

    /// dx^1 ^ ... (omit dx^{i+1}) ... ^ dx^m  (i is 0-based)
    static Form volume_omit(const ContextPtr& ctx, int omit) {
        Form a(ctx, ctx->m() - 1);
        WedgeKey key;
        for (int i = 0; i < ctx->m(); ++i)
            if (i != omit) key.push_back(static_cast<std::uint16_t>(ctx->dx_id(i)));
        a.add_term(std::move(key), Expr::constant(ctx, 1));
        return a;
    }

    const ContextPtr& context() const { return ctx_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<WedgeKey, Expr>& terms() const { return terms_; }

    Expr coefficient(const WedgeKey& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? Expr::zero(ctx_) : it->second;
    }

    Form operator+(const Form& o) const {
        check_compatible(o);
        Form r = *this;
        for (const auto& [k, e] : o.terms_) r.add_term(k, e);
        return r;
    }
    Form operator-(const Form& o) const {
        check_compatible(o);
        Form r = *this;
        for (const auto& [k, e] : o.terms_) r.add_term(k, -e);
        return r;
    }
    Form operator-() const {
        Form r(ctx_, degree_);
        for (const auto& [k, e] : terms_) r.terms_.emplace(k, -e);
        return r;
    }
    Form& operator+=(const Form& o) { return *this = *this + o; }
    Form& operator-=(const Form& o) { return *this = *this - o; }

    Form scaled(const Expr& f) const {
        require_same_context(ctx_, f.context());
        Form r(ctx_, degree_);
        for (const auto& [k, e] : terms_) r.add_term(k, e * f);
        return r;
    }
    Form scaled(const Rational& s) const {
        Form r(ctx_, degree_);
        for (const auto& [k, e] : terms_) r.add_term(k, e.scaled(s));
        return r;
    }

    bool operator==(const Form& o) const {
        check_compatible(o);
        return (*this - o).is_zero();
    }

    void add_term(const WedgeKey& key, const Expr& coef) {
        if (static_cast<int>(key.size()) != degree_)
            throw PreconditionError("wedge length does not match form degree");
        if (coef.is_zero()) return;
        auto [it, inserted] = terms_.emplace(key, coef);
        if (!inserted) {
            it->second += coef;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Insert coef * (basis wedge of `ids` in the given, possibly unsorted,
    /// order); sorts and folds the permutation sign into the coefficient.
    void add_unsorted(std::vector<std::uint16_t> ids, Expr coef) {
        int sign = sort_with_sign(ids);
        if (sign == 0) return;
        add_term(ids, sign < 0 ? -coef : coef);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, e] : terms_) {
            std::string cs = e.str();
            if (!first) os << " + ";
            first = false;
            if (k.empty()) {
                os << cs;
                continue;
            }
            bool simple = e.term_count() == 1 && cs.find(" + ") == std::string::npos &&
                          cs.find(" - ") == std::string::npos;
            if (cs == "1") {
                // unit coefficient: print the wedge alone
            } else if (simple) {
                os << cs << " * ";
            } else {
                os << "(" << cs << ") * ";
            }
            for (std::size_t t = 0; t < k.size(); ++t) {
                if (t) os << " ^ ";
                os << ctx_->basis_name(k[t]);
            }
        }
        return os.str();
    }

    static int sort_with_sign(std::vector<std::uint16_t>& ids) {
        int sign = 1;
        for (std::size_t i = 1; i < ids.size(); ++i) {
            std::size_t j = i;
            while (j > 0 && ids[j - 1] > ids[j]) {
                std::swap(ids[j - 1], ids[j]);
                sign = -sign;
                --j;
            }
        }
        for (std::size_t i = 1; i < ids.size(); ++i)
            if (ids[i - 1] == ids[i]) return 0;
        return sign;
    }

private:
    void check_compatible(const Form& o) const {
        require_same_context(ctx_, o.ctx_);
        if (degree_ != o.degree_)
            throw PreconditionError("form degrees differ");
    }

    ContextPtr ctx_;
    int degree_;
    std::map<WedgeKey, Expr> terms_;
};

/// Graded-antisymmetric product in canonical form.
inline Form wedge(const Form& a, const Form& b) {
    require_same_context(a.context(), b.context());
    Form r(a.context(), a.degree() + b.degree());
    for (const auto& [ka, ea] : a.terms())
        for (const auto& [kb, eb] : b.terms()) {
            std::vector<std::uint16_t> ids;
            ids.reserve(ka.size() + kb.size());
            ids.insert(ids.end(), ka.begin(), ka.end());
            ids.insert(ids.end(), kb.begin(), kb.end());
            r.add_unsorted(std::move(ids), ea * eb);
        }
    return r;
}

/// The differential of a chart coordinate expanded in the contact basis:
/// dx^i stays dx^i, dy^j_J = w^j_J + sum_l y^j_{J+1_l} dx^l for |J| <= k-1,
/// and dy^j_L = psi^j_L at top order.
inline Form contact_differential_of_coordinate(const ContextPtr& ctx, std::size_t coord_id) {
    const Coordinate& c = ctx->coordinate(coord_id);
    if (c.kind == CoordKind::Independent) return Form::basis(ctx, ctx->dx_id(c.index));
    if (c.jet.order() == ctx->order()) return Form::basis(ctx, ctx->psi_id(c.index, c.jet));
    Form r = Form::basis(ctx, ctx->omega_id(c.index, c.jet));
    for (int l = 0; l < ctx->m(); ++l) {
        Expr y = Expr::coordinate(ctx, ctx->dependent_id(c.index, c.jet.raised(l)));
        r += Form::basis(ctx, ctx->dx_id(l)).scaled(y);
    }
    return r;
}

/// Converts a form given in the raw dx/dy basis into the contact basis. The
/// input is a list of terms, each a coefficient together with the chart
/// coordinates whose differentials are wedged in the written order.
inline Form to_contact_basis(const ContextPtr& ctx,
                             const std::vector<std::pair<Expr, std::vector<std::size_t>>>& raw_terms,
                             int degree) {
    Form r(ctx, degree);
    for (const auto& [coef, coords] : raw_terms) {
        if (static_cast<int>(coords.size()) != degree)
            throw PreconditionError("raw term arity does not match the requested degree");
        Form term = Form::scalar(coef);
        for (std::size_t cid : coords)
            term = wedge(term, contact_differential_of_coordinate(ctx, cid));
        r += term;
    }
    return r;
}

/// d of a degree-0 form, already split along the contact basis:
/// df = sum_i (D_i f) dx^i + sum (df/dy^j_J) w^j_J + sum (df/dy^j_L) psi^j_L.
inline Form exterior_derivative_scalar(const Expr& f) {
    const ContextPtr& ctx = f.context();
    Form r(ctx, 1);
    for (int i = 0; i < ctx->m(); ++i) {
        Expr df = total_derivative(f, i);
        if (!df.is_zero()) r += Form::basis(ctx, ctx->dx_id(i)).scaled(df);
    }
    for (std::uint32_t id : f.support()) {
        const Coordinate& c = ctx->coordinate(id);
        if (c.kind != CoordKind::Dependent) continue;
        Expr df = f.partial(id);
        if (df.is_zero()) continue;
        std::size_t bid = c.jet.order() == ctx->order() ? ctx->psi_id(c.index, c.jet)
                                                        : ctx->omega_id(c.index, c.jet);
        r += Form::basis(ctx, bid).scaled(df);
    }
    return r;
}

/// d of a single basis 1-form. dx and psi are closed; for the contact forms
/// d w^j_J = -sum_l w^j_{J+1_l} ^ dx^l, with w replaced by psi when the
/// raised index reaches top order. (The y-coordinate cross terms cancel
/// pairwise across the l-sum.)
inline Form exterior_derivative_basis(const ContextPtr& ctx, std::size_t basis_id) {
    const BasisOneForm& b = ctx->basis_form(basis_id);
    Form r(ctx, 2);
    if (b.family != BasisOneForm::Family::Omega) return r;
    const bool to_psi = b.jet.order() == ctx->order() - 1;
    for (int l = 0; l < ctx->m(); ++l) {
        MultiIndex raised = b.jet.raised(l);
        std::size_t up = to_psi ? ctx->psi_id(b.index, raised) : ctx->omega_id(b.index, raised);
        r.add_unsorted({static_cast<std::uint16_t>(up), static_cast<std::uint16_t>(ctx->dx_id(l))},
                       Expr::constant(ctx, -1));
    }
    return r;
}

/// Exterior derivative, extended from the scalar and basis cases by the
/// graded Leibniz rule.
inline Form exterior_derivative(const Form& a) {
    const ContextPtr& ctx = a.context();
    Form r(ctx, a.degree() + 1);
    for (const auto& [key, coef] : a.terms()) {
        // d(coef) ^ wedge
        Form dcoef = exterior_derivative_scalar(coef);
        for (const auto& [k1, e1] : dcoef.terms()) {
            std::vector<std::uint16_t> ids;
            ids.reserve(1 + key.size());
            ids.push_back(k1[0]);
            ids.insert(ids.end(), key.begin(), key.end());
            r.add_unsorted(std::move(ids), e1);
        }
        // coef * sum_t (-1)^{t-1} d(b_t) ^ (wedge without t); the 2-form
        // d(b_t) slides to the front without a sign change.
        for (std::size_t t = 0; t < key.size(); ++t) {
            Form db = exterior_derivative_basis(ctx, key[t]);
            if (db.is_zero()) continue;
            Rational sign = (t % 2 == 0) ? 1 : -1;
            for (const auto& [k2, e2] : db.terms()) {
                std::vector<std::uint16_t> ids;
                ids.reserve(key.size() + 1);
                ids.insert(ids.end(), k2.begin(), k2.end());
                for (std::size_t u = 0; u < key.size(); ++u)
                    if (u != t) ids.push_back(key[u]);
                r.add_unsorted(std::move(ids), (coef * e2).scaled(sign));
            }
        }
    }
    return r;
}

/// Interior product (contraction) with a jet vector field.
inline Form interior_product(const JetVectorField& X, const Form& a) {
    require_same_context(X.context(), a.context());
    if (a.degree() == 0)
        throw PreconditionError("interior product requires a form of degree >= 1");
    const ContextPtr& ctx = a.context();
    Form r(ctx, a.degree() - 1);
    for (const auto& [key, coef] : a.terms()) {
        for (std::size_t t = 0; t < key.size(); ++t) {
            Expr paired = X.pair_with_basis(key[t]);
            if (paired.is_zero()) continue;
            WedgeKey rest;
            rest.reserve(key.size() - 1);
            for (std::size_t u = 0; u < key.size(); ++u)
                if (u != t) rest.push_back(key[u]);
            Expr c = coef * paired;
            if (t % 2 == 1) c = -c;
            r.add_term(rest, c);
        }
    }
    return r;
}

namespace detail {
struct FamilyCounts {
    int dx = 0, omega = 0, psi = 0;
};
inline FamilyCounts count_families(const ContextPtr& ctx, const WedgeKey& key) {
    FamilyCounts fc;
    for (auto id : key) {
        switch (ctx->basis_form(id).family) {
        case BasisOneForm::Family::Dx: ++fc.dx; break;
        case BasisOneForm::Family::Omega: ++fc.omega; break;
        case BasisOneForm::Family::Psi: ++fc.psi; break;
        }
    }
    return fc;
}
} // namespace detail

/// Coordinate holonomicity criterion: for q < m no term may be free of
/// contact factors; for q >= m no term may carry m or more dx/psi factors.
inline bool is_holonomic(const Form& a) {
    const ContextPtr& ctx = a.context();
    const int m = ctx->m();
    for (const auto& [key, coef] : a.terms()) {
        auto fc = detail::count_families(ctx, key);
        if (a.degree() < m) {
            if (fc.omega == 0) return false;
        } else {
            if (fc.dx + fc.psi >= m) return false;
        }
    }
    return true;
}

/// A form is proper when no term contains a psi factor (equivalently, it is
/// the pullback of a form from a lower-order jet space).
inline bool is_proper(const Form& a) {
    const ContextPtr& ctx = a.context();
    for (const auto& [key, coef] : a.terms())
        if (detail::count_families(ctx, key).psi > 0) return false;
    return true;
}

/// Bi-degree (l, r) of a proper homogeneous form: every term must carry
/// exactly l dx factors and r contact factors. Undefined (error) for the zero
/// form; absent when the form is not homogeneous.
inline std::optional<std::pair<int, int>> bidegree(const Form& a) {
    if (a.is_zero())
        throw PreconditionError("bidegree is undefined for the zero form");
    if (!is_proper(a))
        throw PreconditionError("bidegree requires a proper form");
    const ContextPtr& ctx = a.context();
    std::optional<std::pair<int, int>> bd;
    for (const auto& [key, coef] : a.terms()) {
        auto fc = detail::count_families(ctx, key);
        std::pair<int, int> cur{fc.dx, fc.omega};
        if (!bd) bd = cur;
        else if (*bd != cur) return std::nullopt;
    }
    return bd;
}

/// Coefficient of the volume wedge dx^1 ^ ... ^ dx^m.
inline Expr volume_coefficient(const Form& a) {
    const ContextPtr& ctx = a.context();
    WedgeKey key;
    for (int i = 0; i < ctx->m(); ++i) key.push_back(static_cast<std::uint16_t>(ctx->dx_id(i)));
    return a.coefficient(key);
}

/// The Lagrangian of the variational class of an m-form: the coefficient of
/// the volume wedge. All other terms of a proper m-form are holonomic.
inline Expr lagrangian_part(const Form& a) {
    if (a.degree() != a.context()->m())
        throw PreconditionError("lagrangian_part requires a form of degree m");
    return volume_coefficient(a);
}

} // namespace jetnoether
