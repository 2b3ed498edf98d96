#pragma once

#include "jetnoether/form.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace jetnoether {

struct Lagrangian {
    Expr density;
    int declared_order;

    explicit Lagrangian(Expr L) : density(std::move(L)), declared_order(density.order()) {
        if (declared_order > density.context()->order())
            throw PreconditionError("Lagrangian order exceeds the context order");
    }
    const ContextPtr& context() const { return density.context(); }
};

/// Source form: components beta_j together with the associated (m+1)-form of
/// bidegree (m, 1) whose only contact factors are the w^j with |J| = 0.
///
/// Orientation note: the component formula below pairs with the wedge
/// (-1)^{m+1} dx^1 ^ ... ^ dx^m ^ w^j so that d(alpha) - form is holonomic
/// for the Poincare-Cartan forms built here, uniformly in m. Both directions
/// of the Noether correspondence and the contraction identities are checked
/// against this orientation by the test suites.
class SourceForm {
public:
    SourceForm(ContextPtr ctx, std::vector<Expr> components)
        : ctx_(std::move(ctx)), components_(std::move(components)) {
        if (components_.size() != static_cast<std::size_t>(ctx_->n()))
            throw PreconditionError("source form needs one component per dependent variable");
        for (const auto& e : components_) require_same_context(ctx_, e.context());
    }

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Expr>& components() const { return components_; }
    const Expr& component(int j) const { return components_.at(j); }

    int order() const {
        int r = 0;
        for (const auto& e : components_) r = std::max(r, e.order());
        return r;
    }

    bool is_zero() const {
        for (const auto& e : components_)
            if (!e.is_zero()) return false;
        return true;
    }

    Form form() const {
        Form beta(ctx_, ctx_->m() + 1);
        const Rational sign = (ctx_->m() % 2 == 0) ? -1 : 1; // (-1)^{m+1}
        for (int j = 0; j < ctx_->n(); ++j) {
            Form w = Form::basis(ctx_, ctx_->omega_id(j, ctx_->zero_index()));
            beta += wedge(Form::volume(ctx_), w).scaled(components_[j].scaled(sign));
        }
        return beta;
    }

private:
    ContextPtr ctx_;
    std::vector<Expr> components_;
};

/// Euler-Lagrange operator with the source-form sign convention
///   beta_j = -sum_{|I| <= r} (-1)^{|I|} D^I (dL/dy^j_I),
/// which for first-order Lagrangians reads -dL/dy^j + sum_l D_l(dL/dy^j_l).
/// Requires k >= 2r so no iterated derivative truncates.
inline SourceForm euler_lagrange(const Lagrangian& L) {
    const ContextPtr& ctx = L.context();
    const int r = L.density.order();
    if (ctx->order() < 2 * r)
        throw PreconditionError("euler_lagrange requires context order k >= 2*order(L); got k=" +
                                std::to_string(ctx->order()) + ", order(L)=" + std::to_string(r));
    std::vector<Expr> beta;
    beta.reserve(ctx->n());
    for (int j = 0; j < ctx->n(); ++j) {
        Expr acc = Expr::zero(ctx);
        for (const auto& I : ctx->multi_indices_up_to(r)) {
            Expr p = L.density.partial(ctx->dependent_id(j, I));
            if (p.is_zero()) continue;
            Expr term = iterated_total_derivative(p, I);
            if (I.order() % 2 == 0) acc -= term;
            else acc += term;
        }
        beta.push_back(std::move(acc));
    }
    return SourceForm(ctx, std::move(beta));
}

/// Poincare-Cartan form of a first-order Lagrangian:
///   alpha = L vol + sum_{j,h} (dL/dy^j_h) w^j ^ iota_{d/dx^h}(vol).
/// The construction is verified on the spot: d(alpha) minus the source form
/// of euler_lagrange(L) must be holonomic (the defining property).
inline Form poincare_cartan(const Lagrangian& L) {
    const ContextPtr& ctx = L.context();
    if (L.density.order() > 1)
        throw PreconditionError("poincare_cartan implements first-order Lagrangians only "
                                "(higher-order construction is out of scope)");
    if (ctx->order() < 2)
        throw PreconditionError("poincare_cartan requires context order k >= 2");

    Form alpha = Form::volume(ctx).scaled(L.density);
    for (int j = 0; j < ctx->n(); ++j) {
        Form w = Form::basis(ctx, ctx->omega_id(j, ctx->zero_index()));
        for (int h = 0; h < ctx->m(); ++h) {
            Expr p = L.density.partial(ctx->dependent_id(j, ctx->zero_index().raised(h)));
            if (p.is_zero()) continue;
            Form vol_h = Form::volume_omit(ctx, h).scaled(Rational(h % 2 == 0 ? 1 : -1));
            alpha += wedge(w, vol_h).scaled(p);
        }
    }

    Form diff = exterior_derivative(alpha) - euler_lagrange(L).form();
    if (!is_holonomic(diff))
        throw VerificationError("poincare_cartan postcondition failed: d(alpha) - beta "
                                "is not holonomic");
    return alpha;
}

/// Defining property of Poincare-Cartan type (Def of the correspondence):
/// d(alpha) differs from the source form by a holonomic (m+1)-form.
inline bool is_poincare_cartan(const Form& alpha, const SourceForm& beta) {
    require_same_context(alpha.context(), beta.context());
    if (alpha.degree() != alpha.context()->m())
        throw PreconditionError("a Poincare-Cartan form must have degree m");
    return is_holonomic(exterior_derivative(alpha) - beta.form());
}

/// One generator of the prolonged system: d^{|I|} beta_j / dx^I.
struct ProlongedGenerator {
    int j;
    MultiIndex index;
    Expr expr;
};

/// Full prolongation of the Euler-Lagrange system up to order k': the
/// iterated total derivatives of every component for |I| <= k' - k_beta,
/// listed level by level in the (I, j) order.
class ProlongedSystem {
public:
    ProlongedSystem(SourceForm beta, int k_prime)
        : beta_(std::move(beta)), k_prime_(k_prime) {
        const ContextPtr& ctx = beta_.context();
        const int k_beta = beta_.order();
        if (k_prime_ < k_beta)
            throw PreconditionError("prolongation order below the order of the source form");
        for (const auto& I : ctx->multi_indices_up_to(k_prime_ - k_beta))
            for (int j = 0; j < ctx->n(); ++j)
                generators_.push_back({j, I, iterated_total_derivative(beta_.component(j), I)});
    }

    const ContextPtr& context() const { return beta_.context(); }
    const SourceForm& source() const { return beta_; }
    int k_prime() const { return k_prime_; }
    int k_beta() const { return beta_.order(); }
    const std::vector<ProlongedGenerator>& generators() const { return generators_; }

private:
    SourceForm beta_;
    int k_prime_;
    std::vector<ProlongedGenerator> generators_;
};

inline ProlongedSystem prolonged_system(const SourceForm& beta, int k_prime) {
    return ProlongedSystem(beta, k_prime);
}

/// Rank evidence for the submersion condition, sampled at points that
/// annihilate the prolonged system. The Jacobian is taken with respect to
/// all jet coordinates y^j_I and evaluated in double precision; singular
/// values below tolerance * largest count as zero.
struct RankReport {
    struct Sample {
        std::map<std::size_t, Rational> point;
        int rank = 0;
        bool full = false;
        double max_residual = 0.0;
    };
    int expected_rank = 0;
    std::vector<Sample> samples;
    bool submersion_evidence = false;
};

inline RankReport regularity_probe(const ProlongedSystem& sys,
                                   const std::vector<std::map<std::size_t, Rational>>& samples,
                                   double tolerance = 1e-9) {
    if (samples.empty())
        throw PreconditionError("regularity_probe needs at least one sample point");
    const ContextPtr& ctx = sys.context();

    std::vector<std::size_t> jet_coords;
    for (std::size_t id = ctx->m(); id < ctx->coordinate_count(); ++id) jet_coords.push_back(id);

    std::vector<Rational> params;
    for (const auto& p : ctx->parameters()) params.push_back(1); // probe uses unit parameters
    std::vector<double> params_d(params.size(), 1.0);

    RankReport report;
    report.expected_rank = static_cast<int>(sys.generators().size());
    for (const auto& pt : samples) {
        RankReport::Sample s;
        s.point = pt;
        Eigen::MatrixXd J(sys.generators().size(), jet_coords.size());
        for (std::size_t g = 0; g < sys.generators().size(); ++g) {
            const Expr& gen = sys.generators()[g].expr;
            s.max_residual = std::max(s.max_residual,
                                      std::abs(to_double(gen.evaluate(pt, params))));
            for (std::size_t c = 0; c < jet_coords.size(); ++c) {
                Expr d = gen.partial(jet_coords[c]);
                J(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(c)) =
                    d.is_zero() ? 0.0 : to_double(d.evaluate(pt, params));
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        const auto& sv = svd.singularValues();
        double top = sv.size() ? sv(0) : 0.0;
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > tolerance * top && sv(i) > 0) ++rank;
        s.rank = rank;
        s.full = (rank == report.expected_rank);
        report.samples.push_back(std::move(s));
    }
    report.submersion_evidence = true;
    for (const auto& s : report.samples) report.submersion_evidence &= s.full;
    return report;
}

/// Exact rational points annihilating the prolonged system, available when
/// every generator is affine-linear in the jet coordinates with constant
/// coefficients (true for every built-in model). Free coordinates get small
/// deterministic rational values; pivot coordinates are back-solved exactly.
inline std::optional<std::vector<std::map<std::size_t, Rational>>>
linear_system_samples(const ProlongedSystem& sys, int count, unsigned seed = 12345) {
    const ContextPtr& ctx = sys.context();
    std::vector<Rational> params(ctx->parameters().size(), 1);

    // Affine-linearity check: degree <= 1 in jet coordinates, constant coeffs.
    for (const auto& g : sys.generators())
        for (const auto& [mono, coef] : g.expr.terms()) {
            int jet_deg = 0;
            for (auto& [id, e] : mono.factors)
                if (ctx->coordinate(id).kind == CoordKind::Dependent) jet_deg += static_cast<int>(e);
            if (jet_deg > 1) return std::nullopt;
            if (jet_deg == 1 && mono.degree() > 1) return std::nullopt; // x-dependent coeff
        }

    // Row-reduce  sum_c a_{g,c} y_c = -const_g  over the jet coordinates.
    struct Row {
        std::map<std::size_t, Rational> a;
        Rational rhs;
    };
    std::vector<Row> rows;
    for (const auto& g : sys.generators()) {
        Row row;
        for (const auto& [mono, coef] : g.expr.terms()) {
            if (mono.is_one()) {
                row.rhs -= coef.evaluate(params);
            } else {
                std::size_t id = mono.factors[0].first;
                if (ctx->coordinate(id).kind == CoordKind::Independent)
                    return std::nullopt; // affine in x: handled as constants only
                row.a[id] += coef.evaluate(params);
            }
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::pair<std::size_t, Row>> pivots; // (pivot coord, normalized row)
    for (Row row : rows) {
        for (auto& [pc, pr] : pivots) {
            auto it = row.a.find(pc);
            if (it == row.a.end()) continue;
            Rational f = it->second;
            for (auto& [c, v] : pr.a) row.a[c] -= f * v;
            row.rhs -= f * pr.rhs;
            for (auto it2 = row.a.begin(); it2 != row.a.end();)
                it2 = (it2->second == 0) ? row.a.erase(it2) : std::next(it2);
        }
        if (row.a.empty()) {
            if (row.rhs != 0) return std::nullopt; // inconsistent
            continue;
        }
        // prefer the highest-order coordinate as the pivot
        auto best = row.a.begin();
        for (auto it = row.a.begin(); it != row.a.end(); ++it)
            if (ctx->coordinate(it->first).jet.order() >
                ctx->coordinate(best->first).jet.order())
                best = it;
        Rational inv = Rational(1) / best->second;
        std::size_t pc = best->first;
        for (auto& [c, v] : row.a) v *= inv;
        row.rhs *= inv;
        row.a.erase(pc);
        pivots.emplace_back(pc, std::move(row));
    }

    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    std::vector<std::map<std::size_t, Rational>> out;
    for (int s = 0; s < count; ++s) {
        std::map<std::size_t, Rational> pt;
        for (std::size_t id = 0; id < ctx->coordinate_count(); ++id)
            pt[id] = Rational(num(rng)) / den(rng);
        // back-substitute pivots in reverse insertion order
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            Rational v = it->second.rhs;
            for (const auto& [c, a] : it->second.a) v -= a * pt[c];
            pt[it->first] = v;
        }
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace jetnoether
