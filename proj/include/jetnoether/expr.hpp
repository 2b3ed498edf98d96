#pragma once

#include "jetnoether/coefficient.hpp"
#include "jetnoether/context.hpp"
#include "jetnoether/errors.hpp"
#include "jetnoether/rational.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace jetnoether {

/// Product of jet-coordinate powers; factors sorted by coordinate id.
struct Monomial {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors; // (coord id, exponent)

    int degree() const {
        int d = 0;
        for (auto& [id, e] : factors) d += static_cast<int>(e);
        return d;
    }
    bool is_one() const { return factors.empty(); }

    std::uint32_t exponent_of(std::uint32_t id) const {
        for (auto& [cid, e] : factors)
            if (cid == id) return e;
        return 0;
    }

    bool operator==(const Monomial& o) const { return factors == o.factors; }

    /// Graded lexicographic: total degree first, then the smallest coordinate
    /// id where the exponents differ (larger exponent there = larger monomial).
    bool operator<(const Monomial& o) const {
        if (degree() != o.degree()) return degree() < o.degree();
        std::size_t a = 0, b = 0;
        while (a < factors.size() && b < o.factors.size()) {
            if (factors[a].first != o.factors[b].first)
                return factors[a].first > o.factors[b].first; // other has earlier coord
            if (factors[a].second != o.factors[b].second)
                return factors[a].second < o.factors[b].second;
            ++a, ++b;
        }
        return a == factors.size() && b != o.factors.size();
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        std::size_t a = 0, b = 0;
        while (a < factors.size() || b < o.factors.size()) {
            if (b == o.factors.size() ||
                (a < factors.size() && factors[a].first < o.factors[b].first)) {
                r.factors.push_back(factors[a++]);
            } else if (a == factors.size() || o.factors[b].first < factors[a].first) {
                r.factors.push_back(o.factors[b++]);
            } else {
                r.factors.emplace_back(factors[a].first, factors[a].second + o.factors[b].second);
                ++a, ++b;
            }
        }
        return r;
    }

    bool divides(const Monomial& o) const {
        std::size_t b = 0;
        for (auto& [id, e] : factors) {
            while (b < o.factors.size() && o.factors[b].first < id) ++b;
            if (b == o.factors.size() || o.factors[b].first != id || o.factors[b].second < e)
                return false;
        }
        return true;
    }

    Monomial quotient(const Monomial& o) const { // *this / o, assumes divisibility
        Monomial r;
        std::size_t b = 0;
        for (auto& [id, e] : factors) {
            std::uint32_t sub = 0;
            while (b < o.factors.size() && o.factors[b].first < id) ++b;
            if (b < o.factors.size() && o.factors[b].first == id) sub = o.factors[b].second;
            if (e > sub) r.factors.emplace_back(id, e - sub);
        }
        return r;
    }
};

/// Exact symbolic expression: canonical sum of monomials in jet coordinates
/// with parameter-rational coefficients. Immutable value type; all operations
/// are pure.
class Expr {
public:
    Expr() = default;
    explicit Expr(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static Expr zero(ContextPtr ctx) { return Expr(std::move(ctx)); }
    static Expr constant(ContextPtr ctx, Rational v) {
        Expr e(ctx);
        e.add_term(Monomial{}, Coefficient::from_rational(ctx->parameters().size(), std::move(v)));
        return e;
    }
    static Expr from_coefficient(ContextPtr ctx, Coefficient c) {
        Expr e(ctx);
        e.add_term(Monomial{}, std::move(c));
        return e;
    }
    static Expr coordinate(ContextPtr ctx, std::size_t coord_id) {
        Expr e(ctx);
        Monomial m;
        m.factors.emplace_back(static_cast<std::uint32_t>(coord_id), 1u);
        e.add_term(std::move(m), Coefficient::from_rational(ctx->parameters().size(), 1));
        return e;
    }
    static Expr parameter(ContextPtr ctx, std::size_t param_id) {
        Expr e(ctx);
        e.add_term(Monomial{}, Coefficient::from_parameter(ctx->parameters().size(), param_id));
        return e;
    }

    const ContextPtr& context() const { return ctx_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Coefficient>& terms() const { return terms_; }

    /// Highest jet order among the coordinates appearing; 0 when none do.
    int order() const {
        int r = 0;
        for (const auto& [m, c] : terms_)
            for (auto& [id, e] : m.factors) {
                const Coordinate& co = ctx_->coordinate(id);
                if (co.kind == CoordKind::Dependent) r = std::max(r, co.jet.order());
            }
        return r;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    bool depends_on_coordinates() const {
        for (const auto& [m, c] : terms_)
            if (!m.is_one()) return true;
        return false;
    }

    /// The value as a field coefficient; requires no coordinate dependence.
    Coefficient as_coefficient() const {
        Coefficient acc(ctx_->parameters().size());
        for (const auto& [m, c] : terms_) {
            if (!m.is_one())
                throw PreconditionError("expression depends on jet coordinates where a "
                                        "parameter-rational value is required");
            acc += c;
        }
        return acc;
    }

    Expr operator+(const Expr& o) const {
        require_same_context(ctx_, o.ctx_);
        Expr r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    Expr operator-(const Expr& o) const {
        require_same_context(ctx_, o.ctx_);
        Expr r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    Expr operator-() const {
        Expr r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    Expr operator*(const Expr& o) const {
        require_same_context(ctx_, o.ctx_);
        Expr r(ctx_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }

    Expr scaled(const Coefficient& s) const {
        Expr r(ctx_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }
    Expr scaled(const Rational& s) const {
        return scaled(Coefficient::from_rational(ctx_->parameters().size(), s));
    }

    /// Division by a coordinate-free expression (coefficient-field division).
    Expr divided_by_scalar(const Expr& o) const {
        Coefficient d = o.as_coefficient();
        if (d.is_zero()) throw EvaluationError("division by zero");
        Expr r(ctx_);
        for (const auto& [m, c] : terms_) r.add_term(m, c / d);
        return r;
    }

    Expr pow(unsigned e) const {
        Expr acc = constant(ctx_, 1), b = *this;
        while (e) {
            if (e & 1u) acc = acc * b;
            b = b * b;
            e >>= 1u;
        }
        return acc;
    }

    bool operator==(const Expr& o) const {
        require_same_context(ctx_, o.ctx_);
        if (terms_.size() != o.terms_.size()) return false;
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        for (; a != terms_.end(); ++a, ++b) {
            if (!(a->first == b->first)) return false;
            if (!(a->second == b->second)) return false;
        }
        return true;
    }

    /// Formal partial derivative with respect to one chart coordinate.
    Expr partial(std::size_t coord_id) const {
        Expr r(ctx_);
        for (const auto& [m, c] : terms_) {
            std::uint32_t e = m.exponent_of(static_cast<std::uint32_t>(coord_id));
            if (e == 0) continue;
            Monomial dm;
            for (auto& [id, ex] : m.factors) {
                std::uint32_t nex = (id == coord_id) ? ex - 1 : ex;
                if (nex) dm.factors.emplace_back(id, nex);
            }
            r.add_term(dm, c * Coefficient::from_rational(ctx_->parameters().size(), Rational(e)));
        }
        return r;
    }

    /// Coordinate ids appearing anywhere in the expression.
    std::vector<std::uint32_t> support() const {
        std::vector<std::uint32_t> ids;
        for (const auto& [m, c] : terms_)
            for (auto& [id, e] : m.factors) ids.push_back(id);
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    }

    /// Replace one coordinate by an expression (used by the numeric harness
    /// and tests; the replacement must not reintroduce the coordinate).
    Expr substituted(std::size_t coord_id, const Expr& value) const {
        require_same_context(ctx_, value.ctx_);
        Expr r(ctx_);
        for (const auto& [m, c] : terms_) {
            std::uint32_t e = m.exponent_of(static_cast<std::uint32_t>(coord_id));
            Monomial rest;
            for (auto& [id, ex] : m.factors)
                if (id != coord_id) rest.factors.emplace_back(id, ex);
            Expr term(ctx_);
            term.add_term(rest, c);
            if (e) term = term * value.pow(e);
            r += term;
        }
        return r;
    }

    Rational evaluate(const std::map<std::size_t, Rational>& coord_values,
                      const std::vector<Rational>& param_values) const {
        Rational acc = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c.evaluate(param_values);
            for (auto& [id, e] : m.factors) {
                auto it = coord_values.find(id);
                if (it == coord_values.end())
                    throw EvaluationError("missing assignment for coordinate " +
                                          ctx_->coordinate_name(id));
                t *= rational_pow(it->second, e);
            }
            acc += t;
        }
        return acc;
    }

    double evaluate_double(const std::vector<double>& coord_values,
                           const std::vector<double>& param_values) const {
        double acc = 0;
        for (const auto& [m, c] : terms_) {
            double t = c.evaluate_double(param_values);
            for (auto& [id, e] : m.factors)
                for (std::uint32_t rep = 0; rep < e; ++rep) t *= coord_values.at(id);
            acc += t;
        }
        return acc;
    }

    /// Exact polynomial division over the coefficient field; nullopt when the
    /// divisor it is not an exact factor.
    std::optional<Expr> divided_exactly_by(const Expr& d) const {
        require_same_context(ctx_, d.ctx_);
        if (d.is_zero()) throw EvaluationError("division by the zero expression");
        Expr rem = *this, q(ctx_);
        const auto& dlead = *d.terms_.rbegin();
        while (!rem.is_zero()) {
            const auto& rlead = *rem.terms_.rbegin();
            if (!dlead.first.divides(rlead.first)) return std::nullopt;
            Monomial qm = rlead.first.quotient(dlead.first);
            Coefficient qc = rlead.second / dlead.second;
            Expr qt(ctx_);
            qt.add_term(qm, qc);
            q += qt;
            rem -= qt * d;
        }
        return q;
    }

    /// Transplant into a context with the same chart names (typically a
    /// higher jet order).
    Expr embedded(const ContextPtr& target) const {
        Expr r(target);
        for (const auto& [m, c] : terms_) {
            Monomial nm;
            for (auto& [id, e] : m.factors) {
                const Coordinate& co = ctx_->coordinate(id);
                std::size_t nid = co.kind == CoordKind::Independent
                                      ? target->independent_id(co.index)
                                      : target->dependent_id(co.index, rebase(co.jet, target));
                nm.factors.emplace_back(static_cast<std::uint32_t>(nid), e);
            }
            std::sort(nm.factors.begin(), nm.factors.end());
            r.add_term(nm, c);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string cs = it->second.str(ctx_->parameters());
            bool negated = false;
            if (cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos) {
                negated = true;
                cs = cs.substr(1);
            }
            if (first) {
                if (negated) os << "-";
            } else {
                os << (negated ? " - " : " + ");
            }
            first = false;
            bool coef_is_one = (cs == "1");
            if (!coef_is_one || it->first.is_one()) os << cs;
            bool printed = !coef_is_one || it->first.is_one();
            for (auto& [id, e] : it->first.factors) {
                if (printed) os << "*";
                os << ctx_->coordinate_name(id);
                if (e > 1) os << "^" << e;
                printed = true;
            }
        }
        return os.str();
    }

    void add_term(const Monomial& m, const Coefficient& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    MultiIndex rebase(const MultiIndex& I, const ContextPtr& target) const {
        if (I.arity() == static_cast<std::size_t>(target->m())) return I;
        throw ContextError("cannot embed expression: independent-variable count differs");
    }

    ContextPtr ctx_;
    std::map<Monomial, Coefficient> terms_;
};

/// Spec operation names.
inline bool equals(const Expr& a, const Expr& b) { return a == b; }

inline Expr partial_derivative(const Expr& e, std::size_t coord_id) { return e.partial(coord_id); }

inline Rational evaluate(const Expr& e, const std::map<std::size_t, Rational>& coords,
                         const std::vector<Rational>& params) {
    return e.evaluate(coords, params);
}

} // namespace jetnoether
