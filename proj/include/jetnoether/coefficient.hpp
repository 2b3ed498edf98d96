#pragma once

#include "jetnoether/context.hpp"
#include "jetnoether/errors.hpp"
#include "jetnoether/rational.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace jetnoether {

/// Exponent vector over the declared parameters.
struct ParamMonomial {
    std::vector<std::uint16_t> exp;

    int degree() const {
        int d = 0;
        for (auto e : exp) d += e;
        return d;
    }
    bool is_one() const { return degree() == 0; }

    bool operator==(const ParamMonomial& o) const { return exp == o.exp; }
    // Graded-lex; keeps leading terms multiplicative so exact division works.
    bool operator<(const ParamMonomial& o) const {
        if (degree() != o.degree()) return degree() < o.degree();
        return exp < o.exp;
    }

    ParamMonomial operator*(const ParamMonomial& o) const {
        ParamMonomial r = *this;
        for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] += o.exp[i];
        return r;
    }
    bool divides(const ParamMonomial& o) const {
        for (std::size_t i = 0; i < exp.size(); ++i)
            if (exp[i] > o.exp[i]) return false;
        return true;
    }
    ParamMonomial quotient(const ParamMonomial& o) const { // *this / o
        ParamMonomial r = *this;
        for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] -= o.exp[i];
        return r;
    }
};

/// Polynomial in the parameters with rational coefficients, kept canonical
/// (sorted terms, no zero coefficients).
class ParamPoly {
public:
    ParamPoly() = default;
    explicit ParamPoly(std::size_t nparams) : nparams_(nparams) {}

    static ParamPoly constant(std::size_t nparams, Rational v) {
        ParamPoly p(nparams);
        if (v != 0) p.terms_.emplace(ParamMonomial{std::vector<std::uint16_t>(nparams, 0)}, std::move(v));
        return p;
    }
    static ParamPoly variable(std::size_t nparams, std::size_t which) {
        ParamPoly p(nparams);
        ParamMonomial m{std::vector<std::uint16_t>(nparams, 0)};
        m.exp[which] = 1;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }

    std::size_t nparams() const { return nparams_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    Rational constant_value() const {
        if (terms_.empty()) return 0;
        return terms_.begin()->second;
    }
    const std::map<ParamMonomial, Rational>& terms() const { return terms_; }

    ParamPoly operator+(const ParamPoly& o) const {
        ParamPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    ParamPoly operator-(const ParamPoly& o) const {
        ParamPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    ParamPoly operator-() const {
        ParamPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    ParamPoly operator*(const ParamPoly& o) const {
        ParamPoly r(nparams_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    ParamPoly operator*(const Rational& s) const {
        ParamPoly r(nparams_);
        if (s == 0) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }

    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }

    const ParamMonomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

    /// Entrywise-min exponent over all terms (the monomial content).
    ParamMonomial monomial_content() const {
        ParamMonomial g = terms_.begin()->first;
        for (const auto& [m, c] : terms_)
            for (std::size_t i = 0; i < g.exp.size(); ++i)
                g.exp[i] = std::min(g.exp[i], m.exp[i]);
        return g;
    }

    ParamPoly divided_by_monomial(const ParamMonomial& g) const {
        ParamPoly r(nparams_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m.quotient(g), c);
        return r;
    }

    /// Exact single-divisor division; nullopt when the remainder is nonzero.
    std::optional<ParamPoly> divided_exactly_by(const ParamPoly& d) const {
        if (d.is_zero()) throw EvaluationError("division of parameter polynomial by zero");
        ParamPoly rem = *this, q(nparams_);
        while (!rem.is_zero()) {
            const auto& lm = rem.leading_monomial();
            if (!d.leading_monomial().divides(lm)) return std::nullopt;
            ParamMonomial qm = lm.quotient(d.leading_monomial());
            Rational qc = rem.leading_coefficient() / d.leading_coefficient();
            q.add_term(qm, qc);
            ParamPoly sub(nparams_);
            sub.terms_.emplace(qm, qc);
            rem = rem - d * sub;
        }
        return q;
    }

    void add_term(const ParamMonomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::string str(const std::vector<Parameter>& params) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // leading term first
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->second;
            if (first) {
                if (c < 0) { os << "-"; c = -c; }
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            first = false;
            bool printed = false;
            if (c != 1 || it->first.is_one()) {
                os << to_string(c);
                printed = true;
            }
            for (std::size_t i = 0; i < it->first.exp.size(); ++i) {
                if (it->first.exp[i] == 0) continue;
                if (printed) os << "*";
                os << params[i].name;
                if (it->first.exp[i] > 1) os << "^" << it->first.exp[i];
                printed = true;
            }
        }
        return os.str();
    }

private:
    std::size_t nparams_ = 0;
    std::map<ParamMonomial, Rational> terms_;
};

/// Element of the coefficient field: a fraction of parameter polynomials.
/// Normal form: zero is 0/1; a common monomial factor and the denominator's
/// leading coefficient are cancelled; an exactly dividing denominator is
/// cleared. Equality is decided by cross-multiplication, which is exact even
/// when two representations share a nontrivial polynomial factor.
class Coefficient {
public:
    Coefficient() = default;
    explicit Coefficient(std::size_t nparams)
        : num_(nparams), den_(ParamPoly::constant(nparams, 1)) {}

    static Coefficient from_rational(std::size_t nparams, Rational v) {
        Coefficient c(nparams);
        c.num_ = ParamPoly::constant(nparams, std::move(v));
        return c;
    }
    static Coefficient from_parameter(std::size_t nparams, std::size_t which) {
        Coefficient c(nparams);
        c.num_ = ParamPoly::variable(nparams, which);
        return c;
    }
    static Coefficient from_poly(ParamPoly p) {
        Coefficient c(p.nparams());
        c.num_ = std::move(p);
        return c;
    }

    std::size_t nparams() const { return num_.nparams(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const {
        return num_.is_constant() && den_.is_constant() && num_.constant_value() == 1;
    }
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    Rational rational_value() const {
        if (!is_rational()) throw EvaluationError("coefficient is not a plain rational");
        if (num_.is_zero()) return 0;
        return num_.constant_value() / den_.constant_value();
    }

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }

    Coefficient operator+(const Coefficient& o) const {
        Coefficient r(nparams());
        r.num_ = num_ * o.den_ + o.num_ * den_;
        r.den_ = den_ * o.den_;
        r.normalize();
        return r;
    }
    Coefficient operator-(const Coefficient& o) const { return *this + (-o); }
    Coefficient operator-() const {
        Coefficient r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Coefficient operator*(const Coefficient& o) const {
        Coefficient r(nparams());
        r.num_ = num_ * o.num_;
        r.den_ = den_ * o.den_;
        r.normalize();
        return r;
    }
    Coefficient operator/(const Coefficient& o) const {
        if (o.is_zero()) throw EvaluationError("division by zero coefficient");
        Coefficient r(nparams());
        r.num_ = num_ * o.den_;
        r.den_ = den_ * o.num_;
        r.normalize();
        return r;
    }
    Coefficient& operator+=(const Coefficient& o) { return *this = *this + o; }
    Coefficient& operator-=(const Coefficient& o) { return *this = *this - o; }
    Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }

    bool operator==(const Coefficient& o) const {
        return num_ * o.den_ == o.num_ * den_;
    }

    Coefficient pow(unsigned e) const {
        Coefficient acc = from_rational(nparams(), 1), b = *this;
        while (e) {
            if (e & 1u) acc *= b;
            b *= b;
            e >>= 1u;
        }
        return acc;
    }

    Rational evaluate(const std::vector<Rational>& param_values) const {
        Rational n = eval_poly(num_, param_values);
        Rational d = eval_poly(den_, param_values);
        if (d == 0) throw EvaluationError("coefficient denominator evaluates to zero");
        return n / d;
    }
    double evaluate_double(const std::vector<double>& param_values) const {
        double n = eval_poly_d(num_, param_values);
        double d = eval_poly_d(den_, param_values);
        return n / d;
    }

    std::string str(const std::vector<Parameter>& params) const {
        const bool den_one = den_.is_constant() && den_.constant_value() == 1;
        const bool num_simple = num_.terms().size() <= 1;
        std::string ns = num_.str(params);
        if (den_one) return num_simple ? ns : "(" + ns + ")";
        std::string ds = den_.str(params);
        std::string lhs = num_simple && ns.find(' ') == std::string::npos ? ns : "(" + ns + ")";
        std::string rhs = den_.terms().size() <= 1 && ds.find(' ') == std::string::npos
                              ? ds : "(" + ds + ")";
        return lhs + "/" + rhs;
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = ParamPoly::constant(nparams(), 1);
            return;
        }
        if (den_.is_zero()) throw EvaluationError("zero denominator in coefficient");
        // Cancel the common monomial factor.
        ParamMonomial g = num_.monomial_content();
        ParamMonomial h = den_.monomial_content();
        for (std::size_t i = 0; i < g.exp.size(); ++i) g.exp[i] = std::min(g.exp[i], h.exp[i]);
        if (g.degree() > 0) {
            num_ = num_.divided_by_monomial(g);
            den_ = den_.divided_by_monomial(g);
        }
        // Clear the denominator when it divides exactly.
        if (!(den_.is_constant())) {
            if (auto q = num_.divided_exactly_by(den_)) {
                num_ = std::move(*q);
                den_ = ParamPoly::constant(nparams(), 1);
            }
        }
        // Monic denominator.
        Rational lc = den_.leading_coefficient();
        if (lc != 1) {
            Rational inv = Rational(1) / lc;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    static Rational eval_poly(const ParamPoly& p, const std::vector<Rational>& vals) {
        Rational acc = 0;
        for (const auto& [m, c] : p.terms()) {
            Rational t = c;
            for (std::size_t i = 0; i < m.exp.size(); ++i)
                if (m.exp[i]) t *= rational_pow(vals.at(i), m.exp[i]);
            acc += t;
        }
        return acc;
    }
    static double eval_poly_d(const ParamPoly& p, const std::vector<double>& vals) {
        double acc = 0;
        for (const auto& [m, c] : p.terms()) {
            double t = to_double(c);
            for (std::size_t i = 0; i < m.exp.size(); ++i)
                for (int rep = 0; rep < m.exp[i]; ++rep) t *= vals.at(i);
            acc += t;
        }
        return acc;
    }

    ParamPoly num_;
    ParamPoly den_;
};

} // namespace jetnoether
