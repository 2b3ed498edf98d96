#pragma once

#include "jetnoether/expr.hpp"

#include <cctype>
#include <string>

namespace jetnoether {

// Recursive-descent parser for the expression grammar used by model files and
// CLI arguments:
//
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | primary ('^' positive-integer)?
//   primary := integer | identifier | '(' expr ')'
//
// Jet coordinates are written as the dependent name, an underscore, and a
// string of independent-variable names in any order (u_xt == u_tx). Division
// is only legal by parameter-rational subexpressions.
class ExprParser {
public:
    ExprParser(std::string text, ContextPtr ctx)
        : text_(std::move(text)), ctx_(std::move(ctx)) {}

    Expr parse() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input at position " + std::to_string(pos_), pos_);
        return e;
    }

private:
    Expr parse_sum() {
        Expr e = parse_term();
        for (;;) {
            skip_ws();
            if (accept('+')) e += parse_term();
            else if (accept('-')) e -= parse_term();
            else return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                e *= parse_factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr d = parse_factor();
                if (d.depends_on_coordinates())
                    throw ParseError("division by an expression containing jet coordinates "
                                     "(position " + std::to_string(at) + ")", at);
                e = e.divided_by_scalar(d);
            } else {
                return e;
            }
        }
    }

    Expr parse_factor() {
        skip_ws();
        if (accept('-')) return -parse_factor();
        Expr base = parse_primary();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("'^' requires a positive integer literal exponent "
                                 "(position " + std::to_string(at) + ")", at);
            unsigned long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                e = e * 10 + static_cast<unsigned long>(text_[pos_++] - '0');
            if (e == 0)
                throw ParseError("exponent must be a positive integer (position " +
                                 std::to_string(at) + ")", at);
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            skip_ws();
            if (!accept(')'))
                throw ParseError("expected ')' at position " + std::to_string(pos_), pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return Expr::constant(ctx_, Rational(Integer(text_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "' at position " +
                         std::to_string(pos_), pos_);
    }

    Expr parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalnum(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);

        std::string suffix;
        bool has_suffix = false;
        if (pos_ < text_.size() && text_[pos_] == '_') {
            ++pos_;
            std::size_t sstart = pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            suffix = text_.substr(sstart, pos_ - sstart);
            has_suffix = true;
            if (suffix.empty())
                throw ParseError("dangling '_' after '" + name + "' at position " +
                                 std::to_string(start), start);
        }

        if (!has_suffix) {
            if (auto p = ctx_->find_parameter(name))
                return Expr::parameter(ctx_, *p);
            if (auto i = ctx_->find_independent(name))
                return Expr::coordinate(ctx_, ctx_->independent_id(*i));
            if (auto j = ctx_->find_dependent(name))
                return Expr::coordinate(ctx_, ctx_->dependent_id(*j, ctx_->zero_index()));
            throw ParseError("unknown identifier '" + name + "' at position " +
                             std::to_string(start), start);
        }

        auto j = ctx_->find_dependent(name);
        if (!j)
            throw ParseError("'" + name + "' is not a dependent variable (position " +
                             std::to_string(start) + ")", start);
        MultiIndex I = parse_jet_suffix(suffix, start);
        if (I.order() > ctx_->order())
            throw ParseError("jet coordinate '" + name + "_" + suffix +
                             "' exceeds the context order k=" + std::to_string(ctx_->order()),
                             start);
        return Expr::coordinate(ctx_, ctx_->dependent_id(*j, I));
    }

    /// Greedy longest-match tokenization of the derivative suffix against the
    /// declared independent-variable names; the multiset of matches becomes
    /// the multi-index, so the suffix is order-insensitive by construction.
    MultiIndex parse_jet_suffix(const std::string& s, std::size_t err_pos) const {
        std::vector<std::uint16_t> entries(ctx_->m(), 0);
        std::size_t p = 0;
        while (p < s.size()) {
            int best = -1;
            std::size_t best_len = 0;
            for (int i = 0; i < ctx_->m(); ++i) {
                const std::string& nm = ctx_->independent_names()[i];
                if (nm.size() > best_len && s.compare(p, nm.size(), nm) == 0) {
                    best = i;
                    best_len = nm.size();
                }
            }
            if (best < 0)
                throw ParseError("cannot read derivative suffix '" + s +
                                 "' as independent-variable names (position " +
                                 std::to_string(err_pos) + ")", err_pos);
            entries[best] += 1;
            p += best_len;
        }
        return MultiIndex(std::move(entries));
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string text_;
    ContextPtr ctx_;
    std::size_t pos_ = 0;
};

inline Expr parse_expr(const std::string& text, const ContextPtr& ctx) {
    return ExprParser(text, ctx).parse();
}

} // namespace jetnoether
