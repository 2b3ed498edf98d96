#pragma once

#include "jetnoether/errors.hpp"
#include "jetnoether/multi_index.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace jetnoether {

/// Named constant of the coefficient field (e.g. c, pi). The nonzero flag
/// records the modelling assumption that permits it in denominators.
struct Parameter {
    std::string name;
    bool assumed_nonzero = true;
};

enum class CoordKind { Independent, Dependent };

/// One chart coordinate: either x^i or y^j_I with |I| <= k.
struct Coordinate {
    CoordKind kind;
    int index;     // i for independent, j for dependent (0-based)
    MultiIndex jet; // empty for independent coordinates
};

class JetContext;
using ContextPtr = std::shared_ptr<const JetContext>;

/// The contact-basis 1-forms of the chart: dx^i for 1<=i<=m, then the
/// contact forms w^j_J for |J| <= k-1, then the top forms psi^j_L for |L| = k.
/// Within each family the (j,J) pairs are ordered by J first, j second.
struct BasisOneForm {
    enum class Family { Dx, Omega, Psi };
    Family family;
    int index;      // i for Dx, j otherwise
    MultiIndex jet; // empty for Dx
};

/// The arena every expression and form lives in: m named independent
/// variables, n named dependent variables, the jet order k, and the declared
/// parameters. Construction enumerates the full coordinate chart and the
/// contact basis once; everything downstream works with integer ids.
class JetContext : public std::enable_shared_from_this<JetContext> {
public:
    static ContextPtr make(std::vector<std::string> independent,
                           std::vector<std::string> dependent,
                           int order,
                           std::vector<Parameter> parameters = {}) {
        auto ctx = std::shared_ptr<JetContext>(
            new JetContext(std::move(independent), std::move(dependent), order,
                           std::move(parameters)));
        return ctx;
    }

    int m() const { return static_cast<int>(independent_.size()); }
    int n() const { return static_cast<int>(dependent_.size()); }
    int order() const { return order_; }

    const std::vector<std::string>& independent_names() const { return independent_; }
    const std::vector<std::string>& dependent_names() const { return dependent_; }
    const std::vector<Parameter>& parameters() const { return parameters_; }

    std::size_t coordinate_count() const { return coords_.size(); }
    const Coordinate& coordinate(std::size_t id) const { return coords_[id]; }

    std::size_t basis_count() const { return basis_.size(); }
    const BasisOneForm& basis_form(std::size_t id) const { return basis_[id]; }

    // --- id lookups ------------------------------------------------------

    std::size_t independent_id(int i) const {
        check_range(i >= 0 && i < m(), "independent index out of range");
        return static_cast<std::size_t>(i);
    }

    std::size_t dependent_id(int j, const MultiIndex& I) const {
        check_range(j >= 0 && j < n(), "dependent index out of range");
        check_range(I.order() <= order_, "multi-index order exceeds jet order");
        return static_cast<std::size_t>(m()) +
               static_cast<std::size_t>(j) * per_dependent_ +
               jet_offset(I);
    }

    std::size_t dx_id(int i) const {
        check_range(i >= 0 && i < m(), "dx index out of range");
        return static_cast<std::size_t>(i);
    }

    std::size_t omega_id(int j, const MultiIndex& J) const {
        check_range(j >= 0 && j < n(), "omega dependent index out of range");
        check_range(J.order() <= order_ - 1, "omega multi-index must have |J| <= k-1");
        return static_cast<std::size_t>(m()) + pair_offset_below_top(J) + static_cast<std::size_t>(j);
    }

    std::size_t psi_id(int j, const MultiIndex& L) const {
        check_range(j >= 0 && j < n(), "psi dependent index out of range");
        check_range(L.order() == order_, "psi multi-index must have |L| = k");
        return omega_block_end_ + top_pair_offset(L) + static_cast<std::size_t>(j);
    }

    std::optional<std::size_t> find_parameter(const std::string& name) const {
        for (std::size_t p = 0; p < parameters_.size(); ++p)
            if (parameters_[p].name == name) return p;
        return std::nullopt;
    }

    std::optional<int> find_independent(const std::string& name) const {
        for (int i = 0; i < m(); ++i)
            if (independent_[i] == name) return i;
        return std::nullopt;
    }

    std::optional<int> find_dependent(const std::string& name) const {
        for (int j = 0; j < n(); ++j)
            if (dependent_[j] == name) return j;
        return std::nullopt;
    }

    /// Multi-indices with |I| <= bound, ascending.
    std::vector<MultiIndex> multi_indices_up_to(int bound) const {
        return enumerate_multi_indices(independent_.size(), bound);
    }

    MultiIndex zero_index() const { return MultiIndex::zeros(independent_.size()); }

    // --- printing ---------------------------------------------------------

    std::string coordinate_name(std::size_t id) const {
        const Coordinate& c = coords_.at(id);
        if (c.kind == CoordKind::Independent) return independent_[c.index];
        std::string s = dependent_[c.index];
        if (!c.jet.is_zero()) {
            s += '_';
            s += jet_suffix(c.jet);
        }
        return s;
    }

    std::string basis_name(std::size_t id) const {
        const BasisOneForm& b = basis_.at(id);
        switch (b.family) {
        case BasisOneForm::Family::Dx:
            return "dx" + std::to_string(b.index + 1);
        case BasisOneForm::Family::Omega:
            return b.jet.is_zero() ? "w[" + dependent_[b.index] + "]"
                                   : "w[" + dependent_[b.index] + "," + jet_suffix(b.jet) + "]";
        case BasisOneForm::Family::Psi:
            return "psi[" + dependent_[b.index] + "," + jet_suffix(b.jet) + "]";
        }
        return {};
    }

    std::string jet_suffix(const MultiIndex& I) const {
        std::string s;
        for (std::size_t i = 0; i < independent_.size(); ++i)
            for (int rep = 0; rep < I[i]; ++rep) s += independent_[i];
        return s;
    }

    /// Same chart with a higher jet order; used when a command needs deeper
    /// prolongations than the declared model order.
    ContextPtr with_order(int new_order) const {
        return make(independent_, dependent_, new_order, parameters_);
    }

private:
    JetContext(std::vector<std::string> independent, std::vector<std::string> dependent,
               int order, std::vector<Parameter> parameters)
        : independent_(std::move(independent)),
          dependent_(std::move(dependent)),
          parameters_(std::move(parameters)),
          order_(order) {
        if (independent_.empty() || dependent_.empty())
            throw PreconditionError("context needs at least one independent and one dependent variable");
        if (order_ < 1) throw PreconditionError("jet order must be >= 1");
        validate_names();
        build_tables();
    }

    void validate_names() const {
        std::map<std::string, int> seen;
        auto add = [&](const std::string& s, const char* what) {
            if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
                throw PreconditionError(std::string(what) + " name '" + s +
                                        "' must start with a letter");
            for (char ch : s)
                if (!std::isalnum(static_cast<unsigned char>(ch)))
                    throw PreconditionError(std::string(what) + " name '" + s +
                                            "' must be alphanumeric");
            if (++seen[s] > 1)
                throw PreconditionError("duplicate name '" + s + "' in context");
        };
        for (const auto& s : independent_) add(s, "independent");
        for (const auto& s : dependent_) add(s, "dependent");
        for (const auto& p : parameters_) add(p.name, "parameter");
    }

    void build_tables() {
        const auto jets_all = enumerate_multi_indices(independent_.size(), order_);
        per_dependent_ = jets_all.size();
        for (std::size_t idx = 0; idx < jets_all.size(); ++idx)
            jet_offset_[key_of(jets_all[idx])] = idx;

        // Coordinate table: x^i first, then y^j_I grouped by j (the monomial
        // comparison key is (kind, j, I)).
        for (int i = 0; i < m(); ++i)
            coords_.push_back({CoordKind::Independent, i, MultiIndex{}});
        for (int j = 0; j < n(); ++j)
            for (const auto& I : jets_all)
                coords_.push_back({CoordKind::Dependent, j, I});

        // Basis table: dx family, then omega ordered by (J, j), then psi.
        for (int i = 0; i < m(); ++i)
            basis_.push_back({BasisOneForm::Family::Dx, i, MultiIndex{}});
        const auto jets_below = enumerate_multi_indices(independent_.size(), order_ - 1);
        for (std::size_t idx = 0; idx < jets_below.size(); ++idx) {
            pair_offset_[key_of(jets_below[idx])] =
                static_cast<std::size_t>(n()) * idx;
            for (int j = 0; j < n(); ++j)
                basis_.push_back({BasisOneForm::Family::Omega, j, jets_below[idx]});
        }
        omega_block_end_ = basis_.size();
        std::vector<MultiIndex> jets_top;
        enumerate_multi_indices_of_order(independent_.size(), order_, jets_top);
        for (std::size_t idx = 0; idx < jets_top.size(); ++idx) {
            top_offset_[key_of(jets_top[idx])] = static_cast<std::size_t>(n()) * idx;
            for (int j = 0; j < n(); ++j)
                basis_.push_back({BasisOneForm::Family::Psi, j, jets_top[idx]});
        }
    }

    static std::string key_of(const MultiIndex& I) {
        std::string key;
        key.reserve(I.arity() * 2);
        for (std::size_t i = 0; i < I.arity(); ++i) {
            key += static_cast<char>('0' + (I[i] / 10));
            key += static_cast<char>('0' + (I[i] % 10));
        }
        return key;
    }

    std::size_t jet_offset(const MultiIndex& I) const {
        auto it = jet_offset_.find(key_of(I));
        if (it == jet_offset_.end()) throw ContextError("unknown multi-index in context");
        return it->second;
    }

    std::size_t pair_offset_below_top(const MultiIndex& J) const {
        auto it = pair_offset_.find(key_of(J));
        if (it == pair_offset_.end()) throw ContextError("unknown omega multi-index");
        return it->second;
    }

    std::size_t top_pair_offset(const MultiIndex& L) const {
        auto it = top_offset_.find(key_of(L));
        if (it == top_offset_.end()) throw ContextError("unknown psi multi-index");
        return it->second;
    }

    static void check_range(bool ok, const char* msg) {
        if (!ok) throw ContextError(msg);
    }

    std::vector<std::string> independent_;
    std::vector<std::string> dependent_;
    std::vector<Parameter> parameters_;
    int order_;

    std::vector<Coordinate> coords_;
    std::vector<BasisOneForm> basis_;
    std::size_t per_dependent_ = 0;
    std::size_t omega_block_end_ = 0;
    std::map<std::string, std::size_t> jet_offset_;
    std::map<std::string, std::size_t> pair_offset_;
    std::map<std::string, std::size_t> top_offset_;
};

/// Spec operation: build the chart context from name lists and the order.
inline ContextPtr make_context(std::vector<std::string> independent,
                               std::vector<std::string> dependent,
                               int order,
                               std::vector<Parameter> parameters = {}) {
    return JetContext::make(std::move(independent), std::move(dependent), order,
                            std::move(parameters));
}

inline void require_same_context(const ContextPtr& a, const ContextPtr& b) {
    if (a.get() != b.get())
        throw ContextError("operands belong to different jet contexts");
}

} // namespace jetnoether
