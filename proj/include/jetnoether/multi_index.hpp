#pragma once

#include "jetnoether/errors.hpp"

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace jetnoether {

/// Derivative multi-index I = (I_1, ..., I_m), one entry per independent
/// variable. Ordered first by total order |I|, then entrywise left to right.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::uint16_t> entries) : entries_(std::move(entries)) {}

    static MultiIndex zeros(std::size_t arity) {
        return MultiIndex(std::vector<std::uint16_t>(arity, 0));
    }

    std::size_t arity() const { return entries_.size(); }
    std::uint16_t operator[](std::size_t i) const { return entries_[i]; }
    int order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
    bool is_zero() const { return order() == 0; }

    /// I + 1_i (indices are 0-based here; the formula J + 1_i of the ordering
    /// conventions is unchanged).
    MultiIndex raised(std::size_t i) const {
        MultiIndex out = *this;
        out.entries_.at(i) += 1;
        return out;
    }

    /// I - 1_i; requires I_i >= 1.
    MultiIndex lowered(std::size_t i) const {
        MultiIndex out = *this;
        if (out.entries_.at(i) == 0)
            throw PreconditionError("multi-index entry underflow in lowered()");
        out.entries_[i] -= 1;
        return out;
    }

    const std::vector<std::uint16_t>& entries() const { return entries_; }

    bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }

    /// Graded lexicographic order: |I| first, then the leftmost differing
    /// entry decides.
    std::strong_ordering operator<=>(const MultiIndex& o) const {
        if (arity() != o.arity())
            throw ContextError("multi-index arity mismatch in comparison");
        if (auto c = order() <=> o.order(); c != 0) return c;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (auto c = entries_[i] <=> o.entries_[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }

private:
    std::vector<std::uint16_t> entries_;
};

/// Pairs (j, J) of dependent index and multi-index are ordered by J first and
/// j second; this is the order used for the contact basis families.
inline std::strong_ordering compare_index_pair(int j1, const MultiIndex& J1,
                                               int j2, const MultiIndex& J2) {
    if (auto c = J1 <=> J2; c != 0) return c;
    return j1 <=> j2;
}

/// All multi-indices of the given arity with |I| == order, listed ascending.
inline void enumerate_multi_indices_of_order(std::size_t arity, int order,
                                             std::vector<MultiIndex>& out) {
    std::vector<std::uint16_t> cur(arity, 0);
    // Recursive distribution of `order` among `arity` slots, emitted in
    // lexicographic order of the entry vectors (which is the graded-lex order
    // within a fixed grade).
    auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos + 1 == arity) {
            cur[pos] = static_cast<std::uint16_t>(remaining);
            out.emplace_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = static_cast<std::uint16_t>(v);
            self(self, pos + 1, remaining - v);
        }
    };
    if (arity == 0) return;
    rec(rec, 0, order);
}

/// All multi-indices with 0 <= |I| <= max_order in graded-lex order.
inline std::vector<MultiIndex> enumerate_multi_indices(std::size_t arity, int max_order) {
    std::vector<MultiIndex> out;
    for (int d = 0; d <= max_order; ++d) enumerate_multi_indices_of_order(arity, d, out);
    return out;
}

} // namespace jetnoether
