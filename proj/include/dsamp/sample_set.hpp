#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "dsamp/weight.hpp"

namespace dsamp {

// Bounded container of the minimum-weight elements seen so far. Holds at
// most `capacity` entries ordered by weight; once full, inserting a weight
// below the current maximum evicts the maximum.
class SampleSet {
public:
    explicit SampleSet(std::size_t capacity);

    struct InsertResult {
        std::optional<WeightedElement> evicted;
        Threshold threshold;  // threshold() after the insert
    };

    // Inserts an element. Intended for weights admitted by the caller's
    // guard; a weight at or above the current maximum of a full set is
    // inserted and immediately evicted again. Re-inserting an element
    // already present (same ordinal and logical index) throws
    // std::logic_error: the protocols never deliver duplicates.
    InsertResult insert(const WeightedElement& item);

    // The sentinel 1 while under capacity, otherwise the largest held weight.
    Threshold threshold() const;

    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    bool full() const { return entries_.size() == capacity_; }

    // Entries in ascending weight order.
    std::vector<WeightedElement> elements() const;

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    struct ByWeight {
        bool operator()(const WeightedElement& a, const WeightedElement& b) const {
            return a.weight < b.weight;
        }
    };

    std::size_t capacity_;
    std::set<WeightedElement, ByWeight> entries_;
};

// Brute-force selection oracle: the exact s smallest-weight elements of
// `all` (every element if fewer than s) by full sort, together with the
// s-th smallest weight, or the sentinel 1 when fewer than s elements exist.
struct OracleSelection {
    std::vector<WeightedElement> entries;  // ascending weight
    Threshold threshold;
};
OracleSelection kth_smallest_oracle(std::span<const WeightedElement> all, std::size_t s);

}  // namespace dsamp
