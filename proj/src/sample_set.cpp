#include "dsamp/sample_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsamp {

SampleSet::SampleSet(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("SampleSet capacity must be positive");
}

SampleSet::InsertResult SampleSet::insert(const WeightedElement& item) {
    auto [pos, inserted] = entries_.insert(item);
    if (!inserted) throw std::logic_error("duplicate element inserted into SampleSet");

    InsertResult result;
    if (entries_.size() > capacity_) {
        auto last = std::prev(entries_.end());
        result.evicted = *last;
        entries_.erase(last);
    }
    result.threshold = threshold();
    return result;
}

Threshold SampleSet::threshold() const {
    if (entries_.size() < capacity_) return Threshold{};
    return Threshold{std::prev(entries_.end())->weight};
}

std::vector<WeightedElement> SampleSet::elements() const {
    return {entries_.begin(), entries_.end()};
}

OracleSelection kth_smallest_oracle(std::span<const WeightedElement> all, std::size_t s) {
    OracleSelection out;
    out.entries.assign(all.begin(), all.end());
    std::sort(out.entries.begin(), out.entries.end(),
              [](const WeightedElement& a, const WeightedElement& b) { return a.weight < b.weight; });
    if (out.entries.size() > s) out.entries.resize(s);
    if (out.entries.size() == s && s > 0)
        out.threshold = Threshold{out.entries.back().weight};
    return out;
}

}  // namespace dsamp
