#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dsamp::hh {

// Sizing knobs for sample-based heavy-hitter extraction: a label occurring
// in at least an epsilon fraction of the stream should be reported, one
// below epsilon/2 should not.
struct HeavyHitterConfig {
    double epsilon = 0.1;
    double confidence_constant = 16.0;
    std::uint64_t n_hint = 2;  // expected stream length, used only for sizing
};

// Sample size large enough for the promise gap:
// ceil(c * epsilon^-2 * log2(n_hint)), at least 1.
std::size_t required_sample_size(const HeavyHitterConfig& cfg);

struct HeavyHitters {
    std::vector<std::uint32_t> labels;  // ascending
    bool empty_sample = false;          // set when the input held no entries
};

// Every label whose sample frequency reaches 3*epsilon/4, the midpoint of
// the promise gap. Deterministic in the multiset of labels.
HeavyHitters extract_heavy_hitters(std::span<const std::uint32_t> sample_labels, double epsilon);

}  // namespace dsamp::hh
