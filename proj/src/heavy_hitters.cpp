#include "dsamp/heavy_hitters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace dsamp::hh {

std::size_t required_sample_size(const HeavyHitterConfig& cfg) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie strictly inside (0,1)");
    if (!(cfg.confidence_constant > 0.0))
        throw std::invalid_argument("confidence constant must be positive");
    if (cfg.n_hint < 2) throw std::invalid_argument("n_hint must be at least 2");

    const double raw = cfg.confidence_constant / (cfg.epsilon * cfg.epsilon) *
                       std::log2(static_cast<double>(cfg.n_hint));
    return static_cast<std::size_t>(std::max(1.0, std::ceil(raw)));
}

HeavyHitters extract_heavy_hitters(std::span<const std::uint32_t> sample_labels,
                                   double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie strictly inside (0,1)");

    HeavyHitters out;
    if (sample_labels.empty()) {
        out.empty_sample = true;
        return out;
    }

    std::unordered_map<std::uint32_t, std::uint64_t> counts;
    for (std::uint32_t label : sample_labels) ++counts[label];

    const double cutoff = 0.75 * epsilon * static_cast<double>(sample_labels.size());
    for (const auto& [label, count] : counts)
        if (static_cast<double>(count) >= cutoff) out.labels.push_back(label);
    std::sort(out.labels.begin(), out.labels.end());
    return out;
}

}  // namespace dsamp::hh
