#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dsamp::sim {

// One element landing at one site in one round. Ordinals give the global
// arrival order of the union stream; labels are application payload used
// by the heavy-hitter workloads (0 = unlabeled).
struct ScheduledArrival {
    std::uint64_t ordinal = 0;  // 1-based, unique across the schedule
    std::uint32_t round = 0;    // 1-based
    std::uint32_t site = 0;     // 1..k
    std::uint32_t label = 0;
};

// A synchronous-round arrival plan: per round, each site observes at most
// one element. Construction validates that constraint and that ordinals
// form a permutation of 1..n.
class StreamSchedule {
public:
    StreamSchedule(std::uint32_t site_count, std::vector<ScheduledArrival> arrivals);

    std::uint32_t site_count() const { return site_count_; }
    std::uint32_t rounds() const { return rounds_; }
    std::uint64_t size() const { return arrivals_.size(); }
    std::span<const ScheduledArrival> arrivals() const { return arrivals_; }

private:
    std::uint32_t site_count_;
    std::uint32_t rounds_ = 0;
    std::vector<ScheduledArrival> arrivals_;  // sorted by (round, site)
};

enum class ScheduleKind {
    single_site,       // everything lands at site 1, one element per round
    round_robin,       // element t lands at site ((t-1) mod k) + 1 in round t
    uniform_random,    // sites drawn uniformly, rounds stretched on collision
    epoch_adversarial  // bursts of geometrically growing size, random sites
};

ScheduleKind schedule_kind_from_name(std::string_view name);  // throws on unknown kind
std::string_view to_string(ScheduleKind kind);

// A label planted into a fixed fraction of the stream; elements not
// covered by any planted label get a unique background label.
struct PlantedLabel {
    std::uint32_t label = 0;
    double frequency = 0.0;
};

struct ScheduleParams {
    std::uint64_t n = 0;
    std::uint32_t k = 1;
    std::uint32_t s = 1;  // sizes the adversarial bursts
    std::vector<PlantedLabel> labels;
};

StreamSchedule generate_schedule(ScheduleKind kind, const ScheduleParams& params,
                                 std::uint64_t seed);

// Burst sizes of the adversarial workload: s elements first, then bursts of
// round(beta^(i-1) * k) with beta = 1 + k/s, truncated to n total.
std::vector<std::uint64_t> adversarial_epoch_sizes(std::uint32_t k, std::uint32_t s,
                                                   std::uint64_t n);

}  // namespace dsamp::sim
