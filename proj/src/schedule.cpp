#include "dsamp/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "dsamp/weight.hpp"

namespace dsamp::sim {

StreamSchedule::StreamSchedule(std::uint32_t site_count,
                               std::vector<ScheduledArrival> arrivals)
    : site_count_(site_count), arrivals_(std::move(arrivals)) {
    if (site_count_ == 0) throw std::invalid_argument("schedule needs at least one site");

    std::sort(arrivals_.begin(), arrivals_.end(),
              [](const ScheduledArrival& a, const ScheduledArrival& b) {
                  return std::tie(a.round, a.site) < std::tie(b.round, b.site);
              });

    std::vector<bool> seen(arrivals_.size() + 1, false);
    for (std::size_t i = 0; i < arrivals_.size(); ++i) {
        const auto& a = arrivals_[i];
        if (a.round == 0) throw std::invalid_argument("rounds are 1-based");
        if (a.site == 0 || a.site > site_count_)
            throw std::invalid_argument("arrival site out of range");
        if (a.ordinal == 0 || a.ordinal > arrivals_.size() || seen[a.ordinal])
            throw std::invalid_argument("ordinals must form a permutation of 1..n");
        seen[a.ordinal] = true;
        if (i > 0 && arrivals_[i - 1].round == a.round && arrivals_[i - 1].site == a.site)
            throw std::invalid_argument("a site can observe at most one element per round");
        rounds_ = std::max(rounds_, a.round);
    }
}

ScheduleKind schedule_kind_from_name(std::string_view name) {
    if (name == "single_site") return ScheduleKind::single_site;
    if (name == "round_robin") return ScheduleKind::round_robin;
    if (name == "uniform_random") return ScheduleKind::uniform_random;
    if (name == "epoch_adversarial") return ScheduleKind::epoch_adversarial;
    throw std::invalid_argument("unknown schedule kind: " + std::string(name));
}

std::string_view to_string(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::single_site: return "single_site";
        case ScheduleKind::round_robin: return "round_robin";
        case ScheduleKind::uniform_random: return "uniform_random";
        case ScheduleKind::epoch_adversarial: return "epoch_adversarial";
    }
    throw std::logic_error("unreachable");
}

std::vector<std::uint64_t> adversarial_epoch_sizes(std::uint32_t k, std::uint32_t s,
                                                   std::uint64_t n) {
    if (k == 0 || s == 0) throw std::invalid_argument("k and s must be positive");
    const double beta = 1.0 + static_cast<double>(k) / static_cast<double>(s);
    std::vector<std::uint64_t> sizes;
    std::uint64_t remaining = n;
    for (std::uint64_t burst = 0; remaining > 0; ++burst) {
        std::uint64_t want;
        if (burst == 0) {
            want = s;
        } else {
            const double raw = std::pow(beta, static_cast<double>(burst - 1)) *
                               static_cast<double>(k);
            want = raw >= static_cast<double>(remaining)
                       ? remaining
                       : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(raw)));
        }
        want = std::min(want, remaining);
        sizes.push_back(want);
        remaining -= want;
    }
    return sizes;
}

namespace {

// Places elements in global order, drawing each site from `pick`; a round
// admits one element per site, so a collision closes the round.
class RoundPacker {
public:
    explicit RoundPacker(std::uint32_t k) : occupied_(k + 1, false) {}

    std::uint32_t place(std::uint32_t site) {
        if (occupied_[site]) {
            ++round_;
            std::fill(occupied_.begin(), occupied_.end(), false);
        }
        occupied_[site] = true;
        return round_;
    }

private:
    std::vector<bool> occupied_;
    std::uint32_t round_ = 1;
};

std::vector<std::uint32_t> make_labels(const ScheduleParams& params, std::uint64_t seed) {
    std::vector<std::uint32_t> labels(params.n, 0);
    if (params.labels.empty()) return labels;

    std::uint32_t background = 0;
    std::uint64_t planted_total = 0;
    for (const auto& p : params.labels) {
        if (!(p.frequency > 0.0 && p.frequency <= 1.0))
            throw std::invalid_argument("planted label frequency must lie in (0,1]");
        planted_total += static_cast<std::uint64_t>(
            std::llround(p.frequency * static_cast<double>(params.n)));
        background = std::max(background, p.label + 1);
    }
    if (planted_total > params.n)
        throw std::invalid_argument("planted label frequencies exceed the stream");

    // Seeded shuffle decides which positions carry the planted labels.
    std::vector<std::uint64_t> order(params.n);
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(mix64(seed ^ 0x1abe15edull));
    for (std::uint64_t i = params.n; i > 1; --i)
        std::swap(order[i - 1], order[rng.next_below(i)]);

    std::uint64_t cursor = 0;
    for (const auto& p : params.labels) {
        const auto count = static_cast<std::uint64_t>(
            std::llround(p.frequency * static_cast<double>(params.n)));
        for (std::uint64_t j = 0; j < count; ++j) labels[order[cursor++]] = p.label;
    }
    for (std::uint64_t pos = 0; pos < params.n; ++pos)
        if (labels[pos] == 0) labels[pos] = background + static_cast<std::uint32_t>(pos);
    return labels;
}

}  // namespace

StreamSchedule generate_schedule(ScheduleKind kind, const ScheduleParams& params,
                                 std::uint64_t seed) {
    if (params.n == 0) throw std::invalid_argument("schedule needs at least one element");
    if (params.k == 0) throw std::invalid_argument("schedule needs at least one site");

    const auto labels = make_labels(params, seed);
    std::vector<ScheduledArrival> arrivals;
    arrivals.reserve(params.n);

    auto emit = [&](std::uint64_t ordinal, std::uint32_t round, std::uint32_t site) {
        arrivals.push_back(
            ScheduledArrival{ordinal, round, site, labels[ordinal - 1]});
    };

    switch (kind) {
        case ScheduleKind::single_site:
            for (std::uint64_t t = 1; t <= params.n; ++t)
                emit(t, static_cast<std::uint32_t>(t), 1);
            break;

        case ScheduleKind::round_robin:
            for (std::uint64_t t = 1; t <= params.n; ++t)
                emit(t, static_cast<std::uint32_t>(t),
                     static_cast<std::uint32_t>((t - 1) % params.k) + 1);
            break;

        case ScheduleKind::uniform_random: {
            SplitMix64 rng(mix64(seed ^ 0x5c4eduLL));
            RoundPacker packer(params.k);
            for (std::uint64_t t = 1; t <= params.n; ++t) {
                const auto site = static_cast<std::uint32_t>(rng.next_below(params.k)) + 1;
                emit(t, packer.place(site), site);
            }
            break;
        }

        case ScheduleKind::epoch_adversarial: {
            const auto sizes = adversarial_epoch_sizes(params.k, params.s, params.n);
            RoundPacker packer(params.k);
            std::uint64_t ordinal = 1;
            for (std::size_t burst = 0; burst < sizes.size(); ++burst) {
                // Independent randomness per burst for the site assignment.
                SplitMix64 rng(mix64(seed ^ (0xadfeedull + burst)));
                for (std::uint64_t j = 0; j < sizes[burst]; ++j, ++ordinal) {
                    const auto site =
                        static_cast<std::uint32_t>(rng.next_below(params.k)) + 1;
                    emit(ordinal, packer.place(site), site);
                }
            }
            break;
        }
    }

    return StreamSchedule(params.k, std::move(arrivals));
}

}  // namespace dsamp::sim
