#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "dsamp/sample_set.hpp"
#include "dsamp/weight.hpp"

namespace dsamp::wor {

// Site -> coordinator report of one locally observed element.
struct Upstream {
    std::uint32_t from_site = 0;
    WeightedElement item;
};

// Coordinator -> site answer carrying the coordinator's current threshold.
struct Reply {
    std::uint32_t to_site = 0;
    Threshold threshold;
};

// Coordinator -> all sites threshold refresh (broadcast variant only).
// Accounted as one message per site.
struct Broadcast {
    Threshold threshold;
};

using Message = std::variant<Upstream, Reply, Broadcast>;

// A site holds one word of state: its view of the global threshold. The
// view may lag the coordinator's but never falls below it.
class Site {
public:
    explicit Site(std::uint32_t site_id) : site_id_(site_id) {}

    std::uint32_t id() const { return site_id_; }
    Threshold view() const { return view_; }

    // Reports the element iff its weight beats the local view. The local
    // state does not change until the coordinator's reply is applied.
    std::optional<Upstream> on_element(const WeightedElement& item) const;

    // Applies a reply (or a delivered broadcast). A threshold above the
    // current view indicates a protocol bug and throws std::logic_error.
    void on_reply(const Reply& reply);
    void on_broadcast(const Broadcast& broadcast);

private:
    void lower_view(const Threshold& threshold);

    std::uint32_t site_id_;
    Threshold view_;  // starts at the sentinel 1
};

// The coordinator maintains the bounded minimum-weight sample and the
// threshold it advertises to sites. The advertised threshold stays at the
// sentinel 1 until the first eviction, after which it always equals the
// largest weight in the sample.
class Coordinator {
public:
    explicit Coordinator(std::size_t sample_capacity) : sample_(sample_capacity) {}

    // Inserts the reported element when it beats the current threshold and
    // always answers with the post-update threshold.
    Reply on_upstream(const Upstream& msg);

    // The current sample, size min(elements seen, capacity), ascending weight.
    std::vector<WeightedElement> query() const { return sample_.elements(); }

    Threshold threshold() const { return view_; }
    const SampleSet& sample() const { return sample_; }

private:
    SampleSet sample_;
    Threshold view_;
};

// Watches a threshold-value trajectory and splits it into spans over which
// the value has not yet dropped by the configured factor. Drives the
// broadcast variant's refreshes; attached passively to the other variants.
class EpochTracker {
public:
    explicit EpochTracker(double drop_factor);

    // True once the value has fallen to floor()/drop_factor or below.
    bool crossed(double current) const { return current <= floor_ / drop_factor_; }

    // Begins the next span with the given value as its floor.
    void advance(double current) { floor_ = current; }

    double floor() const { return floor_; }
    double drop_factor() const { return drop_factor_; }

private:
    double drop_factor_;
    double floor_ = 1.0;
};

// Broadcast-variant coordinator: identical sampling logic, plus a per-epoch
// threshold broadcast. The driver calls epoch_tick at the end of every
// round; when the threshold has dropped below floor/r the tick emits a
// broadcast and starts the next epoch at the current threshold.
class BroadcastCoordinator {
public:
    BroadcastCoordinator(std::size_t sample_capacity, double drop_factor);

    Reply on_upstream(const Upstream& msg) { return core_.on_upstream(msg); }
    std::vector<WeightedElement> query() const { return core_.query(); }
    Threshold threshold() const { return core_.threshold(); }
    const SampleSet& sample() const { return core_.sample(); }

    std::optional<Broadcast> epoch_tick();

    double epoch_floor() const { return epochs_.floor(); }

private:
    Coordinator core_;
    EpochTracker epochs_;
};

}  // namespace dsamp::wor
