#include "dsamp/wor.hpp"

#include <stdexcept>

namespace dsamp::wor {

std::optional<Upstream> Site::on_element(const WeightedElement& item) const {
    if (item.origin_site != site_id_)
        throw std::logic_error("element delivered to the wrong site");
    if (!view_.admits(item.weight)) return std::nullopt;
    return Upstream{site_id_, item};
}

void Site::lower_view(const Threshold& threshold) {
    if (!(threshold <= view_))
        throw std::logic_error("site threshold may never increase");
    view_ = threshold;
}

void Site::on_reply(const Reply& reply) {
    if (reply.to_site != site_id_)
        throw std::logic_error("reply delivered to the wrong site");
    lower_view(reply.threshold);
}

void Site::on_broadcast(const Broadcast& broadcast) { lower_view(broadcast.threshold); }

Reply Coordinator::on_upstream(const Upstream& msg) {
    if (view_.admits(msg.item.weight)) {
        auto result = sample_.insert(msg.item);
        // The advertised threshold moves only when an insert displaces an
        // entry; until then it stays at 1 and sites keep reporting, which
        // is what keeps the sample exact while it is still filling up.
        if (result.evicted) view_ = result.threshold;
    }
    return Reply{msg.from_site, view_};
}

EpochTracker::EpochTracker(double drop_factor) : drop_factor_(drop_factor) {
    if (!(drop_factor > 1.0))
        throw std::invalid_argument("epoch drop factor must exceed 1");
}

BroadcastCoordinator::BroadcastCoordinator(std::size_t sample_capacity, double drop_factor)
    : core_(sample_capacity), epochs_(drop_factor) {
    if (!(drop_factor >= 2.0))
        throw std::invalid_argument("broadcast variant requires a drop factor of at least 2");
}

std::optional<Broadcast> BroadcastCoordinator::epoch_tick() {
    const double current = core_.threshold().value();
    if (!epochs_.crossed(current)) return std::nullopt;
    epochs_.advance(current);
    return Broadcast{core_.threshold()};
}

}  // namespace dsamp::wor
