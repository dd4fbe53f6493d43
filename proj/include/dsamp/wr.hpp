#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dsamp/weight.hpp"

namespace dsamp::wr {

// With-replacement sampling runs s logical copies of the stream, each with
// its own independent weights. The coordinator tracks the running minimum
// of every logical stream; the advertised threshold is the largest of
// those minima, so a weight below it might improve some slot.

struct Upstream {
    std::uint32_t from_site = 0;
    WeightedElement item;  // item.weight.logical in [1..s] names the slot
};

struct Reply {
    std::uint32_t to_site = 0;
    Threshold beta;
};

class Site {
public:
    Site(std::uint32_t site_id, std::uint32_t sample_size)
        : site_id_(site_id), sample_size_(sample_size) {}

    std::uint32_t id() const { return site_id_; }
    Threshold view() const { return view_; }

    // Draws the s logical weights for the element and reports every copy
    // whose weight beats the local view of beta. The view is unchanged
    // until the replies are applied in order.
    std::vector<Upstream> on_element(ElementId element, std::uint64_t seed) const;

    void on_reply(const Reply& reply);

private:
    std::uint32_t site_id_;
    std::uint32_t sample_size_;
    Threshold view_;
};

class Coordinator {
public:
    explicit Coordinator(std::uint32_t sample_size);

    // Updates slot item.weight.logical when the reported weight is a new
    // minimum for that logical stream; always answers the current beta.
    Reply on_upstream(const Upstream& msg);

    // The with-replacement sample: one element per logical stream, with
    // repetition possible. Empty before the first arrival, in which case
    // the empty vector is the no-sample signal.
    std::vector<WeightedElement> query() const;

    Threshold beta() const { return beta_; }
    const std::vector<std::optional<WeightedElement>>& minima() const { return minima_; }

private:
    void recompute_beta();

    std::vector<std::optional<WeightedElement>> minima_;  // index 0 unused
    Threshold beta_;
};

}  // namespace dsamp::wr
