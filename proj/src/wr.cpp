#include "dsamp/wr.hpp"

#include <stdexcept>

namespace dsamp::wr {

std::vector<Upstream> Site::on_element(ElementId element, std::uint64_t seed) const {
    std::vector<Upstream> out;
    for (std::uint32_t logical = 1; logical <= sample_size_; ++logical) {
        const Weight w = assign_weight(seed, element, logical);
        if (view_.admits(w))
            out.push_back(Upstream{site_id_, WeightedElement{element, w, site_id_}});
    }
    return out;
}

void Site::on_reply(const Reply& reply) {
    if (reply.to_site != site_id_)
        throw std::logic_error("reply delivered to the wrong site");
    if (!(reply.beta <= view_))
        throw std::logic_error("site beta view may never increase");
    view_ = reply.beta;
}

Coordinator::Coordinator(std::uint32_t sample_size) : minima_(sample_size + 1) {
    if (sample_size == 0) throw std::invalid_argument("sample size must be positive");
}

Reply Coordinator::on_upstream(const Upstream& msg) {
    const std::uint32_t slot = msg.item.logical_index();
    if (slot == 0 || slot >= minima_.size())
        throw std::logic_error("upstream carries an out-of-range logical index");
    auto& held = minima_[slot];
    if (!held || msg.item.weight < held->weight) {
        held = msg.item;
        recompute_beta();
    }
    return Reply{msg.from_site, beta_};
}

void Coordinator::recompute_beta() {
    Threshold widest;  // sentinel: any empty slot keeps beta at 1
    bool all_filled = true;
    const WeightedElement* largest = nullptr;
    for (std::size_t i = 1; i < minima_.size(); ++i) {
        if (!minima_[i]) {
            all_filled = false;
            break;
        }
        if (!largest || largest->weight < minima_[i]->weight) largest = &*minima_[i];
    }
    beta_ = all_filled ? Threshold{largest->weight} : widest;
}

std::vector<WeightedElement> Coordinator::query() const {
    std::vector<WeightedElement> out;
    for (std::size_t i = 1; i < minima_.size(); ++i) {
        if (!minima_[i]) return {};  // nothing observed yet
        out.push_back(*minima_[i]);
    }
    return out;
}

}  // namespace dsamp::wr
