#include "dsamp/simulator.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "dsamp/sample_set.hpp"
#include "dsamp/wor.hpp"
#include "dsamp/wr.hpp"

namespace dsamp::sim {

std::string_view to_string(Variant variant) {
    switch (variant) {
        case Variant::A: return "A";
        case Variant::B: return "B";
        case Variant::WR: return "WR";
    }
    throw std::logic_error("unreachable");
}

Variant variant_from_name(std::string_view name) {
    if (name == "A") return Variant::A;
    if (name == "B") return Variant::B;
    if (name == "WR") return Variant::WR;
    throw std::invalid_argument("unknown variant: " + std::string(name));
}

void SimConfig::validate() const {
    if (k == 0 || s == 0 || n == 0)
        throw std::invalid_argument("k, s and n must all be positive");
    if (variant != Variant::A && !(r >= 2.0))
        throw std::invalid_argument("epoch drop factor must be at least 2");
    if (variant == Variant::A && !(r > 1.0))
        throw std::invalid_argument("epoch drop factor must exceed 1");
}

bool operator==(const PlantedLabel& a, const PlantedLabel& b) {
    return a.label == b.label && a.frequency == b.frequency;
}

bool operator==(const SimConfig& a, const SimConfig& b) {
    return a.k == b.k && a.s == b.s && a.n == b.n && a.variant == b.variant && a.r == b.r &&
           a.seed == b.seed && a.generator == b.generator && a.labels == b.labels &&
           a.oracle_checks == b.oracle_checks && a.record_thresholds == b.record_thresholds;
}

bool operator==(const SimTrace& a, const SimTrace& b) {
    return a.config == b.config && a.rounds == b.rounds && a.ledger == b.ledger &&
           a.final_sample == b.final_sample && a.final_sample_labels == b.final_sample_labels &&
           a.oracle_rounds_checked == b.oracle_rounds_checked && a.oracle_ok == b.oracle_ok &&
           a.thresholds_by_round == b.thresholds_by_round;
}

OracleMismatch::OracleMismatch(std::uint32_t round, const std::string& what)
    : std::runtime_error("oracle mismatch at round " + std::to_string(round) + ": " + what),
      round_(round) {}

namespace {

// Independent referee for the without-replacement sample: a bounded
// max-heap over every weight observed, compared against the coordinator's
// claim at round boundaries. Deliberately a different mechanism from the
// ordered set the coordinator uses.
class SmallestWeightsReferee {
public:
    explicit SmallestWeightsReferee(std::size_t s) : capacity_(s) {}

    void observe(const WeightedElement& item) {
        if (heap_.size() < capacity_) {
            heap_.push(item);
        } else if (item.weight < heap_.top().weight) {
            heap_.pop();
            heap_.push(item);
        }
    }

    void check(std::uint32_t round, const std::vector<WeightedElement>& claimed) const {
        auto copy = heap_;
        std::vector<WeightedElement> expect;
        expect.reserve(copy.size());
        while (!copy.empty()) {
            expect.push_back(copy.top());
            copy.pop();
        }
        std::reverse(expect.begin(), expect.end());
        if (claimed.size() != expect.size())
            throw OracleMismatch(round, "sample holds " + std::to_string(claimed.size()) +
                                            " elements, expected " +
                                            std::to_string(expect.size()));
        for (std::size_t i = 0; i < expect.size(); ++i) {
            if (!(claimed[i] == expect[i])) {
                std::ostringstream why;
                why << "entry " << i << " is element " << claimed[i].element.ordinal
                    << ", expected " << expect[i].element.ordinal;
                throw OracleMismatch(round, why.str());
            }
        }
    }

private:
    struct ByWeightLess {
        bool operator()(const WeightedElement& a, const WeightedElement& b) const {
            return a.weight < b.weight;
        }
    };
    std::size_t capacity_;
    std::priority_queue<WeightedElement, std::vector<WeightedElement>, ByWeightLess> heap_;
};

// Per-slot running argmin referee for the with-replacement sample.
class SlotMinimaReferee {
public:
    explicit SlotMinimaReferee(std::uint32_t s) : minima_(s + 1) {}

    void observe(ElementId element, std::uint64_t seed) {
        for (std::uint32_t slot = 1; slot < minima_.size(); ++slot) {
            const Weight w = assign_weight(seed, element, slot);
            if (!minima_[slot] || w < minima_[slot]->weight)
                minima_[slot] = WeightedElement{element, w, 0};
        }
    }

    void check(std::uint32_t round, const std::vector<WeightedElement>& claimed) const {
        const bool anything = minima_.size() > 1 && minima_[1].has_value();
        if (!anything) {
            if (!claimed.empty()) throw OracleMismatch(round, "sample should still be empty");
            return;
        }
        if (claimed.size() != minima_.size() - 1)
            throw OracleMismatch(round, "expected one entry per logical stream");
        for (std::uint32_t slot = 1; slot < minima_.size(); ++slot) {
            const auto& got = claimed[slot - 1];
            if (!(got.element == minima_[slot]->element) ||
                !(got.weight == minima_[slot]->weight)) {
                std::ostringstream why;
                why << "slot " << slot << " holds element " << got.element.ordinal
                    << ", expected " << minima_[slot]->element.ordinal;
                throw OracleMismatch(round, why.str());
            }
        }
    }

private:
    std::vector<std::optional<WeightedElement>> minima_;
};

// Tracks epoch spans for the ledger. The broadcast variant additionally
// charges k message units per epoch; the others observe passively.
class EpochLog {
public:
    EpochLog(double drop_factor, double initial_floor) : tracker_(drop_factor) {
        tracker_.advance(initial_floor);
        open(1, initial_floor);
    }

    void count_upstream() { ++current_.upstreams; }

    // Returns true when the round closed the epoch (threshold crossed).
    bool end_of_round(std::uint32_t round, double threshold_value) {
        if (!tracker_.crossed(threshold_value)) return false;
        roll_over(round, threshold_value);
        return true;
    }

    // Closes the epoch unconditionally; used when the protocol itself
    // already decided the boundary (broadcast variant).
    void roll_over(std::uint32_t round, double threshold_value) {
        close(round, threshold_value, true);
        tracker_.advance(threshold_value);
        open(round + 1, threshold_value);
    }

    void finish(std::uint32_t last_round, double threshold_value,
                std::vector<EpochRecord>& out) {
        close(last_round, threshold_value, false);
        out = std::move(records_);
    }

    std::uint32_t epochs_started() const { return next_index_; }

private:
    void open(std::uint32_t round, double floor) {
        current_ = EpochRecord{};
        current_.index = next_index_++;
        current_.floor = floor;
        current_.start_round = round;
    }

    void close(std::uint32_t round, double threshold_value, bool by_drop) {
        current_.end_round = round;
        current_.end_threshold = threshold_value;
        current_.closed_by_drop = by_drop;
        records_.push_back(current_);
    }

    wor::EpochTracker tracker_;
    EpochRecord current_;
    std::vector<EpochRecord> records_;
    std::uint32_t next_index_ = 0;
};

bool check_this_round(OracleCadence cadence, std::uint64_t n, bool last_round) {
    switch (cadence) {
        case OracleCadence::every_round: return true;
        case OracleCadence::final_only: return last_round;
        case OracleCadence::auto_select: return n <= 10'000 || last_round;
    }
    return last_round;
}

std::vector<std::uint32_t> labels_for(const StreamSchedule& schedule,
                                      const std::vector<WeightedElement>& sample) {
    std::vector<std::uint32_t> by_ordinal(schedule.size() + 1, 0);
    for (const auto& a : schedule.arrivals()) by_ordinal[a.ordinal] = a.label;
    std::vector<std::uint32_t> out;
    out.reserve(sample.size());
    for (const auto& item : sample) out.push_back(by_ordinal[item.element.ordinal]);
    return out;
}

SimTrace run_without_replacement(const SimConfig& cfg, const StreamSchedule& schedule) {
    const bool broadcasts = cfg.variant == Variant::B;

    std::vector<wor::Site> sites;
    sites.reserve(cfg.k);
    for (std::uint32_t i = 1; i <= cfg.k; ++i) sites.emplace_back(i);

    wor::Coordinator plain(cfg.s);
    wor::BroadcastCoordinator broadcasting(cfg.s, broadcasts ? cfg.r : 2.0);
    auto threshold = [&] { return broadcasts ? broadcasting.threshold() : plain.threshold(); };

    SimTrace trace;
    trace.config = cfg;
    trace.rounds = schedule.rounds();

    EpochLog epochs(cfg.r, 1.0);
    if (broadcasts) trace.ledger.broadcast_count += cfg.k;  // epoch 0 refresh

    SmallestWeightsReferee referee(cfg.s);

    auto span = schedule.arrivals();
    std::size_t next = 0;
    for (std::uint32_t round = 1; round <= schedule.rounds(); ++round) {
        for (; next < span.size() && span[next].round == round; ++next) {
            const auto& arrival = span[next];
            const WeightedElement item{ElementId{arrival.ordinal},
                                       assign_weight(cfg.seed, ElementId{arrival.ordinal}),
                                       arrival.site};
            referee.observe(item);
            auto& site = sites[arrival.site - 1];
            if (auto up = site.on_element(item)) {
                ++trace.ledger.upstream_count;
                epochs.count_upstream();
                const wor::Reply reply =
                    broadcasts ? broadcasting.on_upstream(*up) : plain.on_upstream(*up);
                ++trace.ledger.reply_count;
                site.on_reply(reply);
            }
        }

        if (broadcasts) {
            if (auto bc = broadcasting.epoch_tick()) {
                epochs.roll_over(round, bc->threshold.value());
                trace.ledger.broadcast_count += cfg.k;
                for (auto& site : sites) site.on_broadcast(*bc);
            }
        } else {
            epochs.end_of_round(round, threshold().value());
        }

        const bool last = round == schedule.rounds();
        if (check_this_round(cfg.oracle_checks, cfg.n, last)) {
            referee.check(round, broadcasts ? broadcasting.query() : plain.query());
            ++trace.oracle_rounds_checked;
        }
        if (cfg.record_thresholds) trace.thresholds_by_round.push_back(threshold().value());
    }

    epochs.finish(schedule.rounds(), threshold().value(), trace.ledger.epochs);
    trace.ledger.epoch_count = epochs.epochs_started();
    trace.oracle_ok = true;
    trace.final_sample = broadcasts ? broadcasting.query() : plain.query();
    trace.final_sample_labels = labels_for(schedule, trace.final_sample);
    return trace;
}

SimTrace run_with_replacement(const SimConfig& cfg, const StreamSchedule& schedule) {
    std::vector<wr::Site> sites;
    sites.reserve(cfg.k);
    for (std::uint32_t i = 1; i <= cfg.k; ++i) sites.emplace_back(i, cfg.s);
    wr::Coordinator coordinator(cfg.s);

    SimTrace trace;
    trace.config = cfg;
    trace.rounds = schedule.rounds();

    EpochLog epochs(cfg.r, 1.0);
    SlotMinimaReferee referee(cfg.s);

    auto span = schedule.arrivals();
    std::size_t next = 0;
    for (std::uint32_t round = 1; round <= schedule.rounds(); ++round) {
        for (; next < span.size() && span[next].round == round; ++next) {
            const auto& arrival = span[next];
            const ElementId element{arrival.ordinal};
            referee.observe(element, cfg.seed);
            auto& site = sites[arrival.site - 1];
            for (const auto& up : site.on_element(element, cfg.seed)) {
                ++trace.ledger.upstream_count;
                epochs.count_upstream();
                const wr::Reply reply = coordinator.on_upstream(up);
                ++trace.ledger.reply_count;
                site.on_reply(reply);
            }
        }

        epochs.end_of_round(round, coordinator.beta().value());

        const bool last = round == schedule.rounds();
        if (check_this_round(cfg.oracle_checks, cfg.n, last)) {
            referee.check(round, coordinator.query());
            ++trace.oracle_rounds_checked;
        }
        if (cfg.record_thresholds)
            trace.thresholds_by_round.push_back(coordinator.beta().value());
    }

    epochs.finish(schedule.rounds(), coordinator.beta().value(), trace.ledger.epochs);
    trace.ledger.epoch_count = epochs.epochs_started();
    trace.oracle_ok = true;
    trace.final_sample = coordinator.query();
    trace.final_sample_labels = labels_for(schedule, trace.final_sample);
    return trace;
}

}  // namespace

SimTrace run_simulation(const SimConfig& cfg) {
    cfg.validate();
    const StreamSchedule schedule =
        generate_schedule(cfg.generator, ScheduleParams{cfg.n, cfg.k, cfg.s, cfg.labels},
                          cfg.seed);
    return cfg.variant == Variant::WR ? run_with_replacement(cfg, schedule)
                                      : run_without_replacement(cfg, schedule);
}

CoupledResult run_coupled(const SimConfig& cfg_a, const SimConfig& cfg_b) {
    if (cfg_a.variant != Variant::A || cfg_b.variant != Variant::B)
        throw std::invalid_argument("coupled runs take variant A first, variant B second");
    SimConfig normalized = cfg_a;
    normalized.variant = cfg_b.variant;
    if (!(normalized == cfg_b))
        throw std::invalid_argument("coupled configs may differ only in the variant");

    SimConfig run_a = cfg_a;
    SimConfig run_b = cfg_b;
    run_a.record_thresholds = true;
    run_b.record_thresholds = true;

    CoupledResult result{run_simulation(run_a), run_simulation(run_b)};

    const auto& ta = result.a.thresholds_by_round;
    const auto& tb = result.b.thresholds_by_round;
    if (ta.size() != tb.size())
        throw std::logic_error("coupled runs disagree on the number of rounds");
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (ta[i] != tb[i]) {
            std::ostringstream why;
            why << "coupled runs diverge at round " << (i + 1) << ": threshold " << ta[i]
                << " vs " << tb[i] << " (seed " << cfg_a.seed << ", k=" << cfg_a.k
                << ", s=" << cfg_a.s << ", n=" << cfg_a.n << ", r=" << cfg_a.r << ")";
            throw std::logic_error(why.str());
        }
    }
    if (!(result.a.final_sample == result.b.final_sample))
        throw std::logic_error("coupled runs disagree on the final sample");

    if (result.a.ledger.total() > 2 * result.b.ledger.total()) {
        std::ostringstream why;
        why << "reply-only variant sent " << result.a.ledger.total()
            << " messages, more than twice the broadcast variant's "
            << result.b.ledger.total() << " (seed " << cfg_a.seed << ", k=" << cfg_a.k
            << ", s=" << cfg_a.s << ", n=" << cfg_a.n << ", r=" << cfg_a.r << ")";
        throw std::logic_error(why.str());
    }
    return result;
}

}  // namespace dsamp::sim
