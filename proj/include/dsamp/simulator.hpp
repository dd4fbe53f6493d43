#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsamp/schedule.hpp"
#include "dsamp/weight.hpp"

namespace dsamp::sim {

enum class Variant { A, B, WR };

std::string_view to_string(Variant variant);
Variant variant_from_name(std::string_view name);

enum class OracleCadence { auto_select, every_round, final_only };

struct SimConfig {
    std::uint32_t k = 1;
    std::uint32_t s = 1;
    std::uint64_t n = 1;
    Variant variant = Variant::A;
    double r = 2.0;  // epoch drop factor; broadcasts for variant B only
    std::uint64_t seed = 0;
    ScheduleKind generator = ScheduleKind::round_robin;
    std::vector<PlantedLabel> labels;
    OracleCadence oracle_checks = OracleCadence::auto_select;
    bool record_thresholds = false;

    void validate() const;

    friend bool operator==(const SimConfig&, const SimConfig&);
};

bool operator==(const PlantedLabel&, const PlantedLabel&);

// One span of rounds over which the coordinator threshold had not yet
// dropped by the factor r. A trailing record may cover zero rounds when
// the final round itself crossed the boundary.
struct EpochRecord {
    std::uint32_t index = 0;
    double floor = 1.0;           // threshold value when the epoch began
    double end_threshold = 1.0;   // threshold value when it closed
    std::uint32_t start_round = 1;
    std::uint32_t end_round = 0;
    std::uint64_t upstreams = 0;
    bool closed_by_drop = false;  // false only for the final, truncated epoch

    friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct MessageLedger {
    std::uint64_t upstream_count = 0;
    std::uint64_t reply_count = 0;
    std::uint64_t broadcast_count = 0;  // message units: k per broadcast
    std::uint32_t epoch_count = 0;
    std::vector<EpochRecord> epochs;

    std::uint64_t total() const { return upstream_count + reply_count + broadcast_count; }

    friend bool operator==(const MessageLedger&, const MessageLedger&) = default;
};

struct SimTrace {
    SimConfig config;
    std::uint32_t rounds = 0;
    MessageLedger ledger;
    std::vector<WeightedElement> final_sample;       // ascending weight (slot order for WR)
    std::vector<std::uint32_t> final_sample_labels;  // aligned with final_sample
    std::uint64_t oracle_rounds_checked = 0;
    bool oracle_ok = false;
    std::vector<double> thresholds_by_round;  // filled when record_thresholds

    friend bool operator==(const SimTrace&, const SimTrace&);
};

// Raised when the protocol sample diverges from the brute-force selection.
class OracleMismatch : public std::runtime_error {
public:
    OracleMismatch(std::uint32_t round, const std::string& what);
    std::uint32_t round() const { return round_; }

private:
    std::uint32_t round_;
};

// Drives the configured protocol over the generated schedule, one round at
// a time: arrivals, upstream reports, replies, then (variant B) the epoch
// broadcast. The returned trace is a pure function of the config.
SimTrace run_simulation(const SimConfig& cfg);

struct CoupledResult {
    SimTrace a;
    SimTrace b;
};

// Runs the reply-only and broadcast variants on identical weights and
// schedule, then asserts that the coordinator threshold trajectories agree
// round for round, the final samples match, and total(A) <= 2 * total(B).
// The configs must be identical apart from the variant.
CoupledResult run_coupled(const SimConfig& cfg_a, const SimConfig& cfg_b);

}  // namespace dsamp::sim
