#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dsamp/simulator.hpp"
#include "dsamp/stats.hpp"

namespace dsamp::cli {

enum class CheckKind {
    oracle,              // every run's sample matched the brute-force referee
    coupling,            // A/B trajectory equality and the 2x message bound
    uniformity,          // inclusion frequencies of the final samples
    epoch_bound,         // mean epoch count
    per_epoch_messages,  // mean upstream count per epoch
    total_messages,      // mean total messages per run
    message_trend,       // message growth band across the sweep grid
    wr_trend,            // with-replacement growth band
    wr_slots,            // slot uniformity and pairwise independence
    heavy_hitters,       // planted labels recovered from the samples
    golden_totals        // frozen fixed-seed ledger totals
};

CheckKind check_from_name(std::string_view name);
std::string_view to_string(CheckKind kind);

struct HeavyHitterCheckParams {
    double epsilon = 0.1;
    std::uint32_t heavy_label = 1;
    std::uint32_t light_label = 2;
    double min_success = 0.95;
};

// Frozen message totals, summed over all trials of a fixed-seed scenario.
struct GoldenTotals {
    std::uint64_t reply_only_total = 0;
    std::uint64_t broadcast_total = 0;
};

// An experiment: a config template, sweep axes, a trial count, and the
// checks to run over the collected rows.
struct Scenario {
    std::string name;
    std::string description;
    sim::SimConfig base;
    bool coupled = false;                // run variants A and B on shared seeds
    std::vector<std::uint32_t> sweep_k;  // empty axis = the template value
    std::vector<std::uint32_t> sweep_s;
    std::vector<std::uint64_t> sweep_n;
    std::vector<double> sweep_r;  // the value 0 means "max(2, k/s)"
    std::uint64_t trials = 1;
    std::uint64_t run_cap = 1'000'000;
    std::vector<CheckKind> checks;
    HeavyHitterCheckParams heavy;
    std::optional<GoldenTotals> golden;
    double alpha = 0.01;
};

std::vector<Scenario> builtin_scenarios();
Scenario builtin_scenario(std::string_view name);  // throws on unknown name

// Reads a scenario from a key = value file with [section] headers.
// Parse failures carry the offending line number.
Scenario load_scenario_file(const std::string& path);

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string out_dir = ".";
    bool check = true;
    bool quiet = false;
    unsigned threads = 0;  // 0 = hardware concurrency
};

// Executes every (sweep point, trial) run, writes <name>_runs.csv,
// <name>_summary.csv and <name>_checks.json under out_dir, and returns 0
// iff every enabled check passed.
int run_scenario(const Scenario& scenario, const RunOptions& options);

void list_scenarios(std::ostream& out);

// Seed of one run: a pure hash of the scenario seed, the sweep-point
// values and the trial index, so extending a sweep never reseeds
// pre-existing runs.
std::uint64_t derive_seed(std::uint64_t scenario_seed, std::uint32_t k, std::uint32_t s,
                          std::uint64_t n, double r, std::uint64_t trial_index);

}  // namespace dsamp::cli
