#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dsamp/simulator.hpp"

namespace dsamp::stats {

// The per-run facts the validation layer works from.
struct TrialRow {
    std::uint64_t seed = 0;
    std::uint64_t total_messages = 0;
    std::uint64_t upstreams = 0;
    std::uint64_t replies = 0;
    std::uint64_t broadcasts = 0;
    std::uint32_t epochs = 0;
    std::uint32_t rounds = 0;
    bool oracle_ok = false;
    std::vector<std::uint64_t> per_epoch_upstreams;
    std::vector<std::uint64_t> final_sample;  // ordinals; slot order for WR runs
    std::vector<std::uint32_t> final_sample_labels;
};

TrialRow make_trial_row(const sim::SimTrace& trace);

struct TrialSummary {
    std::uint32_t k = 1;
    std::uint32_t s = 1;
    std::uint64_t n = 1;
    double r = 2.0;
    std::vector<TrialRow> rows;

    double mean_total_messages() const;
    double variance_total_messages() const;
    double stderr_total_messages() const;
    // Nearest-rank quantile of the per-trial totals, q in [0,1].
    double total_messages_quantile(double q) const;
    double mean_epochs() const;
    double stderr_epochs() const;
};

// Outcome of comparing an empirical mean against a closed-form bound. The
// theoretical value is always recomputed from (k, s, n, r) at check time.
struct BoundReport {
    std::string name;
    double theoretical = 0.0;
    double empirical_mean = 0.0;
    double ratio = 0.0;  // empirical / theoretical
    bool pass = false;
};

// Outcome of a hypothesis-style test.
struct TestVerdict {
    bool pass = false;
    double statistic = 0.0;  // chi-square value, or largest |z|
    double critical = 0.0;
    std::string detail;
};

// --- distribution helpers (thin wrappers over a standard library) ---
double chi_square_critical(double degrees_of_freedom, double alpha);
double normal_quantile(double p);

// Per-element inclusion frequencies of without-replacement samples against
// the exact s/n rate: Bonferroni-corrected two-sided z-tests per element
// plus an aggregate chi-square with the finite-population correction.
// Requires T*s/n >= 10 for the normal approximation.
TestVerdict inclusion_uniformity_test(const TrialSummary& trials, std::uint64_t n,
                                      std::uint32_t s, double alpha);

// Mean epoch count against log2(n/s)/log2(r) + 2 (one-sided, 3 SE slack).
BoundReport epoch_bound_check(const TrialSummary& trials, std::uint64_t n, std::uint32_t s,
                              double r);

// Mean per-epoch upstream count against (r+1)*s (one-sided, 3 SE slack).
BoundReport per_epoch_message_check(const TrialSummary& trials, std::uint32_t s, double r);

// Mean total messages of broadcast-variant runs against
// (k + 2s + 2rs) * (log2(n/s)/log2(r) + 2), with a looser widened-form
// companion report; when r = 2 and s >= k/8 a further report checks the
// flat cap 20 * s * log2(n/s).
std::vector<BoundReport> total_message_check(const TrialSummary& trials, std::uint32_t k,
                                             std::uint32_t s, std::uint64_t n, double r);

// Reference denominators for the message-growth trends.
double wor_trend_denominator(std::uint32_t k, std::uint32_t s, std::uint64_t n);
double wr_trend_denominator(std::uint32_t k, std::uint32_t s, std::uint64_t n);

// Mean messages divided by the matching denominator must stay within a
// max/min band of 3 across a grid of summaries (one per sweep point).
BoundReport wor_trend_check(std::span<const TrialSummary> grid);
BoundReport wr_trend_check(std::span<const TrialSummary> grid);

// With-replacement slot diagnostics: every slot's element distribution is
// uniform over 1..n, and slot pairs are jointly uniform (independence).
// Both hold the family-wise level at alpha by Bonferroni over the slots
// (respectively the slot pairs).
TestVerdict wr_slot_uniformity_test(const TrialSummary& trials, std::uint64_t n,
                                    std::uint32_t s, double alpha);
TestVerdict wr_slot_independence_test(const TrialSummary& trials, std::uint64_t n,
                                      std::uint32_t s, double alpha);

}  // namespace dsamp::stats
