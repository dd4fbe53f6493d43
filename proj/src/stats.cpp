#include "dsamp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace dsamp::stats {

namespace {

double mean_of(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double stderr_of(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    const double variance = ss / static_cast<double>(xs.size() - 1);
    return std::sqrt(variance / static_cast<double>(xs.size()));
}

double clamped_log2_ratio(std::uint64_t n, std::uint32_t s) {
    const double v = std::log2(static_cast<double>(n) / static_cast<double>(s));
    return std::max(0.0, v);
}

BoundReport one_sided_report(std::string name, double bound, std::span<const double> xs) {
    BoundReport report;
    report.name = std::move(name);
    report.theoretical = bound;
    report.empirical_mean = mean_of(xs);
    report.ratio = bound > 0.0 ? report.empirical_mean / bound
                               : std::numeric_limits<double>::infinity();
    report.pass = report.empirical_mean <= bound + 3.0 * stderr_of(xs);
    return report;
}

}  // namespace

TrialRow make_trial_row(const sim::SimTrace& trace) {
    TrialRow row;
    row.seed = trace.config.seed;
    row.total_messages = trace.ledger.total();
    row.upstreams = trace.ledger.upstream_count;
    row.replies = trace.ledger.reply_count;
    row.broadcasts = trace.ledger.broadcast_count;
    row.epochs = trace.ledger.epoch_count;
    row.rounds = trace.rounds;
    row.oracle_ok = trace.oracle_ok;
    row.per_epoch_upstreams.reserve(trace.ledger.epochs.size());
    for (const auto& e : trace.ledger.epochs) row.per_epoch_upstreams.push_back(e.upstreams);
    row.final_sample.reserve(trace.final_sample.size());
    for (const auto& item : trace.final_sample) row.final_sample.push_back(item.element.ordinal);
    row.final_sample_labels = trace.final_sample_labels;
    return row;
}

double TrialSummary::mean_total_messages() const {
    std::vector<double> xs;
    xs.reserve(rows.size());
    for (const auto& row : rows) xs.push_back(static_cast<double>(row.total_messages));
    return mean_of(xs);
}

double TrialSummary::variance_total_messages() const {
    if (rows.size() < 2) return 0.0;
    const double m = mean_total_messages();
    double ss = 0.0;
    for (const auto& row : rows) {
        const double d = static_cast<double>(row.total_messages) - m;
        ss += d * d;
    }
    return ss / static_cast<double>(rows.size() - 1);
}

double TrialSummary::stderr_total_messages() const {
    std::vector<double> xs;
    xs.reserve(rows.size());
    for (const auto& row : rows) xs.push_back(static_cast<double>(row.total_messages));
    return stderr_of(xs);
}

double TrialSummary::total_messages_quantile(double q) const {
    if (rows.empty()) throw std::invalid_argument("no trials to aggregate");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile must lie in [0,1]");
    std::vector<std::uint64_t> xs;
    xs.reserve(rows.size());
    for (const auto& row : rows) xs.push_back(row.total_messages);
    std::sort(xs.begin(), xs.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(xs.size())));
    return static_cast<double>(xs[rank == 0 ? 0 : rank - 1]);
}

double TrialSummary::mean_epochs() const {
    std::vector<double> xs;
    xs.reserve(rows.size());
    for (const auto& row : rows) xs.push_back(static_cast<double>(row.epochs));
    return mean_of(xs);
}

double TrialSummary::stderr_epochs() const {
    std::vector<double> xs;
    xs.reserve(rows.size());
    for (const auto& row : rows) xs.push_back(static_cast<double>(row.epochs));
    return stderr_of(xs);
}

double chi_square_critical(double degrees_of_freedom, double alpha) {
    boost::math::chi_squared_distribution<double> dist(degrees_of_freedom);
    return boost::math::quantile(dist, 1.0 - alpha);
}

double normal_quantile(double p) {
    boost::math::normal_distribution<double> dist;
    return boost::math::quantile(dist, p);
}

TestVerdict inclusion_uniformity_test(const TrialSummary& trials, std::uint64_t n,
                                      std::uint32_t s, double alpha) {
    if (trials.rows.empty()) throw std::invalid_argument("no trials to test");
    const auto trial_count = static_cast<double>(trials.rows.size());

    std::vector<std::uint64_t> counts(n + 1, 0);
    for (const auto& row : trials.rows)
        for (std::uint64_t ordinal : row.final_sample) {
            if (ordinal == 0 || ordinal > n)
                throw std::invalid_argument("sample ordinal outside 1..n");
            ++counts[ordinal];
        }

    TestVerdict verdict;
    if (n == s) {
        // Every element must appear in every sample.
        for (std::uint64_t e = 1; e <= n; ++e)
            if (counts[e] != trials.rows.size()) {
                verdict.detail = "element " + std::to_string(e) + " missing from a full sample";
                return verdict;
            }
        verdict.pass = true;
        verdict.detail = "n = s: every element always included";
        return verdict;
    }

    const double p = static_cast<double>(s) / static_cast<double>(n);
    if (trial_count * p < 10.0)
        throw std::invalid_argument("too few trials for the normal approximation");

    const double expected = trial_count * p;
    const double spread = std::sqrt(trial_count * p * (1.0 - p));
    const double z_critical = normal_quantile(1.0 - alpha / (2.0 * static_cast<double>(n)));

    double z_max = 0.0;
    double chi = 0.0;
    for (std::uint64_t e = 1; e <= n; ++e) {
        const double dev = static_cast<double>(counts[e]) - expected;
        z_max = std::max(z_max, std::abs(dev) / spread);
        chi += dev * dev / (expected * (1.0 - p));
    }
    // Inclusions within a trial are negatively correlated (the sample size
    // is fixed), which shrinks the statistic by n/(n-1).
    chi *= static_cast<double>(n - 1) / static_cast<double>(n);
    const double chi_critical_value = chi_square_critical(static_cast<double>(n - 1), alpha);

    verdict.statistic = chi;
    verdict.critical = chi_critical_value;
    verdict.pass = z_max <= z_critical && chi <= chi_critical_value;
    std::ostringstream detail;
    detail << "max |z| " << z_max << " (limit " << z_critical << "), chi-square " << chi
           << " (limit " << chi_critical_value << ", df " << (n - 1) << ")";
    verdict.detail = detail.str();
    return verdict;
}

BoundReport epoch_bound_check(const TrialSummary& trials, std::uint64_t n, std::uint32_t s,
                              double r) {
    if (!(r >= 2.0)) throw std::invalid_argument("epoch bound requires r >= 2");
    std::vector<double> xs;
    xs.reserve(trials.rows.size());
    for (const auto& row : trials.rows) xs.push_back(static_cast<double>(row.epochs));
    const double bound = clamped_log2_ratio(n, s) / std::log2(r) + 2.0;
    return one_sided_report("epoch-count", bound, xs);
}

BoundReport per_epoch_message_check(const TrialSummary& trials, std::uint32_t s, double r) {
    std::vector<double> xs;
    for (const auto& row : trials.rows)
        for (std::uint64_t x : row.per_epoch_upstreams) xs.push_back(static_cast<double>(x));
    const double bound = (r + 1.0) * static_cast<double>(s);
    return one_sided_report("per-epoch-upstreams", bound, xs);
}

std::vector<BoundReport> total_message_check(const TrialSummary& trials, std::uint32_t k,
                                             std::uint32_t s, std::uint64_t n, double r) {
    std::vector<double> xs;
    xs.reserve(trials.rows.size());
    for (const auto& row : trials.rows) xs.push_back(static_cast<double>(row.total_messages));

    const double epoch_factor = clamped_log2_ratio(n, s) / std::log2(r) + 2.0;
    const double per_epoch = static_cast<double>(k) + 2.0 * static_cast<double>(s) +
                             2.0 * r * static_cast<double>(s);

    std::vector<BoundReport> reports;
    reports.push_back(one_sided_report("total-messages", per_epoch * epoch_factor, xs));

    // Looser companion bound with 2(r+1)rs in place of 2(r+1)s, reported
    // alongside for reference.
    const double widened = static_cast<double>(k) + 2.0 * (r + 1.0) * r * static_cast<double>(s);
    reports.push_back(
        one_sided_report("total-messages-widened", widened * epoch_factor, xs));

    // Flat cap for the small-site-count regime at drop factor 2.
    if (r == 2.0 && 8ull * s >= k && n > s) {
        const double cap = 20.0 * static_cast<double>(s) * clamped_log2_ratio(n, s);
        reports.push_back(one_sided_report("total-messages-flat-cap", cap, xs));
    }
    return reports;
}

double wor_trend_denominator(std::uint32_t k, std::uint32_t s, std::uint64_t n) {
    const double ks = static_cast<double>(k) / static_cast<double>(s);
    if (!(ks > 1.0)) throw std::invalid_argument("trend denominator needs k > s");
    return static_cast<double>(k) * clamped_log2_ratio(n, s) / std::log2(ks);
}

double wr_trend_denominator(std::uint32_t k, std::uint32_t s, std::uint64_t n) {
    const double log_s = std::max(std::log2(static_cast<double>(s)), 1.0);
    const double s_log_s = static_cast<double>(s) * log_s;
    const double log_n = std::log2(static_cast<double>(n));
    if (static_cast<double>(k) <= 2.0 * s_log_s) return s_log_s * log_n;
    return static_cast<double>(k) * log_n / std::log2(static_cast<double>(k) / s_log_s);
}

namespace {

BoundReport trend_check(std::string name, std::span<const TrialSummary> grid,
                        double (*denominator)(std::uint32_t, std::uint32_t, std::uint64_t)) {
    if (grid.size() < 2) throw std::invalid_argument("trend check needs at least two points");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& point : grid) {
        const double ratio = point.mean_total_messages() / denominator(point.k, point.s, point.n);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    BoundReport report;
    report.name = std::move(name);
    report.theoretical = 3.0;  // allowed max/min band across the grid
    report.empirical_mean = hi / lo;
    report.ratio = report.empirical_mean / report.theoretical;
    report.pass = report.empirical_mean <= report.theoretical;
    return report;
}

}  // namespace

BoundReport wor_trend_check(std::span<const TrialSummary> grid) {
    return trend_check("message-trend", grid, &wor_trend_denominator);
}

BoundReport wr_trend_check(std::span<const TrialSummary> grid) {
    return trend_check("wr-message-trend", grid, &wr_trend_denominator);
}

TestVerdict wr_slot_uniformity_test(const TrialSummary& trials, std::uint64_t n,
                                    std::uint32_t s, double alpha) {
    if (trials.rows.empty()) throw std::invalid_argument("no trials to test");
    const auto trial_count = static_cast<double>(trials.rows.size());
    const double expected = trial_count / static_cast<double>(n);
    // Bonferroni across the s slots keeps the family-wise level at alpha.
    const double critical =
        chi_square_critical(static_cast<double>(n - 1), alpha / static_cast<double>(s));

    TestVerdict verdict;
    verdict.critical = critical;
    verdict.pass = true;
    for (std::uint32_t slot = 0; slot < s; ++slot) {
        std::vector<std::uint64_t> counts(n + 1, 0);
        for (const auto& row : trials.rows) {
            if (row.final_sample.size() != s)
                throw std::invalid_argument("every trial must fill all slots");
            ++counts.at(row.final_sample[slot]);
        }
        double chi = 0.0;
        for (std::uint64_t e = 1; e <= n; ++e) {
            const double dev = static_cast<double>(counts[e]) - expected;
            chi += dev * dev / expected;
        }
        verdict.statistic = std::max(verdict.statistic, chi);
        if (chi > critical) {
            verdict.pass = false;
            verdict.detail = "slot " + std::to_string(slot + 1) + " rejects uniformity";
        }
    }
    if (verdict.pass) {
        std::ostringstream detail;
        detail << "max chi-square " << verdict.statistic << " over " << s
               << " slots (limit " << critical << ", df " << (n - 1) << ")";
        verdict.detail = detail.str();
    }
    return verdict;
}

TestVerdict wr_slot_independence_test(const TrialSummary& trials, std::uint64_t n,
                                      std::uint32_t s, double alpha) {
    if (trials.rows.empty()) throw std::invalid_argument("no trials to test");
    if (s < 2) throw std::invalid_argument("independence needs at least two slots");
    const auto trial_count = static_cast<double>(trials.rows.size());
    const double cells = static_cast<double>(n) * static_cast<double>(n);
    const double expected = trial_count / cells;
    // Bonferroni across the slot pairs keeps the family-wise level at alpha.
    const double pairs = static_cast<double>(s) * static_cast<double>(s - 1) / 2.0;
    const double critical = chi_square_critical(cells - 1.0, alpha / pairs);

    TestVerdict verdict;
    verdict.critical = critical;
    verdict.pass = true;
    std::vector<std::uint64_t> counts(n * n, 0);
    for (std::uint32_t a = 0; a + 1 < s; ++a) {
        for (std::uint32_t b = a + 1; b < s; ++b) {
            std::fill(counts.begin(), counts.end(), 0);
            for (const auto& row : trials.rows) {
                const std::uint64_t i = row.final_sample[a] - 1;
                const std::uint64_t j = row.final_sample[b] - 1;
                ++counts.at(i * n + j);
            }
            double chi = 0.0;
            for (std::uint64_t c = 0; c < counts.size(); ++c) {
                const double dev = static_cast<double>(counts[c]) - expected;
                chi += dev * dev / expected;
            }
            verdict.statistic = std::max(verdict.statistic, chi);
            if (chi > critical) {
                verdict.pass = false;
                verdict.detail = "slots " + std::to_string(a + 1) + "," +
                                 std::to_string(b + 1) + " reject joint uniformity";
            }
        }
    }
    if (verdict.pass) {
        std::ostringstream detail;
        detail << "max pair chi-square " << verdict.statistic << " (limit " << critical
               << ", df " << (cells - 1.0) << ")";
        verdict.detail = detail.str();
    }
    return verdict;
}

}  // namespace dsamp::stats
