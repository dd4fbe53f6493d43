#include "dsamp/scenario.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "dsamp/heavy_hitters.hpp"
#include "dsamp/parallel.hpp"

namespace dsamp::cli {

namespace {

struct CheckName {
    CheckKind kind;
    std::string_view name;
};

constexpr CheckName kCheckNames[] = {
    {CheckKind::oracle, "oracle"},
    {CheckKind::coupling, "coupling"},
    {CheckKind::uniformity, "uniformity"},
    {CheckKind::epoch_bound, "epoch-bound"},
    {CheckKind::per_epoch_messages, "per-epoch-messages"},
    {CheckKind::total_messages, "total-messages"},
    {CheckKind::message_trend, "message-trend"},
    {CheckKind::wr_trend, "wr-trend"},
    {CheckKind::wr_slots, "wr-slots"},
    {CheckKind::heavy_hitters, "heavy-hitters"},
    {CheckKind::golden_totals, "golden-totals"},
};

}  // namespace

CheckKind check_from_name(std::string_view name) {
    for (const auto& entry : kCheckNames)
        if (entry.name == name) return entry.kind;
    throw std::invalid_argument("unknown check: " + std::string(name));
}

std::string_view to_string(CheckKind kind) {
    for (const auto& entry : kCheckNames)
        if (entry.kind == kind) return entry.name;
    throw std::logic_error("unreachable");
}

std::uint64_t derive_seed(std::uint64_t scenario_seed, std::uint32_t k, std::uint32_t s,
                          std::uint64_t n, double r, std::uint64_t trial_index) {
    std::uint64_t h = mix64(scenario_seed + detail::kStep1);
    h = mix64(h + std::uint64_t{k} * detail::kStep1);
    h = mix64(h + std::uint64_t{s} * detail::kStep2);
    h = mix64(h + n * detail::kStep1);
    h = mix64(h + std::bit_cast<std::uint64_t>(r));
    h = mix64(h + trial_index * detail::kStep2);
    return h;
}

namespace {

struct SweepPoint {
    std::uint32_t k = 1;
    std::uint32_t s = 1;
    std::uint64_t n = 1;
    double r = 2.0;
};

std::vector<SweepPoint> expand_sweep(const Scenario& scenario) {
    auto ks = scenario.sweep_k.empty() ? std::vector<std::uint32_t>{scenario.base.k}
                                       : scenario.sweep_k;
    auto ss = scenario.sweep_s.empty() ? std::vector<std::uint32_t>{scenario.base.s}
                                       : scenario.sweep_s;
    auto ns = scenario.sweep_n.empty() ? std::vector<std::uint64_t>{scenario.base.n}
                                       : scenario.sweep_n;
    auto rs = scenario.sweep_r.empty() ? std::vector<double>{scenario.base.r}
                                       : scenario.sweep_r;
    std::vector<SweepPoint> points;
    for (auto k : ks)
        for (auto s : ss)
            for (auto n : ns)
                for (auto r : rs) {
                    SweepPoint p{k, s, n, r};
                    if (p.r == 0.0)
                        p.r = std::max(2.0, static_cast<double>(k) / static_cast<double>(s));
                    points.push_back(p);
                }
    return points;
}

struct RunRecord {
    std::uint64_t run_id = 0;
    std::size_t point_index = 0;
    sim::Variant variant = sim::Variant::A;
    std::uint64_t seed = 0;
    SweepPoint point;
    stats::TrialRow row;
};

std::string format_double(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

std::string csv_row(const RunRecord& record, const Scenario& scenario) {
    std::ostringstream out;
    out << record.run_id << ',' << scenario.name << ',' << sim::to_string(record.variant)
        << ',' << sim::to_string(scenario.base.generator) << ',' << record.point.k << ','
        << record.point.s << ',' << record.point.n << ',' << format_double(record.point.r)
        << ',' << record.seed << ',' << record.row.rounds << ',' << record.row.upstreams
        << ',' << record.row.replies << ',' << record.row.broadcasts << ','
        << record.row.total_messages << ',' << record.row.epochs << ','
        << (record.row.oracle_ok ? 1 : 0) << '\n';
    return out.str();
}

constexpr std::string_view kCsvHeader =
    "run_id,scenario,variant,generator,k,s,n,r,seed,rounds,upstream,replies,broadcasts,"
    "total_messages,epochs,oracle_ok\n";

nlohmann::json report_json(const stats::BoundReport& report) {
    return {{"name", report.name},
            {"theoretical", report.theoretical},
            {"empirical_mean", report.empirical_mean},
            {"ratio", report.ratio},
            {"pass", report.pass}};
}

stats::BoundReport verdict_as_report(std::string name, const stats::TestVerdict& verdict) {
    stats::BoundReport report;
    report.name = std::move(name);
    report.theoretical = verdict.critical;
    report.empirical_mean = verdict.statistic;
    report.ratio = verdict.critical > 0.0 ? verdict.statistic / verdict.critical : 1.0;
    report.pass = verdict.pass;
    return report;
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> all;

    {
        Scenario s;
        s.name = "smoke";
        s.description = "coupled reply-only/broadcast runs on a small stream, frozen totals";
        s.base.k = 4;
        s.base.s = 2;
        s.base.n = 256;
        s.base.r = 2.0;
        s.base.seed = 1;
        s.base.generator = sim::ScheduleKind::uniform_random;
        s.coupled = true;
        s.trials = 100;
        s.checks = {CheckKind::oracle, CheckKind::coupling, CheckKind::golden_totals};
        // Message totals of the seed-1 reference run, summed over the 100
        // trials. Any drift in weights, scheduling or accounting trips this.
        s.golden = GoldenTotals{3646, 4634};
        all.push_back(s);
    }
    {
        Scenario s;
        s.name = "uniformity";
        s.description = "inclusion frequencies of the final sample against s/n";
        s.base.k = 5;
        s.base.s = 10;
        s.base.n = 100;
        s.base.seed = 2;
        s.base.generator = sim::ScheduleKind::uniform_random;
        s.trials = 50'000;
        s.checks = {CheckKind::oracle, CheckKind::uniformity};
        all.push_back(s);
    }
    {
        Scenario s;
        s.name = "epochs";
        s.description = "epoch counts of broadcast-variant runs against the log bound";
        s.base.k = 8;
        s.base.s = 1;
        s.base.n = 1ull << 20;
        s.base.variant = sim::Variant::B;
        s.base.r = 2.0;
        s.base.seed = 3;
        s.base.generator = sim::ScheduleKind::uniform_random;
        s.trials = 200;
        s.checks = {CheckKind::epoch_bound};
        all.push_back(s);
    }
    {
        Scenario s;
        s.name = "bounds-wor";
        s.description = "per-epoch and total message bounds for the broadcast variant";
        s.base.k = 8;
        s.base.n = 1ull << 16;
        s.base.variant = sim::Variant::B;
        s.base.seed = 4;
        s.base.generator = sim::ScheduleKind::uniform_random;
        s.sweep_s = {1, 8};
        s.sweep_r = {2.0, 8.0};
        s.trials = 100;
        s.checks = {CheckKind::per_epoch_messages, CheckKind::total_messages};
        all.push_back(s);
    }
    {
        Scenario s;
        s.name = "bounds-wr";
        s.description = "with-replacement message growth across stream lengths";
        s.base.k = 64;
        s.base.s = 4;
        s.base.variant = sim::Variant::WR;
        s.base.r = 2.0;
        s.base.seed = 5;
        s.base.generator = sim::ScheduleKind::uniform_random;
        s.sweep_n = {1ull << 10, 1ull << 12, 1ull << 14, 1ull << 16, 1ull << 18};
        s.trials = 30;
        s.checks = {CheckKind::wr_trend};
        all.push_back(s);
    }
    {
        Scenario s;
        s.name = "figure1-trend";
        s.description = "message growth across site counts and stream lengths";
        s.base.s = 1;
        s.base.variant = sim::Variant::B;
        s.base.seed = 6;
        s.base.generator = sim::ScheduleKind::epoch_adversarial;
        s.sweep_k = {16, 64, 256};
        s.sweep_n = {1ull << 12, 1ull << 16, 1ull << 20};
        s.sweep_r = {0.0};  // track k/s
        s.trials = 50;
        s.checks = {CheckKind::message_trend};
        all.push_back(s);
    }
    {
        Scenario s;
        s.name = "heavy-hitters";
        s.description = "planted frequent labels recovered from the maintained sample";
        s.base.k = 8;
        s.base.n = 20'000;
        s.base.seed = 7;
        s.base.generator = sim::ScheduleKind::uniform_random;
        s.heavy = HeavyHitterCheckParams{0.1, 1, 2, 0.95};
        s.base.labels = {{1, 0.12}, {2, 0.04}};
        s.base.s = static_cast<std::uint32_t>(hh::required_sample_size(
            hh::HeavyHitterConfig{s.heavy.epsilon, 16.0, s.base.n}));
        s.trials = 200;
        s.checks = {CheckKind::oracle, CheckKind::heavy_hitters};
        all.push_back(s);
    }
    {
        Scenario s;
        s.name = "adversarial-lb";
        s.description = "bursty worst-case arrival pattern, exactness only";
        s.base.n = 1ull << 16;
        s.base.seed = 8;
        s.base.generator = sim::ScheduleKind::epoch_adversarial;
        s.sweep_k = {4, 16, 64};
        s.sweep_s = {1, 4};
        s.trials = 20;
        s.checks = {CheckKind::oracle};
        all.push_back(s);
    }
    return all;
}

Scenario builtin_scenario(std::string_view name) {
    for (auto& s : builtin_scenarios())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown scenario: " + std::string(name));
}

void list_scenarios(std::ostream& out) {
    for (const auto& s : builtin_scenarios()) out << s.name << " - " << s.description << '\n';
}

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text, T (*one)(const std::string&)) {
    std::vector<T> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = item.find_last_not_of(" \t");
        out.push_back(one(item.substr(begin, end - begin + 1)));
    }
    return out;
}

std::uint32_t parse_u32(const std::string& s) { return static_cast<std::uint32_t>(std::stoul(s)); }
std::uint64_t parse_u64(const std::string& s) { return std::stoull(s); }
double parse_r(const std::string& s) { return s == "auto" ? 0.0 : std::stod(s); }

}  // namespace

Scenario load_scenario_file(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw std::runtime_error("cannot read scenario config: " + path);

    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw std::runtime_error(e.filename() + ":" + std::to_string(e.line()) + ": " +
                                 e.message());
    }

    Scenario s;
    const auto& main = tree.get_child("scenario");
    s.name = main.get<std::string>("name");
    s.description = main.get<std::string>("description", "");
    const auto variant = main.get<std::string>("variant", "A");
    if (variant == "coupled") {
        s.coupled = true;
    } else {
        s.base.variant = sim::variant_from_name(variant);
    }
    s.base.generator =
        sim::schedule_kind_from_name(main.get<std::string>("generator", "round_robin"));
    s.base.k = main.get<std::uint32_t>("k", 1);
    s.base.s = main.get<std::uint32_t>("s", 1);
    s.base.n = main.get<std::uint64_t>("n", 1);
    s.base.r = main.get<double>("r", 2.0);
    s.base.seed = main.get<std::uint64_t>("seed", 0);
    s.trials = main.get<std::uint64_t>("trials", 1);
    s.run_cap = main.get<std::uint64_t>("run_cap", s.run_cap);
    s.alpha = main.get<double>("alpha", s.alpha);
    const auto oracle = main.get<std::string>("oracle", "auto");
    if (oracle == "auto")
        s.base.oracle_checks = sim::OracleCadence::auto_select;
    else if (oracle == "every-round")
        s.base.oracle_checks = sim::OracleCadence::every_round;
    else if (oracle == "final-only")
        s.base.oracle_checks = sim::OracleCadence::final_only;
    else
        throw std::runtime_error("scenario.oracle must be auto, every-round or final-only");
    for (const auto& name :
         parse_list<std::string>(main.get<std::string>("checks", ""),
                                 +[](const std::string& v) { return v; }))
        s.checks.push_back(check_from_name(name));

    if (auto sweep = tree.get_child_optional("sweep")) {
        if (auto v = sweep->get_optional<std::string>("k")) s.sweep_k = parse_list(*v, &parse_u32);
        if (auto v = sweep->get_optional<std::string>("s")) s.sweep_s = parse_list(*v, &parse_u32);
        if (auto v = sweep->get_optional<std::string>("n")) s.sweep_n = parse_list(*v, &parse_u64);
        if (auto v = sweep->get_optional<std::string>("r")) s.sweep_r = parse_list(*v, &parse_r);
    }
    if (auto labels = tree.get_child_optional("labels")) {
        for (const auto& [key, value] : *labels)
            s.base.labels.push_back(
                sim::PlantedLabel{parse_u32(key), value.get_value<double>()});
    }
    if (auto heavy = tree.get_child_optional("heavy_hitters")) {
        s.heavy.epsilon = heavy->get<double>("epsilon", s.heavy.epsilon);
        s.heavy.heavy_label = heavy->get<std::uint32_t>("heavy_label", s.heavy.heavy_label);
        s.heavy.light_label = heavy->get<std::uint32_t>("light_label", s.heavy.light_label);
        s.heavy.min_success = heavy->get<double>("min_success", s.heavy.min_success);
    }
    return s;
}

namespace {

struct ScenarioResults {
    std::vector<SweepPoint> points;
    std::vector<RunRecord> records;            // two per trial when coupled
    std::vector<stats::TrialSummary> by_point; // reply-only leg (or the only leg)
    std::vector<stats::TrialSummary> by_point_b;
};

ScenarioResults execute_runs(const Scenario& scenario, const RunOptions& options) {
    ScenarioResults results;
    results.points = expand_sweep(scenario);
    const std::uint64_t trials = options.trials.value_or(scenario.trials);
    const std::uint64_t scenario_seed = options.seed.value_or(scenario.base.seed);
    const unsigned legs = scenario.coupled ? 2 : 1;

    const std::uint64_t total_runs = results.points.size() * trials * legs;
    if (total_runs > scenario.run_cap)
        throw std::runtime_error("sweep of " + std::to_string(total_runs) +
                                 " runs exceeds the cap of " + std::to_string(scenario.run_cap));

    results.records.resize(results.points.size() * trials * legs);

    parallel_for(results.points.size() * trials, options.threads, [&](std::uint64_t job) {
        const std::size_t point_index = job / trials;
        const std::uint64_t trial = job % trials;
        const SweepPoint& point = results.points[point_index];

        sim::SimConfig cfg = scenario.base;
        cfg.k = point.k;
        cfg.s = point.s;
        cfg.n = point.n;
        cfg.r = point.r;
        cfg.seed = derive_seed(scenario_seed, point.k, point.s, point.n, point.r, trial);

        auto fill = [&](std::size_t slot, const sim::SimTrace& trace, sim::Variant variant) {
            RunRecord& record = results.records[slot];
            record.point_index = point_index;
            record.variant = variant;
            record.seed = trace.config.seed;
            record.point = point;
            record.row = stats::make_trial_row(trace);
            record.run_id = (trace.config.seed & ~std::uint64_t{1}) |
                            (variant == sim::Variant::B ? 1 : 0);
        };

        if (scenario.coupled) {
            sim::SimConfig cfg_a = cfg;
            cfg_a.variant = sim::Variant::A;
            sim::SimConfig cfg_b = cfg;
            cfg_b.variant = sim::Variant::B;
            const auto coupled = sim::run_coupled(cfg_a, cfg_b);
            fill(job * 2, coupled.a, sim::Variant::A);
            fill(job * 2 + 1, coupled.b, sim::Variant::B);
        } else {
            fill(job, sim::run_simulation(cfg), cfg.variant);
        }
    });

    auto summarize = [&](sim::Variant leg) {
        std::vector<stats::TrialSummary> grouped(results.points.size());
        for (std::size_t p = 0; p < results.points.size(); ++p) {
            grouped[p].k = results.points[p].k;
            grouped[p].s = results.points[p].s;
            grouped[p].n = results.points[p].n;
            grouped[p].r = results.points[p].r;
        }
        for (const auto& record : results.records)
            if (record.variant == leg)
                grouped[record.point_index].rows.push_back(record.row);
        return grouped;
    };
    results.by_point = summarize(scenario.coupled ? sim::Variant::A : scenario.base.variant);
    if (scenario.coupled) results.by_point_b = summarize(sim::Variant::B);
    return results;
}

std::vector<stats::BoundReport> run_checks(const Scenario& scenario,
                                           const ScenarioResults& results,
                                           bool reference_run) {
    std::vector<stats::BoundReport> reports;

    for (CheckKind kind : scenario.checks) {
        switch (kind) {
            case CheckKind::oracle: {
                std::uint64_t bad = 0;
                for (const auto& record : results.records)
                    if (!record.row.oracle_ok) ++bad;
                stats::BoundReport report;
                report.name = "oracle";
                report.theoretical = static_cast<double>(results.records.size());
                report.empirical_mean =
                    static_cast<double>(results.records.size() - bad);
                report.ratio = report.empirical_mean / report.theoretical;
                report.pass = bad == 0;
                reports.push_back(report);
                break;
            }

            case CheckKind::coupling: {
                // run_coupled already enforced the invariants; report the
                // worst observed message ratio for visibility.
                double worst = 0.0;
                for (std::size_t i = 0; i + 1 < results.records.size(); i += 2) {
                    const double a =
                        static_cast<double>(results.records[i].row.total_messages);
                    const double b =
                        static_cast<double>(results.records[i + 1].row.total_messages);
                    worst = std::max(worst, a / b);
                }
                stats::BoundReport report;
                report.name = "coupling";
                report.theoretical = 2.0;
                report.empirical_mean = worst;
                report.ratio = worst / 2.0;
                report.pass = worst <= 2.0;
                reports.push_back(report);
                break;
            }

            case CheckKind::uniformity:
                for (const auto& summary : results.by_point)
                    reports.push_back(verdict_as_report(
                        "uniformity",
                        stats::inclusion_uniformity_test(summary, summary.n, summary.s,
                                                         scenario.alpha)));
                break;

            case CheckKind::epoch_bound:
                for (const auto& summary : results.by_point)
                    reports.push_back(
                        stats::epoch_bound_check(summary, summary.n, summary.s, summary.r));
                break;

            case CheckKind::per_epoch_messages:
                for (const auto& summary : results.by_point)
                    reports.push_back(
                        stats::per_epoch_message_check(summary, summary.s, summary.r));
                break;

            case CheckKind::total_messages:
                for (const auto& summary : results.by_point)
                    for (auto& report : stats::total_message_check(summary, summary.k,
                                                                   summary.s, summary.n,
                                                                   summary.r))
                        reports.push_back(std::move(report));
                break;

            case CheckKind::message_trend:
                reports.push_back(stats::wor_trend_check(results.by_point));
                break;

            case CheckKind::wr_trend:
                reports.push_back(stats::wr_trend_check(results.by_point));
                break;

            case CheckKind::wr_slots:
                for (const auto& summary : results.by_point) {
                    reports.push_back(verdict_as_report(
                        "wr-slot-uniformity",
                        stats::wr_slot_uniformity_test(summary, summary.n, summary.s,
                                                       scenario.alpha)));
                    reports.push_back(verdict_as_report(
                        "wr-slot-independence",
                        stats::wr_slot_independence_test(summary, summary.n, summary.s,
                                                         scenario.alpha)));
                }
                break;

            case CheckKind::heavy_hitters: {
                std::uint64_t ok = 0, total = 0;
                for (const auto& summary : results.by_point) {
                    for (const auto& row : summary.rows) {
                        const auto found = hh::extract_heavy_hitters(
                            row.final_sample_labels, scenario.heavy.epsilon);
                        const bool heavy_in =
                            std::binary_search(found.labels.begin(), found.labels.end(),
                                               scenario.heavy.heavy_label);
                        const bool light_in =
                            std::binary_search(found.labels.begin(), found.labels.end(),
                                               scenario.heavy.light_label);
                        ok += (heavy_in && !light_in) ? 1 : 0;
                        ++total;
                    }
                }
                stats::BoundReport report;
                report.name = "heavy-hitters";
                report.theoretical = scenario.heavy.min_success;
                report.empirical_mean =
                    total == 0 ? 0.0 : static_cast<double>(ok) / static_cast<double>(total);
                report.ratio = report.empirical_mean / report.theoretical;
                report.pass = report.empirical_mean >= report.theoretical;
                reports.push_back(report);
                break;
            }

            case CheckKind::golden_totals: {
                if (!scenario.golden)
                    throw std::runtime_error("golden-totals check needs frozen totals");
                // Frozen totals only describe the scenario's own seed and
                // trial count; a run with overrides skips the comparison.
                if (!reference_run) break;
                std::uint64_t sum_a = 0, sum_b = 0;
                for (const auto& record : results.records) {
                    if (record.variant == sim::Variant::B)
                        sum_b += record.row.total_messages;
                    else
                        sum_a += record.row.total_messages;
                }
                stats::BoundReport a;
                a.name = "golden-totals-reply-only";
                a.theoretical = static_cast<double>(scenario.golden->reply_only_total);
                a.empirical_mean = static_cast<double>(sum_a);
                a.ratio = a.theoretical > 0 ? a.empirical_mean / a.theoretical : 0.0;
                a.pass = sum_a == scenario.golden->reply_only_total;
                reports.push_back(a);
                stats::BoundReport b;
                b.name = "golden-totals-broadcast";
                b.theoretical = static_cast<double>(scenario.golden->broadcast_total);
                b.empirical_mean = static_cast<double>(sum_b);
                b.ratio = b.theoretical > 0 ? b.empirical_mean / b.theoretical : 0.0;
                b.pass = sum_b == scenario.golden->broadcast_total;
                reports.push_back(b);
                break;
            }
        }
    }
    return reports;
}

void write_artifacts(const Scenario& scenario, const RunOptions& options,
                     const ScenarioResults& results,
                     const std::vector<stats::BoundReport>& reports, bool all_pass) {
    namespace fs = std::filesystem;
    fs::create_directories(options.out_dir);

    // Rows sorted by run_id: the on-disk order is independent of how the
    // trial runner scheduled the work.
    std::vector<const RunRecord*> ordered;
    ordered.reserve(results.records.size());
    for (const auto& record : results.records) ordered.push_back(&record);
    std::sort(ordered.begin(), ordered.end(),
              [](const RunRecord* a, const RunRecord* b) { return a->run_id < b->run_id; });

    {
        std::ofstream out(fs::path(options.out_dir) / (scenario.name + "_runs.csv"));
        out << kCsvHeader;
        for (const RunRecord* record : ordered) out << csv_row(*record, scenario);
    }

    {
        std::ofstream out(fs::path(options.out_dir) / (scenario.name + "_summary.csv"));
        out << "scenario,k,s,n,r,trials,mean_total_messages,stderr_total_messages,"
               "mean_epochs\n";
        for (const auto& summary : results.by_point)
            out << scenario.name << ',' << summary.k << ',' << summary.s << ',' << summary.n
                << ',' << format_double(summary.r) << ',' << summary.rows.size() << ','
                << format_double(summary.mean_total_messages()) << ','
                << format_double(summary.stderr_total_messages()) << ','
                << format_double(summary.mean_epochs()) << '\n';
    }

    {
        nlohmann::json doc;
        doc["scenario"] = scenario.name;
        doc["generated_at"] = timestamp_now();
        doc["pass"] = all_pass;
        doc["checks"] = nlohmann::json::array();
        for (const auto& report : reports) doc["checks"].push_back(report_json(report));
        std::ofstream out(fs::path(options.out_dir) / (scenario.name + "_checks.json"));
        out << doc.dump(2) << '\n';
    }
}

}  // namespace

int run_scenario(const Scenario& scenario, const RunOptions& options) {
    const auto results = execute_runs(scenario, options);

    const bool reference_run =
        options.seed.value_or(scenario.base.seed) == scenario.base.seed &&
        options.trials.value_or(scenario.trials) == scenario.trials;
    std::vector<stats::BoundReport> reports;
    if (options.check) reports = run_checks(scenario, results, reference_run);
    const bool all_pass =
        std::all_of(reports.begin(), reports.end(),
                    [](const stats::BoundReport& r) { return r.pass; });

    write_artifacts(scenario, options, results, reports, all_pass);

    if (!options.quiet) {
        std::ostringstream out;
        out << scenario.name << ": " << results.records.size() << " runs over "
            << results.points.size() << " sweep points\n";
        for (const auto& report : reports)
            out << "  [" << (report.pass ? "PASS" : "FAIL") << "] " << report.name
                << ": empirical " << report.empirical_mean << " vs " << report.theoretical
                << " (ratio " << report.ratio << ")\n";
        std::fputs(out.str().c_str(), stdout);
    }
    return all_pass ? 0 : 1;
}

}  // namespace dsamp::cli
