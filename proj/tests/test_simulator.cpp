#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsamp/simulator.hpp"

using namespace dsamp;
using namespace dsamp::sim;

TEST_CASE("below capacity every arrival costs exactly one round trip") {
    for (std::uint32_t k : {1u, 2u, 5u}) {
        SimConfig cfg;
        cfg.k = k;
        cfg.s = 5;
        cfg.n = 3;
        cfg.generator = ScheduleKind::round_robin;
        cfg.seed = 17;
        const auto trace = run_simulation(cfg);
        CHECK(trace.ledger.upstream_count == 3);
        CHECK(trace.ledger.reply_count == 3);
        CHECK(trace.ledger.broadcast_count == 0);
        CHECK(trace.ledger.total() == 6);
        CHECK(trace.final_sample.size() == 3);
        CHECK(trace.oracle_ok);
    }
}

TEST_CASE("a single element run costs two messages") {
    SimConfig cfg;
    cfg.seed = 3;
    const auto trace = run_simulation(cfg);
    CHECK(trace.ledger.total() == 2);
    REQUIRE(trace.final_sample.size() == 1);
    CHECK(trace.final_sample[0].element.ordinal == 1);
    CHECK(trace.ledger.epoch_count == 1);
}

TEST_CASE("identical configs reproduce the trace bit for bit") {
    SimConfig cfg;
    cfg.k = 6;
    cfg.s = 4;
    cfg.n = 512;
    cfg.variant = Variant::B;
    cfg.generator = ScheduleKind::uniform_random;
    cfg.seed = 99;
    cfg.record_thresholds = true;
    const auto one = run_simulation(cfg);
    const auto two = run_simulation(cfg);
    CHECK(one == two);

    SimConfig other = cfg;
    other.seed = 100;
    CHECK(!(run_simulation(other) == one));
}

TEST_CASE("broadcast-variant ledgers satisfy the exact epoch identity") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        SimConfig cfg;
        cfg.k = 1 + static_cast<std::uint32_t>(seed % 9);
        cfg.s = 1 + static_cast<std::uint32_t>(seed % 4);
        cfg.n = 256 * seed;
        cfg.variant = Variant::B;
        cfg.r = seed % 2 ? 2.0 : 4.0;
        cfg.seed = seed;
        cfg.generator =
            seed % 2 ? ScheduleKind::uniform_random : ScheduleKind::epoch_adversarial;
        const auto trace = run_simulation(cfg);

        CHECK(trace.ledger.reply_count == trace.ledger.upstream_count);
        // total = xi*k + 2 * sum of per-epoch upstream counts, exactly
        CHECK(trace.ledger.broadcast_count ==
              std::uint64_t{trace.ledger.epoch_count} * cfg.k);
        CHECK(trace.ledger.total() ==
              std::uint64_t{trace.ledger.epoch_count} * cfg.k +
                  2 * trace.ledger.upstream_count);

        REQUIRE(trace.ledger.epochs.size() == trace.ledger.epoch_count);
        std::uint64_t from_epochs = 0;
        for (const auto& epoch : trace.ledger.epochs) from_epochs += epoch.upstreams;
        CHECK(from_epochs == trace.ledger.upstream_count);
    }
}

TEST_CASE("each closed epoch ends at or below floor over r") {
    SimConfig cfg;
    cfg.k = 4;
    cfg.s = 2;
    cfg.n = 4096;
    cfg.variant = Variant::B;
    cfg.r = 2.0;
    cfg.seed = 5;
    cfg.generator = ScheduleKind::uniform_random;
    const auto trace = run_simulation(cfg);

    REQUIRE(!trace.ledger.epochs.empty());
    CHECK(trace.ledger.epochs.front().floor == 1.0);
    for (std::size_t i = 0; i < trace.ledger.epochs.size(); ++i) {
        const auto& epoch = trace.ledger.epochs[i];
        CHECK(epoch.index == i);
        if (epoch.closed_by_drop) {
            CHECK(epoch.end_threshold <= epoch.floor / cfg.r);
            REQUIRE(i + 1 < trace.ledger.epochs.size());
            CHECK(trace.ledger.epochs[i + 1].floor == epoch.end_threshold);
            CHECK(trace.ledger.epochs[i + 1].start_round == epoch.end_round + 1);
        } else {
            CHECK(i + 1 == trace.ledger.epochs.size());
        }
    }

    // The passive observer sees the same boundaries on the reply-only run.
    SimConfig plain = cfg;
    plain.variant = Variant::A;
    const auto observer = run_simulation(plain);
    REQUIRE(observer.ledger.epoch_count == trace.ledger.epoch_count);
    for (std::size_t i = 0; i < observer.ledger.epochs.size(); ++i) {
        CHECK(observer.ledger.epochs[i].floor == trace.ledger.epochs[i].floor);
        CHECK(observer.ledger.epochs[i].end_round == trace.ledger.epochs[i].end_round);
    }
    CHECK(observer.ledger.broadcast_count == 0);
}

TEST_CASE("coupled runs agree on thresholds and respect the 2x bound") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        SimConfig base;
        base.k = 1 + static_cast<std::uint32_t>((seed * 7) % 16);
        base.s = 1 + static_cast<std::uint32_t>(seed % 5);
        base.n = 128 * seed;
        base.r = 2.0;
        base.seed = seed * 31;
        base.generator = ScheduleKind::uniform_random;
        SimConfig cfg_a = base;
        cfg_a.variant = Variant::A;
        SimConfig cfg_b = base;
        cfg_b.variant = Variant::B;

        const auto coupled = run_coupled(cfg_a, cfg_b);  // throws on any violation
        CHECK(coupled.a.ledger.total() <= 2 * coupled.b.ledger.total());
        CHECK(coupled.a.thresholds_by_round == coupled.b.thresholds_by_round);
    }
}

TEST_CASE("with fewer elements than capacity the coupled totals are exact") {
    SimConfig cfg_a;
    cfg_a.k = 3;
    cfg_a.s = 64;
    cfg_a.n = 40;  // n <= s: every element is reported, threshold stays 1
    cfg_a.seed = 8;
    cfg_a.generator = ScheduleKind::round_robin;
    SimConfig cfg_b = cfg_a;
    cfg_b.variant = Variant::B;

    const auto coupled = run_coupled(cfg_a, cfg_b);
    CHECK(coupled.a.ledger.total() == 2 * cfg_a.n);
    CHECK(coupled.b.ledger.epoch_count == 1);
    CHECK(coupled.b.ledger.total() == 2 * cfg_a.n + cfg_a.k);
}

TEST_CASE("coupled configs must match apart from the variant") {
    SimConfig cfg_a;
    SimConfig cfg_b = cfg_a;
    cfg_b.variant = Variant::B;
    cfg_b.n = 2;
    CHECK_THROWS_AS(run_coupled(cfg_a, cfg_b), std::invalid_argument);
    SimConfig swapped = cfg_a;
    swapped.variant = Variant::B;
    CHECK_THROWS_AS(run_coupled(swapped, cfg_a), std::invalid_argument);
}

TEST_CASE("with-replacement runs pass their referee and count both directions") {
    SimConfig cfg;
    cfg.k = 5;
    cfg.s = 4;
    cfg.n = 600;
    cfg.variant = Variant::WR;
    cfg.seed = 21;
    cfg.generator = ScheduleKind::uniform_random;
    cfg.oracle_checks = OracleCadence::every_round;
    const auto trace = run_simulation(cfg);
    CHECK(trace.oracle_ok);
    CHECK(trace.oracle_rounds_checked == trace.rounds);
    CHECK(trace.ledger.reply_count == trace.ledger.upstream_count);
    CHECK(trace.ledger.broadcast_count == 0);
    CHECK(trace.final_sample.size() == 4);
    // The first element triggers one report per logical stream.
    CHECK(trace.ledger.upstream_count >= 4);
}

TEST_CASE("oracle cadence controls how often the referee runs") {
    SimConfig cfg;
    cfg.k = 2;
    cfg.s = 2;
    cfg.n = 64;
    cfg.seed = 4;
    cfg.generator = ScheduleKind::round_robin;

    cfg.oracle_checks = OracleCadence::final_only;
    CHECK(run_simulation(cfg).oracle_rounds_checked == 1);

    cfg.oracle_checks = OracleCadence::every_round;
    const auto trace = run_simulation(cfg);
    CHECK(trace.oracle_rounds_checked == trace.rounds);

    cfg.oracle_checks = OracleCadence::auto_select;  // small n: every round
    CHECK(run_simulation(cfg).oracle_rounds_checked == trace.rounds);
}

TEST_CASE("referee failures carry the offending round") {
    const OracleMismatch error(17, "entry 0 is element 4, expected 2");
    CHECK(error.round() == 17);
    CHECK(std::string(error.what()).find("round 17") != std::string::npos);
}

TEST_CASE("invalid configs are rejected up front") {
    SimConfig cfg;
    cfg.n = 0;
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
    cfg.n = 1;
    cfg.variant = Variant::B;
    cfg.r = 1.5;
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
    CHECK_THROWS_AS(variant_from_name("C"), std::invalid_argument);
}
