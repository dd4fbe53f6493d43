#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dsamp/sample_set.hpp"
#include "dsamp/weight.hpp"

using namespace dsamp;

namespace {

WeightedElement item(std::uint64_t ordinal, double value, std::uint32_t site = 1) {
    return WeightedElement{ElementId{ordinal}, Weight{value, ordinal, 0}, site};
}

}  // namespace

TEST_CASE("weight assignment is a pure function of its inputs") {
    const Weight one = assign_weight(7, ElementId{1});
    const Weight two = assign_weight(7, ElementId{1});
    CHECK(one == two);
    CHECK(one.value == two.value);

    CHECK(assign_weight(7, ElementId{1}).value != assign_weight(7, ElementId{2}).value);
    CHECK(assign_weight(7, ElementId{1}).value != assign_weight(8, ElementId{1}).value);
    CHECK(assign_weight(7, ElementId{1}, 1).value != assign_weight(7, ElementId{1}, 2).value);
}

TEST_CASE("weights live strictly inside (0,1)") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        for (std::uint64_t e = 1; e <= 20'000; ++e) {
            const double v = assign_weight(seed, ElementId{e}).value;
            CHECK(v > 0.0);
            CHECK(v < 1.0);
        }
    }
}

TEST_CASE("weight population is uniform") {
    // Monte Carlo over one million draws: the mean settles at 1/2 well
    // within the 0.002 band, and 16 equal bins stay balanced.
    const std::uint64_t draws = 1'000'000;
    double sum = 0.0;
    std::vector<std::uint64_t> bins(16, 0);
    for (std::uint64_t e = 1; e <= draws; ++e) {
        const double v = assign_weight(2024, ElementId{e}).value;
        sum += v;
        ++bins[static_cast<std::size_t>(v * 16.0)];
    }
    CHECK(std::abs(sum / static_cast<double>(draws) - 0.5) < 0.002);

    const double expected = static_cast<double>(draws) / 16.0;
    for (auto count : bins)
        CHECK(std::abs(static_cast<double>(count) - expected) < 5.0 * std::sqrt(expected));
}

TEST_CASE("weight ordering is a total order with tiebreaks") {
    const Weight a{0.5, 1, 0};
    const Weight b{0.5, 2, 0};
    const Weight c{0.5, 1, 1};
    CHECK(a < b);
    CHECK(a < c);
    CHECK(!(a < a));
    CHECK(Weight{0.4, 9, 9} < a);

    Threshold open;
    CHECK(open.is_one());
    CHECK(open.value() == 1.0);
    CHECK(open.admits(Weight{0.999999, 1, 0}));
    const Threshold cut{a};
    CHECK(cut.admits(Weight{0.4, 7, 0}));
    CHECK(!cut.admits(a));  // strict
    CHECK(!cut.admits(b));
    CHECK(cut < open);
    CHECK(cut <= cut);
}

TEST_CASE("sample set keeps the smallest weights and reports evictions") {
    SampleSet set(2);
    CHECK(set.insert(item(1, 0.2)).threshold.is_one());
    const auto second = set.insert(item(2, 0.5));
    CHECK(!second.evicted.has_value());
    CHECK(second.threshold.value() == 0.5);  // at capacity the cut is the max held weight

    // {0.2, 0.5} + 0.3 evicts 0.5 and moves the cut to 0.3.
    const auto third = set.insert(item(3, 0.3));
    REQUIRE(third.evicted.has_value());
    CHECK(third.evicted->element.ordinal == 2);
    CHECK(third.threshold.value() == 0.3);
    const auto held = set.elements();
    REQUIRE(held.size() == 2);
    CHECK(held[0].element.ordinal == 1);
    CHECK(held[1].element.ordinal == 3);

    // {0.2, 0.3} + 0.4: inserted and immediately evicted again.
    const auto fourth = set.insert(item(4, 0.4));
    REQUIRE(fourth.evicted.has_value());
    CHECK(fourth.evicted->element.ordinal == 4);
    CHECK(fourth.threshold.value() == 0.3);
}

TEST_CASE("sample set under capacity keeps the open threshold") {
    SampleSet set(3);
    const auto result = set.insert(item(1, 0.9));
    CHECK(!result.evicted.has_value());
    CHECK(result.threshold.is_one());
    CHECK(set.size() == 1);
}

TEST_CASE("eviction example from a two-element set") {
    SampleSet set(2);
    set.insert(item(1, 0.2));
    set.insert(item(2, 0.5));
    const auto result = set.insert(item(3, 0.4));
    REQUIRE(result.evicted.has_value());
    CHECK(result.evicted->weight.value == 0.5);
    CHECK(result.threshold.value() == 0.4);
}

TEST_CASE("duplicate insertion is rejected") {
    SampleSet set(4);
    set.insert(item(1, 0.25));
    CHECK_THROWS_AS(set.insert(item(1, 0.25)), std::logic_error);
}

TEST_CASE("sample set matches the sort-based selection on every prefix") {
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        for (std::size_t s : {1ull, 2ull, 5ull, 32ull}) {
            SampleSet set(s);
            std::vector<WeightedElement> seen;
            Threshold previous;
            for (std::uint64_t e = 1; e <= 300; ++e) {
                const WeightedElement we{ElementId{e}, assign_weight(seed, ElementId{e}), 1};
                seen.push_back(we);
                const auto result = set.insert(we);
                const auto expect = kth_smallest_oracle(seen, s);
                REQUIRE(set.elements() == expect.entries);
                CHECK(result.threshold <= previous);  // cut never loosens
                previous = result.threshold;
            }
        }
    }
}

TEST_CASE("sort-based selection oracle") {
    std::vector<WeightedElement> all{item(1, 0.9), item(2, 0.1), item(3, 0.4)};

    const auto two = kth_smallest_oracle(all, 2);
    REQUIRE(two.entries.size() == 2);
    CHECK(two.entries[0].weight.value == 0.1);
    CHECK(two.entries[1].weight.value == 0.4);
    CHECK(two.threshold.value() == 0.4);

    const auto five = kth_smallest_oracle(all, 5);
    CHECK(five.entries.size() == 3);
    CHECK(five.threshold.is_one());

    const auto none = kth_smallest_oracle({}, 3);
    CHECK(none.entries.empty());
    CHECK(none.threshold.is_one());
}
