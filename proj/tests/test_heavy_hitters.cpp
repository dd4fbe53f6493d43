#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "dsamp/heavy_hitters.hpp"

using namespace dsamp::hh;

TEST_CASE("sample sizing follows the inverse-square law in epsilon") {
    CHECK(required_sample_size({0.1, 16.0, 1024}) == 16'000);
    CHECK(required_sample_size({0.5, 16.0, 2}) == 64);

    // Doubling epsilon quarters the size, up to rounding.
    const auto fine = required_sample_size({0.05, 16.0, 4096});
    const auto coarse = required_sample_size({0.1, 16.0, 4096});
    CHECK(std::abs(static_cast<double>(fine) / static_cast<double>(coarse) - 4.0) < 0.01);

    CHECK_THROWS_AS(required_sample_size({0.0, 16.0, 1024}), std::invalid_argument);
    CHECK_THROWS_AS(required_sample_size({1.0, 16.0, 1024}), std::invalid_argument);
    CHECK_THROWS_AS(required_sample_size({0.1, 16.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(required_sample_size({0.1, 0.0, 1024}), std::invalid_argument);
}

TEST_CASE("labels at the cutoff are kept, labels under it dropped") {
    std::vector<std::uint32_t> sample;
    for (int i = 0; i < 9; ++i) sample.push_back(1);   // 9% of 100
    for (int i = 0; i < 7; ++i) sample.push_back(2);   // 7% of 100
    for (std::uint32_t i = 0; i < 84; ++i) sample.push_back(100 + i);
    REQUIRE(sample.size() == 100);

    const auto found = extract_heavy_hitters(sample, 0.1);  // cutoff 7.5
    CHECK(!found.empty_sample);
    CHECK(std::binary_search(found.labels.begin(), found.labels.end(), 1u));
    CHECK(!std::binary_search(found.labels.begin(), found.labels.end(), 2u));
}

TEST_CASE("a single repeated label is returned") {
    std::vector<std::uint32_t> sample(40, 7u);
    const auto found = extract_heavy_hitters(sample, 0.3);
    REQUIRE(found.labels.size() == 1);
    CHECK(found.labels[0] == 7u);
}

TEST_CASE("an empty sample signals instead of guessing") {
    const auto found = extract_heavy_hitters({}, 0.1);
    CHECK(found.empty_sample);
    CHECK(found.labels.empty());
    CHECK_THROWS_AS(extract_heavy_hitters(std::vector<std::uint32_t>{1}, 1.5),
                    std::invalid_argument);
}

TEST_CASE("extraction is deterministic and order-insensitive") {
    std::vector<std::uint32_t> sample;
    for (int i = 0; i < 30; ++i) sample.push_back(3);
    for (int i = 0; i < 20; ++i) sample.push_back(5);
    for (std::uint32_t i = 0; i < 50; ++i) sample.push_back(1000 + i % 17);

    const auto base = extract_heavy_hitters(sample, 0.2);
    std::mt19937 rng(7);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(sample.begin(), sample.end(), rng);
        const auto again = extract_heavy_hitters(sample, 0.2);
        CHECK(again.labels == base.labels);
    }
}
