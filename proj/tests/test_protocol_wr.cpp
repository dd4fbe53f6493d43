#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "dsamp/wr.hpp"

using namespace dsamp;
using namespace dsamp::wr;

namespace {

WeightedElement slot_item(std::uint64_t ordinal, double value, std::uint32_t slot) {
    return WeightedElement{ElementId{ordinal}, Weight{value, ordinal, slot}, 1};
}

}  // namespace

TEST_CASE("a fresh site reports every logical copy") {
    Site site(1, 3);
    const auto ups = site.on_element(ElementId{1}, 77);
    REQUIRE(ups.size() == 3);
    for (std::uint32_t i = 0; i < 3; ++i) {
        CHECK(ups[i].item.logical_index() == i + 1);
        CHECK(ups[i].item.weight == assign_weight(77, ElementId{1}, i + 1));
        CHECK(ups[i].from_site == 1);
    }
}

TEST_CASE("a view below every drawn weight suppresses all reports") {
    Site site(1, 3);
    // Drawn values never go below 2^-54; a cut far under that admits nothing.
    site.on_reply(Reply{1, Threshold{Weight{1e-30, 1, 1}}});
    CHECK(site.on_element(ElementId{2}, 77).empty());
}

TEST_CASE("the guard applies per logical index") {
    // Find an element whose first logical weight is under 0.5 and second above.
    const std::uint64_t seed = 42;
    std::optional<std::uint64_t> pick;
    for (std::uint64_t e = 1; e <= 200 && !pick; ++e) {
        const double w1 = assign_weight(seed, ElementId{e}, 1).value;
        const double w2 = assign_weight(seed, ElementId{e}, 2).value;
        if (w1 < 0.5 && w2 > 0.5) pick = e;
    }
    REQUIRE(pick.has_value());

    Site site(1, 2);
    site.on_reply(Reply{1, Threshold{Weight{0.5, 0, 0}}});
    const auto ups = site.on_element(ElementId{*pick}, seed);
    REQUIRE(ups.size() == 1);
    CHECK(ups[0].item.logical_index() == 1);
}

TEST_CASE("site beta views only tighten") {
    Site site(4, 2);
    site.on_reply(Reply{4, Threshold{Weight{0.4, 1, 1}}});
    CHECK_THROWS_AS(site.on_reply(Reply{4, Threshold{Weight{0.6, 2, 1}}}), std::logic_error);
    CHECK_THROWS_AS(site.on_reply(Reply{1, Threshold{}}), std::logic_error);
}

TEST_CASE("coordinator tracks per-slot minima and the max of minima") {
    Coordinator coord(2);
    coord.on_upstream(Upstream{1, slot_item(1, 0.4, 1)});
    coord.on_upstream(Upstream{1, slot_item(1, 0.6, 2)});
    CHECK(coord.beta().value() == 0.6);

    // A new slot-2 minimum moves beta down to the new max of minima.
    const auto better = coord.on_upstream(Upstream{2, slot_item(2, 0.5, 2)});
    CHECK(better.to_site == 2);
    CHECK(better.beta.value() == 0.5);

    // A non-minimum leaves everything alone.
    const auto ignored = coord.on_upstream(Upstream{1, slot_item(3, 0.7, 1)});
    CHECK(ignored.beta.value() == 0.5);
    REQUIRE(coord.minima()[1].has_value());
    CHECK(coord.minima()[1]->weight.value == 0.4);
}

TEST_CASE("the first element fills every slot") {
    Coordinator coord(3);
    CHECK(coord.beta().is_one());
    Site site(1, 3);
    double largest = 0.0;
    for (const auto& up : site.on_element(ElementId{1}, 5)) {
        largest = std::max(largest, up.item.weight.value);
        site.on_reply(coord.on_upstream(up));
    }
    CHECK(coord.beta().value() == largest);
    const auto sample = coord.query();
    REQUIRE(sample.size() == 3);
    for (const auto& held : sample) CHECK(held.element.ordinal == 1);
}

TEST_CASE("queries before any arrival signal an empty sample") {
    Coordinator coord(4);
    CHECK(coord.query().empty());
    CHECK_THROWS_AS(coord.on_upstream(Upstream{1, slot_item(1, 0.5, 9)}), std::logic_error);
    CHECK_THROWS_AS(coord.on_upstream(Upstream{1, slot_item(1, 0.5, 0)}), std::logic_error);
    CHECK_THROWS_AS(Coordinator(0), std::invalid_argument);
}

TEST_CASE("slots match the per-stream argmin on a long run") {
    const std::uint64_t seed = 2718;
    const std::uint32_t s = 3;
    Site site(1, s);
    Coordinator coord(s);

    std::vector<std::optional<WeightedElement>> expect(s + 1);
    Threshold previous_beta;
    for (std::uint64_t e = 1; e <= 400; ++e) {
        for (const auto& up : site.on_element(ElementId{e}, seed)) {
            const auto reply = coord.on_upstream(up);
            site.on_reply(reply);
        }
        for (std::uint32_t slot = 1; slot <= s; ++slot) {
            const Weight w = assign_weight(seed, ElementId{e}, slot);
            if (!expect[slot] || w < expect[slot]->weight)
                expect[slot] = WeightedElement{ElementId{e}, w, 1};
        }
        for (std::uint32_t slot = 1; slot <= s; ++slot) {
            REQUIRE(coord.minima()[slot].has_value());
            CHECK(coord.minima()[slot]->element == expect[slot]->element);
            CHECK(coord.minima()[slot]->weight == expect[slot]->weight);
        }
        CHECK(coord.beta() <= previous_beta);
        previous_beta = coord.beta();
        CHECK(coord.beta() <= site.view());
    }

    // With more than one element, slots may repeat an element.
    const auto sample = coord.query();
    CHECK(sample.size() == s);
}
