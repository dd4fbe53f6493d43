#pragma once

#include <cstdint>
#include <optional>
#include <tuple>

namespace dsamp {

// Identity of a stream element: its 1-based arrival position in the union
// of all site streams.
struct ElementId {
    std::uint64_t ordinal = 0;

    friend constexpr bool operator==(ElementId a, ElementId b) { return a.ordinal == b.ordinal; }
    friend constexpr bool operator<(ElementId a, ElementId b) { return a.ordinal < b.ordinal; }
};

// A random weight in (0,1) with a deterministic tiebreak, so that no two
// weights in a run ever compare equal. The tiebreak is the carrying
// element's ordinal plus the logical-stream index (0 for the physical,
// without-replacement stream).
struct Weight {
    double value = 0.0;
    std::uint64_t ordinal = 0;
    std::uint32_t logical = 0;

    friend constexpr bool operator==(const Weight& a, const Weight& b) {
        return a.value == b.value && a.ordinal == b.ordinal && a.logical == b.logical;
    }
    friend constexpr bool operator<(const Weight& a, const Weight& b) {
        return std::tie(a.value, a.ordinal, a.logical) < std::tie(b.value, b.ordinal, b.logical);
    }
    friend constexpr bool operator<=(const Weight& a, const Weight& b) { return a < b || a == b; }
};

// An element together with its weight and the site that observed it.
struct WeightedElement {
    ElementId element;
    Weight weight;
    std::uint32_t origin_site = 1;

    // Logical-stream index this copy belongs to; 0 for without-replacement flows.
    constexpr std::uint32_t logical_index() const { return weight.logical; }

    friend constexpr bool operator==(const WeightedElement& a, const WeightedElement& b) {
        return a.element == b.element && a.weight == b.weight && a.origin_site == b.origin_site;
    }
};

// A cut-off on weights: either the weight of some concrete element or the
// sentinel "1", which admits every weight. Thresholds order the sentinel
// greatest so that protocol views can only move downward.
class Threshold {
public:
    constexpr Threshold() = default;
    explicit constexpr Threshold(const Weight& w) : cut_(w) {}

    constexpr bool is_one() const { return !cut_.has_value(); }
    constexpr double value() const { return cut_ ? cut_->value : 1.0; }
    constexpr const std::optional<Weight>& cut() const { return cut_; }

    // Strict admission test: does a weight fall below this threshold?
    constexpr bool admits(const Weight& w) const { return !cut_ || w < *cut_; }

    friend constexpr bool operator==(const Threshold& a, const Threshold& b) {
        return a.cut_ == b.cut_;
    }
    friend constexpr bool operator<(const Threshold& a, const Threshold& b) {
        if (!b.cut_) return a.cut_.has_value();
        if (!a.cut_) return false;
        return *a.cut_ < *b.cut_;
    }
    friend constexpr bool operator<=(const Threshold& a, const Threshold& b) {
        return a < b || a == b;
    }

private:
    std::optional<Weight> cut_;
};

// 64-bit finalizer used for all keyed randomness in the library. Applied in
// counter mode it passes standard statistical batteries, and being a pure
// function it makes every run exactly replayable.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

namespace detail {
inline constexpr std::uint64_t kStep1 = 0x9e3779b97f4a7c15ull;
inline constexpr std::uint64_t kStep2 = 0xc2b2ae3d27d4eb4full;
}  // namespace detail

// Keyed hash of (seed, ordinal, logical) -> 64 uniform bits.
constexpr std::uint64_t weight_bits(std::uint64_t seed, std::uint64_t ordinal,
                                    std::uint32_t logical) {
    std::uint64_t h = mix64(seed + detail::kStep1);
    h = mix64(h + ordinal * detail::kStep1);
    h = mix64(h + std::uint64_t{logical} * detail::kStep2);
    return h;
}

// Maps 64 uniform bits onto lattice-cell centers in (0,1): values are
// (j + 1/2) * 2^-53, never exactly 0 or 1, with mean exactly 1/2.
constexpr double unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Deterministic weight assignment. The same (seed, element, logical_index)
// always yields the same weight, across runs and across protocol variants;
// logical_index 0 denotes the physical without-replacement stream.
constexpr Weight assign_weight(std::uint64_t seed, ElementId element,
                               std::uint32_t logical_index = 0) {
    return Weight{unit_open(weight_bits(seed, element.ordinal, logical_index)),
                  element.ordinal, logical_index};
}

// Small counter-based engine for auxiliary draws (schedules, shuffles).
// Unlike std distributions its output is identical on every platform.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += detail::kStep1;
        return mix64(state_);
    }

    // Unbiased draw from [0, bound) via multiply-high rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        using u128 = unsigned __int128;
        std::uint64_t x = next();
        u128 m = static_cast<u128>(x) * static_cast<u128>(bound);
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t cutoff = (-bound) % bound;
            while (low < cutoff) {
                x = next();
                m = static_cast<u128>(x) * static_cast<u128>(bound);
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

}  // namespace dsamp
