#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lowpoly/common.hpp"

namespace lowpoly::sampling {

struct SampleConfig {
    double width = 100.0;
    double height = 100.0;
    /// Minimum spacing between samples.
    double radius = 2.0;
    /// Candidate tries per spawn point before it is retired.
    int attempts = 30;
    std::uint64_t seed = 0;
};

/// Throws ConfigError unless width, height and radius are positive and attempts >= 1.
void validate(const SampleConfig& config);

struct PointSet {
    std::vector<Vec2> points;
    double width = 0.0;
    double height = 0.0;
    /// Points at index >= core_count were added by expand_square.
    std::size_t core_count = 0;

    std::size_t size() const { return points.size(); }
    bool is_core(std::size_t i) const { return i < core_count; }
};

struct ExpansionConfig {
    int rings = 0;
    /// Offset of the first ring from the region boundary.
    double base_gap = 4.0;
    /// Multiplier applied to the gap for each subsequent ring.
    double gap_growth = 1.5;
    /// Upper bound on the spacing between neighbouring ring points.
    double ring_spacing = 4.0;
};

void validate(const ExpansionConfig& config);

/// Bridson's Poisson-disc sampler over [0,width] x [0,height].
///
/// Uses a background grid with cell size radius/sqrt(2), so each cell holds at
/// most one sample and a candidate only needs the surrounding 5x5 cells. New
/// candidates are drawn from the annulus [radius, 2*radius) around a random
/// active sample. Output order is insertion order.
PointSet poisson_disc(const SampleConfig& config);

/// `count` independent uniform points in the region. No spacing guarantee.
PointSet naive_random(const SampleConfig& config, std::size_t count);

/// Rejection sampling against every accepted point (quadratic). Stops after
/// `max_failures` consecutive rejected candidates.
PointSet dart_throwing(const SampleConfig& config, int max_failures);

/// Appends concentric rectangular rings of points around the region.
///
/// Ring i sits at Chebyshev distance base_gap * gap_growth^i outside the region.
/// Each side is split into ceil(side / ring_spacing) equal segments and the ring
/// is emitted counter-clockwise from its lower-left corner, so every corner
/// appears exactly once. Core points are left untouched.
PointSet expand_square(const PointSet& points, const ExpansionConfig& config);

}  // namespace lowpoly::sampling
