#include "lowpoly/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lowpoly/random.hpp"

namespace lowpoly::sampling {

void validate(const SampleConfig& config) {
    if (!(config.width > 0.0) || !(config.height > 0.0)) {
        throw ConfigError("sample region must have positive width and height");
    }
    if (!(config.radius > 0.0)) {
        throw ConfigError("sample radius must be positive");
    }
    if (config.attempts < 1) {
        throw ConfigError("sample attempts must be at least 1");
    }
}

void validate(const ExpansionConfig& config) {
    if (config.rings < 0) throw ConfigError("expansion rings must be non-negative");
    if (!(config.base_gap > 0.0)) throw ConfigError("expansion base_gap must be positive");
    if (!(config.gap_growth >= 1.0)) throw ConfigError("expansion gap_growth must be >= 1");
    if (!(config.ring_spacing > 0.0)) throw ConfigError("expansion ring_spacing must be positive");
}

namespace {

class BackgroundGrid {
  public:
    BackgroundGrid(double width, double height, double radius)
        : cell_(radius / std::numbers::sqrt2),
          cols_(std::max<long>(1, static_cast<long>(std::ceil(width / cell_)))),
          rows_(std::max<long>(1, static_cast<long>(std::ceil(height / cell_)))),
          cells_(static_cast<std::size_t>(cols_ * rows_), -1) {}

    long col(double x) const { return std::clamp(static_cast<long>(x / cell_), 0L, cols_ - 1); }
    long row(double z) const { return std::clamp(static_cast<long>(z / cell_), 0L, rows_ - 1); }

    void insert(Vec2 p, int index) { cells_[static_cast<std::size_t>(row(p.z) * cols_ + col(p.x))] = index; }

    /// True if some stored point is closer than sqrt(min_dist_sq) to p.
    bool conflicts(Vec2 p, double min_dist_sq, const std::vector<Vec2>& points) const {
        const long c = col(p.x);
        const long r = row(p.z);
        for (long rr = std::max(0L, r - 2); rr <= std::min(rows_ - 1, r + 2); ++rr) {
            for (long cc = std::max(0L, c - 2); cc <= std::min(cols_ - 1, c + 2); ++cc) {
                const int idx = cells_[static_cast<std::size_t>(rr * cols_ + cc)];
                if (idx >= 0 && distance_sq(points[static_cast<std::size_t>(idx)], p) < min_dist_sq) {
                    return true;
                }
            }
        }
        return false;
    }

  private:
    double cell_;
    long cols_;
    long rows_;
    std::vector<int> cells_;
};

bool inside(const SampleConfig& c, Vec2 p) {
    return p.x >= 0.0 && p.x <= c.width && p.z >= 0.0 && p.z <= c.height;
}

}  // namespace

PointSet poisson_disc(const SampleConfig& config) {
    validate(config);

    PointSet out;
    out.width = config.width;
    out.height = config.height;

    Rng rng(config.seed);
    BackgroundGrid grid(config.width, config.height, config.radius);
    const double r_sq = config.radius * config.radius;
    const double outer_sq = 4.0 * r_sq;

    out.points.reserve(static_cast<std::size_t>(0.75 * config.width * config.height / r_sq) + 1);
    std::vector<int> active;

    auto accept = [&](Vec2 p) {
        const int idx = static_cast<int>(out.points.size());
        out.points.push_back(p);
        grid.insert(p, idx);
        active.push_back(idx);
    };

    accept({rng.uniform01() * config.width, rng.uniform01() * config.height});

    while (!active.empty()) {
        const std::size_t slot = rng.below(active.size());
        const Vec2 base = out.points[static_cast<std::size_t>(active[slot])];
        bool spawned = false;
        for (int attempt = 0; attempt < config.attempts; ++attempt) {
            // area-uniform in the annulus; rejection keeps the draw free of libm trig
            Vec2 offset;
            double d_sq;
            do {
                offset = {(2.0 * rng.uniform01() - 1.0) * 2.0 * config.radius,
                          (2.0 * rng.uniform01() - 1.0) * 2.0 * config.radius};
                d_sq = length_sq(offset);
            } while (d_sq < r_sq || d_sq >= outer_sq);
            const Vec2 candidate = base + offset;
            if (!inside(config, candidate) || grid.conflicts(candidate, r_sq, out.points)) {
                continue;
            }
            accept(candidate);
            spawned = true;
            break;
        }
        if (!spawned) {
            active[slot] = active.back();
            active.pop_back();
        }
    }

    out.core_count = out.points.size();
    return out;
}

PointSet naive_random(const SampleConfig& config, std::size_t count) {
    validate(config);
    PointSet out;
    out.width = config.width;
    out.height = config.height;
    Rng rng(config.seed);
    out.points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = rng.uniform01() * config.width;
        const double z = rng.uniform01() * config.height;
        out.points.push_back({x, z});
    }
    out.core_count = count;
    return out;
}

PointSet dart_throwing(const SampleConfig& config, int max_failures) {
    validate(config);
    if (max_failures < 1) throw ConfigError("max_failures must be at least 1");

    PointSet out;
    out.width = config.width;
    out.height = config.height;
    Rng rng(config.seed);
    const double r_sq = config.radius * config.radius;

    int failures = 0;
    while (failures < max_failures) {
        const double x = rng.uniform01() * config.width;
        const double z = rng.uniform01() * config.height;
        const Vec2 candidate{x, z};
        const bool clear = std::none_of(out.points.begin(), out.points.end(),
                                        [&](Vec2 q) { return distance_sq(q, candidate) < r_sq; });
        if (clear) {
            out.points.push_back(candidate);
            failures = 0;
        } else {
            ++failures;
        }
    }
    out.core_count = out.points.size();
    return out;
}

PointSet expand_square(const PointSet& points, const ExpansionConfig& config) {
    validate(config);
    if (points.core_count == 0) throw ConfigError("expand_square needs at least one core point");

    PointSet out = points;
    double gap = config.base_gap;
    for (int ring = 0; ring < config.rings; ++ring, gap *= config.gap_growth) {
        const Vec2 corners[4] = {
            {-gap, -gap},
            {points.width + gap, -gap},
            {points.width + gap, points.height + gap},
            {-gap, points.height + gap},
        };
        for (int side = 0; side < 4; ++side) {
            const Vec2 from = corners[side];
            const Vec2 to = corners[(side + 1) % 4];
            const double side_len = std::sqrt(distance_sq(from, to));
            const long segments = std::max(1L, static_cast<long>(std::ceil(side_len / config.ring_spacing)));
            for (long j = 0; j < segments; ++j) {
                const double t = static_cast<double>(j) / static_cast<double>(segments);
                out.points.push_back({from.x + (to.x - from.x) * t, from.z + (to.z - from.z) * t});
            }
        }
    }
    return out;
}

}  // namespace lowpoly::sampling
