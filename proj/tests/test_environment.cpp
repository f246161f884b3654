#include <doctest.h>

#include "lowpoly/environment.hpp"
#include "lowpoly/random.hpp"
#include "lowpoly/sampling.hpp"
#include "oracles.hpp"

using namespace lowpoly;
using namespace lowpoly::environment;

namespace {

struct Fixture {
    triangulation::TriangleMesh2D mesh;
    triangulation::AdjacencyGraph graph;
    std::vector<int> biomes;
    std::vector<double> noise;
    std::vector<double> ground;

    explicit Fixture(std::uint64_t seed, bool split = false) {
        mesh = triangulation::bowyer_watson(sampling::poisson_disc({40, 40, 1.5, 30, seed}));
        graph = triangulation::build_adjacency(mesh);
        for (const Vec2& p : mesh.points.points) {
            const int b = split && p.x > 20 ? 1 : 0;
            biomes.push_back(b);
            noise.push_back(p.z / 40);
            ground.push_back(2.0 * b);
        }
    }
    TerrainView view() const { return {&mesh, &graph, biomes, noise, ground}; }
};

bool has_anchor(const std::vector<Placement>& ps, std::uint32_t v) {
    return std::any_of(ps.begin(), ps.end(), [&](const Placement& p) { return p.anchor == v; });
}

}  // namespace

TEST_SUITE("environment") {

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(validate(ObjectSpec{"a", {0.5, 0.5, {}}, 0.5, 1, 0}), ConfigError);
    CHECK_THROWS_AS(validate(ObjectSpec{"a", {}, 1.5, 1, 0}), ConfigError);
    CHECK_THROWS_AS(validate(ObjectSpec{"a", {}, 0.5, 0, 0}), ConfigError);
    CHECK_THROWS_AS(validate(ObjectSpec{"a", {}, 0.5, 1, -1}), ConfigError);
    CHECK_NOTHROW(validate(ObjectSpec{"a", {0, 0, {2}}, 0.5, 1, 0}));
}

TEST_CASE("eligibility rules") {
    const Fixture f(1, true);
    const auto view = f.view();
    std::vector<std::uint8_t> occupied(f.mesh.points.size(), 0);
    const ObjectSpec band{"t", {0.4, 0.6, {}}, 1, 1, 0};
    std::size_t edge_seen = 0, interval_seen = 0;
    for (std::uint32_t v = 0; v < f.mesh.points.size(); ++v) {
        if (on_biome_edge(v, view)) {
            ++edge_seen;
            CHECK_FALSE(eligible(v, band, view, occupied));
        } else if (f.noise[v] >= 0.4 && f.noise[v] < 0.6) {
            ++interval_seen;
            CHECK(eligible(v, band, view, occupied));
            occupied[v] = 1;
            CHECK_FALSE(eligible(v, band, view, occupied));
        } else {
            CHECK_FALSE(eligible(v, band, view, occupied));
        }
    }
    CHECK(edge_seen > 0);
    CHECK(interval_seen > 0);
    CHECK(matches(ObjectSpec{"b", {0, 1, {1, 3}}, 1, 1, 0}, 3, 0.0));
    CHECK_FALSE(matches(ObjectSpec{"b", {0, 1, {1, 3}}, 1, 1, 0}, 2, 0.5));
}

TEST_CASE("footprint marks the breadth-first ball") {
    const Fixture f(2);
    for (int depth : {1, 2, 3}) {
        std::vector<std::uint8_t> occupied(f.mesh.points.size(), 0);
        mark_footprint(100, depth, f.graph, occupied);
        const auto dist = oracle::bfs(f.graph, 100, depth);
        for (std::size_t v = 0; v < occupied.size(); ++v) CHECK((occupied[v] == 1) == (dist[v] >= 0));
    }
}

TEST_CASE("empty specs and p=0 place nothing") {
    const Fixture f(3);
    CHECK(place_objects(f.view(), {}, 1).empty());
    const std::vector<ObjectSpec> never{{"tree", {}, 0.0, 1, 0.5}};
    CHECK(place_objects(f.view(), never, 1).empty());
}

TEST_CASE("p=1 with footprint 1 yields a maximal independent set") {
    const Fixture f(4);
    const std::vector<ObjectSpec> always{{"tree", {0, 1, {0}}, 1.0, 1, 0}};
    const auto placed = place_objects(f.view(), always, 9);
    REQUIRE_FALSE(placed.empty());
    std::vector<std::uint8_t> is_anchor(f.mesh.points.size(), 0);
    for (const auto& p : placed) is_anchor[p.anchor] = 1;
    for (std::uint32_t v = 0; v < is_anchor.size(); ++v) {
        bool touches = false;
        for (auto u : f.graph.neighbors[v]) {
            if (is_anchor[v]) CHECK_FALSE(is_anchor[u]);
            touches = touches || is_anchor[u];
        }
        CHECK((is_anchor[v] || touches));
    }
    // ascending visit order means the greedy set starts at vertex 0
    CHECK(has_anchor(placed, 0));
}

TEST_CASE("placements respect edges, footprints, dither and yaw") {
    const Fixture f(5, true);
    const std::vector<ObjectSpec> specs{{"tree", {0, 1, {0}}, 0.6, 2, 0.4}, {"rock", {0, 0.5, {}}, 0.5, 1, 0.2}};
    const auto placed = place_objects(f.view(), specs, 17);
    REQUIRE(placed.size() > 5);
    const auto& pts = f.mesh.points.points;
    for (const auto& p : placed) {
        const ObjectSpec& s = p.name == "tree" ? specs[0] : specs[1];
        CHECK_FALSE(on_biome_edge(p.anchor, f.view()));
        CHECK(matches(s, f.biomes[p.anchor], f.noise[p.anchor]));
        CHECK(distance_sq({p.position.x, p.position.z}, pts[p.anchor]) <= s.max_offset * s.max_offset + 1e-12);
        CHECK(p.position.y == f.ground[p.anchor]);
        CHECK(p.yaw >= 0.0);
        CHECK(p.yaw < 6.283185307179586);
        const auto dist = oracle::bfs(f.graph, p.anchor, 2);
        for (const auto& q : placed) {
            if (q.anchor == p.anchor) continue;
            const int fq = q.name == "tree" ? 2 : 1;
            if (dist[q.anchor] >= 0) CHECK(dist[q.anchor] > std::min(s.footprint, fq));
        }
    }
}

TEST_CASE("placement is deterministic per seed") {
    const Fixture f(6);
    const std::vector<ObjectSpec> specs{{"tree", {}, 0.3, 2, 0.4}};
    const auto a = place_objects(f.view(), specs, 3);
    const auto b = place_objects(f.view(), specs, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].anchor == b[i].anchor);
        CHECK(a[i].position == b[i].position);
        CHECK(a[i].yaw == b[i].yaw);
    }
    const auto c = place_objects(f.view(), specs, 4);
    bool differs = c.size() != a.size();
    for (std::size_t i = 0; !differs && i < a.size(); ++i) differs = a[i].anchor != c[i].anchor;
    CHECK(differs);
}

TEST_CASE("larger footprints do not place more objects on average") {
    const Fixture f(7);
    double prev = 1e9;
    for (int footprint : {1, 2, 3}) {
        double total = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const std::vector<ObjectSpec> specs{{"tree", {}, 0.5, footprint, 0}};
            total += static_cast<double>(place_objects(f.view(), specs, seed).size());
        }
        CHECK(total / 10 <= prev);
        prev = total / 10;
    }
}

}
