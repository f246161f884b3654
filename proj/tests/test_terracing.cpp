#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lowpoly/random.hpp"
#include "lowpoly/sampling.hpp"
#include "lowpoly/terracing.hpp"
#include "oracles.hpp"

using namespace lowpoly;
using namespace lowpoly::terracing;
using triangulation::TriangleMesh2D;

namespace {

TriangleMesh2D manual(std::vector<Vec2> pts, std::vector<triangulation::Triangle> tris) {
    TriangleMesh2D m;
    m.points.core_count = pts.size();
    m.points.points = std::move(pts);
    m.points.width = m.points.height = 10;
    m.triangles = std::move(tris);
    return m;
}

int max_span(const TriangleMesh2D& m, const std::vector<int>& level) {
    int worst = 0;
    for (const auto& t : m.triangles) {
        worst = std::max(worst, std::max({level[t[0]], level[t[1]], level[t[2]]}) -
                                    std::min({level[t[0]], level[t[1]], level[t[2]]}));
    }
    return worst;
}

/// Position edges used other than twice, excluding the 2D hull and the given
/// invalidated edges.
int open_edges(const TriangleMesh2D& m, const TerrainMesh& mesh, const std::vector<WallRecord>& walls) {
    std::map<std::pair<double, double>, std::uint32_t> at;
    for (std::uint32_t v = 0; v < m.points.size(); ++v) at[{m.points.points[v].x, m.points.points[v].z}] = v;
    std::vector<oracle::Tri> tris(m.triangles.begin(), m.triangles.end());
    std::set<std::pair<std::uint32_t, std::uint32_t>> hull;
    std::set<std::uint32_t> hull_v;
    for (const auto& [e, c] : oracle::edge_use(tris)) {
        if (c == 1) hull.insert(e), hull_v.insert(e.first), hull_v.insert(e.second);
    }
    for (const auto& w : walls) {
        if (!w.valid) hull.insert(w.edge);
    }
    int bad = 0;
    for (const auto& [e, c] : oracle::position_edges(mesh)) {
        if (c == 2) continue;
        const auto a = at.at({e.first[0], e.first[2]}), b = at.at({e.second[0], e.second[2]});
        if (a == b ? hull_v.count(a) : hull.count({std::min(a, b), std::max(a, b)})) continue;
        ++bad;
    }
    return bad;
}

/// Regular octagon around a centre vertex; levels alternate so that two upper
/// sectors meet only at the centre.
TriangleMesh2D octagon() {
    std::vector<Vec2> pts{{0, 0}};
    const double s = std::sqrt(0.5);
    const Vec2 ring[8] = {{1, 0}, {s, s}, {0, 1}, {-s, s}, {-1, 0}, {-s, -s}, {0, -1}, {s, -s}};
    for (Vec2 p : ring) pts.push_back(p);
    std::vector<triangulation::Triangle> tris;
    for (std::uint32_t k = 0; k < 8; ++k) tris.push_back({0, 1 + k, 1 + (k + 1) % 8});
    return manual(pts, tris);
}

}  // namespace

TEST_SUITE("terracing") {

TEST_CASE("repair leaves a uniform mesh alone") {
    const auto m = manual({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
    const std::vector<int> level{2, 2, 2};
    int sweeps = -1;
    CHECK(repair_spans(m, level, 4, &sweeps) == level);
    CHECK(sweeps == 0);
}

TEST_CASE("repair lowers the upper vertices of a wide triangle") {
    const auto m = manual({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
    CHECK(repair_spans(m, std::vector<int>{0, 2, 2}, 3) == std::vector<int>{0, 1, 1});
}

TEST_CASE("repair of a triangle chain reaches the distance-transform fixed point") {
    const auto m = manual({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{0, 1, 2}, {1, 3, 2}});
    const std::vector<int> level{0, 3, 3, 5};
    const auto out = repair_spans(m, level, 6);
    CHECK(out == std::vector<int>{0, 1, 1, 2});
    std::vector<oracle::Tri> tris(m.triangles.begin(), m.triangles.end());
    CHECK(out == oracle::distance_transform(4, tris, level));
}

TEST_CASE("repair on random levels matches the oracle and only lowers") {
    Rng rng(31);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const auto m = triangulation::bowyer_watson(sampling::poisson_disc({40, 40, 2, 30, seed}));
        const int bands = 2 + static_cast<int>(rng.below(5));
        std::vector<int> level(m.points.size());
        for (int& l : level) l = static_cast<int>(rng.below(static_cast<std::uint64_t>(bands)));
        int sweeps = 0;
        const auto out = repair_spans(m, level, bands, &sweeps);
        std::vector<oracle::Tri> tris(m.triangles.begin(), m.triangles.end());
        CHECK(out == oracle::distance_transform(level.size(), tris, level));
        CHECK(max_span(m, out) <= 1);
        CHECK(sweeps <= bands);
        for (std::size_t v = 0; v < level.size(); ++v) CHECK(out[v] <= level[v]);
    }
}

TEST_CASE("elevate") {
    CHECK(elevate(0, {2.0}) == 0.0);
    CHECK(elevate(3, {2.5}) == 7.5);
    for (int b = 0; b < 6; ++b) CHECK(elevate(b + 1, {1.3}) > elevate(b, {1.3}));
    CHECK_THROWS_AS(validate(TerraceParams{0.0}), ConfigError);
}

TEST_CASE("classify") {
    const triangulation::Triangle t{0, 1, 2};
    CHECK(classify(t, std::vector<int>{2, 2, 2}).kind == RisingClass::Flat);
    const auto single = classify(t, std::vector<int>{1, 1, 2});
    CHECK(single.kind == RisingClass::SingleUpper);
    CHECK(single.leading == 2);
    CHECK(single.lower_level == 1);
    const auto dbl = classify(t, std::vector<int>{1, 2, 2});
    CHECK(dbl.kind == RisingClass::DoubleUpper);
    CHECK(dbl.leading == 0);
    CHECK_THROWS_AS(classify(t, std::vector<int>{0, 2, 1}), std::logic_error);
}

TEST_CASE("wall records") {
    const auto single = manual({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
    CHECK(mark_invalid_walls(single, std::vector<int>{1, 1, 1}).empty());
    CHECK(mark_invalid_walls(single, std::vector<int>{1, 1, 2}).empty());
    const auto one = mark_invalid_walls(single, std::vector<int>{1, 2, 2});
    REQUIRE(one.size() == 1);
    CHECK(one[0].valid);
    CHECK(one[0].edge == std::make_pair(1u, 2u));
    CHECK(one[0].owner == 0);
}

TEST_CASE("two DoubleUpper triangles on one upper edge leave no wall") {
    const auto m = manual({{0.5, -2}, {0, 0}, {1, 0}, {0.5, 2}}, {{0, 2, 1}, {1, 2, 3}});
    const std::vector<int> level{0, 1, 1, 0};
    const auto walls = mark_invalid_walls(m, level);
    REQUIRE(walls.size() == 2);
    CHECK_FALSE(walls[0].valid);
    CHECK_FALSE(walls[1].valid);
    const auto mesh = build_terraced_mesh(m, level, {2.0}, walls);
    CHECK(mesh.face_count() == 2);
    CHECK(mesh.wall_count() == 0);
    CHECK(open_edges(m, mesh, walls) == 0);
}

TEST_CASE("all-flat input gives the flattened input and no walls") {
    const auto m = triangulation::bowyer_watson(sampling::poisson_disc({20, 20, 2, 30, 1}));
    const std::vector<int> level(m.points.size(), 2);
    const auto mesh = build_terraced_mesh(m, level, {1.5}, mark_invalid_walls(m, level));
    CHECK(mesh.wall_count() == 0);
    CHECK(mesh.face_count() == m.triangles.size());
    CHECK(mesh.positions.size() == 3 * m.triangles.size());
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        for (int c = 0; c < 3; ++c) CHECK(mesh.vertex(f, c).y == 3.0);
        CHECK(oracle::unit_normal(mesh, f).y == doctest::Approx(1.0));
    }
}

TEST_CASE("SingleUpper triangle is flattened to the lower level") {
    const auto m = manual({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
    const std::vector<int> level{1, 1, 2};
    const auto mesh = build_terraced_mesh(m, level, {2.0}, mark_invalid_walls(m, level));
    REQUIRE(mesh.face_count() == 1);
    CHECK(mesh.wall_count() == 0);
    for (const Vec3& p : mesh.positions) CHECK(p.y == 2.0);
}

TEST_CASE("DoubleUpper triangle gets a surface face and a two-face wall") {
    const auto m = manual({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
    const std::vector<int> level{1, 2, 2};
    const auto mesh = build_terraced_mesh(m, level, {2.0}, mark_invalid_walls(m, level));
    REQUIRE(mesh.face_count() == 3);
    CHECK(mesh.wall_count() == 2);
    CHECK_FALSE(mesh.face_is_wall[0]);
    for (int c = 0; c < 3; ++c) CHECK(mesh.vertex(0, c).y == 2.0);
    std::set<std::array<double, 3>> corners;
    for (std::size_t f = 1; f < 3; ++f) {
        CHECK(mesh.face_is_wall[f]);
        CHECK(mesh.face_level[f] == 1);
        for (int c = 0; c < 3; ++c) {
            const Vec3 p = mesh.vertex(f, c);
            corners.insert({p.x, p.y, p.z});
        }
        const Vec3 n = oracle::unit_normal(mesh, f);
        CHECK(std::abs(n.y) < 1e-9);
        // faces the leading vertex at the origin, away from the upper terrace
        CHECK(n.x + n.z < 0);
    }
    const std::set<std::array<double, 3>> quad{{1, 2, 0}, {0, 2, 1}, {1, 4, 0}, {0, 4, 1}};
    CHECK(corners == quad);
}

TEST_CASE("saddle vertex is lowered so the wall edge is shared by two faces") {
    const auto m = octagon();
    std::vector<int> level{1, 1, 1, 0, 0, 1, 1, 0, 0};
    const auto before = mark_invalid_walls(m, level);
    CHECK(before.size() == 4);
    CHECK(open_edges(m, build_terraced_mesh(m, level, {1.0}, before), before) > 0);

    CHECK(resolve_saddles(m, level, 2) == 1);
    CHECK(level[0] == 0);
    const auto after = mark_invalid_walls(m, level);
    CHECK(open_edges(m, build_terraced_mesh(m, level, {1.0}, after), after) == 0);
}

TEST_CASE("random levels give a closed terraced mesh") {
    Rng rng(77);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto m = triangulation::bowyer_watson(sampling::poisson_disc({30, 30, 1.5, 30, seed}));
        std::vector<int> level(m.points.size());
        for (int& l : level) l = static_cast<int>(rng.below(4));
        level = repair_spans(m, level, 4);
        resolve_saddles(m, level, 4);
        CHECK(max_span(m, level) <= 1);
        const auto walls = mark_invalid_walls(m, level);
        const auto mesh = build_terraced_mesh(m, level, {1.0}, walls);
        std::size_t valid = 0;
        for (const auto& w : walls) valid += w.valid;
        CHECK(mesh.wall_count() == 2 * valid);
        CHECK(open_edges(m, mesh, walls) == 0);
        for (std::size_t f = 0; f < mesh.face_count(); ++f) {
            const Vec3 n = oracle::unit_normal(mesh, f);
            if (mesh.face_is_wall[f]) {
                CHECK(std::abs(n.y) < 1e-9);
            } else {
                CHECK(n.y == doctest::Approx(1.0));
            }
        }
    }
}

TEST_CASE("recalculated noise") {
    const auto m = manual({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
    const auto g = triangulation::build_adjacency(m);
    const heightfield::BiomeTable one{{0, 1}};
    const std::vector<int> same{0, 0, 0};
    CHECK(recalc_noise(0, g, one, same, std::vector<double>{0.9, 0.6, 0.6}) == 0.6);
    CHECK(recalc_noise(0, g, one, same, std::vector<double>{0.0, 0.2, 0.4}) == doctest::Approx(0.3));

    const heightfield::BiomeTable two{{0, 0.5, 1}};
    CHECK(recalc_noise(0, g, two, std::vector<int>{0, 1, 1}, std::vector<double>{0.1, 0.8, 0.9}) ==
          0.5 - kBandEpsilon);
    CHECK(recalc_noise(0, g, two, std::vector<int>{1, 0, 0}, std::vector<double>{0.6, 0.1, 0.2}) == 0.5);
    CHECK(recalc_noise(0, g, two, std::vector<int>{1, 1, 1}, std::vector<double>{0.6, 1.0, 1.0}) == 1.0);
}

}
