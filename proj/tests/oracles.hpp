#pragma once

// Independent reference implementations used by the unit and acceptance tests.
// They favour obviousness over speed and share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "lowpoly/common.hpp"
#include "lowpoly/terrain_mesh.hpp"
#include "lowpoly/triangulation.hpp"

namespace oracle {

using lowpoly::Vec2;
using lowpoly::Vec3;
using Tri = std::array<std::uint32_t, 3>;

inline double min_pairwise_distance_sq(const std::vector<Vec2>& pts) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double dx = pts[i].x - pts[j].x;
            const double dz = pts[i].z - pts[j].z;
            best = std::min(best, dx * dx + dz * dz);
        }
    }
    return best;
}

inline double orient(Vec2 a, Vec2 b, Vec2 c) {
    return (b.x - a.x) * (c.z - a.z) - (b.z - a.z) * (c.x - a.x);
}

/// Rotation keeping the winding, smallest index first.
inline Tri canonical(Tri t) {
    while (t[0] > t[1] || t[0] > t[2]) t = {t[1], t[2], t[0]};
    return t;
}

struct Disc {
    long double cx, cz, r2;
};

inline Disc circumscribe(Vec2 a, Vec2 b, Vec2 c) {
    const long double ax = a.x, az = a.z, bx = b.x, bz = b.z, cx = c.x, cz = c.z;
    const long double d = 2 * (ax * (bz - cz) + bx * (cz - az) + cx * (az - bz));
    const long double a2 = ax * ax + az * az, b2 = bx * bx + bz * bz, c2 = cx * cx + cz * cz;
    const long double ux = (a2 * (bz - cz) + b2 * (cz - az) + c2 * (az - bz)) / d;
    const long double uz = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    return {ux, uz, (ax - ux) * (ax - ux) + (az - uz) * (az - uz)};
}

inline long double dist2(const Disc& c, Vec2 p) {
    return (p.x - c.cx) * (p.x - c.cx) + (p.z - c.cz) * (p.z - c.cz);
}

/// True when the interiors of two CCW triangles intersect (separating axis test).
inline bool overlaps(const std::vector<Vec2>& pts, const Tri& a, const Tri& b) {
    auto separated_by = [&](const Tri& s, const Tri& o) {
        for (int e = 0; e < 3; ++e) {
            const Vec2 p = pts[s[e]], q = pts[s[(e + 1) % 3]];
            if (orient(p, q, pts[o[0]]) <= 0 && orient(p, q, pts[o[1]]) <= 0 && orient(p, q, pts[o[2]]) <= 0) {
                return true;
            }
        }
        return false;
    };
    return !separated_by(a, b) && !separated_by(b, a);
}

/// Brute-force Delaunay triangulation: every CCW triple whose circumcircle has
/// no point strictly inside. Cocircular ties are broken greedily: candidates
/// are taken in lexicographic order and skipped when they overlap an accepted
/// triangle.
inline std::set<Tri> delaunay(const std::vector<Vec2>& pts) {
    const auto n = static_cast<std::uint32_t>(pts.size());
    std::vector<Tri> candidates;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            for (std::uint32_t k = j + 1; k < n; ++k) {
                const double o = orient(pts[i], pts[j], pts[k]);
                if (o == 0.0) continue;
                const Tri t = o > 0 ? Tri{i, j, k} : Tri{i, k, j};
                const Disc c = circumscribe(pts[i], pts[j], pts[k]);
                bool empty = true;
                for (std::uint32_t m = 0; m < n && empty; ++m) {
                    if (m == i || m == j || m == k) continue;
                    if (dist2(c, pts[m]) < c.r2 * (1 - 1e-12L)) empty = false;
                }
                if (empty) candidates.push_back(t);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Tri& a, const Tri& b) {
        Tri sa = a, sb = b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        return sa < sb;
    });
    std::vector<Tri> accepted;
    for (const Tri& t : candidates) {
        if (std::none_of(accepted.begin(), accepted.end(), [&](const Tri& a) { return overlaps(pts, a, t); })) {
            accepted.push_back(t);
        }
    }
    std::set<Tri> out;
    for (const Tri& t : accepted) out.insert(canonical(t));
    return out;
}

/// Relative in-circle measure: (r^2 - |d - center|^2) / r^2 for the
/// circumcircle of (a, b, c). Positive inside.
inline double incircle_margin(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const Disc disc = circumscribe(a, b, c);
    return static_cast<double>((disc.r2 - dist2(disc, d)) / disc.r2);
}

/// True when some four points are within `tol` (relative) of a common circle,
/// or some three are collinear.
inline bool has_near_degeneracy(const std::vector<Vec2>& pts, double tol) {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const double o = orient(pts[i], pts[j], pts[k]);
                const double scale = std::max({std::abs(pts[j].x - pts[i].x), std::abs(pts[j].z - pts[i].z),
                                               std::abs(pts[k].x - pts[i].x), std::abs(pts[k].z - pts[i].z)});
                if (std::abs(o) <= 1e-6 * scale * scale) return true;
                for (std::size_t m = k + 1; m < n; ++m) {
                    if (std::abs(incircle_margin(pts[i], pts[j], pts[k], pts[m])) < tol) return true;
                }
            }
        }
    }
    return false;
}

/// Number of points on the convex hull boundary, including points lying
/// exactly on a hull edge.
inline std::size_t hull_point_count(const std::vector<Vec2>& pts) {
    std::vector<Vec2> s = pts;
    std::sort(s.begin(), s.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.z < b.z); });
    std::vector<Vec2> hull;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (const Vec2& p : s) {
            while (hull.size() >= base + 2 && orient(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
        std::reverse(s.begin(), s.end());
    }
    std::size_t count = 0;
    for (const Vec2& p : pts) {
        for (std::size_t e = 0; e < hull.size(); ++e) {
            const Vec2 a = hull[e], b = hull[(e + 1) % hull.size()];
            if (orient(a, b, p) != 0.0) continue;
            if (p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) && p.z >= std::min(a.z, b.z) &&
                p.z <= std::max(a.z, b.z)) {
                ++count;
                break;
            }
        }
    }
    return count;
}

/// Undirected edge -> number of incident triangles.
inline std::map<std::pair<std::uint32_t, std::uint32_t>, int> edge_use(const std::vector<Tri>& tris) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> use;
    for (const Tri& t : tris) {
        for (int e = 0; e < 3; ++e) {
            const auto a = t[e], b = t[(e + 1) % 3];
            ++use[{std::min(a, b), std::max(a, b)}];
        }
    }
    return use;
}

/// Fixed point of span repair: each vertex drops to min over u of
/// (level[u] + graph distance), computed by a multi-source shortest path.
inline std::vector<int> distance_transform(std::size_t n, const std::vector<Tri>& tris, const std::vector<int>& level) {
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const Tri& t : tris) {
        for (int e = 0; e < 3; ++e) {
            adj[t[e]].push_back(t[(e + 1) % 3]);
            adj[t[(e + 1) % 3]].push_back(t[e]);
        }
    }
    std::vector<int> out = level;
    using Item = std::pair<int, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (std::uint32_t v = 0; v < n; ++v) queue.push({out[v], v});
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (d != out[v]) continue;
        for (std::uint32_t u : adj[v]) {
            if (d + 1 < out[u]) {
                out[u] = d + 1;
                queue.push({out[u], u});
            }
        }
    }
    return out;
}

/// Breadth-first graph distances from `source`, -1 when unreachable.
inline std::vector<int> bfs(const lowpoly::triangulation::AdjacencyGraph& g, std::uint32_t source, int limit) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<std::uint32_t> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        const auto v = q.front();
        q.pop();
        if (dist[v] == limit) continue;
        for (auto u : g.neighbors[v]) {
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
        }
    }
    return dist;
}

using PositionEdge = std::pair<std::array<double, 3>, std::array<double, 3>>;

/// Edges of a flat-shaded mesh keyed by exact endpoint positions.
inline std::map<PositionEdge, int> position_edges(const lowpoly::TerrainMesh& mesh) {
    std::map<PositionEdge, int> use;
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        for (int e = 0; e < 3; ++e) {
            const Vec3 a = mesh.vertex(f, e), b = mesh.vertex(f, (e + 1) % 3);
            std::array<double, 3> ka{a.x, a.y, a.z}, kb{b.x, b.y, b.z};
            if (kb < ka) std::swap(ka, kb);
            ++use[{ka, kb}];
        }
    }
    return use;
}

inline Vec3 unit_normal(const lowpoly::TerrainMesh& mesh, std::size_t f) {
    const Vec3 a = mesh.vertex(f, 0), b = mesh.vertex(f, 1), c = mesh.vertex(f, 2);
    const Vec3 u{b.x - a.x, b.y - a.y, b.z - a.z}, v{c.x - a.x, c.y - a.y, c.z - a.z};
    const Vec3 n{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
    const double len = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
    return {n.x / len, n.y / len, n.z / len};
}

}  // namespace oracle
