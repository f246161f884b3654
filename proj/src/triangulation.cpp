#include "lowpoly/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace lowpoly::triangulation {

Circumcircle circumcircle(Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 ab = b - a;
    const Vec2 ac = c - a;
    const double twice_area = cross(ab, ac);
    const double scale = std::max({length_sq(ab), length_sq(ac), distance_sq(b, c)});
    if (!(std::abs(twice_area) > 1e-12 * scale)) {
        throw DegeneracyError("circumcircle of collinear points");
    }
    const double d = 2.0 * twice_area;
    const double ab_sq = length_sq(ab);
    const double ac_sq = length_sq(ac);
    const Vec2 offset{(ac.z * ab_sq - ab.z * ac_sq) / d, (ab.x * ac_sq - ac.x * ab_sq) / d};
    return {a + offset, length_sq(offset)};
}

namespace {

// Directions at angles pi/2 + 0.1 + k * 2pi/3, written out so that the
// symbolic predicates do not depend on the platform's libm.
constexpr std::array<Vec2, 3> kSuperDirections = {{
    {-0.09983341664682818, 0.9950041652780257},
    {-0.8117821756786866, -0.5839603576017621},
    {0.9116155923255147, -0.4110438076762634},
}};

}  // namespace

SuperTriangle super_triangle(const sampling::PointSet& points) {
    double min_x = std::numeric_limits<double>::infinity();
    double min_z = min_x;
    double max_x = -min_x;
    double max_z = -min_x;
    for (const Vec2& p : points.points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_z = std::min(min_z, p.z);
        max_z = std::max(max_z, p.z);
    }
    if (points.points.empty()) {
        min_x = max_x = min_z = max_z = 0.0;
    }
    const Vec2 center{0.5 * (min_x + max_x), 0.5 * (min_z + max_z)};
    const double diagonal = std::hypot(max_x - min_x, max_z - min_z);
    const double scale = diagonal > 0.0 ? diagonal : 1.0;
    // The inscribed circle must clear the bounding circle (radius diag/2) by
    // 10 diagonals; 12 leaves slack. Circumradius of an equilateral
    // triangle is twice its inradius.
    const double circumradius = 2.0 * 12.0 * scale;

    SuperTriangle st;
    st.center = center;
    for (int k = 0; k < 3; ++k) {
        st.directions[k] = kSuperDirections[k];
        st.vertices[k] = center + circumradius * kSuperDirections[k];
    }
    return st;
}

int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double relative_tolerance) {
    const double adx = a.x - d.x, adz = a.z - d.z;
    const double bdx = b.x - d.x, bdz = b.z - d.z;
    const double cdx = c.x - d.x, cdz = c.z - d.z;
    const double alift = adx * adx + adz * adz;
    const double blift = bdx * bdx + bdz * bdz;
    const double clift = cdx * cdx + cdz * cdz;
    const double det = alift * (bdx * cdz - cdx * bdz) + blift * (cdx * adz - adx * cdz) +
                       clift * (adx * bdz - bdx * adz);
    const double permanent = alift * (std::abs(bdx * cdz) + std::abs(cdx * bdz)) +
                             blift * (std::abs(cdx * adz) + std::abs(adx * cdz)) +
                             clift * (std::abs(adx * bdz) + std::abs(bdx * adz));
    if (std::abs(det) <= relative_tolerance * permanent) return 0;
    return det > 0.0 ? 1 : -1;
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Slot {
    std::array<std::uint32_t, 3> v{};
    // nbr[i] is the triangle across the edge opposite v[i]
    std::array<std::uint32_t, 3> nbr{kNone, kNone, kNone};
    bool alive = false;
};

struct BoundaryEdge {
    std::uint32_t a;
    std::uint32_t b;
    std::uint32_t outer;
};

class Builder {
  public:
    explicit Builder(const sampling::PointSet& input)
        : pts_(input.points), n_(static_cast<std::uint32_t>(input.points.size())) {
        const SuperTriangle st = super_triangle(input);
        dirs_ = st.directions;
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const Vec2 di = dirs_[i];
                const Vec2 dj = dirs_[j];
                const double d = 2.0 * cross(di, dj);
                const double di_sq = length_sq(di);
                const double dj_sq = length_sq(dj);
                far_center_[i][j] = far_center_[j][i] =
                    Vec2{(dj.z * di_sq - di.z * dj_sq) / d, (di.x * dj_sq - dj.x * di_sq) / d};
            }
        }

        double min_x = std::numeric_limits<double>::infinity(), min_z = min_x;
        double max_x = -min_x, max_z = -min_x;
        for (const Vec2& p : pts_) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_z = std::min(min_z, p.z);
            max_z = std::max(max_z, p.z);
        }
        min_twice_area_ = 2e-12 * (max_x - min_x) * (max_z - min_z);

        // locate-acceleration grid, roughly two points per cell
        grid_min_ = {min_x, min_z};
        const double cells_per_side = std::max(1.0, std::floor(std::sqrt(static_cast<double>(n_) / 2.0)));
        grid_dim_ = static_cast<long>(cells_per_side);
        grid_cell_x_ = std::max((max_x - min_x) / cells_per_side, 1e-300);
        grid_cell_z_ = std::max((max_z - min_z) / cells_per_side, 1e-300);
        grid_.assign(static_cast<std::size_t>(grid_dim_ * grid_dim_), kNone);

        vertex_tri_.assign(n_, kNone);
        slots_.reserve(2 * static_cast<std::size_t>(n_) + 8);
        stamp_.reserve(slots_.capacity());
        conflict_.reserve(slots_.capacity());

        Slot root;
        root.v = {n_, n_ + 1, n_ + 2};
        root.alive = true;
        slots_.push_back(root);
        stamp_.push_back(0);
        conflict_.push_back(0);
        last_ = 0;
    }

    void insert(std::uint32_t p_index) {
        const Vec2 p = pts_[p_index];
        ++epoch_;

        const std::uint32_t start = locate(p, p_index);
        collect_cavity(start, p);
        retriangulate(p_index);
        remember(p_index, p);
    }

    TriangleMesh2D finish(const sampling::PointSet& input) const {
        TriangleMesh2D mesh;
        mesh.points = input;
        for (const Slot& s : slots_) {
            if (!s.alive || s.v[0] >= n_ || s.v[1] >= n_ || s.v[2] >= n_) continue;
            mesh.triangles.push_back({s.v[0], s.v[1], s.v[2]});
        }
        return mesh;
    }

  private:
    bool is_super(std::uint32_t v) const { return v >= n_; }
    Vec2 dir(std::uint32_t v) const { return dirs_[v - n_]; }

    /// Sign of p relative to the directed edge u -> v (positive = left).
    /// `min_twice_area` is the degeneracy threshold for finite edges.
    double side(std::uint32_t u, std::uint32_t v, Vec2 p, double min_twice_area) const {
        const bool su = is_super(u);
        const bool sv = is_super(v);
        if (su && sv) return 1.0;
        if (!su && !sv) {
            const double o = cross(pts_[v] - pts_[u], p - pts_[u]);
            return std::abs(o) <= min_twice_area ? 0.0 : o;
        }
        if (!su) {
            const double o = cross(dir(v), p - pts_[u]);
            return std::abs(o) <= 1e-14 * std::sqrt(length_sq(p - pts_[u])) ? 0.0 : o;
        }
        const double o = cross(dir(u), pts_[v] - p);
        return std::abs(o) <= 1e-14 * std::sqrt(length_sq(pts_[v] - p)) ? 0.0 : o;
    }

    bool in_conflict(const Slot& s, Vec2 p) const {
        int supers = 0;
        for (std::uint32_t v : s.v) supers += is_super(v) ? 1 : 0;
        if (supers == 0) {
            return incircle_sign(pts_[s.v[0]], pts_[s.v[1]], pts_[s.v[2]], p) > 0;
        }
        if (supers == 3) return true;
        if (supers == 1) {
            // circle through a finite edge and a far vertex: the open half-plane
            // beyond the edge, plus the open chord itself
            int k = 0;
            while (!is_super(s.v[k])) ++k;
            const Vec2 a = pts_[s.v[(k + 1) % 3]];
            const Vec2 b = pts_[s.v[(k + 2) % 3]];
            const double o = cross(b - a, p - a);
            const double tol = 1e-14 * std::sqrt(length_sq(b - a) * length_sq(p - a));
            if (o > tol) return true;
            if (o < -tol) return false;
            return dot(p - a, p - b) < 0.0;
        }
        // two far vertices: half-plane through the finite vertex facing the
        // circumcentre of the far directions
        int k = 0;
        while (is_super(s.v[k])) ++k;
        const std::uint32_t i = s.v[(k + 1) % 3] - n_;
        const std::uint32_t j = s.v[(k + 2) % 3] - n_;
        return dot(p - pts_[s.v[k]], far_center_[i][j]) > 0.0;
    }

    std::uint32_t locate(Vec2 p, std::uint32_t p_index) {
        std::uint32_t t = start_hint(p);
        const std::size_t max_steps = 4 * slots_.size() + 16;
        for (std::size_t step = 0; step < max_steps; ++step) {
            const Slot& s = slots_[t];
            bool moved = false;
            for (int e0 = 0; e0 < 3; ++e0) {
                const int e = static_cast<int>((e0 + step) % 3);
                const std::uint32_t u = s.v[(e + 1) % 3];
                const std::uint32_t v = s.v[(e + 2) % 3];
                if (s.nbr[e] != kNone && side(u, v, p, 0.0) < 0.0) {
                    t = s.nbr[e];
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                for (std::uint32_t v : s.v) {
                    if (v < n_ && pts_[v] == p) {
                        throw TriangulationError("duplicate point at index " + std::to_string(p_index));
                    }
                }
                if (in_conflict(s, p)) return t;
                break;
            }
        }
        // walk failed to settle on a conflicting triangle; scan
        for (std::uint32_t i = 0; i < slots_.size(); ++i) {
            if (slots_[i].alive && in_conflict(slots_[i], p)) return i;
        }
        throw TriangulationError("point location failed");
    }

    std::uint32_t start_hint(Vec2 p) const {
        const long cx = std::clamp(static_cast<long>((p.x - grid_min_.x) / grid_cell_x_), 0L, grid_dim_ - 1);
        const long cz = std::clamp(static_cast<long>((p.z - grid_min_.z) / grid_cell_z_), 0L, grid_dim_ - 1);
        for (long dz = -1; dz <= 1; ++dz) {
            for (long dx = -1; dx <= 1; ++dx) {
                const long x = cx + dx;
                const long z = cz + dz;
                if (x < 0 || z < 0 || x >= grid_dim_ || z >= grid_dim_) continue;
                const std::uint32_t v = grid_[static_cast<std::size_t>(z * grid_dim_ + x)];
                if (v == kNone) continue;
                const std::uint32_t t = vertex_tri_[v];
                if (t != kNone && slots_[t].alive &&
                    std::find(slots_[t].v.begin(), slots_[t].v.end(), v) != slots_[t].v.end()) {
                    return t;
                }
            }
        }
        return slots_[last_].alive ? last_ : first_alive();
    }

    std::uint32_t first_alive() const {
        for (std::uint32_t i = 0; i < slots_.size(); ++i) {
            if (slots_[i].alive) return i;
        }
        return 0;
    }

    bool test_conflict(std::uint32_t t, Vec2 p) {
        if (stamp_[t] != epoch_) {
            stamp_[t] = epoch_;
            conflict_[t] = in_conflict(slots_[t], p) ? 1 : 0;
        }
        return conflict_[t] != 0;
    }

    void collect_cavity(std::uint32_t start, Vec2 p) {
        cavity_.clear();
        stamp_[start] = epoch_;
        conflict_[start] = 1;
        cavity_.push_back(start);
        for (std::size_t i = 0; i < cavity_.size(); ++i) {
            for (std::uint32_t n : slots_[cavity_[i]].nbr) {
                if (n == kNone || stamp_[n] == epoch_) continue;
                if (test_conflict(n, p)) cavity_.push_back(n);
            }
        }

        // The cavity must be star-shaped from p with non-degenerate fan
        // triangles; grow it across any boundary edge that fails that.
        for (;;) {
            trace_boundary();
            bool grown = false;
            for (const BoundaryEdge& e : boundary_) {
                if (side(e.a, e.b, p, min_twice_area_) > 0.0) continue;
                if (e.outer == kNone) throw TriangulationError("cavity boundary not visible from point");
                if (conflict_[e.outer] == 1 && stamp_[e.outer] == epoch_) continue;
                stamp_[e.outer] = epoch_;
                conflict_[e.outer] = 1;
                cavity_.push_back(e.outer);
                grown = true;
            }
            if (!grown) break;
        }
    }

    void trace_boundary() {
        boundary_.clear();
        for (std::uint32_t t : cavity_) {
            const Slot& s = slots_[t];
            for (int e = 0; e < 3; ++e) {
                const std::uint32_t n = s.nbr[e];
                if (n != kNone && stamp_[n] == epoch_ && conflict_[n] == 1) continue;
                boundary_.push_back({s.v[(e + 1) % 3], s.v[(e + 2) % 3], n});
            }
        }
    }

    void retriangulate(std::uint32_t p_index) {
        // every vertex of a removed triangle must stay on the cavity boundary
        for (std::uint32_t t : cavity_) {
            for (std::uint32_t v : slots_[t].v) {
                const bool on_boundary = std::any_of(boundary_.begin(), boundary_.end(),
                                                     [v](const BoundaryEdge& e) { return e.a == v; });
                if (!on_boundary) throw TriangulationError("cavity swallowed a vertex");
            }
        }

        const std::size_t reuse = cavity_.size();
        for (std::uint32_t t : cavity_) slots_[t].alive = false;

        created_.clear();
        for (std::size_t i = 0; i < boundary_.size(); ++i) {
            const BoundaryEdge& e = boundary_[i];
            std::uint32_t idx;
            if (i < reuse) {
                idx = cavity_[i];
            } else {
                idx = static_cast<std::uint32_t>(slots_.size());
                slots_.emplace_back();
                stamp_.push_back(0);
                conflict_.push_back(0);
            }
            Slot& s = slots_[idx];
            s.v = {e.a, e.b, p_index};
            s.nbr = {kNone, kNone, e.outer};
            s.alive = true;
            created_.push_back(idx);
            if (e.outer != kNone) {
                Slot& o = slots_[e.outer];
                for (int k = 0; k < 3; ++k) {
                    if (o.v[(k + 1) % 3] == e.b && o.v[(k + 2) % 3] == e.a) {
                        o.nbr[k] = idx;
                        break;
                    }
                }
            }
        }
        // stitch the fan: edge (b, p) of the triangle on (a, b) meets the
        // triangle whose boundary edge starts at b
        for (std::size_t i = 0; i < created_.size(); ++i) {
            const std::uint32_t b = boundary_[i].b;
            for (std::size_t j = 0; j < created_.size(); ++j) {
                if (boundary_[j].a == b) {
                    slots_[created_[i]].nbr[0] = created_[j];
                    slots_[created_[j]].nbr[1] = created_[i];
                    break;
                }
            }
        }
        for (std::uint32_t idx : created_) {
            for (std::uint32_t v : slots_[idx].v) {
                if (v < n_) vertex_tri_[v] = idx;
            }
        }
        last_ = created_.front();
    }

    void remember(std::uint32_t v, Vec2 p) {
        const long cx = std::clamp(static_cast<long>((p.x - grid_min_.x) / grid_cell_x_), 0L, grid_dim_ - 1);
        const long cz = std::clamp(static_cast<long>((p.z - grid_min_.z) / grid_cell_z_), 0L, grid_dim_ - 1);
        grid_[static_cast<std::size_t>(cz * grid_dim_ + cx)] = v;
    }

    const std::vector<Vec2>& pts_;
    std::uint32_t n_;
    std::array<Vec2, 3> dirs_{};
    std::array<std::array<Vec2, 3>, 3> far_center_{};
    double min_twice_area_ = 0.0;

    Vec2 grid_min_;
    long grid_dim_ = 1;
    double grid_cell_x_ = 1.0;
    double grid_cell_z_ = 1.0;
    std::vector<std::uint32_t> grid_;

    std::vector<Slot> slots_;
    std::vector<std::uint64_t> stamp_;
    std::vector<std::uint8_t> conflict_;
    std::vector<std::uint32_t> vertex_tri_;
    std::uint64_t epoch_ = 0;
    std::uint32_t last_ = 0;

    std::vector<std::uint32_t> cavity_;
    std::vector<BoundaryEdge> boundary_;
    std::vector<std::uint32_t> created_;
};

void check_not_collinear(const std::vector<Vec2>& pts) {
    const Vec2 a = pts[0];
    std::size_t j = 1;
    while (j < pts.size() && pts[j] == a) ++j;
    if (j == pts.size()) throw TriangulationError("all points coincide");
    const Vec2 b = pts[j];
    const double ab = std::sqrt(distance_sq(a, b));
    for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const double o = cross(b - a, pts[k] - a);
        if (std::abs(o) > 1e-12 * ab * std::sqrt(distance_sq(a, pts[k]))) return;
    }
    throw TriangulationError("all points are collinear");
}

}  // namespace

TriangleMesh2D bowyer_watson(const sampling::PointSet& points) {
    if (points.size() < 3) throw TriangulationError("need at least 3 points");
    if (points.size() >= std::numeric_limits<std::uint32_t>::max() - 3) {
        throw TriangulationError("too many points");
    }
    check_not_collinear(points.points);

    Builder builder(points);
    for (std::uint32_t i = 0; i < points.size(); ++i) builder.insert(i);
    return builder.finish(points);
}

std::size_t AdjacencyGraph::edge_count() const {
    std::size_t degree_sum = 0;
    for (const auto& n : neighbors) degree_sum += n.size();
    return degree_sum / 2;
}

bool AdjacencyGraph::adjacent(std::uint32_t a, std::uint32_t b) const {
    const auto& n = neighbors[a];
    return std::binary_search(n.begin(), n.end(), b);
}

AdjacencyGraph build_adjacency(const TriangleMesh2D& mesh) {
    AdjacencyGraph graph;
    graph.neighbors.resize(mesh.points.size());
    for (const Triangle& t : mesh.triangles) {
        for (int i = 0; i < 3; ++i) {
            const std::uint32_t a = t[i];
            const std::uint32_t b = t[(i + 1) % 3];
            graph.neighbors[a].push_back(b);
            graph.neighbors[b].push_back(a);
        }
    }
    for (auto& n : graph.neighbors) {
        std::sort(n.begin(), n.end());
        n.erase(std::unique(n.begin(), n.end()), n.end());
    }
    return graph;
}

std::vector<std::uint32_t> hull_vertices(const TriangleMesh2D& mesh) {
    std::vector<std::uint64_t> edges;
    edges.reserve(3 * mesh.triangles.size());
    for (const Triangle& t : mesh.triangles) {
        for (int i = 0; i < 3; ++i) {
            const std::uint32_t a = t[i];
            const std::uint32_t b = t[(i + 1) % 3];
            edges.push_back((static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b));
        }
    }
    std::sort(edges.begin(), edges.end());
    std::vector<std::uint32_t> hull;
    for (std::size_t i = 0; i < edges.size();) {
        std::size_t j = i;
        while (j < edges.size() && edges[j] == edges[i]) ++j;
        if (j - i == 1) {
            hull.push_back(static_cast<std::uint32_t>(edges[i] >> 32));
            hull.push_back(static_cast<std::uint32_t>(edges[i]));
        }
        i = j;
    }
    std::sort(hull.begin(), hull.end());
    hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
    return hull;
}

}  // namespace lowpoly::triangulation
