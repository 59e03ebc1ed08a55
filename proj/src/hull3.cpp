#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "wlab/bodies.hpp"
#include "wlab/error.hpp"

namespace wlab {
namespace {

struct HullFace {
    std::uint32_t v[3];
    Vec3 normal;  // unit, outward
    double offset;
    bool alive = true;
    int visit = -1;
};

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

class HullBuilder {
public:
    HullBuilder(std::span<const Vec3> pts, double eps) : pts_(pts), eps_(eps) {}

    void add_face(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        HullFace f;
        f.v[0] = a;
        f.v[1] = b;
        f.v[2] = c;
        Vec3 n = cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
        n *= 1.0 / norm(n);
        f.normal = n;
        f.offset = dot(n, pts_[a]);
        const int id = static_cast<int>(faces_.size());
        faces_.push_back(f);
        for (int e = 0; e < 3; ++e) edges_[edge_key(f.v[e], f.v[(e + 1) % 3])] = id;
    }

    double distance(const HullFace& f, std::uint32_t p) const { return dot(f.normal, pts_[p]) - f.offset; }

    void insert(std::uint32_t p, int stamp) {
        // Seed the visible region at the face that sees p the most, then grow it
        // through neighbours so the region stays connected.
        int seed = -1;
        double best = eps_;
        for (std::size_t i = 0; i < faces_.size(); ++i) {
            if (!faces_[i].alive) continue;
            const double d = distance(faces_[i], p);
            if (d > best) {
                best = d;
                seed = static_cast<int>(i);
            }
        }
        if (seed < 0) return;

        std::vector<int> visible{seed};
        faces_[static_cast<std::size_t>(seed)].visit = stamp;
        for (std::size_t q = 0; q < visible.size(); ++q) {
            const HullFace& f = faces_[static_cast<std::size_t>(visible[q])];
            for (int e = 0; e < 3; ++e) {
                const int nb = edges_.at(edge_key(f.v[(e + 1) % 3], f.v[e]));
                HullFace& g = faces_[static_cast<std::size_t>(nb)];
                if (g.visit == stamp) continue;
                if (distance(g, p) > eps_) {
                    g.visit = stamp;
                    visible.push_back(nb);
                }
            }
        }

        std::vector<std::pair<std::uint32_t, std::uint32_t>> horizon;
        for (int id : visible) {
            const HullFace& f = faces_[static_cast<std::size_t>(id)];
            for (int e = 0; e < 3; ++e) {
                const std::uint32_t a = f.v[e], b = f.v[(e + 1) % 3];
                const int nb = edges_.at(edge_key(b, a));
                if (faces_[static_cast<std::size_t>(nb)].visit != stamp) horizon.emplace_back(a, b);
            }
        }
        for (int id : visible) {
            HullFace& f = faces_[static_cast<std::size_t>(id)];
            f.alive = false;
            for (int e = 0; e < 3; ++e) edges_.erase(edge_key(f.v[e], f.v[(e + 1) % 3]));
        }
        for (const auto& [a, b] : horizon) add_face(a, b, p);

        if (faces_.size() > 4 * alive_count() + 64) compact();
    }

    std::size_t alive_count() const {
        return static_cast<std::size_t>(
            std::count_if(faces_.begin(), faces_.end(), [](const HullFace& f) { return f.alive; }));
    }

    void compact() {
        std::vector<HullFace> kept;
        kept.reserve(faces_.size());
        for (const auto& f : faces_)
            if (f.alive) kept.push_back(f);
        faces_ = std::move(kept);
        edges_.clear();
        for (std::size_t i = 0; i < faces_.size(); ++i)
            for (int e = 0; e < 3; ++e)
                edges_[edge_key(faces_[i].v[e], faces_[i].v[(e + 1) % 3])] = static_cast<int>(i);
    }

    const std::vector<HullFace>& faces() const { return faces_; }

private:
    std::span<const Vec3> pts_;
    double eps_;
    std::vector<HullFace> faces_;
    std::unordered_map<std::uint64_t, int> edges_;
};

}  // namespace

Polytope3 hull3(std::span<const Vec3> points) {
    const std::size_t n = points.size();
    if (n < 4) throw Error(ErrorKind::DegenerateInput, "hull needs at least 4 points");
    Vec3 lo = points[0], hi = points[0];
    for (const auto& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw Error(ErrorKind::DegenerateInput, "non-finite input point");
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    const double eps = 1e-9 * norm(hi - lo);
    if (!(eps > 0.0)) throw Error(ErrorKind::DegenerateInput, "all points coincide");

    // Initial tetrahedron from extreme points.
    std::uint32_t i0 = 0;
    for (std::uint32_t i = 1; i < n; ++i)
        if (points[i].x < points[i0].x) i0 = i;
    std::uint32_t i1 = i0;
    double best = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        const double d = norm2(points[i] - points[i0]);
        if (d > best) { best = d; i1 = i; }
    }
    const Vec3 axis = points[i1] - points[i0];
    std::uint32_t i2 = i0;
    best = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        const double d = norm(cross(axis, points[i] - points[i0])) / norm(axis);
        if (d > best) { best = d; i2 = i; }
    }
    if (best <= eps) throw Error(ErrorKind::DegenerateInput, "points are collinear");
    Vec3 pn = cross(points[i1] - points[i0], points[i2] - points[i0]);
    pn *= 1.0 / norm(pn);
    std::uint32_t i3 = i0;
    best = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        const double d = std::abs(dot(pn, points[i] - points[i0]));
        if (d > best) { best = d; i3 = i; }
    }
    if (best <= eps) throw Error(ErrorKind::DegenerateInput, "points are coplanar");

    HullBuilder builder(points, eps);
    if (dot(pn, points[i3] - points[i0]) > 0.0) std::swap(i1, i2);
    // Now i3 lies below plane (i0, i1, i2) oriented by its right-hand normal.
    builder.add_face(i0, i1, i2);
    builder.add_face(i0, i3, i1);
    builder.add_face(i1, i3, i2);
    builder.add_face(i2, i3, i0);

    int stamp = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (i == i0 || i == i1 || i == i2 || i == i3) continue;
        builder.insert(i, stamp++);
    }

    std::vector<std::int64_t> remap(n, -1);
    std::vector<Vec3> verts;
    std::vector<Triangle> tris;
    for (const auto& f : builder.faces()) {
        if (!f.alive) continue;
        Triangle t{};
        for (int e = 0; e < 3; ++e) {
            if (remap[f.v[e]] < 0) {
                remap[f.v[e]] = static_cast<std::int64_t>(verts.size());
                verts.push_back(points[f.v[e]]);
            }
            t[static_cast<std::size_t>(e)] = static_cast<std::uint32_t>(remap[f.v[e]]);
        }
        tris.push_back(t);
    }
    return Polytope3(std::move(verts), std::move(tris));
}

}  // namespace wlab
