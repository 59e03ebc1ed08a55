#include "wlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "wlab/error.hpp"

namespace wlab {
namespace {

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

double longest_edge(const Mesh& m) {
    double h = 0.0;
    for (const Triangle& t : m.triangles)
        for (int e = 0; e < 3; ++e) h = std::max(h, norm(m.nodes[t[e]] - m.nodes[t[(e + 1) % 3]]));
    return h;
}

Mesh fan(const std::vector<Vec2>& ring, Vec2 center) {
    Mesh m;
    m.nodes.push_back(center);
    const auto n = static_cast<std::uint32_t>(ring.size());
    for (std::uint32_t i = 0; i < n; ++i) {
        m.nodes.push_back(ring[i]);
        m.boundary_nodes.push_back(i + 1);
        m.triangles.push_back({0, i + 1, (i + 1) % n + 1});
    }
    m.h_max = longest_edge(m);
    return m;
}

}  // namespace

Mesh refine(const Mesh& mesh, const BoundarySnap& snap) {
    Mesh out;
    out.nodes = mesh.nodes;
    out.level = mesh.level + 1;
    std::unordered_map<std::uint64_t, std::uint32_t> mid;
    mid.reserve(mesh.triangles.size() * 2);
    std::unordered_map<std::uint64_t, bool> on_boundary;
    const std::size_t nb = mesh.boundary_nodes.size();
    for (std::size_t i = 0; i < nb; ++i)
        on_boundary[edge_key(mesh.boundary_nodes[i], mesh.boundary_nodes[(i + 1) % nb])] = true;

    const auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
        const std::uint64_t key = edge_key(a, b);
        if (auto it = mid.find(key); it != mid.end()) return it->second;
        Vec2 p = 0.5 * (mesh.nodes[a] + mesh.nodes[b]);
        if (snap && on_boundary.count(key)) p = snap(p);
        const auto idx = static_cast<std::uint32_t>(out.nodes.size());
        out.nodes.push_back(p);
        mid.emplace(key, idx);
        return idx;
    };

    out.triangles.reserve(mesh.triangles.size() * 4);
    for (const Triangle& t : mesh.triangles) {
        const std::uint32_t ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
        out.triangles.push_back({t[0], ab, ca});
        out.triangles.push_back({ab, t[1], bc});
        out.triangles.push_back({ca, bc, t[2]});
        out.triangles.push_back({ab, bc, ca});
    }
    out.boundary_nodes.reserve(2 * nb);
    for (std::size_t i = 0; i < nb; ++i) {
        const std::uint32_t a = mesh.boundary_nodes[i], b = mesh.boundary_nodes[(i + 1) % nb];
        out.boundary_nodes.push_back(a);
        out.boundary_nodes.push_back(mid.at(edge_key(a, b)));
    }
    out.h_max = longest_edge(out);
    return out;
}

Mesh mesh_polygon(const Polygon2& poly, int refinements) {
    if (refinements < 0) throw Error(ErrorKind::BadConfig, "refinements must be >= 0");
    const auto v = poly.vertices();
    // area centroid
    double a = 0.0;
    Vec2 c{0, 0};
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 p = v[i], q = v[(i + 1) % v.size()];
        const double w = cross(p, q);
        a += w;
        c = c + w * (p + q);
    }
    c = (1.0 / (3.0 * a)) * c;
    Mesh m = fan(std::vector<Vec2>(v.begin(), v.end()), c);
    for (int r = 0; r < refinements; ++r) m = refine(m);
    return m;
}

Mesh mesh_disk(double radius, int refinements, std::size_t base_sides) {
    if (!(radius > 0.0)) throw Error(ErrorKind::NotPositive, "disk radius must be positive");
    if (base_sides < 3) throw Error(ErrorKind::BadConfig, "disk mesh needs at least 3 sides");
    if (refinements < 0) throw Error(ErrorKind::BadConfig, "refinements must be >= 0");
    std::vector<Vec2> ring(base_sides);
    for (std::size_t i = 0; i < base_sides; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(base_sides);
        ring[i] = {radius * std::cos(t), radius * std::sin(t)};
    }
    Mesh m = fan(ring, {0.0, 0.0});
    const BoundarySnap snap = [radius](Vec2 p) { return (radius / norm(p)) * p; };
    for (int r = 0; r < refinements; ++r) m = refine(m, snap);
    return m;
}

std::size_t edge_count(const Mesh& mesh) {
    std::unordered_map<std::uint64_t, bool> edges;
    for (const Triangle& t : mesh.triangles)
        for (int e = 0; e < 3; ++e) edges[edge_key(t[e], t[(e + 1) % 3])] = true;
    return edges.size();
}

long euler_characteristic(const Mesh& mesh) {
    return static_cast<long>(mesh.nodes.size()) - static_cast<long>(edge_count(mesh)) +
           static_cast<long>(mesh.triangles.size());
}

Polygon2 boundary_polygon(const Mesh& mesh) {
    std::vector<Vec2> ring;
    ring.reserve(mesh.boundary_nodes.size());
    for (auto i : mesh.boundary_nodes) ring.push_back(mesh.nodes[i]);
    // midpoints on straight edges are collinear; the hull drops them
    return polygon_from_vertices(ring);
}

}  // namespace wlab
