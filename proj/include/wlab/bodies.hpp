#pragma once

// Convex bodies in the plane and in space. All body types are immutable after
// construction; operations return new bodies.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wlab/geometry.hpp"

namespace wlab {

/// Strictly convex polygon with counterclockwise vertices.
class Polygon2 {
public:
    // Checks the invariants (>= 3 vertices, CCW, strictly convex relative to
    // the diameter) and throws Error(InvalidPolygon) on violation.
    static Polygon2 from_ccw(std::vector<Vec2> vertices);

    std::span<const Vec2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    double diameter() const;

    Polygon2 translated(Vec2 t) const;
    Polygon2 scaled(double s) const;

private:
    explicit Polygon2(std::vector<Vec2> v) : vertices_(std::move(v)) {}
    std::vector<Vec2> vertices_;
};

/// Convex hull (Andrew's monotone chain), counterclockwise, collinear points
/// dropped. Throws FewerThanThreeHullVertices when the hull is a segment or a point.
Polygon2 polygon_from_vertices(std::span<const Vec2> points);

using Triangle = std::array<std::uint32_t, 3>;

/// Closed convex triangulated surface, faces oriented outward.
class Polytope3 {
public:
    // Validates closedness, outward orientation and convexity; throws
    // Error(InvalidPolytope).
    static Polytope3 from_mesh(std::vector<Vec3> vertices, std::vector<Triangle> faces);

    std::span<const Vec3> vertices() const { return vertices_; }
    std::span<const Triangle> faces() const { return faces_; }
    double diameter() const;

    Polytope3 translated(Vec3 t) const;
    Polytope3 scaled(double s) const;

private:
    friend Polytope3 hull3(std::span<const Vec3> points);
    Polytope3(std::vector<Vec3> v, std::vector<Triangle> f)
        : vertices_(std::move(v)), faces_(std::move(f)) {}
    std::vector<Vec3> vertices_;
    std::vector<Triangle> faces_;
};

/// Incremental 3D convex hull with tolerance 1e-9 x bounding-box diagonal.
/// Throws DegenerateInput for fewer than 4 points or a (near-)coplanar cloud.
Polytope3 hull3(std::span<const Vec3> points);

struct FourierPair {
    double a = 0.0;  // cos coefficient
    double b = 0.0;  // sin coefficient
};

/// h, h', h'' sampled at t_j = 2 pi j / n.
struct SupportGrid {
    std::vector<double> h;
    std::vector<double> dh;
    std::vector<double> d2h;
    std::size_t size() const { return h.size(); }
    double step() const;
};

/// Planar convex body given by the truncated Fourier series of its support
/// function h(t) = a0 + sum_{k=1..K} (a_k cos kt + b_k sin kt).
class SupportBody2 {
public:
    static constexpr std::size_t kDefaultModes = 64;
    static constexpr std::size_t kGridSize = 4096;
    static constexpr std::size_t kMaxModes = kGridSize / 4;

    // Throws NotPositive if h <= 0, NotConvex if h + h'' <= 0 anywhere on the
    // validation grid.
    static SupportBody2 make(double a0, std::vector<FourierPair> coeffs);

    // Projects a sampled periodic function onto the first `modes` Fourier modes.
    static SupportBody2 from_function(const std::function<double(double)>& h,
                                      std::size_t modes = kDefaultModes);

    // Support function of the ellipse with semi-axes (a, b) centered at the origin.
    static SupportBody2 ellipse(double a, double b, std::size_t modes = kDefaultModes);

    double a0() const { return a0_; }
    std::span<const FourierPair> coeffs() const { return coeffs_; }
    std::size_t modes() const { return coeffs_.size(); }
    const SupportGrid& grid() const { return *grid_; }

    double h(double t) const;
    double dh(double t) const;
    double d2h(double t) const;

    SupportBody2 translated(Vec2 t) const;
    SupportBody2 scaled(double s) const;

    // Boundary points at `samples` uniform normal angles.
    Polygon2 to_polygon(std::size_t samples = kGridSize) const;

private:
    SupportBody2(double a0, std::vector<FourierPair> c, std::shared_ptr<const SupportGrid> g)
        : a0_(a0), coeffs_(std::move(c)), grid_(std::move(g)) {}
    double a0_;
    std::vector<FourierPair> coeffs_;
    std::shared_ptr<const SupportGrid> grid_;
};

/// Synthesizes h, h', h'' of the given coefficients on an n-point uniform grid
/// (n a power of two) using the active kernel table.
SupportGrid sample_support(double a0, std::span<const FourierPair> coeffs, std::size_t n);

/// cos/sin of 2 pi j / n, j = 0..n-1, cached per n.
struct TrigTable {
    std::vector<double> cos;
    std::vector<double> sin;
};
const TrigTable& trig_table(std::size_t n);

/// Star-shaped curve rho(phi) in polar coordinates, phi in [0, 2 pi].
struct PolarCurve {
    std::function<double(double)> rho;
    std::function<double(double)> drho;
    std::vector<double> breakpoints;  // interior points where rho is not smooth
    bool convex_expected = true;

    static PolarCurve circle(double radius);
    static PolarCurve cardioid();                 // rho = 1 - cos(phi)
    static PolarCurve ellipse(double a, double b);  // centered, semi-axes a, b
};

using Body = std::variant<Polygon2, Polytope3, SupportBody2>;

int dimension(const Body& body);
std::string kind_name(const Body& body);  // "polygon2" | "polytope3" | "support2"
double diameter(const Body& body);

Body translate(const Body& body, std::span<const double> t);
Body scale(const Body& body, double s);

Vec2 boundary_barycenter(const Polygon2& p);
Vec3 boundary_barycenter(const Polytope3& p);
Vec2 boundary_barycenter(const SupportBody2& h);
std::vector<double> boundary_barycenter(const Body& body);

/// Translates the body so that its boundary barycenter is the origin.
Body normalize(const Body& body);

}  // namespace wlab
