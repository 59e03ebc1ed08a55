#pragma once

#include <cstdint>
#include <random>

#include "wlab/bodies.hpp"

namespace wlab {

/// Independent generator for body `index` of a sweep seeded with `seed`, so
/// sweeps give the same bodies regardless of how work is split across threads.
std::mt19937_64 sweep_rng(std::uint64_t seed, std::uint64_t index);

/// Hull of `points` uniform samples of the unit disk.
Polygon2 random_disk_hull(std::mt19937_64& rng, std::size_t points);

/// Hull of `points` uniform samples of the unit ball.
Polytope3 random_ball_hull(std::mt19937_64& rng, std::size_t points);

/// Valid support body with `modes` random modes; `strength` in (0, 1) sets how
/// close h + h'' gets to zero.
SupportBody2 random_support_body(std::mt19937_64& rng, std::size_t modes, double strength = 0.8);

/// Generator used by the sweeps: kind "polygon2" (5-50 disk points),
/// "polytope3" (8-60 ball points) or "support2" (2-16 modes).
Body random_body(const std::string& kind, std::uint64_t seed, std::uint64_t index);

/// Convex polygon with exactly `sides` vertices: sorted random angles on the
/// unit circle (gaps at least a fifth of the mean), stretched along x by a
/// factor in [0.5, 1.5] and rotated.
Polygon2 random_convex_polygon(std::mt19937_64& rng, std::size_t sides);

/// Quasi-uniform points on the unit sphere (Fibonacci lattice).
std::vector<Vec3> fibonacci_sphere(std::size_t count);

/// Regular polygon with `sides` vertices on the circle of radius `radius`.
Polygon2 inscribed_regular_polygon(std::size_t sides, double radius = 1.0);

}  // namespace wlab
