#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wlab/bodies.hpp"

namespace wlab {

struct Mesh {
    std::vector<Vec2> nodes;
    std::vector<Triangle> triangles;              // counterclockwise
    std::vector<std::uint32_t> boundary_nodes;    // counterclockwise cycle
    double h_max = 0.0;
    int level = 0;
};

/// Moves a new boundary midpoint; identity for straight polygon edges.
using BoundarySnap = std::function<Vec2(Vec2)>;

/// Fan from the area centroid, then `refinements` rounds of 4-way splitting.
Mesh mesh_polygon(const Polygon2& poly, int refinements);

/// Regular `base_sides`-gon fan inscribed in the circle of `radius` about the
/// origin, with each new boundary midpoint pushed onto the circle.
Mesh mesh_disk(double radius, int refinements, std::size_t base_sides = 8);

/// One round of uniform 4-way refinement.
Mesh refine(const Mesh& mesh, const BoundarySnap& snap = {});

/// Number of distinct edges.
std::size_t edge_count(const Mesh& mesh);

/// V - E + F; 1 for a triangulated disk.
long euler_characteristic(const Mesh& mesh);

/// The boundary cycle as a polygon, collinear nodes removed.
Polygon2 boundary_polygon(const Mesh& mesh);

}  // namespace wlab
