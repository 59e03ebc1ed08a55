#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "wlab/bodies.hpp"

namespace wlab {

// {"kind":"polygon2"|"polytope3"|"support2", "vertices":[[x,y],...] | [[x,y,z],...],
//  "faces":[[i,j,k],...], "a0":f, "coeffs":[[a_k,b_k],...]}
//
// polygon2 vertices go through the convex hull, polytope3 without faces goes
// through hull3, polytope3 with faces is validated as given.
Body body_from_json(const nlohmann::json& j);
nlohmann::json body_to_json(const Body& body);

Body read_body(const std::filesystem::path& path);
void write_body(const std::filesystem::path& path, const Body& body);

}  // namespace wlab
