#include "wlab/body_io.hpp"

#include <fstream>

#include "wlab/error.hpp"

namespace wlab {

Body body_from_json(const nlohmann::json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "polygon2") {
            std::vector<Vec2> pts;
            for (const auto& v : j.at("vertices")) {
                if (v.size() != 2) throw Error(ErrorKind::BadConfig, "polygon2 vertex needs 2 coordinates");
                pts.push_back({v[0].get<double>(), v[1].get<double>()});
            }
            return polygon_from_vertices(pts);
        }
        if (kind == "polytope3") {
            std::vector<Vec3> pts;
            for (const auto& v : j.at("vertices")) {
                if (v.size() != 3) throw Error(ErrorKind::BadConfig, "polytope3 vertex needs 3 coordinates");
                pts.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
            }
            if (!j.contains("faces")) return hull3(pts);
            std::vector<Triangle> faces;
            for (const auto& f : j.at("faces")) {
                if (f.size() != 3) throw Error(ErrorKind::BadConfig, "faces must be triangles");
                faces.push_back({f[0].get<std::uint32_t>(), f[1].get<std::uint32_t>(), f[2].get<std::uint32_t>()});
            }
            return Polytope3::from_mesh(std::move(pts), std::move(faces));
        }
        if (kind == "support2") {
            std::vector<FourierPair> coeffs;
            if (j.contains("coeffs"))
                for (const auto& c : j.at("coeffs")) {
                    if (c.size() != 2) throw Error(ErrorKind::BadConfig, "coeffs entries are [a_k, b_k]");
                    coeffs.push_back({c[0].get<double>(), c[1].get<double>()});
                }
            return SupportBody2::make(j.at("a0").get<double>(), std::move(coeffs));
        }
        throw Error(ErrorKind::BadConfig, "unknown body kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::BadConfig, std::string("malformed body JSON: ") + e.what());
    }
}

nlohmann::json body_to_json(const Body& body) {
    nlohmann::json j;
    j["kind"] = kind_name(body);
    if (const auto* p = std::get_if<Polygon2>(&body)) {
        auto& v = j["vertices"] = nlohmann::json::array();
        for (const auto& q : p->vertices()) v.push_back({q.x, q.y});
    } else if (const auto* t = std::get_if<Polytope3>(&body)) {
        auto& v = j["vertices"] = nlohmann::json::array();
        for (const auto& q : t->vertices()) v.push_back({q.x, q.y, q.z});
        auto& f = j["faces"] = nlohmann::json::array();
        for (const auto& tri : t->faces()) f.push_back({tri[0], tri[1], tri[2]});
    } else {
        const auto& s = std::get<SupportBody2>(body);
        j["a0"] = s.a0();
        auto& c = j["coeffs"] = nlohmann::json::array();
        for (const auto& pair : s.coeffs()) c.push_back({pair.a, pair.b});
    }
    return j;
}

Body read_body(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open body file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::BadConfig, "cannot parse " + path.string() + ": " + e.what());
    }
    return body_from_json(j);
}

void write_body(const std::filesystem::path& path, const Body& body) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write body file " + path.string());
    out << body_to_json(body).dump(2) << '\n';
}

}  // namespace wlab
