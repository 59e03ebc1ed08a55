#include "wlab/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "wlab/error.hpp"
#include "wlab/functionals.hpp"
#include "wlab/kernels.hpp"

namespace wlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative tolerance for polygon convexity, scaled by diameter^2.
constexpr double kPolygonTol = 1e-12;

double max_pairwise_distance(std::span<const Vec2> v) {
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, norm2(v[i] - v[j]));
    return std::sqrt(best);
}

double bbox_diagonal(std::span<const Vec2> v) {
    Vec2 lo = v[0], hi = v[0];
    for (const auto& p : v) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return norm(hi - lo);
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

// ---------------------------------------------------------------------------
// Polygon2

Polygon2 Polygon2::from_ccw(std::vector<Vec2> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) throw Error(ErrorKind::InvalidPolygon, "polygon needs at least 3 vertices");
    for (const auto& p : vertices)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error(ErrorKind::InvalidPolygon, "non-finite vertex");
    const double diag = bbox_diagonal(vertices);
    if (!(diag > 0.0)) throw Error(ErrorKind::InvalidPolygon, "all vertices coincide");
    const double tol = kPolygonTol * diag * diag;
    double twice_area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices[i];
        const Vec2 b = vertices[(i + 1) % n];
        const Vec2 c = vertices[(i + 2) % n];
        if (norm(b - a) <= 1e-12 * diag)
            throw Error(ErrorKind::InvalidPolygon, "consecutive vertices coincide");
        if (cross(b - a, c - b) <= tol)
            throw Error(ErrorKind::InvalidPolygon, "polygon is not strictly convex at vertex " +
                                                       std::to_string((i + 1) % n));
        twice_area += cross(a, b);
    }
    if (twice_area <= 0.0) throw Error(ErrorKind::InvalidPolygon, "vertices are not counterclockwise");
    // A locally convex CCW polygon can still wind more than once.
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = vertices[(i + 1) % n] - vertices[i];
        const Vec2 e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
        turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    if (std::abs(turning - kTwoPi) > 1e-6)
        throw Error(ErrorKind::InvalidPolygon, "polygon winds more than once");
    return Polygon2(std::move(vertices));
}

double Polygon2::diameter() const { return max_pairwise_distance(vertices_); }

Polygon2 Polygon2::translated(Vec2 t) const {
    std::vector<Vec2> v(vertices_.begin(), vertices_.end());
    for (auto& p : v) p += t;
    return Polygon2(std::move(v));
}

Polygon2 Polygon2::scaled(double s) const {
    if (!(s > 0.0)) throw Error(ErrorKind::BadConfig, "scale factor must be positive");
    std::vector<Vec2> v(vertices_.begin(), vertices_.end());
    for (auto& p : v) p *= s;
    return Polygon2(std::move(v));
}

Polygon2 polygon_from_vertices(std::span<const Vec2> points) {
    if (points.size() < 3)
        throw Error(ErrorKind::FewerThanThreeHullVertices, "fewer than 3 input points");
    std::vector<Vec2> pts(points.begin(), points.end());
    for (const auto& p : pts)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error(ErrorKind::FewerThanThreeHullVertices, "non-finite input point");
    std::sort(pts.begin(), pts.end(),
              [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    const double diag = bbox_diagonal(pts);
    if (!(diag > 0.0)) throw Error(ErrorKind::FewerThanThreeHullVertices, "all points coincide");
    const double tol = kPolygonTol * diag * diag;

    // Monotone chain; a turn with cross <= tol is treated as collinear.
    std::vector<Vec2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= tol) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        const Vec2 p = pts[i];
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= tol) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);

    // Cyclic cleanup of near-collinear or duplicate vertices at the seam.
    bool changed = true;
    while (changed && hull.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < hull.size() && hull.size() >= 3; ++i) {
            const std::size_t n = hull.size();
            const Vec2 a = hull[(i + n - 1) % n], b = hull[i], c = hull[(i + 1) % n];
            if (norm(b - a) <= 1e-12 * diag || cross(b - a, c - b) <= tol) {
                hull.erase(hull.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (hull.size() < 3)
        throw Error(ErrorKind::FewerThanThreeHullVertices, "hull degenerates to a segment or a point");
    return Polygon2::from_ccw(std::move(hull));
}

// ---------------------------------------------------------------------------
// Polytope3

namespace {

double bbox_diagonal3(std::span<const Vec3> v) {
    Vec3 lo = v[0], hi = v[0];
    for (const auto& p : v) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return norm(hi - lo);
}

}  // namespace

Polytope3 Polytope3::from_mesh(std::vector<Vec3> vertices, std::vector<Triangle> faces) {
    if (vertices.size() < 4 || faces.size() < 4)
        throw Error(ErrorKind::InvalidPolytope, "polytope needs at least 4 vertices and 4 faces");
    for (const auto& f : faces)
        for (auto idx : f)
            if (idx >= vertices.size()) throw Error(ErrorKind::InvalidPolytope, "face index out of range");

    // Closed and consistently oriented: each directed edge once, its reverse once.
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
    for (const auto& f : faces)
        for (int e = 0; e < 3; ++e) ++directed[{f[e], f[(e + 1) % 3]}];
    for (const auto& [edge, count] : directed) {
        if (count != 1) throw Error(ErrorKind::InvalidPolytope, "edge used twice in the same direction");
        auto rev = directed.find({edge.second, edge.first});
        if (rev == directed.end() || rev->second != 1)
            throw Error(ErrorKind::InvalidPolytope, "surface is not closed");
    }

    Vec3 centroid;
    for (const auto& v : vertices) centroid += v;
    centroid *= 1.0 / static_cast<double>(vertices.size());
    const double tol = 1e-9 * bbox_diagonal3(vertices);
    for (const auto& f : faces) {
        const Vec3 a = vertices[f[0]], b = vertices[f[1]], c = vertices[f[2]];
        Vec3 nrm = cross(b - a, c - a);
        const double len = norm(nrm);
        if (!(len > 0.0)) throw Error(ErrorKind::InvalidPolytope, "degenerate face");
        nrm *= 1.0 / len;
        const Vec3 fc = (1.0 / 3.0) * (a + b + c);
        if (dot(nrm, fc - centroid) <= 0.0) throw Error(ErrorKind::InvalidPolytope, "face oriented inward");
        for (const auto& v : vertices)
            if (dot(nrm, v - a) > tol) throw Error(ErrorKind::InvalidPolytope, "polytope is not convex");
    }
    return Polytope3(std::move(vertices), std::move(faces));
}

double Polytope3::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            best = std::max(best, norm2(vertices_[i] - vertices_[j]));
    return std::sqrt(best);
}

Polytope3 Polytope3::translated(Vec3 t) const {
    std::vector<Vec3> v(vertices_.begin(), vertices_.end());
    for (auto& p : v) p += t;
    return Polytope3(std::move(v), faces_);
}

Polytope3 Polytope3::scaled(double s) const {
    if (!(s > 0.0)) throw Error(ErrorKind::BadConfig, "scale factor must be positive");
    std::vector<Vec3> v(vertices_.begin(), vertices_.end());
    for (auto& p : v) p *= s;
    return Polytope3(std::move(v), faces_);
}

// ---------------------------------------------------------------------------
// SupportBody2

double SupportGrid::step() const { return kTwoPi / static_cast<double>(h.size()); }

const TrigTable& trig_table(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<TrigTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<TrigTable>();
        slot->cos.resize(n);
        slot->sin.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
            slot->cos[j] = std::cos(t);
            slot->sin[j] = std::sin(t);
        }
    }
    return *slot;
}

SupportGrid sample_support(double a0, std::span<const FourierPair> coeffs, std::size_t n) {
    if (!is_power_of_two(n) || n < 4)
        throw Error(ErrorKind::BadConfig, "support grid size must be a power of two >= 4");
    const TrigTable& trig = trig_table(n);
    std::vector<double> a(coeffs.size()), b(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        a[k] = coeffs[k].a;
        b[k] = coeffs[k].b;
    }
    SupportGrid g;
    g.h.resize(n);
    g.dh.resize(n);
    g.d2h.resize(n);
    kernels::active().fourier_synthesis(a0, a.data(), b.data(), coeffs.size(), trig.cos.data(),
                                        trig.sin.data(), n, g.h.data(), g.dh.data(), g.d2h.data());
    return g;
}

SupportBody2 SupportBody2::make(double a0, std::vector<FourierPair> coeffs) {
    if (coeffs.size() > kMaxModes)
        throw Error(ErrorKind::BadConfig, "support function truncated above the supported mode count");
    if (!std::isfinite(a0)) throw Error(ErrorKind::NotPositive, "non-finite mean support value");
    for (const auto& c : coeffs)
        if (!std::isfinite(c.a) || !std::isfinite(c.b))
            throw Error(ErrorKind::NotConvex, "non-finite Fourier coefficient");
    // Trailing zero modes carry no information.
    while (!coeffs.empty() && coeffs.back().a == 0.0 && coeffs.back().b == 0.0) coeffs.pop_back();

    auto grid = std::make_shared<SupportGrid>(sample_support(a0, coeffs, kGridSize));
    for (std::size_t j = 0; j < grid->size(); ++j) {
        if (!(grid->h[j] > 0.0))
            throw Error(ErrorKind::NotPositive,
                        "support function is not positive at sample " + std::to_string(j));
        if (!(grid->h[j] + grid->d2h[j] > 0.0))
            throw Error(ErrorKind::NotConvex, "h + h'' is not positive at sample " + std::to_string(j));
    }
    return SupportBody2(a0, std::move(coeffs), std::move(grid));
}

SupportBody2 SupportBody2::from_function(const std::function<double(double)>& h, std::size_t modes) {
    if (modes > kMaxModes) throw Error(ErrorKind::BadConfig, "too many Fourier modes requested");
    const std::size_t n = kGridSize;
    const TrigTable& trig = trig_table(n);
    std::vector<double> samples(n);
    for (std::size_t j = 0; j < n; ++j)
        samples[j] = h(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    double a0 = 0.0;
    for (double s : samples) a0 += s;
    a0 /= static_cast<double>(n);
    std::vector<FourierPair> coeffs(modes);
    for (std::size_t k = 1; k <= modes; ++k) {
        double ca = 0.0, cb = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t idx = (k * j) & (n - 1);
            ca += samples[j] * trig.cos[idx];
            cb += samples[j] * trig.sin[idx];
        }
        coeffs[k - 1] = {2.0 * ca / static_cast<double>(n), 2.0 * cb / static_cast<double>(n)};
    }
    return make(a0, std::move(coeffs));
}

SupportBody2 SupportBody2::ellipse(double a, double b, std::size_t modes) {
    if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::NotPositive, "ellipse semi-axes must be positive");
    return from_function(
        [a, b](double t) {
            const double c = std::cos(t), s = std::sin(t);
            return std::sqrt(a * a * c * c + b * b * s * s);
        },
        modes);
}

double SupportBody2::h(double t) const {
    double v = a0_;
    for (std::size_t k = 1; k <= coeffs_.size(); ++k) {
        const double kt = static_cast<double>(k) * t;
        v += coeffs_[k - 1].a * std::cos(kt) + coeffs_[k - 1].b * std::sin(kt);
    }
    return v;
}

double SupportBody2::dh(double t) const {
    double v = 0.0;
    for (std::size_t k = 1; k <= coeffs_.size(); ++k) {
        const double kd = static_cast<double>(k);
        const double kt = kd * t;
        v += kd * (coeffs_[k - 1].b * std::cos(kt) - coeffs_[k - 1].a * std::sin(kt));
    }
    return v;
}

double SupportBody2::d2h(double t) const {
    double v = 0.0;
    for (std::size_t k = 1; k <= coeffs_.size(); ++k) {
        const double kd = static_cast<double>(k);
        const double kt = kd * t;
        v -= kd * kd * (coeffs_[k - 1].a * std::cos(kt) + coeffs_[k - 1].b * std::sin(kt));
    }
    return v;
}

SupportBody2 SupportBody2::translated(Vec2 t) const {
    std::vector<FourierPair> c(coeffs_.begin(), coeffs_.end());
    if (c.empty()) c.resize(1);
    c[0].a += t.x;
    c[0].b += t.y;
    return make(a0_, std::move(c));
}

SupportBody2 SupportBody2::scaled(double s) const {
    if (!(s > 0.0)) throw Error(ErrorKind::BadConfig, "scale factor must be positive");
    std::vector<FourierPair> c(coeffs_.begin(), coeffs_.end());
    for (auto& p : c) {
        p.a *= s;
        p.b *= s;
    }
    return make(a0_ * s, std::move(c));
}

Polygon2 SupportBody2::to_polygon(std::size_t samples) const {
    const SupportGrid g = samples == kGridSize ? *grid_ : sample_support(a0_, coeffs_, samples);
    const TrigTable& trig = trig_table(g.size());
    std::vector<Vec2> pts(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double c = trig.cos[j], s = trig.sin[j];
        pts[j] = {g.h[j] * c - g.dh[j] * s, g.h[j] * s + g.dh[j] * c};
    }
    return polygon_from_vertices(pts);
}

// ---------------------------------------------------------------------------
// PolarCurve

PolarCurve PolarCurve::circle(double radius) {
    return {[radius](double) { return radius; }, [](double) { return 0.0; }, {}, true};
}

PolarCurve PolarCurve::cardioid() {
    return {[](double p) { return 1.0 - std::cos(p); }, [](double p) { return std::sin(p); }, {}, false};
}

PolarCurve PolarCurve::ellipse(double a, double b) {
    // rho = a b / sqrt(b^2 cos^2 + a^2 sin^2)
    auto q = [a, b](double p) {
        const double c = std::cos(p), s = std::sin(p);
        return b * b * c * c + a * a * s * s;
    };
    return {[a, b, q](double p) { return a * b / std::sqrt(q(p)); },
            [a, b, q](double p) {
                const double dq = 2.0 * (a * a - b * b) * std::sin(p) * std::cos(p);
                return -0.5 * a * b * dq / std::pow(q(p), 1.5);
            },
            {},
            true};
}

// ---------------------------------------------------------------------------
// Body variant

int dimension(const Body& body) { return std::holds_alternative<Polytope3>(body) ? 3 : 2; }

std::string kind_name(const Body& body) {
    switch (body.index()) {
        case 0: return "polygon2";
        case 1: return "polytope3";
        default: return "support2";
    }
}

double diameter(const Body& body) {
    return std::visit(
        [](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, SupportBody2>) {
                // width in direction t is h(t) + h(t + pi); diameter = max width
                const auto& g = b.grid();
                const std::size_t n = g.size();
                double best = 0.0;
                for (std::size_t j = 0; j < n / 2; ++j) best = std::max(best, g.h[j] + g.h[j + n / 2]);
                return best;
            } else {
                return b.diameter();
            }
        },
        body);
}

Body translate(const Body& body, std::span<const double> t) {
    if (static_cast<int>(t.size()) != dimension(body))
        throw Error(ErrorKind::BadConfig, "translation vector has the wrong dimension");
    return std::visit(
        [&](const auto& b) -> Body {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Polytope3>)
                return b.translated({t[0], t[1], t[2]});
            else
                return b.translated({t[0], t[1]});
        },
        body);
}

Body scale(const Body& body, double s) {
    return std::visit([s](const auto& b) -> Body { return b.scaled(s); }, body);
}

Vec2 boundary_barycenter(const Polygon2& p) {
    const BodyMoments m = moments(p);
    return {m.first[0] / m.perimeter, m.first[1] / m.perimeter};
}

Vec3 boundary_barycenter(const Polytope3& p) {
    const BodyMoments m = moments(p);
    return {m.first[0] / m.perimeter, m.first[1] / m.perimeter, m.first[2] / m.perimeter};
}

Vec2 boundary_barycenter(const SupportBody2& h) {
    const BodyMoments m = moments(h);
    return {m.first[0] / m.perimeter, m.first[1] / m.perimeter};
}

std::vector<double> boundary_barycenter(const Body& body) {
    const BodyMoments m = moments(body);
    std::vector<double> c(static_cast<std::size_t>(m.dim));
    for (int i = 0; i < m.dim; ++i) c[static_cast<std::size_t>(i)] = m.first[static_cast<std::size_t>(i)] / m.perimeter;
    return c;
}

Body normalize(const Body& body) {
    std::vector<double> c = boundary_barycenter(body);
    for (auto& v : c) v = -v;
    return translate(body, c);
}

}  // namespace wlab
