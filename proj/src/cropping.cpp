#include "wlab/cropping.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wlab/error.hpp"

namespace wlab {
namespace {

struct Cut {
    std::vector<double> u;
    double level = 0.0;
};

Cut choose_cut(const Body& body, const FunctionalReport& rep,
               std::optional<std::span<const double>> direction) {
    const int n = dimension(body);
    Cut c;
    if (direction) {
        if (static_cast<int>(direction->size()) != n)
            throw Error(ErrorKind::BadConfig, "cut direction has the wrong dimension");
        double len = 0.0;
        for (double d : *direction) len += d * d;
        len = std::sqrt(len);
        if (!(len > 0.0)) throw Error(ErrorKind::BadConfig, "cut direction must be nonzero");
        for (double d : *direction) c.u.push_back(d / len);
    } else {
        if (!(rep.r_max > 0.0)) throw Error(ErrorKind::CutMissesBody, "r_max is zero");
        for (int i = 0; i < n; ++i) c.u.push_back(rep.x_max[i] / rep.r_max);
    }
    return c;
}

template <class P>
std::pair<double, double> extent(std::span<const P> pts, const std::vector<double>& u) {
    double lo = 1e300, hi = -1e300;
    for (const auto& p : pts) {
        double s = 0.0;
        if constexpr (std::is_same_v<P, Vec2>) s = p.x * u[0] + p.y * u[1];
        else s = p.x * u[0] + p.y * u[1] + p.z * u[2];
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return {lo, hi};
}

void check_level(double eps, double level, double lo) {
    if (!(eps > 0.0) || !(level > lo))
        throw Error(ErrorKind::CutMissesBody, "cut plane does not meet the body interior");
    if (!(level > 0.0))
        throw Error(ErrorKind::CutThroughOrigin, "cut removes the origin");
}

double shoelace(const std::vector<Vec2>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * std::abs(a);
}

struct Clip2 {
    Polygon2 kept;
    std::vector<Vec2> removed;
    Vec2 a, b;  // endpoints of the new edge
};

Clip2 clip_polygon(const Polygon2& poly, Vec2 u, double level) {
    const auto v = poly.vertices();
    const std::size_t n = v.size();
    std::vector<Vec2> kept, removed;
    std::vector<Vec2> hits;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = v[i], q = v[(i + 1) % n];
        const double sp = dot(p, u) - level, sq = dot(q, u) - level;
        if (sp <= 0.0) kept.push_back(p);
        if (sp >= 0.0) removed.push_back(p);
        if ((sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0)) {
            const double t = sp / (sp - sq);
            const Vec2 x = p + t * (q - p);
            kept.push_back(x);
            removed.push_back(x);
            hits.push_back(x);
        } else if (sp == 0.0) {
            hits.push_back(p);
        }
    }
    if (hits.size() != 2 || removed.size() < 3)
        throw Error(ErrorKind::CutMissesBody, "cut does not split the polygon");
    return {polygon_from_vertices(kept), std::move(removed), hits[0], hits[1]};
}

// Integral of |x|^2 over the segment pq.
double segment_momentum(Vec2 p, Vec2 q) { return norm(q - p) * (dot(p, p) + dot(p, q) + dot(q, q)) / 3.0; }

struct LocalDeltas {
    double volume, perimeter, momentum;
};

// Changes computed from the removed piece alone, so small cuts do not lose
// digits to the subtraction of whole-body moments.
LocalDeltas local_deltas(const Clip2& c) {
    double chain_len = 0.0, chain_mom = 0.0;
    const auto& r = c.removed;
    bool skipped = false;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Vec2 p = r[i], q = r[(i + 1) % r.size()];
        const bool cut_edge = (p == c.b && q == c.a) || (p == c.a && q == c.b);
        if (cut_edge && !skipped) {
            skipped = true;
            continue;
        }
        chain_len += norm(q - p);
        chain_mom += segment_momentum(p, q);
    }
    if (!skipped) throw Error(ErrorKind::CutMissesBody, "cut edge not found in the removed piece");
    return {-shoelace(r), norm(c.a - c.b) - chain_len, segment_momentum(c.a, c.b) - chain_mom};
}

// lambda(after) - lambda(before) from relative changes, accurate when they are tiny.
double lambda_change(const FunctionalReport& o, double dv, double dp, double dw) {
    const double log_ratio = std::log1p(dw / o.momentum) - std::log1p(dp / o.perimeter) -
                             (2.0 / o.dim) * std::log1p(dv / o.volume);
    return o.lambda * std::expm1(log_ratio);
}

struct Clip3 {
    Polytope3 kept;
    double removed_volume = 0.0;
    std::vector<Vec3> section;
};

Clip3 clip_polytope(const Polytope3& poly, Vec3 u, double level) {
    const auto v = poly.vertices();
    std::vector<Vec3> kept, removed, section;
    std::vector<double> s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        s[i] = dot(v[i], u) - level;
        if (s[i] <= 0.0) kept.push_back(v[i]);
        if (s[i] >= 0.0) removed.push_back(v[i]);
        if (s[i] == 0.0) section.push_back(v[i]);
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, bool> seen;
    for (const Triangle& f : poly.faces()) {
        for (int e = 0; e < 3; ++e) {
            std::uint32_t i = f[e], j = f[(e + 1) % 3];
            if (i > j) std::swap(i, j);
            if (!seen.emplace(std::make_pair(i, j), true).second) continue;
            if ((s[i] < 0.0 && s[j] > 0.0) || (s[i] > 0.0 && s[j] < 0.0)) {
                const double t = s[i] / (s[i] - s[j]);
                const Vec3 x = v[i] + t * (v[j] - v[i]);
                kept.push_back(x);
                removed.push_back(x);
                section.push_back(x);
            }
        }
    }
    if (section.size() < 3) throw Error(ErrorKind::CutMissesBody, "cut does not split the polytope");
    Clip3 c{hull3(kept), 0.0, std::move(section)};
    c.removed_volume = moments(hull3(removed)).volume;
    return c;
}

// Area and diameter of the planar convex section, fanned from its centroid.
std::pair<double, double> section_measure(std::vector<Vec3> pts, Vec3 u) {
    Vec3 c{0, 0, 0};
    for (const Vec3& p : pts) c = c + p;
    c = (1.0 / static_cast<double>(pts.size())) * c;
    Vec3 e1 = std::abs(u.x) < 0.9 ? cross(u, Vec3{1, 0, 0}) : cross(u, Vec3{0, 1, 0});
    e1 = (1.0 / norm(e1)) * e1;
    const Vec3 e2 = cross(u, e1);
    std::sort(pts.begin(), pts.end(), [&](const Vec3& a, const Vec3& b) {
        return std::atan2(dot(a - c, e2), dot(a - c, e1)) < std::atan2(dot(b - c, e2), dot(b - c, e1));
    });
    double area = 0.0, diam = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        area += 0.5 * norm(cross(pts[i] - c, pts[(i + 1) % pts.size()] - c));
        for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, norm(pts[i] - pts[j]));
    }
    return {area, diam};
}

}  // namespace

CropResult crop(const Body& body, double eps, std::optional<std::span<const double>> direction) {
    if (std::holds_alternative<SupportBody2>(body))
        throw Error(ErrorKind::DimensionUnsupported, "crop needs a polygon or polytope; sample the support body first");
    CropResult r{.original = functional_report(body), .cropped = body};
    r.eps = eps;
    const Cut cut = choose_cut(body, r.original, direction);
    r.direction = cut.u;

    if (const auto* poly = std::get_if<Polygon2>(&body)) {
        const auto [lo, hi] = extent(poly->vertices(), cut.u);
        r.level = hi - eps;
        check_level(eps, r.level, lo);
        const Clip2 c = clip_polygon(*poly, {cut.u[0], cut.u[1]}, r.level);
        r.cropped = c.kept;
        r.cap_measure = norm(c.a - c.b);
        r.cap_diameter = r.cap_measure;
        r.cap_volume = shoelace(c.removed);
        const LocalDeltas d = local_deltas(c);
        r.delta_volume = d.volume;
        r.delta_perimeter = d.perimeter;
        r.delta_momentum = d.momentum;
    } else {
        const auto& poly3 = std::get<Polytope3>(body);
        const auto [lo, hi] = extent(poly3.vertices(), cut.u);
        r.level = hi - eps;
        check_level(eps, r.level, lo);
        const Vec3 u{cut.u[0], cut.u[1], cut.u[2]};
        Clip3 c = clip_polytope(poly3, u, r.level);
        r.cropped = c.kept;
        r.cap_volume = c.removed_volume;
        std::tie(r.cap_measure, r.cap_diameter) = section_measure(std::move(c.section), u);
        const BodyMoments m = moments(r.cropped);
        r.delta_volume = m.volume - r.original.volume;
        r.delta_perimeter = m.perimeter - r.original.perimeter;
        r.delta_momentum = m.momentum - r.original.momentum;
    }

    const FunctionalReport& o = r.original;
    r.delta_lambda_actual = lambda_change(o, r.delta_volume, r.delta_perimeter, r.delta_momentum);
    const double scale = std::pow(o.volume, 2.0 / o.dim) * o.perimeter;
    r.delta_lambda_predicted = (2.0 * o.excess * r.delta_volume +
                                (o.r_max * o.r_max - o.momentum / o.perimeter) * r.delta_perimeter) / scale;
    return r;
}

bool vanishes_under_refinement(std::span<const double> values, double floor) {
    if (values.size() < 2) return false;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > floor && values[i] > 1.1 * values[i - 1]) return false;
    return values.back() <= floor || values.back() < values.front();
}

ReverseReport lemma_reverse_check(const Body& body, std::span<const double> eps_list) {
    if (eps_list.empty()) throw Error(ErrorKind::BadConfig, "eps list is empty");
    for (std::size_t i = 0; i < eps_list.size(); ++i)
        if (!(eps_list[i] > 0.0) || (i > 0 && !(eps_list[i] < eps_list[i - 1])))
            throw Error(ErrorKind::BadConfig, "eps list must be positive and strictly decreasing");
    ReverseReport rep;
    std::vector<double> residuals, expansions;
    for (double eps : eps_list) {
        const CropResult c = crop(body, eps);
        const FunctionalReport& o = c.original;
        ReverseRow row;
        row.eps = eps;
        row.delta_volume = c.delta_volume;
        row.delta_perimeter = c.delta_perimeter;
        row.delta_momentum = c.delta_momentum;
        row.delta_lambda_actual = c.delta_lambda_actual;
        row.delta_lambda_predicted = c.delta_lambda_predicted;
        const double size = std::abs(c.delta_volume) + std::abs(c.delta_perimeter);
        row.ratio = std::abs(c.delta_volume) / std::abs(c.delta_perimeter);
        row.residual = c.delta_momentum - 2.0 * o.r_max * c.delta_volume - o.r_max * o.r_max * c.delta_perimeter;
        row.normalized_residual = std::abs(row.residual) / size;
        row.expansion_error = std::abs(c.delta_lambda_actual - c.delta_lambda_predicted) *
                              std::pow(o.volume, 2.0 / o.dim) * o.perimeter / size;
        row.cap_diameter = c.cap_diameter;
        row.diameter_bound = 2.0 * std::sqrt(2.0 * o.r_max * eps);
        rep.signs_ok = rep.signs_ok && c.delta_volume < 0.0 && c.delta_perimeter < 0.0;
        rep.diameter_ok = rep.diameter_ok && row.cap_diameter <= row.diameter_bound * (1.0 + 1e-12);
        residuals.push_back(row.normalized_residual);
        expansions.push_back(row.expansion_error);
        rep.rows.push_back(row);
    }
    double head = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, rep.rows.size()); ++i)
        head = std::max(head, rep.rows[i].ratio);
    rep.ratio_bounded = rep.rows.back().ratio <= 2.0 * head;
    const double scale = rep.rows.front().normalized_residual;
    rep.residual_vanishes = vanishes_under_refinement(residuals, 1e-13 * std::max(1.0, scale));
    rep.expansion_vanishes = vanishes_under_refinement(expansions, 1e-13 * std::max(1.0, expansions.front()));
    return rep;
}

std::string to_string(DescentStatus s) {
    switch (s) {
        case DescentStatus::WitnessFound: return "WitnessFound";
        case DescentStatus::NoDescentFound: return "NoDescentFound";
        case DescentStatus::NegativeExcess: return "NegativeExcess";
    }
    return "?";
}

DescentVerdict step3_descent(const Body& body) {
    const FunctionalReport rep = functional_report(body);
    DescentVerdict v;
    v.excess = rep.excess;
    v.r_max = rep.r_max;
    v.spread = rep.r_max * rep.r_max - rep.momentum / rep.perimeter;
    const bool flat_excess = std::abs(v.excess) <= kNearBallTolerance * rep.r_max;
    v.near_ball = flat_excess && v.spread <= kNearBallTolerance * rep.r_max * rep.r_max;
    if (v.near_ball) {
        v.status = DescentStatus::NoDescentFound;
        v.note = "near-ball: excess and spread below tolerance";
        return v;
    }
    if (v.excess < -kNearBallTolerance * rep.r_max) {
        v.status = DescentStatus::NegativeExcess;
        v.note = "negative excess: the flow, not a cut, lowers lambda";
        return v;
    }
    v.step4 = flat_excess;
    for (int j = 1; j <= kDescentSweepLength; ++j) {
        const double eps = rep.r_max * std::ldexp(1.0, -j);
        std::optional<CropResult> c;
        try {
            c.emplace(crop(body, eps));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::CutThroughOrigin || e.kind() == ErrorKind::CutMissesBody) continue;
            if (e.kind() == ErrorKind::FewerThanThreeHullVertices || e.kind() == ErrorKind::DegenerateInput ||
                e.kind() == ErrorKind::InvalidPolygon)
                break;
            throw;
        }
        ++v.cuts_tried;
        if (c->delta_lambda_actual < -kDescentTolerance * rep.lambda) {
            v.status = DescentStatus::WitnessFound;
            v.witness = std::move(c);
            return v;
        }
    }
    v.status = DescentStatus::NoDescentFound;
    v.note = "sweep exhausted";
    return v;
}

}  // namespace wlab
