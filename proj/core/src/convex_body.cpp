#include "hilbert/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hilbert/detail/ellipse_kernel.hpp"
#include "hilbert/detail/polygon_kernel.hpp"

namespace hilbert {

namespace {

using json = nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw std::invalid_argument(field + ": " + what);
}

double edge_length(Vec2 a, Vec2 b) { return norm(b - a); }

// ---- rounded polygon boundary geometry -------------------------------------

struct ArcPiece {
    Vec2 center;
    double r;
    double a0, sweep;  // counterclockwise from angle a0
};
struct SegPiece {
    Vec2 p0, p1;
};
struct RoundedGeometry {
    std::vector<SegPiece> segs;  // seg k connects arc k to arc k+1
    std::vector<ArcPiece> arcs;  // arc k replaces vertex k
};

// Interior turn data at vertex k of a CCW convex polygon.
struct CornerData {
    Vec2 e_prev, e_next;  // unit edge directions into and out of the vertex
    double tau;           // exterior turn angle in (0, pi)
    double tan_half_tau;
    double cos_half_tau;
};

CornerData corner_data(const std::vector<Vec2>& v, std::size_t k) {
    const std::size_t n = v.size();
    const Vec2 ep = normalized(v[k] - v[(k + n - 1) % n]);
    const Vec2 en = normalized(v[(k + 1) % n] - v[k]);
    const double tau = std::atan2(cross(ep, en), dot(ep, en));
    return {ep, en, tau, std::tan(tau / 2), std::cos(tau / 2)};
}

RoundedGeometry rounded_geometry(const ConvexBody& b) {
    const auto& v = b.vertices;
    const std::size_t n = v.size();
    const double r = b.corner_radius;
    RoundedGeometry g;
    std::vector<Vec2> t_in(n), t_out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const CornerData c = corner_data(v, k);
        const double l = r * c.tan_half_tau;  // tangent length along each edge
        t_in[k] = v[k] - l * c.e_prev;
        t_out[k] = v[k] + l * c.e_next;
        // Arc center sits on the interior bisector at distance r / cos(tau/2).
        const Vec2 bis = normalized(c.e_next - c.e_prev);
        const Vec2 cen = v[k] + (r / c.cos_half_tau) * bis;
        const double a0 = std::atan2(t_in[k].y - cen.y, t_in[k].x - cen.x);
        g.arcs.push_back({cen, r, a0, c.tau});
    }
    for (std::size_t k = 0; k < n; ++k) g.segs.push_back({t_out[k], t_in[(k + 1) % n]});
    return g;
}

// Signed interior margin (positive inside) for classification.
double polygon_margin(const std::vector<Vec2>& v, Vec2 p) {
    double m = std::numeric_limits<double>::infinity();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e = v[(i + 1) % n] - v[i];
        const Vec2 nout = normalized(Vec2{e.y, -e.x});
        m = std::min(m, dot(nout, v[i] - p));
    }
    return m;
}

double ellipse_margin(const ConvexBody& b, Vec2 p) {
    const auto fr = detail::ellipse_frame(b.center, b.axes, b.angle);
    const Vec2 q = fr.to_disk(p);
    const double rr = norm(q);
    if (rr == 0.0) return std::min(b.axes.x, b.axes.y);
    const Vec2 qh = q / rr;
    // radial distance to the boundary point along q; within a bounded factor of
    // the true distance, adequate for tolerance classification
    const double scale = norm(Vec2{fr.a * qh.x, fr.b * qh.y});
    return (1.0 - rr) * scale;
}

double rounded_margin(const ConvexBody& b, Vec2 p) {
    const RoundedGeometry g = rounded_geometry(b);
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : g.segs) {
        const Vec2 e = s.p1 - s.p0;
        if (norm2(e) == 0.0) continue;
        const Vec2 nout = normalized(Vec2{e.y, -e.x});
        m = std::min(m, dot(nout, s.p0 - p));
    }
    for (std::size_t k = 0; k < g.arcs.size(); ++k) {
        const auto& a = g.arcs[k];
        // The arc constraint binds only beyond the chord between its tangent
        // points (the chord is perpendicular to the corner bisector); elsewhere
        // the neighbouring edges dominate.
        const Vec2 q0{a.center.x + a.r * std::cos(a.a0), a.center.y + a.r * std::sin(a.a0)};
        const Vec2 toward_vertex = normalized(b.vertices[k] - a.center);
        if (dot(p - q0, toward_vertex) > 0.0) m = std::min(m, a.r - norm(p - a.center));
    }
    return m;
}

double body_margin(const ConvexBody& b, Vec2 p) {
    switch (b.kind) {
        case BodyKind::polygon: return polygon_margin(b.vertices, p);
        case BodyKind::ellipse: return ellipse_margin(b, p);
        case BodyKind::rounded_polygon: return rounded_margin(b, p);
    }
    return -1.0;
}

// ---- chords -----------------------------------------------------------------

Chord ellipse_chord(const ConvexBody& b, Vec2 p, Vec2 dir) {
    const auto fr = detail::ellipse_frame(b.center, b.axes, b.angle);
    const Vec2 q = fr.to_disk(p);
    const Vec2 d = fr.vec_to_disk(dir);
    // |q + t d|^2 = 1; affine maps preserve the line parameter, so t maps back.
    const double A = norm2(d), B = dot(q, d), C = norm2(q) - 1.0;
    const double disc = B * B - A * C;
    if (C >= 0.0 || disc <= 0.0) throw std::domain_error("chord: point not strictly interior to the body");
    const double sq = std::sqrt(disc);
    const double t_minus = (-B - sq) / A, t_plus = (-B + sq) / A;
    return {p + t_minus * dir, p + t_plus * dir};
}

Chord rounded_chord(const ConvexBody& b, Vec2 p, Vec2 dir) {
    const RoundedGeometry g = rounded_geometry(b);
    std::vector<double> hits;
    for (const auto& s : g.segs) {
        const Vec2 e = s.p1 - s.p0;
        const double den = cross(dir, e);
        if (den == 0.0) continue;
        const double t = cross(s.p0 - p, e) / den;
        const double u = cross(s.p0 - p, dir) / den;
        if (u >= -1e-12 && u <= 1.0 + 1e-12) hits.push_back(t);
    }
    for (const auto& a : g.arcs) {
        const Vec2 m = p - a.center;
        const double A = norm2(dir), B = dot(m, dir), C = norm2(m) - a.r * a.r;
        const double disc = B * B - A * C;
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        for (const double t : {(-B - sq) / A, (-B + sq) / A}) {
            const Vec2 q = p + t * dir;
            double ang = std::atan2(q.y - a.center.y, q.x - a.center.x) - a.a0;
            ang = std::fmod(ang, 2 * kPi);
            if (ang < 0) ang += 2 * kPi;
            if (ang <= a.sweep + 1e-9) hits.push_back(t);
        }
    }
    std::sort(hits.begin(), hits.end());
    if (hits.empty()) throw std::domain_error("chord: point not strictly interior to the body");
    const double lo = hits.front(), hi = hits.back();
    if (!(lo < 0.0) || !(hi > 0.0)) throw std::domain_error("chord: point not strictly interior to the body");
    return {p + lo * dir, p + hi * dir};
}

// ---- json -------------------------------------------------------------------

double finite_number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(field, "not finite");
    return x;
}

Vec2 point_field(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) fail(field, "expected [x, y]");
    return {finite_number(j[0], field), finite_number(j[1], field)};
}

std::vector<Vec2> vertices_field(const json& j) {
    if (!j.is_array() || j.size() < 3) fail("vertices", "expected an array of at least 3 points");
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(point_field(j[i], "vertices[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

ConvexBody parse_body(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail("json", e.what());
    }
    if (!j.is_object()) fail("json", "expected an object");
    if (!j.contains("kind")) fail("kind", "missing");
    if (!j["kind"].is_string()) fail("kind", "expected a string");
    const std::string kind = j["kind"].get<std::string>();

    ConvexBody b;
    if (kind == "polygon") {
        b.kind = BodyKind::polygon;
        if (!j.contains("vertices")) fail("vertices", "missing");
        b.vertices = vertices_field(j["vertices"]);
    } else if (kind == "ellipse") {
        b.kind = BodyKind::ellipse;
        if (!j.contains("center")) fail("center", "missing");
        if (!j.contains("axes")) fail("axes", "missing");
        b.center = point_field(j["center"], "center");
        const Vec2 ax = point_field(j["axes"], "axes");
        b.axes = ax;
        b.angle = j.contains("angle") ? finite_number(j["angle"], "angle") : 0.0;
    } else if (kind == "rounded_polygon") {
        b.kind = BodyKind::rounded_polygon;
        if (!j.contains("vertices")) fail("vertices", "missing");
        if (!j.contains("corner_radius")) fail("corner_radius", "missing");
        b.vertices = vertices_field(j["vertices"]);
        b.corner_radius = finite_number(j["corner_radius"], "corner_radius");
    } else {
        fail("kind", "unknown value '" + kind + "'");
    }
    validate_body(b);
    return b;
}

ConvexBody load_body(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("file: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_body(ss.str());
}

std::string body_to_json(const ConvexBody& b) {
    nlohmann::ordered_json j;
    switch (b.kind) {
        case BodyKind::polygon: {
            j["kind"] = "polygon";
            auto& arr = j["vertices"] = json::array();
            for (const Vec2& v : b.vertices) arr.push_back({v.x, v.y});
            break;
        }
        case BodyKind::ellipse:
            j["kind"] = "ellipse";
            j["center"] = {b.center.x, b.center.y};
            j["axes"] = {b.axes.x, b.axes.y};
            j["angle"] = b.angle;
            break;
        case BodyKind::rounded_polygon: {
            j["kind"] = "rounded_polygon";
            auto& arr = j["vertices"] = json::array();
            for (const Vec2& v : b.vertices) arr.push_back({v.x, v.y});
            j["corner_radius"] = b.corner_radius;
            break;
        }
    }
    return j.dump();
}

void validate_body(const ConvexBody& b) {
    if (b.kind == BodyKind::ellipse) {
        if (!(b.axes.x > 0.0) || !(b.axes.y > 0.0)) fail("axes", "must be positive");
        if (!std::isfinite(b.center.x) || !std::isfinite(b.center.y)) fail("center", "not finite");
        if (!std::isfinite(b.angle)) fail("angle", "not finite");
        return;
    }
    const auto& v = b.vertices;
    if (v.size() < 3) fail("vertices", "expected at least 3 points");
    double scale = 0.0;
    for (const Vec2& p : v) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail("vertices", "not finite");
        scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
    }
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (edge_length(v[i], v[(i + 1) % n]) <= 1e-12 * scale)
            fail("vertices", "duplicate point at index " + std::to_string(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = v[(i + 1) % n] - v[i];
        const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
        const double c = cross(e0, e1);
        if (std::fabs(c) <= 1e-12 * scale * scale)
            fail("vertices", "collinear vertices at index " + std::to_string((i + 1) % n));
        if (c < 0.0) fail("vertices", "not counterclockwise or not convex");
    }
    if (b.kind == BodyKind::rounded_polygon) {
        if (!(b.corner_radius > 0.0)) fail("corner_radius", "must be positive");
        for (std::size_t k = 0; k < n; ++k) {
            const double l_out = b.corner_radius * corner_data(v, k).tan_half_tau;
            const double l_in = b.corner_radius * corner_data(v, (k + 1) % n).tan_half_tau;
            if (l_out + l_in > edge_length(v[k], v[(k + 1) % n]))
                fail("corner_radius", "too large for edge " + std::to_string(k));
        }
    }
}

int classify(const ConvexBody& b, Vec2 p, double tol) {
    const double m = body_margin(b, p);
    if (m > tol) return 1;
    if (m < -tol) return -1;
    return 0;
}

bool contains(const ConvexBody& b, Vec2 p, double tol) { return classify(b, p, tol) >= 0; }

bool strictly_inside(const ConvexBody& b, Vec2 p) { return body_margin(b, p) > 0.0; }

Chord chord(const ConvexBody& b, Vec2 p, Vec2 dir) {
    if (norm2(dir) == 0.0) throw std::domain_error("chord: zero direction");
    switch (b.kind) {
        case BodyKind::polygon: {
            const auto h = detail::polygon_line_hits(b.vertices, p, dir);
            return {p + h.t_minus * dir, p + h.t_plus * dir};
        }
        case BodyKind::ellipse: return ellipse_chord(b, p, dir);
        case BodyKind::rounded_polygon: return rounded_chord(b, p, dir);
    }
    throw std::logic_error("chord: bad kind");
}

ConvexBody homothety(const ConvexBody& b, Vec2 c, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("factor: must be positive");
    ConvexBody out = b;
    auto map = [&](Vec2 p) { return c + factor * (p - c); };
    for (Vec2& v : out.vertices) v = map(v);
    if (b.kind == BodyKind::ellipse) {
        out.center = map(b.center);
        out.axes = factor * b.axes;
    }
    if (b.kind == BodyKind::rounded_polygon) out.corner_radius = factor * b.corner_radius;
    return out;
}

SmoothedPolygon smooth_polygon(const ConvexBody& polygon, double corner_radius) {
    if (polygon.kind != BodyKind::polygon)
        throw std::invalid_argument("body: smoothing expects a polygon");
    ConvexBody r = polygon;
    r.kind = BodyKind::rounded_polygon;
    r.corner_radius = corner_radius;
    validate_body(r);

    // The rounded body contains the polygon chamfered at each corner by the
    // chord between tangent points; shrinking C about its centroid by
    // rho >= l_k cos(theta_k/2) / support_k keeps it inside that chamfer.
    // The outer inclusion is free: result subset C subset (1+rho) C.
    const Vec2 g = centroid(polygon);
    const auto& v = polygon.vertices;
    double rho = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const CornerData c = corner_data(v, k);
        // Tangent points sit l = r tan(tau/2) from the vertex; their chord lies
        // depth = l sin(tau/2) inward of the vertex along the outward bisector.
        const double depth = corner_radius * c.tan_half_tau * std::sin(c.tau / 2);
        const Vec2 bis_out = normalized(c.e_prev - c.e_next);
        double support = 0.0;
        for (const Vec2& w : v) support = std::max(support, dot(w - g, bis_out));
        rho = std::max(rho, depth / support);
    }
    return {r, rho};
}

Vec2 centroid(const ConvexBody& b) {
    switch (b.kind) {
        case BodyKind::ellipse: return b.center;
        case BodyKind::polygon: {
            const auto& v = b.vertices;
            double a = 0.0;
            Vec2 c{0, 0};
            for (std::size_t i = 0; i < v.size(); ++i) {
                const Vec2& p = v[i];
                const Vec2& q = v[(i + 1) % v.size()];
                const double w = cross(p, q);
                a += w;
                c = c + w * (p + q);
            }
            return c / (3.0 * a);
        }
        case BodyKind::rounded_polygon: {
            const auto poly = boundary_polyline(b, 2048);
            double a = 0.0;
            Vec2 c{0, 0};
            for (std::size_t i = 0; i < poly.size(); ++i) {
                const Vec2& p = poly[i];
                const Vec2& q = poly[(i + 1) % poly.size()];
                const double w = cross(p, q);
                a += w;
                c = c + w * (p + q);
            }
            return c / (3.0 * a);
        }
    }
    throw std::logic_error("centroid: bad kind");
}

double euclid_area(const ConvexBody& b) {
    switch (b.kind) {
        case BodyKind::ellipse: return kPi * b.axes.x * b.axes.y;
        case BodyKind::polygon: return detail::shoelace_area(b.vertices);
        case BodyKind::rounded_polygon: {
            const RoundedGeometry g = rounded_geometry(b);
            std::vector<Vec2> pts;
            for (const auto& a : g.arcs) {
                pts.push_back({a.center.x + a.r * std::cos(a.a0), a.center.y + a.r * std::sin(a.a0)});
                pts.push_back({a.center.x + a.r * std::cos(a.a0 + a.sweep),
                               a.center.y + a.r * std::sin(a.a0 + a.sweep)});
            }
            double area = detail::shoelace_area(pts);
            for (const auto& a : g.arcs)
                area += 0.5 * a.r * a.r * (a.sweep - std::sin(a.sweep));
            return area;
        }
    }
    throw std::logic_error("area: bad kind");
}

double euclid_diameter(const ConvexBody& b) {
    if (b.kind == BodyKind::ellipse) return 2.0 * std::max(b.axes.x, b.axes.y);
    double d = 0.0;
    for (std::size_t i = 0; i < b.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < b.vertices.size(); ++j)
            d = std::max(d, edge_length(b.vertices[i], b.vertices[j]));
    return d;
}

std::vector<Vec2> boundary_polyline(const ConvexBody& b, int n) {
    if (n < 3) throw std::invalid_argument("n: expected at least 3 samples");
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n));
    if (b.kind == BodyKind::ellipse) {
        const auto fr = detail::ellipse_frame(b.center, b.axes, b.angle);
        for (int i = 0; i < n; ++i) {
            const double t = 2 * kPi * i / n;
            out.push_back(fr.from_disk({std::cos(t), std::sin(t)}));
        }
        return out;
    }
    // Piecewise boundary (segments, and arcs when rounded), sampled uniformly
    // in arclength starting at the first vertex / first arc start.
    struct Piece {
        bool is_arc;
        SegPiece s;
        ArcPiece a;
        double len;
    };
    std::vector<Piece> pieces;
    if (b.kind == BodyKind::polygon) {
        const auto& v = b.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            SegPiece s{v[i], v[(i + 1) % v.size()]};
            pieces.push_back({false, s, {}, edge_length(s.p0, s.p1)});
        }
    } else {
        const RoundedGeometry g = rounded_geometry(b);
        for (std::size_t k = 0; k < g.arcs.size(); ++k) {
            pieces.push_back({true, {}, g.arcs[k], g.arcs[k].r * g.arcs[k].sweep});
            pieces.push_back({false, g.segs[k], {}, edge_length(g.segs[k].p0, g.segs[k].p1)});
        }
    }
    double per = 0.0;
    for (const auto& p : pieces) per += p.len;
    std::size_t pi = 0;
    double base = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = per * i / n;
        while (pi + 1 < pieces.size() && s >= base + pieces[pi].len) base += pieces[pi++].len;
        const auto& pc = pieces[pi];
        const double u = pc.len > 0 ? (s - base) / pc.len : 0.0;
        if (pc.is_arc) {
            const double t = pc.a.a0 + pc.a.sweep * u;
            out.push_back({pc.a.center.x + pc.a.r * std::cos(t), pc.a.center.y + pc.a.r * std::sin(t)});
        } else {
            out.push_back(pc.s.p0 + u * (pc.s.p1 - pc.s.p0));
        }
    }
    return out;
}

ConvexBody affine_image(const ConvexBody& b, double a00, double a01, double a10, double a11,
                        Vec2 t) {
    const double det = a00 * a11 - a01 * a10;
    if (!(det > 0.0)) throw std::invalid_argument("map: determinant must be positive");
    auto map = [&](Vec2 p) { return Vec2{a00 * p.x + a01 * p.y + t.x, a10 * p.x + a11 * p.y + t.y}; };
    switch (b.kind) {
        case BodyKind::polygon: {
            ConvexBody out = b;
            for (Vec2& v : out.vertices) v = map(v);
            return out;
        }
        case BodyKind::ellipse: {
            // Image shape from the Gram matrix of M = A R(phi) diag(a,b).
            const double c = std::cos(b.angle), s = std::sin(b.angle);
            const double m00 = (a00 * c + a01 * s) * b.axes.x, m01 = (-a00 * s + a01 * c) * b.axes.y;
            const double m10 = (a10 * c + a11 * s) * b.axes.x, m11 = (-a10 * s + a11 * c) * b.axes.y;
            const double g00 = m00 * m00 + m01 * m01;
            const double g01 = m00 * m10 + m01 * m11;
            const double g11 = m10 * m10 + m11 * m11;
            const double tr = g00 + g11, dd = std::sqrt((g00 - g11) * (g00 - g11) + 4 * g01 * g01);
            const double l1 = (tr + dd) / 2, l2 = (tr - dd) / 2;
            ConvexBody out;
            out.kind = BodyKind::ellipse;
            out.center = map(b.center);
            out.axes = {std::sqrt(l1), std::sqrt(l2)};
            // eigenvector of the Gram matrix for l1 is (g01, l1 - g00);
            // atan2(0, 0) == 0 covers the already-axis-aligned case
            out.angle = std::atan2(l1 - g00, g01);
            return out;
        }
        case BodyKind::rounded_polygon:
            throw std::invalid_argument("body: affine image of a rounded polygon is not supported");
    }
    throw std::logic_error("affine: bad kind");
}

}  // namespace hilbert
