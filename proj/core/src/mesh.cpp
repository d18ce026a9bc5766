#include "hilbert/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "hilbert/detail/polygon_kernel.hpp"
#include "hilbert/metric.hpp"

namespace hilbert {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Vec2> dedupe_loop(std::vector<Vec2> pts) {
    if (pts.size() >= 2 && dist(pts.front(), pts.back()) <= 1e-12) pts.pop_back();
    return pts;
}

// ---- region frame ------------------------------------------------------------
//
// Area moments of the polygon give an affine-equivariant covariance; whitening
// it (and pinning the rotation with the first boundary point) produces a frame
// in which corresponding regions under any orientation-preserving affine map
// become identical point sets. Meshing there makes discretized spectral
// quantities inherit the projective invariance of the continuum ones.

struct Moments {
    double area;
    Vec2 centroid;
    double cxx, cxy, cyy;  // covariance of the uniform area measure
};

Moments polygon_moments(const std::vector<Vec2>& poly) {
    Vec2 shift{0, 0};
    for (const Vec2& p : poly) shift = shift + p;
    shift = shift / static_cast<double>(poly.size());

    const std::size_t n = poly.size();
    double a2 = 0, cx = 0, cy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = poly[i] - shift, q = poly[(i + 1) % n] - shift;
        const double cr = cross(p, q);
        a2 += cr;
        cx += cr * (p.x + q.x);
        cy += cr * (p.y + q.y);
        sxx += cr * (p.x * p.x + p.x * q.x + q.x * q.x);
        syy += cr * (p.y * p.y + p.y * q.y + q.y * q.y);
        sxy += cr * (2 * p.x * p.y + p.x * q.y + q.x * p.y + 2 * q.x * q.y);
    }
    const double area = 0.5 * a2;
    Moments m;
    m.area = std::fabs(area);
    if (!(m.area > 1e-300)) throw std::invalid_argument("region: degenerate boundary");
    const Vec2 c{cx / (6 * area), cy / (6 * area)};
    m.centroid = c + shift;
    m.cxx = sxx / (12 * area) - c.x * c.x;
    m.cyy = syy / (12 * area) - c.y * c.y;
    m.cxy = sxy / (24 * area) - c.x * c.y;
    return m;
}

struct Frame {
    Vec2 c;
    double W[4];     // world -> canonical
    double Winv[4];  // canonical -> world
    double scale;    // largest stretch of Winv

    Vec2 to_c(Vec2 p) const {
        const Vec2 q = p - c;
        return {W[0] * q.x + W[1] * q.y, W[2] * q.x + W[3] * q.y};
    }
    Vec2 from_c(Vec2 q) const {
        return c + Vec2{Winv[0] * q.x + Winv[1] * q.y, Winv[2] * q.x + Winv[3] * q.y};
    }
};

Frame make_frame(const std::vector<Vec2>& poly) {
    const Moments m = polygon_moments(poly);
    const double half_tr = 0.5 * (m.cxx + m.cyy);
    const double disc =
        std::sqrt(std::max(0.0, 0.25 * (m.cxx - m.cyy) * (m.cxx - m.cyy) + m.cxy * m.cxy));
    const double l1 = half_tr + disc, l2 = half_tr - disc;
    if (!(l2 > 1e-300)) throw std::invalid_argument("region: degenerate boundary");
    Vec2 e1;
    const Vec2 cand_a{l1 - m.cyy, m.cxy}, cand_b{m.cxy, l1 - m.cxx};
    e1 = norm2(cand_a) >= norm2(cand_b) ? cand_a : cand_b;
    if (norm(e1) < 1e-150) e1 = {1, 0};
    e1 = normalized(e1);
    const Vec2 e2 = perp(e1);

    const double s1 = 1.0 / std::sqrt(l1), s2 = 1.0 / std::sqrt(l2);
    double W0[4] = {s1 * e1.x * e1.x + s2 * e2.x * e2.x, s1 * e1.x * e1.y + s2 * e2.x * e2.y,
                    s1 * e1.x * e1.y + s2 * e2.x * e2.y, s1 * e1.y * e1.y + s2 * e2.y * e2.y};

    Frame f;
    f.c = m.centroid;
    const Vec2 q0 = poly[0] - f.c;
    const Vec2 d0{W0[0] * q0.x + W0[1] * q0.y, W0[2] * q0.x + W0[3] * q0.y};
    const double phi = std::atan2(d0.y, d0.x);
    const double cp = std::cos(phi), sp = std::sin(phi);
    // W = R(-phi) * W0
    f.W[0] = cp * W0[0] + sp * W0[2];
    f.W[1] = cp * W0[1] + sp * W0[3];
    f.W[2] = -sp * W0[0] + cp * W0[2];
    f.W[3] = -sp * W0[1] + cp * W0[3];
    const double det = f.W[0] * f.W[3] - f.W[1] * f.W[2];
    f.Winv[0] = f.W[3] / det;
    f.Winv[1] = -f.W[1] / det;
    f.Winv[2] = -f.W[2] / det;
    f.Winv[3] = f.W[0] / det;
    f.scale = std::sqrt(l1);
    return f;
}

// ---- polygon containment -----------------------------------------------------

bool in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
    bool in = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 a = poly[j], b = poly[i];
        if ((b.y > p.y) != (a.y > p.y)) {
            const double t = (p.y - b.y) / (a.y - b.y);
            if (p.x < b.x + t * (a.x - b.x)) in = !in;
        }
    }
    return in;
}

double dist_to_loop(const std::vector<Vec2>& poly, Vec2 p) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i], b = poly[(i + 1) % n];
        const Vec2 d = b - a;
        const double len2 = norm2(d);
        double t = len2 > 0 ? dot(p - a, d) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, dist(p, a + t * d));
    }
    return best;
}

bool inside_with_margin(const std::vector<Vec2>& poly, Vec2 p, double margin) {
    return in_polygon(poly, p) && dist_to_loop(poly, p) >= margin;
}

// ---- Bowyer-Watson Delaunay ----------------------------------------------------

struct Delaunay {
    struct Tri {
        int a, b, c;
        double ccx, ccy, r2;
    };

    std::vector<Vec2> pts;  // indices 0..2 are the enclosing super-triangle
    std::vector<Tri> tris;

    explicit Delaunay(const std::vector<Vec2>& input) {
        double x0 = input[0].x, x1 = x0, y0 = input[0].y, y1 = y0;
        for (const Vec2& p : input) {
            x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
        }
        const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
        const double ext = std::max({x1 - x0, y1 - y0, 1e-9});
        pts.push_back({cx - 60 * ext, cy - 40 * ext});
        pts.push_back({cx + 60 * ext, cy - 40 * ext});
        pts.push_back({cx, cy + 70 * ext});
        Tri t{0, 1, 2, 0, 0, 0};
        circum(t);
        tris.push_back(t);
        pts.reserve(input.size() + 3);
    }

    void circum(Tri& t) const {
        const long double ax = pts[t.a].x, ay = pts[t.a].y;
        const long double bx = pts[t.b].x, by = pts[t.b].y;
        const long double cx = pts[t.c].x, cy = pts[t.c].y;
        const long double d = 2.0L * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
        if (d == 0.0L) {
            t.ccx = t.ccy = 0.0;
            t.r2 = std::numeric_limits<double>::infinity();
            return;
        }
        const long double a2 = ax * ax + ay * ay;
        const long double b2 = bx * bx + by * by;
        const long double c2 = cx * cx + cy * cy;
        const long double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
        const long double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
        t.ccx = static_cast<double>(ux);
        t.ccy = static_cast<double>(uy);
        const long double dx = ux - ax, dy = uy - ay;
        t.r2 = static_cast<double>(dx * dx + dy * dy);
    }

    // Insert pts[ip] (already appended to pts). Returns false and leaves the
    // triangulation untouched when the cavity is numerically inconsistent.
    bool insert(int ip) {
        const Vec2 p = pts[static_cast<std::size_t>(ip)];
        std::vector<int> bad;
        for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
            const Tri& t = tris[static_cast<std::size_t>(i)];
            const double dx = p.x - t.ccx, dy = p.y - t.ccy;
            if (dx * dx + dy * dy < t.r2 * (1.0 - 1e-12)) bad.push_back(i);
        }
        if (bad.empty()) return false;

        // cavity boundary: undirected edges hit exactly once, kept with the
        // orientation of their (CCW) owner so the new point lies on the left
        std::map<std::pair<int, int>, std::pair<int, std::pair<int, int>>> edges;
        for (int bi : bad) {
            const Tri& t = tris[static_cast<std::size_t>(bi)];
            const int e[3][2] = {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}};
            for (const auto& uv : e) {
                const auto key = std::minmax(uv[0], uv[1]);
                auto& slot = edges[key];
                slot.first += 1;
                slot.second = {uv[0], uv[1]};
            }
        }
        std::vector<Tri> fresh;
        for (const auto& [key, slot] : edges) {
            if (slot.first > 2) return false;
            if (slot.first != 1) continue;
            const int u = slot.second.first, v = slot.second.second;
            if (cross(pts[static_cast<std::size_t>(v)] - pts[static_cast<std::size_t>(u)],
                      p - pts[static_cast<std::size_t>(u)]) <= 0.0)
                return false;
            Tri t{u, v, ip, 0, 0, 0};
            fresh.push_back(t);
        }
        if (fresh.empty()) return false;

        std::sort(bad.begin(), bad.end(), std::greater<int>());
        for (int bi : bad) {
            tris[static_cast<std::size_t>(bi)] = tris.back();
            tris.pop_back();
        }
        for (Tri& t : fresh) {
            circum(t);
            tris.push_back(t);
        }
        return true;
    }
};

double tri_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * cross(b - a, c - a); }

double tri_min_angle_deg(Vec2 a, Vec2 b, Vec2 c) {
    const double la = dist(b, c), lb = dist(c, a), lc = dist(a, b);
    auto angle = [](double opp, double s1, double s2) {
        const double cosv = std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2 * s1 * s2), -1.0, 1.0);
        return std::acos(cosv);
    };
    const double m = std::min({angle(la, lb, lc), angle(lb, lc, la), angle(lc, la, lb)});
    return m * 180.0 / kPi;
}

// ring construction: keep genuine corners of the boundary polyline as anchor
// stations and resample each piece between anchors uniformly by arclength at
// spacing <= target. Dense smooth polylines get decimated, long straight edges
// get subdivided, and corners survive exactly.
std::vector<Vec2> build_ring(const std::vector<Vec2>& loop, double target) {
    const std::size_t n = loop.size();
    std::vector<std::size_t> anchors;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = loop[i] - loop[(i + n - 1) % n];
        const Vec2 e1 = loop[(i + 1) % n] - loop[i];
        const double turn = std::atan2(cross(e0, e1), dot(e0, e1));
        if (std::fabs(turn) > 0.15) anchors.push_back(i);
    }
    if (anchors.empty()) anchors.push_back(0);

    std::vector<Vec2> ring;
    const std::size_t na = anchors.size();
    for (std::size_t k = 0; k < na; ++k) {
        const std::size_t i0 = anchors[k];
        const std::size_t i1 = anchors[(k + 1) % na];
        // piece i0 -> i1 walking forward (full loop when a single anchor)
        std::vector<Vec2> piece{loop[i0]};
        for (std::size_t i = (i0 + 1) % n; ; i = (i + 1) % n) {
            piece.push_back(loop[i]);
            if (i == i1) break;
        }
        double len = 0;
        for (std::size_t i = 0; i + 1 < piece.size(); ++i) len += dist(piece[i], piece[i + 1]);
        const int m = std::max(1, static_cast<int>(std::ceil(len / target)));
        double want = 0;
        const double step = len / m;
        double walked = 0;
        std::size_t seg = 0;
        for (int j = 0; j < m; ++j, want += step) {
            while (seg + 1 < piece.size() - 1 &&
                   walked + dist(piece[seg], piece[seg + 1]) < want - 1e-15)
                walked += dist(piece[seg], piece[seg + 1]), ++seg;
            const double seg_len = dist(piece[seg], piece[seg + 1]);
            const double frac = seg_len > 0 ? std::clamp((want - walked) / seg_len, 0.0, 1.0) : 0.0;
            ring.push_back(piece[seg] + frac * (piece[seg + 1] - piece[seg]));
        }
    }
    return ring;
}

struct BuildResult {
    std::vector<Vec2> positions;  // ring first
    std::size_t n_ring;
    std::vector<std::array<int, 3>> triangles;  // indices into positions
};

std::vector<std::array<int, 3>> region_triangles(const Delaunay& dt,
                                                 const std::vector<Vec2>& ring,
                                                 double area_floor) {
    std::vector<std::array<int, 3>> out;
    for (const auto& t : dt.tris) {
        if (t.a < 3 || t.b < 3 || t.c < 3) continue;
        const Vec2 a = dt.pts[static_cast<std::size_t>(t.a)];
        const Vec2 b = dt.pts[static_cast<std::size_t>(t.b)];
        const Vec2 c = dt.pts[static_cast<std::size_t>(t.c)];
        if (tri_area(a, b, c) <= area_floor) continue;
        if (!in_polygon(ring, (1.0 / 3.0) * (a + b + c))) continue;
        out.push_back({t.a - 3, t.b - 3, t.c - 3});
    }
    std::sort(out.begin(), out.end());
    return out;
}

Delaunay build_delaunay(const std::vector<Vec2>& positions) {
    Delaunay dt(positions);
    for (const Vec2& p : positions) {
        dt.pts.push_back(p);
        dt.insert(static_cast<int>(dt.pts.size()) - 1);
    }
    return dt;
}

}  // namespace

double mesh_length_scale(const std::vector<Vec2>& region_boundary) {
    const auto loop = dedupe_loop(region_boundary);
    if (loop.size() < 3) throw std::invalid_argument("region: expected at least 3 boundary points");
    return make_frame(loop).scale;
}

Mesh triangulate(const ConvexBody& body, const Region& region, double h) {
    (void)body;
    if (!(h > 0)) throw std::invalid_argument("mesh: need h > 0");
    auto loop = dedupe_loop(region.boundary);
    if (loop.size() < 3) throw std::invalid_argument("region: expected at least 3 boundary points");
    if (detail::shoelace_area(loop) < 0) std::reverse(loop.begin(), loop.end());

    const Frame frame = make_frame(loop);
    const double hc = h / frame.scale;
    std::vector<Vec2> cp;
    cp.reserve(loop.size());
    for (const Vec2& p : loop) cp.push_back(frame.to_c(p));

    const std::vector<Vec2> ring = build_ring(cp, 0.9 * hc);
    const std::size_t nb = ring.size();
    if (nb < 8) throw std::invalid_argument("mesh: h too large for the region");

    // hexagonal interior lattice anchored at the canonical origin
    const double a = 0.85 * hc, row = a * std::sqrt(3.0) / 2.0, margin = 0.55 * hc;
    double x0 = ring[0].x, x1 = x0, y0 = ring[0].y, y1 = y0;
    for (const Vec2& p : ring) {
        x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
    std::vector<Vec2> positions(ring);
    const int jlo = static_cast<int>(std::floor(y0 / row)) - 1;
    const int jhi = static_cast<int>(std::ceil(y1 / row)) + 1;
    for (int j = jlo; j <= jhi; ++j) {
        const double y = j * row;
        const double xoff = (((j % 2) + 2) % 2) ? 0.5 * a : 0.0;
        const int ilo = static_cast<int>(std::floor((x0 - xoff) / a)) - 1;
        const int ihi = static_cast<int>(std::ceil((x1 - xoff) / a)) + 1;
        for (int i = ilo; i <= ihi; ++i) {
            const Vec2 p{i * a + xoff, y};
            if (inside_with_margin(ring, p, margin)) positions.push_back(p);
        }
    }

    Delaunay dt = build_delaunay(positions);
    const double area_floor = 1e-9 * hc * hc;

    // Laplacian smoothing of the interior (boundary ring stays put)
    for (int round = 0; round < 2; ++round) {
        const auto tris = region_triangles(dt, ring, area_floor);
        std::vector<Vec2> acc(positions.size(), {0, 0});
        std::vector<int> deg(positions.size(), 0);
        for (const auto& t : tris)
            for (int e = 0; e < 3; ++e) {
                const int u = t[static_cast<std::size_t>(e)];
                const int v = t[static_cast<std::size_t>((e + 1) % 3)];
                acc[static_cast<std::size_t>(u)] = acc[static_cast<std::size_t>(u)] +
                                                   positions[static_cast<std::size_t>(v)];
                acc[static_cast<std::size_t>(v)] = acc[static_cast<std::size_t>(v)] +
                                                   positions[static_cast<std::size_t>(u)];
                deg[static_cast<std::size_t>(u)] += 1;
                deg[static_cast<std::size_t>(v)] += 1;
            }
        for (std::size_t v = nb; v < positions.size(); ++v) {
            if (deg[v] == 0) continue;
            const Vec2 cand = acc[v] / static_cast<double>(deg[v]);
            if (inside_with_margin(ring, cand, 0.45 * hc)) positions[v] = cand;
        }
        dt = build_delaunay(positions);
    }

    // refinement: cap edge lengths first, then chase the angle target with
    // circumcenter insertions (Delaunay refinement)
    for (int round = 0; round < 12; ++round) {
        const auto tris = region_triangles(dt, ring, area_floor);
        std::set<std::pair<int, int>> long_edges;
        for (const auto& t : tris)
            for (int e = 0; e < 3; ++e) {
                const int u = t[static_cast<std::size_t>(e)];
                const int v = t[static_cast<std::size_t>((e + 1) % 3)];
                if (dist(positions[static_cast<std::size_t>(u)],
                         positions[static_cast<std::size_t>(v)]) > hc * (1 + 1e-9))
                    long_edges.insert(std::minmax(u, v));
            }
        std::vector<Vec2> fresh;
        if (!long_edges.empty()) {
            for (const auto& [u, v] : long_edges)
                fresh.push_back(0.5 * (positions[static_cast<std::size_t>(u)] +
                                       positions[static_cast<std::size_t>(v)]));
        } else {
            int budget = 2000;
            for (const auto& t : tris) {
                const Vec2 a3 = positions[static_cast<std::size_t>(t[0])];
                const Vec2 b3 = positions[static_cast<std::size_t>(t[1])];
                const Vec2 c3 = positions[static_cast<std::size_t>(t[2])];
                if (tri_min_angle_deg(a3, b3, c3) >= 20.2) continue;
                const long double ax = a3.x, ay = a3.y, bx = b3.x, by = b3.y, cx = c3.x,
                                  cy = c3.y;
                const long double d = 2.0L * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
                if (d == 0.0L) continue;
                const long double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by,
                                  c2 = cx * cx + cy * cy;
                const Vec2 cc{static_cast<double>((a2 * (by - cy) + b2 * (cy - ay) +
                                                   c2 * (ay - by)) /
                                                  d),
                              static_cast<double>((a2 * (cx - bx) + b2 * (ax - cx) +
                                                   c2 * (bx - ax)) /
                                                  d)};
                if (!inside_with_margin(ring, cc, 0.25 * hc)) continue;
                fresh.push_back(cc);
                if (--budget == 0) break;
            }
        }
        if (fresh.empty()) break;
        for (const Vec2& p : fresh) {
            dt.pts.push_back(p);
            if (dt.insert(static_cast<int>(dt.pts.size()) - 1))
                positions.push_back(p);
            else
                dt.pts.pop_back();
        }
    }

    // assemble, dropping unused interior vertices
    const auto tris = region_triangles(dt, ring, area_floor);
    std::vector<int> remap(positions.size(), -1);
    for (std::size_t i = 0; i < nb; ++i) remap[i] = static_cast<int>(i);
    int next = static_cast<int>(nb);
    for (const auto& t : tris)
        for (int idx : t)
            if (remap[static_cast<std::size_t>(idx)] < 0)
                remap[static_cast<std::size_t>(idx)] = next++;

    Mesh mesh;
    mesh.vertices.assign(static_cast<std::size_t>(next), Vec2{});
    mesh.boundary.assign(static_cast<std::size_t>(next), 0);
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (remap[i] >= 0) mesh.vertices[static_cast<std::size_t>(remap[i])] = frame.from_c(positions[i]);
    for (std::size_t i = 0; i < nb; ++i) mesh.boundary[i] = 1;
    mesh.triangles.reserve(tris.size());
    for (const auto& t : tris)
        mesh.triangles.push_back({remap[static_cast<std::size_t>(t[0])],
                                  remap[static_cast<std::size_t>(t[1])],
                                  remap[static_cast<std::size_t>(t[2])]});
    if (mesh.triangles.empty()) throw std::invalid_argument("mesh: h too large for the region");
    return mesh;
}

Mesh refine_mesh(const Mesh& in) {
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : in.triangles)
        for (int e = 0; e < 3; ++e)
            edge_count[std::minmax(t[static_cast<std::size_t>(e)],
                                   t[static_cast<std::size_t>((e + 1) % 3)])] += 1;

    Mesh out;
    out.vertices = in.vertices;
    out.boundary = in.boundary;
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int u, int v) {
        const auto key = std::minmax(u, v);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const int id = static_cast<int>(out.vertices.size());
        out.vertices.push_back(0.5 * (in.vertices[static_cast<std::size_t>(u)] +
                                      in.vertices[static_cast<std::size_t>(v)]));
        out.boundary.push_back(edge_count.at(key) == 1 ? 1 : 0);
        midpoint.emplace(key, id);
        return id;
    };
    for (const auto& t : in.triangles) {
        const int a = t[0], b = t[1], c = t[2];
        const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
        out.triangles.push_back({a, ab, ca});
        out.triangles.push_back({ab, b, bc});
        out.triangles.push_back({ca, bc, c});
        out.triangles.push_back({ab, bc, ca});
    }
    return out;
}

MeshRestriction restrict_mesh(const Mesh& mesh, const std::vector<char>& keep_vertex) {
    MeshRestriction res;
    res.vertex_map.assign(mesh.vertices.size(), -1);
    std::vector<std::array<int, 3>> kept;
    for (const auto& t : mesh.triangles) {
        if (!keep_vertex[static_cast<std::size_t>(t[0])] ||
            !keep_vertex[static_cast<std::size_t>(t[1])] ||
            !keep_vertex[static_cast<std::size_t>(t[2])])
            continue;
        kept.push_back(t);
    }
    int next = 0;
    for (const auto& t : kept)
        for (int idx : t)
            if (res.vertex_map[static_cast<std::size_t>(idx)] < 0)
                res.vertex_map[static_cast<std::size_t>(idx)] = next++;
    res.mesh.vertices.assign(static_cast<std::size_t>(next), Vec2{});
    res.mesh.boundary.assign(static_cast<std::size_t>(next), 0);
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        if (res.vertex_map[i] >= 0) {
            res.mesh.vertices[static_cast<std::size_t>(res.vertex_map[i])] = mesh.vertices[i];
            res.mesh.boundary[static_cast<std::size_t>(res.vertex_map[i])] = mesh.boundary[i];
        }
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : kept)
        for (int e = 0; e < 3; ++e)
            edge_count[std::minmax(t[static_cast<std::size_t>(e)],
                                   t[static_cast<std::size_t>((e + 1) % 3)])] += 1;
    for (const auto& t : kept) {
        res.mesh.triangles.push_back({res.vertex_map[static_cast<std::size_t>(t[0])],
                                      res.vertex_map[static_cast<std::size_t>(t[1])],
                                      res.vertex_map[static_cast<std::size_t>(t[2])]});
        for (int e = 0; e < 3; ++e) {
            const int u = t[static_cast<std::size_t>(e)];
            const int v = t[static_cast<std::size_t>((e + 1) % 3)];
            if (edge_count.at(std::minmax(u, v)) == 1) {
                res.mesh.boundary[static_cast<std::size_t>(res.vertex_map[static_cast<std::size_t>(u)])] = 1;
                res.mesh.boundary[static_cast<std::size_t>(res.vertex_map[static_cast<std::size_t>(v)])] = 1;
            }
        }
    }
    return res;
}

Mesh ring_mesh(const ConvexBody& body, Vec2 center, const std::vector<double>& radii,
               int n_dirs) {
    if (n_dirs < 8) throw std::invalid_argument("n_dirs: expected at least 8");
    if (radii.empty()) throw std::invalid_argument("radii: expected at least one radius");
    for (std::size_t i = 0; i < radii.size(); ++i)
        if (!(radii[i] > 0) || (i > 0 && !(radii[i] > radii[i - 1])))
            throw std::invalid_argument("radii: expected an increasing positive list");

    Mesh mesh;
    mesh.vertices.push_back(center);
    mesh.boundary.push_back(0);
    for (double r : radii) {
        const Region ring = metric_ball(body, center, r, n_dirs);
        for (const Vec2& p : ring.boundary) {
            mesh.vertices.push_back(p);
            mesh.boundary.push_back(0);
        }
    }
    const int n = n_dirs;
    for (int j = 0; j < n; ++j) mesh.triangles.push_back({0, 1 + j, 1 + (j + 1) % n});
    for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
        const int inner = 1 + static_cast<int>(k) * n;
        const int outer = 1 + static_cast<int>(k + 1) * n;
        for (int j = 0; j < n; ++j) {
            const int i0 = inner + j, i1 = inner + (j + 1) % n;
            const int o0 = outer + j, o1 = outer + (j + 1) % n;
            // CCW sector order is (i0, o0, o1, i1); both cross-diagonal halves
            // stay positive for any radial placement along the two rays.
            mesh.triangles.push_back({i0, o0, o1});
            mesh.triangles.push_back({i0, o1, i1});
        }
    }
    for (int j = 0; j < n; ++j)
        mesh.boundary[static_cast<std::size_t>(1 + (static_cast<int>(radii.size()) - 1) * n + j)] = 1;
    return mesh;
}

double mesh_max_edge(const Mesh& mesh) {
    double best = 0;
    for (const auto& t : mesh.triangles)
        for (int e = 0; e < 3; ++e)
            best = std::max(best, dist(mesh.vertices[static_cast<std::size_t>(t[static_cast<std::size_t>(e)])],
                                       mesh.vertices[static_cast<std::size_t>(t[static_cast<std::size_t>((e + 1) % 3)])]));
    return best;
}

double mesh_min_angle(const Mesh& mesh) {
    double best = 180.0;
    for (const auto& t : mesh.triangles)
        best = std::min(best, tri_min_angle_deg(mesh.vertices[static_cast<std::size_t>(t[0])],
                                                mesh.vertices[static_cast<std::size_t>(t[1])],
                                                mesh.vertices[static_cast<std::size_t>(t[2])]));
    return best;
}

}  // namespace hilbert
