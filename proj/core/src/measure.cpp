#include "hilbert/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "hilbert/detail/ellipse_kernel.hpp"
#include "hilbert/detail/polygon_kernel.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/rng.hpp"

namespace hilbert {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr int kGauss = 8;
constexpr double kGaussX[kGauss] = {
    -0.9602898564975362316835609, -0.7966664774136267395915539,
    -0.5255324099163289858177390, -0.1834346424956498049394761,
    0.1834346424956498049394761,  0.5255324099163289858177390,
    0.7966664774136267395915539,  0.9602898564975362316835609};
constexpr double kGaussW[kGauss] = {
    0.1012285362903762591525314, 0.2223810344533744705443560,
    0.3137066458778872873379622, 0.3626837833783619829651504,
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

// ---- radial (polar) quadrature for metric balls ------------------------------
//
// A ball about x is parameterized by direction theta and metric radius t; the
// boundary point along the chord (alpha behind x, beta ahead, gamma total) sits
// at s(t) = alpha beta E / (gamma + E alpha), E = e^{2t} - 1, and the area
// element is s (ds/dt) dt dtheta with ds/dt = 2 alpha beta gamma e^{2t} /
// (gamma + E alpha)^2. The density blowup near the boundary is absorbed by
// ds/dt -> 0, so the integrand stays smooth in t for every fixed ray.

template <class T, class ChordFn, class DensityFn, class SplitFn>
T polar_ball_integral(const ChordFn& chord_at, const DensityFn& density_at,
                      const SplitFn& split_at, Vec2T<T> x, T t0, T t1,
                      const std::vector<double>& theta_breaks, int panels_per_sector,
                      int t_panels) {
    T total = 0;
    const std::size_t ns = theta_breaks.size() - 1;
    std::vector<T> edges;
    for (std::size_t sec = 0; sec < ns; ++sec) {
        const double th_lo = theta_breaks[sec], th_hi = theta_breaks[sec + 1];
        for (int p = 0; p < panels_per_sector; ++p) {
            const double a = th_lo + (th_hi - th_lo) * p / panels_per_sector;
            const double b = th_lo + (th_hi - th_lo) * (p + 1) / panels_per_sector;
            for (int i = 0; i < kGauss; ++i) {
                const T theta = T(0.5 * (a + b) + 0.5 * (b - a) * kGaussX[i]);
                const T w_th = T(0.5 * (b - a) * kGaussW[i]);
                const Vec2T<T> u{detail::r_cos(theta), detail::r_sin(theta)};
                T alpha, beta;
                chord_at(u, alpha, beta);
                const T gamma = alpha + beta;
                // panel edges: uniform split plus the ray's density kinks
                edges.clear();
                for (int q = 0; q <= t_panels; ++q)
                    edges.push_back(t0 + (t1 - t0) * T(q) / T(t_panels));
                split_at(u, alpha, beta, t0, t1, edges);
                std::sort(edges.begin(), edges.end());
                T ray = 0;
                for (std::size_t q = 0; q + 1 < edges.size(); ++q) {
                    const T ta = edges[q], tb = edges[q + 1];
                    if (!(tb - ta > (t1 - t0) * T(1e-12))) continue;
                    for (int j = 0; j < kGauss; ++j) {
                        const T t = T(0.5) * (ta + tb) + T(0.5) * (tb - ta) * T(kGaussX[j]);
                        const T w_t = T(0.5) * (tb - ta) * T(kGaussW[j]);
                        const T e2t = detail::r_exp(T(2) * t);
                        const T E = e2t - T(1);
                        const T den = gamma + E * alpha;
                        const T s = alpha * beta * E / den;
                        const T s_t = T(2) * alpha * beta * gamma * e2t / (den * den);
                        const Vec2T<T> pt = x + s * u;
                        ray += w_t * density_at(pt, t) * s * s_t;
                    }
                }
                total += w_th * ray;
            }
        }
    }
    return total;
}

// The polygon density is smooth except across open diagonals (chords through
// two non-adjacent vertices), where the tangent-ball combinatorics change.
// Splitting the radial panels at those crossings keeps the Gauss rule at full
// order.
template <class T>
struct PolygonDiagonalSplits {
    std::vector<std::pair<Vec2T<T>, Vec2T<T>>> diagonals;
    Vec2T<T> x;

    PolygonDiagonalSplits(const std::vector<Vec2T<T>>& v, Vec2T<T> x_) : x(x_) {
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;  // edge, not a diagonal
                diagonals.emplace_back(v[i], v[j]);
            }
    }

    void operator()(Vec2T<T> u, T alpha, T beta, T t0, T t1, std::vector<T>& out) const {
        for (const auto& [a, b] : diagonals) {
            const Vec2T<T> d = b - a;
            const T den = cross(d, u);
            if (detail::r_abs(den) <= T(1e-14) * norm(d)) continue;
            const T s = cross(d, a - x) / den;
            if (!(s > T(0)) || !(s < beta)) continue;
            const T tau = dot((x + s * u) - a, d) / norm2(d);
            if (!(tau > T(0)) || !(tau < T(1))) continue;
            const T t = T(0.5) * detail::r_log(beta * (alpha + s) / (alpha * (beta - s)));
            if (t > t0 && t < t1) out.push_back(t);
        }
    }
};

struct NoSplits {
    template <class T>
    void operator()(Vec2T<T>, T, T, T, T, std::vector<T>&) const {}
};

std::vector<double> theta_breakpoints(const ConvexBody& body, Vec2 x) {
    if (body.kind == BodyKind::polygon || body.kind == BodyKind::rounded_polygon) {
        std::vector<double> br;
        for (const Vec2& v : body.vertices) {
            // both chord endpoints kink when a vertex crosses the ray, so split
            // at the vertex direction and at its antipode
            double a = std::atan2(v.y - x.y, v.x - x.x);
            if (a < 0) a += 2 * kPi;
            br.push_back(a);
            double o = a + kPi;
            if (o >= 2 * kPi) o -= 2 * kPi;
            br.push_back(o);
        }
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end(),
                             [](double p, double q) { return q - p < 1e-12; }),
                 br.end());
        br.push_back(br.front() + 2 * kPi);
        return br;
    }
    return {0.0, 2 * kPi};
}

// Shared double-precision geometry callbacks for the generic kinds.
struct GenericRay {
    const ConvexBody& body;
    Vec2 x;
    void operator()(Vec2 u, double& alpha, double& beta) const {
        const Chord ch = chord(body, x, u);
        alpha = dist(x, ch.a);
        beta = dist(ch.b, x);
    }
};

using RadialWeight = std::function<double(double)>;

double shell_volume_double(const ConvexBody& body, Vec2 x, double t0, double t1,
                           int panels_per_sector, int t_panels,
                           const RadialWeight& radial_w = {}) {
    const auto breaks = theta_breakpoints(body, x);
    const GenericRay ray{body, x};
    const auto dens = [&](Vec2 p, double t) {
        const double d = busemann_density(body, p);
        return radial_w ? d * radial_w(t) : d;
    };
    if (body.kind == BodyKind::polygon) {
        const PolygonDiagonalSplits<double> splits(body.vertices, x);
        return polar_ball_integral<double>(ray, dens, splits, x, t0, t1, breaks,
                                           panels_per_sector, t_panels);
    }
    return polar_ball_integral<double>(ray, dens, NoSplits{}, x, t0, t1, breaks,
                                       panels_per_sector, t_panels);
}

#if defined(HILBERTGEO_HAS_FLOAT128)
using deep = detail::deep_real;

double shell_volume_deep_polygon(const ConvexBody& body, Vec2 x, double t0, double t1,
                                 int panels_per_sector, int t_panels,
                                 const RadialWeight& radial_w = {}) {
    std::vector<Vec2T<deep>> v;
    v.reserve(body.vertices.size());
    for (const Vec2& p : body.vertices) v.push_back({deep(p.x), deep(p.y)});
    const Vec2T<deep> xq{deep(x.x), deep(x.y)};
    const auto ray = [&](Vec2T<deep> u, deep& alpha, deep& beta) {
        const auto h = detail::polygon_line_hits(v, xq, u);
        alpha = -h.t_minus;  // |u| = 1
        beta = h.t_plus;
    };
    const auto dens = [&](Vec2T<deep> p, deep t) {
        const deep d = detail::polygon_busemann(v, p);
        return radial_w ? d * deep(radial_w(detail::r_to_double(t))) : d;
    };
    const PolygonDiagonalSplits<deep> splits(v, xq);
    const auto breaks = theta_breakpoints(body, x);
    return detail::r_to_double(polar_ball_integral<deep>(ray, dens, splits, xq, deep(t0),
                                                         deep(t1), breaks, panels_per_sector,
                                                         t_panels));
}
#endif

bool needs_deep(const ConvexBody& body, double R) {
#if defined(HILBERTGEO_HAS_FLOAT128)
    return body.kind == BodyKind::polygon && std::exp(-2.0 * R) < 1e-12;
#else
    (void)body;
    (void)R;
    return false;
#endif
}

double shell_volume(const ConvexBody& body, Vec2 x, double t0, double t1,
                    int panels_per_sector, int t_panels, const RadialWeight& radial_w = {}) {
#if defined(HILBERTGEO_HAS_FLOAT128)
    if (needs_deep(body, t1))
        return shell_volume_deep_polygon(body, x, t0, t1, panels_per_sector, t_panels,
                                         radial_w);
#endif
    return shell_volume_double(body, x, t0, t1, panels_per_sector, t_panels, radial_w);
}

int default_sector_panels(const ConvexBody& body, Vec2 x) {
    const std::size_t ns = theta_breakpoints(body, x).size() - 1;
    return std::max<int>(4, static_cast<int>(48 / ns));
}

int default_t_panels(double R) { return std::max(6, static_cast<int>(std::ceil(2 * R))); }

// ---- generic grid quadrature -------------------------------------------------

bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
    bool in = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 a = poly[j], b = poly[i];
        if ((b.y > p.y) != (a.y > p.y)) {
            const double xi = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
            if (p.x < xi) in = !in;
        }
    }
    return in;
}

bool polygon_is_convex(const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    double scale = 0;
    for (const Vec2& p : poly) scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = poly[(i + 1) % n] - poly[i];
        const Vec2 e1 = poly[(i + 2) % n] - poly[(i + 1) % n];
        if (cross(e0, e1) < -1e-12 * scale * scale) return false;
    }
    return true;
}

// Clip a convex cell rectangle against a convex region (Sutherland-Hodgman).
std::vector<Vec2> clip_convex(std::vector<Vec2> subject, const std::vector<Vec2>& clip) {
    const std::size_t n = clip.size();
    for (std::size_t i = 0; i < n && !subject.empty(); ++i) {
        const Vec2 a = clip[i], b = clip[(i + 1) % n];
        const Vec2 e = b - a;
        std::vector<Vec2> out;
        const std::size_t m = subject.size();
        for (std::size_t j = 0; j < m; ++j) {
            const Vec2 p = subject[j], q = subject[(j + 1) % m];
            const double sp = cross(e, p - a), sq = cross(e, q - a);
            if (sp >= 0) out.push_back(p);
            if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0))
                out.push_back(p + (sp / (sp - sq)) * (q - p));
        }
        subject = std::move(out);
    }
    return subject;
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
    double a = 0;
    Vec2 c{0, 0};
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
        const double w = cross(p, q);
        a += w;
        c = c + w * (p + q);
    }
    if (std::fabs(a) < 1e-300) return poly.front();
    return c / (3.0 * a);
}

double grid_pass(const ConvexBody& body, const std::vector<Vec2>& poly, bool convex,
                 double res, long long& cells_hit) {
    double x0 = poly[0].x, x1 = x0, y0 = poly[0].y, y1 = y0;
    for (const Vec2& p : poly) {
        x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
    const int nx = std::max(1, static_cast<int>(std::ceil((x1 - x0) / res)));
    const int ny = std::max(1, static_cast<int>(std::ceil((y1 - y0) / res)));
    double total = 0;
    cells_hit = 0;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const double cx0 = x0 + ix * res, cy0 = y0 + iy * res;
            const double cx1 = std::min(cx0 + res, x1), cy1 = std::min(cy0 + res, y1);
            const Vec2 mid{0.5 * (cx0 + cx1), 0.5 * (cy0 + cy1)};
            int inside = 0;
            const Vec2 corners[4] = {{cx0, cy0}, {cx1, cy0}, {cx1, cy1}, {cx0, cy1}};
            for (const Vec2& c : corners) inside += point_in_polygon(poly, c) ? 1 : 0;
            if (inside == 4 && point_in_polygon(poly, mid)) {
                total += busemann_density(body, mid) * (cx1 - cx0) * (cy1 - cy0);
                ++cells_hit;
                continue;
            }
            // partial or possibly-crossed cell
            if (convex) {
                const auto part =
                    clip_convex({{cx0, cy0}, {cx1, cy0}, {cx1, cy1}, {cx0, cy1}}, poly);
                if (part.size() >= 3) {
                    const double a = detail::shoelace_area(part);
                    if (a > 0) {
                        total += busemann_density(body, polygon_centroid(part)) * a;
                        ++cells_hit;
                    }
                }
            } else {
                int cnt = 0;
                for (int sy = 0; sy < 4; ++sy)
                    for (int sx = 0; sx < 4; ++sx) {
                        const Vec2 s{cx0 + (sx + 0.5) * (cx1 - cx0) / 4,
                                     cy0 + (sy + 0.5) * (cy1 - cy0) / 4};
                        if (point_in_polygon(poly, s)) ++cnt;
                    }
                if (cnt > 0) {
                    total += busemann_density(body, mid) * (cx1 - cx0) * (cy1 - cy0) * cnt / 16.0;
                    ++cells_hit;
                }
            }
        }
    }
    return total;
}

MeasureEstimate halton_volume(const ConvexBody& body, const std::vector<Vec2>& poly) {
    double x0 = poly[0].x, x1 = x0, y0 = poly[0].y, y1 = y0;
    for (const Vec2& p : poly) {
        x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
    const long long M = 1 << 17;
    const double box = (x1 - x0) * (y1 - y0);
    double sum = 0, sum2 = 0;
    for (long long i = 1; i <= M; ++i) {
        const Vec2 p{x0 + (x1 - x0) * halton(static_cast<std::uint64_t>(i), 2),
                     y0 + (y1 - y0) * halton(static_cast<std::uint64_t>(i), 3)};
        double f = 0;
        if (point_in_polygon(poly, p)) f = busemann_density(body, p);
        sum += f;
        sum2 += f * f;
    }
    const double mean = sum / static_cast<double>(M);
    const double var = std::max(0.0, sum2 / static_cast<double>(M) - mean * mean);
    MeasureEstimate est;
    est.value = box * mean;
    est.abs_error = 3.0 * box * std::sqrt(var / static_cast<double>(M));
    est.method = MeasureMethod::monte_carlo;
    est.sample_count = M;
    est.seed = 0;
    return est;
}

}  // namespace

double busemann_density(const ConvexBody& body, Vec2 p) {
    switch (body.kind) {
        case BodyKind::polygon:
            return detail::polygon_busemann(body.vertices, p);
        case BodyKind::ellipse: {
            const auto fr = detail::ellipse_frame(body.center, body.axes, body.angle);
            const Vec2 q = fr.to_disk(p);
            if (norm2(q) >= 1.0)
                throw std::domain_error("density: point not strictly interior to the body");
            // tangent vectors scale by det = a b under the frame map
            return detail::klein_busemann(q) / (fr.a * fr.b);
        }
        case BodyKind::rounded_polygon: {
            const auto ball = tangent_unit_ball(body, p, 256);
            return kPi / detail::shoelace_area(ball);
        }
    }
    throw std::logic_error("density: bad kind");
}

Region metric_ball(const ConvexBody& body, Vec2 x, double R, int n_dirs) {
    if (!(R > 0.0)) throw std::invalid_argument("R: must be positive");
    if (n_dirs < 8) throw std::invalid_argument("n_dirs: expected at least 8");
    if (!strictly_inside(body, x))
        throw std::domain_error("ball: center not strictly interior to the body");
    Region reg;
    reg.boundary.reserve(static_cast<std::size_t>(n_dirs));
    reg.from_metric_ball = true;
    reg.ball_center = x;
    reg.ball_radius = R;
    const double E = std::expm1(2.0 * R);
    for (int i = 0; i < n_dirs; ++i) {
        const double theta = 2 * kPi * i / n_dirs;
        const Vec2 u{std::cos(theta), std::sin(theta)};
        const Chord ch = chord(body, x, u);
        const double alpha = dist(x, ch.a), beta = dist(ch.b, x);
        reg.boundary.push_back(detail::radial_sphere_point(alpha, beta, E, x, u));
    }
    return reg;
}

MeasureEstimate region_volume(const ConvexBody& body, const Region& region,
                              double resolution) {
    if (region.boundary.size() < 3)
        throw std::invalid_argument("region: expected at least 3 boundary points");

    if (region.from_metric_ball) {
        const Vec2 x = region.ball_center;
        const double R = region.ball_radius;
        const int tp = default_t_panels(R);
        // The angular integrand steepens with R near the vertex directions, so
        // double the panels until the value settles.
        int sp = default_sector_panels(body, x);
        MeasureEstimate est;
        est.value = shell_volume(body, x, 0.0, R, sp, tp);
        double prev = shell_volume(body, x, 0.0, R, std::max(2, sp / 2), tp);
        while (sp < 512 && std::fabs(est.value - prev) > 1e-10 * est.value) {
            prev = est.value;
            sp *= 2;
            est.value = shell_volume(body, x, 0.0, R, sp, tp);
        }
        est.abs_error = std::max(std::fabs(est.value - prev), 1e-13 * est.value);
        est.method = MeasureMethod::grid_quadrature;
        est.sample_count =
            static_cast<long long>(theta_breakpoints(body, x).size() - 1) * sp * kGauss * tp *
            kGauss;
        return est;
    }

    const double area = detail::shoelace_area(region.boundary);
    if (!(area > 0.0))
        throw std::invalid_argument("region: boundary must be counterclockwise with positive area");
    for (const Vec2& v : region.boundary)
        if (classify(body, v) <= 0)
            throw std::domain_error("region: touches the body boundary");

    double res = resolution > 0 ? resolution : euclid_diameter(body) / 200.0;

    // Thinness test: compare the region area against a 3-cell-wide strip of its
    // bounding box; thin slivers are handed to the seeded Halton fallback.
    double x0 = region.boundary[0].x, x1 = x0, y0 = region.boundary[0].y, y1 = y0;
    for (const Vec2& p : region.boundary) {
        x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
    const double long_side = std::max(x1 - x0, y1 - y0);
    if (area < 3.0 * res * long_side && area < 0.5 * (x1 - x0) * (y1 - y0))
        return halton_volume(body, region.boundary);

    const bool convex = polygon_is_convex(region.boundary);
    long long hits_c = 0, hits_f = 0;
    const double coarse = grid_pass(body, region.boundary, convex, res, hits_c);
    const double fine = grid_pass(body, region.boundary, convex, res / 2, hits_f);
    MeasureEstimate est;
    est.value = fine + (fine - coarse) / 3.0;  // midpoint rule is second order
    est.abs_error = std::max(std::fabs(fine - coarse) / 3.0, 1e-14 * std::fabs(fine));
    est.method = MeasureMethod::grid_quadrature;
    est.sample_count = hits_c + hits_f;
    return est;
}

double curve_length(const ConvexBody& body, const std::vector<Vec2>& polyline) {
    if (polyline.size() < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        const Vec2 a = polyline[i], b = polyline[i + 1];
        if (dist(a, b) <= 1e-15) continue;
        double prev = finsler_norm(body, 0.5 * (a + b), b - a);
        for (int depth = 1; depth <= 16; ++depth) {
            const int m = 1 << depth;
            double cur = 0.0;
            for (int j = 0; j < m; ++j) {
                const Vec2 p = a + (static_cast<double>(j) / m) * (b - a);
                const Vec2 q = a + (static_cast<double>(j + 1) / m) * (b - a);
                cur += finsler_norm(body, 0.5 * (p + q), q - p);
            }
            const bool done = std::fabs(cur - prev) <= 1e-6 * std::fabs(cur);
            prev = cur;
            if (done) break;
        }
        total += prev;
    }
    return total;
}

BallVolumeBounds ball_volume_bounds(double R, int n) {
    if (!(R > 0.0) || n < 1) throw std::invalid_argument("bounds: need R > 0 and n >= 1");
    const double omega_n = std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
    const double lower = omega_n / (4.0 * std::exp(2.0 * n * R)) *
                         std::pow(std::expm1(2.0 * R) / std::expm1(2.0 * (R + 1.0)), n);
    const double upper = std::pow(std::expm1(4.0 * R) / 2.0, n) * omega_n;
    return {lower, upper};
}

TangentRatioBounds tangent_ratio_bounds(double R, int n) {
    if (!(R > 0.0) || n < 1) throw std::invalid_argument("bounds: need R > 0 and n >= 1");
    const double g = std::expm1(2.0 * R);  // e^{2R} - 1
    const double e2R = std::exp(2.0 * R);
    TangentRatioBounds b;
    b.c1 = std::pow(g / (2.0 * R * e2R), n);
    b.c2 = std::pow(g / (2.0 * R), n);
    b.c1_prime = std::pow(g / (2.0 * e2R), n);
    b.c2_prime = std::pow(g / 2.0, n);
    return b;
}

double region_euclid_area(const Region& region) {
    return detail::shoelace_area(region.boundary);
}

namespace detail {

double ball_shell_volume(const ConvexBody& body, Vec2 x, double r0, double r1) {
    if (!(0.0 <= r0 && r0 < r1)) throw std::invalid_argument("shell: need 0 <= r0 < r1");
    const int sp = default_sector_panels(body, x);
    const int tp = std::max(4, static_cast<int>(std::ceil(4 * (r1 - r0))));
    return shell_volume(body, x, r0, r1, sp, tp);
}

double ball_radial_integral(const ConvexBody& body, Vec2 x, double r0, double r1,
                            const std::function<double(double)>& weight) {
    if (!(0.0 <= r0 && r0 < r1)) throw std::invalid_argument("shell: need 0 <= r0 < r1");
    const int sp = default_sector_panels(body, x);
    const int tp = std::max(4, static_cast<int>(std::ceil(4 * (r1 - r0))));
    return shell_volume(body, x, r0, r1, sp, tp, weight);
}

double sphere_finsler_length(const ConvexBody& body, Vec2 x, double R, double rel_tol) {
#if defined(HILBERTGEO_HAS_FLOAT128)
    if (needs_deep(body, R)) {
        std::vector<Vec2T<deep>> v;
        for (const Vec2& p : body.vertices) v.push_back({deep(p.x), deep(p.y)});
        const Vec2T<deep> xq{deep(x.x), deep(x.y)};
        const deep E = r_expm1(deep(2) * deep(R));
        double prev = 0.0;
        for (int n = 1024; n <= (1 << 17); n *= 2) {
            std::vector<Vec2T<deep>> pts;
            pts.reserve(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                const deep theta = deep(2) * pi_T<deep>() * deep(i) / deep(n);
                const Vec2T<deep> u{r_cos(theta), r_sin(theta)};
                const auto h = polygon_line_hits(v, xq, u);
                pts.push_back(radial_sphere_point(-h.t_minus, h.t_plus, E, xq, u));
            }
            deep len = 0;
            for (int i = 0; i < n; ++i)
                len += polygon_distance(v, pts[static_cast<std::size_t>(i)],
                                        pts[static_cast<std::size_t>((i + 1) % n)]);
            const double cur = r_to_double(len);
            if (prev > 0 && std::fabs(cur - prev) <= rel_tol * cur) return cur;
            prev = cur;
        }
        return prev;
    }
#endif
    double prev = 0.0;
    for (int n = 1024; n <= (1 << 17); n *= 2) {
        const Region ring = metric_ball(body, x, R, n);
        double len = 0.0;
        for (int i = 0; i < n; ++i)
            len += hilbert_distance(body, ring.boundary[static_cast<std::size_t>(i)],
                                    ring.boundary[static_cast<std::size_t>((i + 1) % n)]);
        if (prev > 0 && std::fabs(len - prev) <= rel_tol * len) return len;
        prev = len;
    }
    return prev;
}

}  // namespace detail

}  // namespace hilbert
