#include "hilbert/finsler.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "hilbert/detail/ellipse_kernel.hpp"
#include "hilbert/detail/polygon_kernel.hpp"
#include "hilbert/metric.hpp"

namespace hilbert {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec2 unit_dir(double phi) { return {std::cos(phi), std::sin(phi)}; }

double gauge_eval(const std::vector<Vec2>& ball, Vec2 v) {
    double g = 0.0;
    const std::size_t n = ball.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = ball[i];
        const Vec2 e = ball[(i + 1) % n] - a;
        // cross(e, v) / cross(e, a) is the affine functional that equals 1 on
        // the edge line, so the gauge is its maximum over edges.
        const double den = cross(e, a);
        g = std::max(g, cross(e, v) / den);
    }
    return g;
}

// Generic sampled support maximization with golden-section sharpening.
SupportPoint sampled_support(const Norm2D& F, Vec2 l, int n_dirs) {
    auto pay = [&](double phi) {
        const Vec2 d = unit_dir(phi);
        return dot(l, d) / F.eval(d);
    };
    double best = -std::numeric_limits<double>::infinity(), best_phi = 0.0;
    for (int i = 0; i < n_dirs; ++i) {
        const double phi = 2 * kPi * i / n_dirs;
        const double v = pay(phi);
        if (v > best) best = v, best_phi = phi;
    }
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double a = best_phi - 2 * kPi / n_dirs, b = best_phi + 2 * kPi / n_dirs;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = pay(c), fd = pay(d);
    for (int it = 0; it < 60; ++it) {
        if (fc > fd) {
            b = d, d = c, fd = fc;
            c = b - gr * (b - a), fc = pay(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + gr * (b - a), fd = pay(d);
        }
    }
    double phi = 0.5 * (a + b), val = pay(phi);
    if (best > val) phi = best_phi, val = best;
    const Vec2 u = unit_dir(phi);
    return {u / F.eval(u), val};
}

}  // namespace

Norm2D euclidean_norm() {
    Norm2D F;
    F.kind = Norm2D::Kind::euclidean;
    F.eval = [](Vec2 v) { return norm(v); };
    return F;
}

Norm2D hexagonal_norm() {
    std::vector<Vec2> ball;
    for (int k = 0; k < 6; ++k) ball.push_back(unit_dir(kPi * k / 3.0));
    return polygon_gauge_norm(std::move(ball));
}

Norm2D polygon_gauge_norm(std::vector<Vec2> ball_vertices) {
    if (ball_vertices.size() < 3)
        throw std::invalid_argument("ball: expected at least 3 vertices");
    for (std::size_t i = 0; i < ball_vertices.size(); ++i) {
        const Vec2 a = ball_vertices[i];
        const Vec2 b = ball_vertices[(i + 1) % ball_vertices.size()];
        // counterclockwise with the origin strictly to the left of every edge
        if (cross(b - a, -a) <= 0.0)
            throw std::invalid_argument(
                "ball: vertices must be counterclockwise around an interior origin");
    }
    Norm2D F;
    F.kind = Norm2D::Kind::custom_polygon;
    F.ball = std::move(ball_vertices);
    auto ball = std::make_shared<std::vector<Vec2>>(F.ball);
    F.eval = [ball](Vec2 v) { return gauge_eval(*ball, v); };
    return F;
}

Norm2D hilbert_norm_at(const ConvexBody& body, Vec2 p) {
    if (!strictly_inside(body, p))
        throw std::domain_error("norm: point not strictly interior to the body");
    Norm2D F;
    F.kind = Norm2D::Kind::hilbert_at_point;
    F.body = body;
    F.base_point = p;
    if (body.kind == BodyKind::polygon)
        F.ball = detail::polygon_tangent_ball(body.vertices, p);
    auto b = std::make_shared<ConvexBody>(body);
    F.eval = [b, p](Vec2 v) { return finsler_norm(*b, p, v); };
    return F;
}

double norm_value(const Norm2D& F, Vec2 v) { return F.eval(v); }

SupportPoint support_point(const Norm2D& F, Vec2 l) {
    if (norm2(l) == 0.0) return {{0.0, 0.0}, 0.0};
    switch (F.kind) {
        case Norm2D::Kind::euclidean: {
            const Vec2 u = normalized(l);
            return {u, dot(l, u)};
        }
        case Norm2D::Kind::hexagonal:
        case Norm2D::Kind::custom_polygon: {
            double best = -std::numeric_limits<double>::infinity();
            Vec2 arg{};
            for (const Vec2& v : F.ball) {
                const double d = dot(l, v);
                if (d > best) best = d, arg = v;
            }
            return {arg, best};
        }
        case Norm2D::Kind::hilbert_at_point: {
            if (F.body.kind == BodyKind::polygon) {
                double best = -std::numeric_limits<double>::infinity();
                Vec2 arg{};
                for (const Vec2& w : F.ball) {
                    const double d = dot(l, w);
                    if (d > best) best = d, arg = w;
                }
                return {arg, best};
            }
            if (F.body.kind == BodyKind::ellipse) {
                const auto fr =
                    detail::ellipse_frame(F.body.center, F.body.axes, F.body.angle);
                const Vec2 q = fr.to_disk(F.base_point);
                const Vec2 L = fr.cov_to_disk(l);
                const double dual = detail::klein_dual(q, L);
                const double one_m = 1.0 - norm2(q);
                const Vec2 g = one_m * (L - dot(q, L) * q);  // half-gradient of dual^2
                return {fr.vec_from_disk(g / dual), dual};
            }
            return sampled_support(F, l, 256);
        }
    }
    return sampled_support(F, l, 256);
}

double norm_dual(const Norm2D& F, Vec2 l) { return support_point(F, l).dual; }

bool is_normal(const Norm2D& F, Vec2 x, Vec2 y, double tol) {
    const double fx = F.eval(x);
    if (fx == 0.0) throw std::invalid_argument("x: must be nonzero");
    const double fy = F.eval(y);
    if (fy == 0.0) return true;
    const double A = 4.0 * fx / fy;
    auto g = [&](double a) { return F.eval(x + a * y); };
    const int n = 1000;
    double best = fx, best_a = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double a = -A + 2.0 * A * i / n;
        const double v = g(a);
        if (v < best) best = v, best_a = a;
    }
    // local golden refinement around the sampled minimum
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double lo = best_a - 2.0 * A / n, hi = best_a + 2.0 * A / n;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = g(c), fd = g(d);
    for (int it = 0; it < 60; ++it) {
        if (fc < fd) {
            hi = d, d = c, fd = fc;
            c = hi - gr * (hi - lo), fc = g(c);
        } else {
            lo = c, c = d, fc = fd;
            d = lo + gr * (hi - lo), fd = g(d);
        }
    }
    best = std::min({best, fc, fd});
    return best >= fx - tol;
}

NormalDirection normal_line(const Norm2D& F, Vec2 y) {
    if (norm2(y) == 0.0) throw std::invalid_argument("y: must be nonzero");
    const Vec2 yh = normalized(y);
    const Vec2 b = yh / F.eval(yh);  // unit-sphere base point
    const double fb = F.eval(b);
    const double h = 1e-7 * norm(b);  // step relative to the sphere point
    // One-sided derivatives of alpha -> F(b + alpha w) at 0; both nonnegative
    // exactly when the ball's supporting line at b runs along w (convexity
    // makes the local test global).
    auto deficit = [&](double phi) {
        const Vec2 w = unit_dir(phi);
        const double dp = (F.eval(b + h * w) - fb) / h;
        const double dm = (F.eval(b - h * w) - fb) / h;
        return std::min(dp, dm) * norm(b);  // slope per relative step
    };
    const double tau = 3e-6;
    const int n = 1024;
    int best_i = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double v = deficit(kPi * i / n);  // directions mod pi
        if (v > best) best = v, best_i = i;
    }
    const double step = kPi / n;
    const double phi0 = kPi * best_i / n;
    // widen to the admissible arc [lo, hi] by bisection on each side
    auto edge = [&](double in_phi, double out_phi) {
        for (int it = 0; it < 50; ++it) {
            const double mid = 0.5 * (in_phi + out_phi);
            if (deficit(mid) >= -tau)
                in_phi = mid;
            else
                out_phi = mid;
        }
        return in_phi;
    };
    double lo = phi0, hi = phi0;
    if (best >= -tau) {
        double out = phi0 - step;
        while (phi0 - out < kPi && deficit(out) >= -tau) out -= step;
        lo = edge(out + step, out);
        out = phi0 + step;
        while (out - phi0 < kPi && deficit(out) >= -tau) out += step;
        hi = edge(out - step, out);
    } else {
        // Supporting arc narrower than the grid (smooth ball): sharpen the
        // deficit peak locally instead of settling for the raw grid point.
        const double gr = (std::sqrt(5.0) - 1) / 2;
        double a = phi0 - step, b = phi0 + step;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = deficit(c), fd = deficit(d);
        for (int it = 0; it < 60; ++it) {
            if (fc > fd) {
                b = d, d = c, fd = fc;
                c = b - gr * (b - a), fc = deficit(c);
            } else {
                a = c, c = d, fc = fd;
                d = a + gr * (b - a), fd = deficit(d);
            }
        }
        lo = hi = 0.5 * (a + b);
    }
    const double mid = 0.5 * (lo + hi);
    Vec2 w = unit_dir(mid);
    if (cross(yh, w) < 0.0) w = -w;
    return {w, (hi - lo) > 0.02};
}

double zeta(const Norm2D& F, Vec2 y) {
    if (norm2(y) == 0.0) throw std::invalid_argument("y: must be nonzero");
    const Vec2 yh = normalized(y);  // exact scale invariance of the evaluation

    // Density of the flux measure against arclength: (pi/2) |n x t| len / area
    // with n = yh / F(yh) on the unit sphere and t spanning the section; the
    // cross factor makes every inner-product norm come out at exactly 1.
    auto assemble = [&](Vec2 b2, double area) {
        const double len = 1.0 / F.eval(b2) + 1.0 / F.eval(-b2);
        return (kPi / 2.0) * std::fabs(cross(yh, b2)) * len / (F.eval(yh) * area);
    };

    if (!F.ball.empty()) {
        // Polygonal ball: the supporting element for yh is combinatorial and
        // the area is a shoelace sum, so no quadrature is needed. This also
        // stays exact for the needle-shaped balls near a polygon's boundary.
        const std::vector<Vec2>& B = F.ball;
        const std::size_t n = B.size();
        Vec2 b2{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = B[i], b = B[(i + 1) % n];
            const double sa = cross(a, yh), sb = cross(yh, b);
            if (!(sa >= 0.0 && sb > 0.0)) continue;  // yh in the cone [a, b)
            if (sa <= 1e-12 * norm(a)) {
                // aligned with the vertex: bisect the two edge directions
                const Vec2 prev = B[(i + n - 1) % n];
                b2 = normalized(normalized(a - prev) + normalized(b - a));
            } else {
                b2 = normalized(b - a);
            }
            break;
        }
        if (norm2(b2) == 0.0) throw std::logic_error("zeta: no supporting cone found");
        return assemble(b2, detail::shoelace_area(B));
    }

    if (F.kind == Norm2D::Kind::hilbert_at_point && F.body.kind == BodyKind::ellipse) {
        // Inner-product norm v^T K v in disk coordinates; normal, section and
        // area all have closed forms there, and the density is frame-invariant.
        const auto fr = detail::ellipse_frame(F.body.center, F.body.axes, F.body.angle);
        const Vec2 q = fr.to_disk(F.base_point);
        const double one_m = 1.0 - norm2(q);
        const Vec2 u = normalized(fr.vec_to_disk(yh));
        const auto K = [&](Vec2 v) {
            return ((1.0 - norm2(q)) * v + dot(q, v) * q) / (one_m * one_m);
        };
        const Vec2 Ku = K(u);
        const Vec2 t = normalized(perp(Ku));
        const double det_K = 1.0 / (one_m * one_m * one_m);
        const double fu = std::sqrt(dot(u, Ku)), ft = std::sqrt(dot(t, K(t)));
        return std::sqrt(det_K) * std::fabs(cross(u, t)) / (fu * ft);
    }

    // Generic kinds: sweep the ball area in the (yh, b2) frame, doubling the
    // rule until it settles, and scale by the frame determinant.
    const Vec2 b2 = normal_line(F, yh).dir;
    double prev = -1.0, area = 0.0;
    for (int n = 2048; n <= (1 << 20); n *= 2) {
        double cur = 0.0;
        for (int k = 0; k < n; ++k) {
            const double phi = 2 * kPi * (k + 0.5) / n;
            const double g = F.eval(std::cos(phi) * yh + std::sin(phi) * b2);
            cur += 0.5 / (g * g) * (2 * kPi / n);
        }
        area = cur;
        if (prev > 0.0 && std::fabs(cur - prev) <= 1e-9 * cur) break;
        prev = cur;
    }
    area *= std::fabs(cross(yh, b2));
    return assemble(b2, area);
}

Vec2 finsler_gradient(const Norm2D& F, Vec2 df) {
    if (norm2(df) == 0.0) return {0.0, 0.0};
    const SupportPoint sp = support_point(F, df);
    return sp.dual * sp.point;
}

}  // namespace hilbert
