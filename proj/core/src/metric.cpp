#include "hilbert/metric.hpp"

#include <cmath>
#include <stdexcept>

#include "hilbert/detail/ellipse_kernel.hpp"
#include "hilbert/detail/polygon_kernel.hpp"

namespace hilbert {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec2 unit_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

double sampled_dual(const ConvexBody& body, Vec2 p, Vec2 l, int n_dirs) {
    auto pay = [&](double theta) {
        const Vec2 d = unit_dir(theta);
        return dot(l, d) / finsler_norm(body, p, d);
    };
    double best = -std::numeric_limits<double>::infinity(), best_theta = 0.0;
    for (int i = 0; i < n_dirs; ++i) {
        const double theta = 2 * kPi * i / n_dirs;
        const double v = pay(theta);
        if (v > best) best = v, best_theta = theta;
    }
    // Sharpen around the winner; the payoff is unimodal on a bracket one
    // sample wide on either side.
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double a = best_theta - 2 * kPi / n_dirs, b = best_theta + 2 * kPi / n_dirs;
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
    return std::max({best, fc, fd});
}

}  // namespace

double hilbert_distance(const ConvexBody& body, Vec2 p, Vec2 q) {
    const Vec2 u = q - p;
    if (norm(u) <= 1e-12) {
        if (!strictly_inside(body, p)) throw std::domain_error("distance: point not strictly interior to the body");
        return 0.0;
    }
    if (body.kind == BodyKind::polygon) {
        return detail::polygon_distance(body.vertices, p, q);
    }
    const Chord ch = chord(body, p, u);  // throws unless p is interior
    const double bq = dist(ch.b, q);
    if (bq <= 0.0 || !strictly_inside(body, q))
        throw std::domain_error("distance: second point not strictly interior to the body");
    return 0.5 * std::log((dist(ch.a, q) / dist(ch.a, p)) * (dist(ch.b, p) / bq));
}

double finsler_norm(const ConvexBody& body, Vec2 p, Vec2 u) {
    const double lu = norm(u);
    if (lu == 0.0) {
        if (!strictly_inside(body, p)) throw std::domain_error("norm: point not strictly interior to the body");
        return 0.0;
    }
    switch (body.kind) {
        case BodyKind::polygon:
            // chord-parameter form; the |u| factors already cancel inside
            return detail::polygon_finsler(body.vertices, p, u);
        case BodyKind::ellipse: {
            const auto fr = detail::ellipse_frame(body.center, body.axes, body.angle);
            const Vec2 q = fr.to_disk(p);
            if (norm2(q) >= 1.0) throw std::domain_error("norm: point not strictly interior to the body");
            return detail::klein_finsler(q, fr.vec_to_disk(u));
        }
        case BodyKind::rounded_polygon: {
            const Chord ch = chord(body, p, u);
            return 0.5 * lu * (1.0 / dist(p, ch.a) + 1.0 / dist(p, ch.b));
        }
    }
    throw std::logic_error("norm: bad kind");
}

std::vector<Vec2> tangent_unit_ball(const ConvexBody& body, Vec2 p, int n_dirs) {
    if (n_dirs < 8 || n_dirs % 2 != 0)
        throw std::invalid_argument("n_dirs: expected an even count of at least 8");
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n_dirs));
    // F(p, -u) = F(p, u): evaluate half the directions, mirror the rest.
    for (int i = 0; i < n_dirs / 2; ++i) {
        const Vec2 d = unit_dir(2 * kPi * i / n_dirs);
        out.push_back(d / finsler_norm(body, p, d));
    }
    for (int i = 0; i < n_dirs / 2; ++i) out.push_back(-out[static_cast<std::size_t>(i)]);
    return out;
}

double dual_norm(const ConvexBody& body, Vec2 p, Vec2 l, int n_dirs) {
    switch (body.kind) {
        case BodyKind::polygon:
            return detail::polygon_dual_norm(body.vertices, p, l);
        case BodyKind::ellipse: {
            const auto fr = detail::ellipse_frame(body.center, body.axes, body.angle);
            const Vec2 q = fr.to_disk(p);
            if (norm2(q) >= 1.0) throw std::domain_error("norm: point not strictly interior to the body");
            return detail::klein_dual(q, fr.cov_to_disk(l));
        }
        case BodyKind::rounded_polygon:
            if (norm2(l) == 0.0) return 0.0;
            return sampled_dual(body, p, l, n_dirs);
    }
    throw std::logic_error("norm: bad kind");
}

}  // namespace hilbert
