#pragma once

// Ellipse bodies reduce to the unit disk through the affine frame map; the
// disk carries the Klein closed forms (metric, dual metric, density).

#include <cmath>

#include "hilbert/vec2.hpp"

namespace hilbert::detail {

struct EllipseFrame {
    Vec2 c;       // center
    Vec2 ua, ub;  // unit axis directions (ub = perp(ua))
    double a, b;  // semi-axes

    // body point -> unit-disk point
    Vec2 to_disk(Vec2 p) const {
        const Vec2 d = p - c;
        return {dot(d, ua) / a, dot(d, ub) / b};
    }
    // body tangent vector -> disk tangent vector
    Vec2 vec_to_disk(Vec2 u) const { return {dot(u, ua) / a, dot(u, ub) / b}; }
    // covector transport: l'(u') = l(u) requires l' = diag(a,b) R(-phi) l
    Vec2 cov_to_disk(Vec2 l) const { return {dot(l, ua) * a, dot(l, ub) * b}; }
    Vec2 from_disk(Vec2 q) const { return c + (a * q.x) * ua + (b * q.y) * ub; }
    Vec2 vec_from_disk(Vec2 u) const { return (a * u.x) * ua + (b * u.y) * ub; }
};

inline EllipseFrame ellipse_frame(Vec2 center, Vec2 axes, double angle) {
    const Vec2 ua{std::cos(angle), std::sin(angle)};
    return {center, ua, perp(ua), axes.x, axes.y};
}

// Klein (unit disk) closed forms; q strictly inside, r2 = |q|^2 < 1.
inline double klein_finsler(Vec2 q, Vec2 u) {
    const double one_m = 1.0 - norm2(q);
    const double qu = dot(q, u);
    return std::sqrt(norm2(u) * one_m + qu * qu) / one_m;
}

inline double klein_dual(Vec2 q, Vec2 l) {
    const double one_m = 1.0 - norm2(q);
    const double ql = dot(q, l);
    const double v = one_m * (norm2(l) - ql * ql);
    return v > 0 ? std::sqrt(v) : 0.0;
}

// Busemann density of the unit disk: (1 - r^2)^{-3/2}.
inline double klein_busemann(Vec2 q) {
    const double one_m = 1.0 - norm2(q);
    return 1.0 / (one_m * std::sqrt(one_m));
}

}  // namespace hilbert::detail
