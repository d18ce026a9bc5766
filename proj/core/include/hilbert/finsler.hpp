#pragma once

#include <functional>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/vec2.hpp"

namespace hilbert {

// A norm on the plane given by an evaluator, with enough provenance to use
// exact paths where they exist (polyhedral ball vertices, Hilbert base data).
struct Norm2D {
    enum class Kind { euclidean, hexagonal, custom_polygon, hilbert_at_point };
    Kind kind = Kind::euclidean;
    std::function<double(Vec2)> eval;
    std::vector<Vec2> ball;  // exact unit-ball vertices for polyhedral kinds
    ConvexBody body{};       // hilbert_at_point provenance
    Vec2 base_point{};
};

Norm2D euclidean_norm();
// Gauge of a regular hexagon with vertices on the unit circle at angles k*60deg.
Norm2D hexagonal_norm();
// Gauge of an arbitrary convex polygon containing the origin (counterclockwise).
// Symmetric vertex lists give genuine norms; asymmetric ones give gauges.
Norm2D polygon_gauge_norm(std::vector<Vec2> ball_vertices);
// The Hilbert tangent norm u -> finsler_norm(body, p, u) frozen at p.
Norm2D hilbert_norm_at(const ConvexBody& body, Vec2 p);

double norm_value(const Norm2D& F, Vec2 v);

// Largest pairing of the covector l over the unit ball, with the point where
// it is attained. point is on the unit sphere of F; dual = l(point).
struct SupportPoint {
    Vec2 point;
    double dual;
};
SupportPoint support_point(const Norm2D& F, Vec2 l);
double norm_dual(const Norm2D& F, Vec2 l);

// Birkhoff-type normality: x is normal to y when no multiple of y shortens x,
// i.e. min over alpha of F(x + alpha y) is attained at alpha = 0. Sampled over
// alpha in [-A, A], A = 4 F(x)/F(y), with local refinement around the best.
bool is_normal(const Norm2D& F, Vec2 x, Vec2 y, double tol = 1e-9);

// A direction w with y normal to w (the supporting-line direction of the unit
// ball at y/F(y)), chosen counterclockwise from y. Polyhedral norms have a fan
// of such directions at ball vertices; the angular midpoint is returned and
// flagged.
struct NormalDirection {
    Vec2 dir;   // Euclidean unit
    bool fan = false;
};
NormalDirection normal_line(const Norm2D& F, Vec2 y);

// Hypersurface density factor: with b2 = normal_line(F, y),
// zeta = (pi/2) * len{ s : F(s b2) < 1 } / ( F(y) * area{ (t,s) : F(t y + s b2) < 1 } ),
// computed in the (t, s) coordinates; equals 1 for inner-product norms and is
// invariant under positive scaling of y.
double zeta(const Norm2D& F, Vec2 y);

// Vector X with F(X) = F*(df), df(X) = F*(df)^2, supported by ker df; the zero
// vector for df = 0.
Vec2 finsler_gradient(const Norm2D& F, Vec2 df);

}  // namespace hilbert
