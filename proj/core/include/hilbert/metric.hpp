#pragma once

#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/vec2.hpp"

namespace hilbert {

// Distance between interior points: half the log of the cross ratio taken
// with the two hits of the line through p and q on the boundary.
// Coincident points (|p - q| <= 1e-12) give 0; non-interior points throw.
double hilbert_distance(const ConvexBody& body, Vec2 p, Vec2 q);

// Infinitesimal norm at p: F(p, u) = |u|/2 * (1/|p - a| + 1/|p - b|) where
// a, b are the boundary hits of the line p + t u. Positively homogeneous and
// symmetric in u; F(p, 0) = 0.
double finsler_norm(const ConvexBody& body, Vec2 p, Vec2 u);

// Vertices of a polygonal approximation of {u : F(p, u) <= 1}, n_dirs
// equally spaced directions, counterclockwise. n_dirs must be even and >= 8.
std::vector<Vec2> tangent_unit_ball(const ConvexBody& body, Vec2 p, int n_dirs = 256);

// Dual norm F*(p, l) = max { l . u : F(p, u) <= 1 }. Exact for polygons
// (the unit ball is a polygon with one vertex pair per body vertex) and for
// ellipses; otherwise sampled over n_dirs directions and sharpened by a
// golden-section search around the best one.
double dual_norm(const ConvexBody& body, Vec2 p, Vec2 l, int n_dirs = 256);

}  // namespace hilbert
