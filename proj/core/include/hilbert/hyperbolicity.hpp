#pragma once

#include <cstdint>
#include <string>

#include "hilbert/convex_body.hpp"
#include "hilbert/vec2.hpp"

namespace hilbert {

// Empirical lower bound for the hyperbolicity constant. Fixed seed and
// growing sample counts give non-decreasing estimates (sample i is the same
// quadruple regardless of the total).
struct DeltaEstimate {
    double delta = 0.0;
    long long sample_count = 0;
    double scale = 0.0;
    std::string method;  // "four-point" or "thin-triangle"
    std::uint64_t seed = 0;
};

// (x | y)_w = (d(x,w) + d(y,w) - d(x,y)) / 2.
double gromov_product(const ConvexBody& body, Vec2 w, Vec2 x, Vec2 y);

// Four-point condition over seeded random quadruples in the metric ball of
// the given radius about `center`: max of min((x|z)_w, (y|z)_w) - (x|y)_w,
// clamped at zero. Points are drawn in Hilbert polar coordinates (uniform
// direction, uniform metric radius), so large radii are actually exercised.
// Batches run in parallel on disjoint sub-ranges of one generator stream.
DeltaEstimate four_point_delta(const ConvexBody& body, Vec2 center, double scale,
                               long long samples, std::uint64_t seed);

// Slimness of the geodesic triangle with the given interior vertices (sides
// are chords): max over stations on side [x,y] of the distance to the nearest
// station on the two other sides, stations uniform in metric arclength.
double thin_triangle_delta(const ConvexBody& body, Vec2 x, Vec2 y, Vec2 z,
                           int samples_per_side);

}  // namespace hilbert
