#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/vec2.hpp"

namespace hilbert {

// Closed polygonal subdomain, counterclockwise, strictly interior to the
// ambient body. Regions produced by metric_ball carry their center/radius so
// volume and boundary routines can use the exact radial parameterization
// instead of generic grid quadrature.
struct Region {
    std::vector<Vec2> boundary;  // closing edge implicit
    bool from_metric_ball = false;
    Vec2 ball_center{};
    double ball_radius = 0.0;
};

enum class MeasureMethod { grid_quadrature, monte_carlo };

struct MeasureEstimate {
    double value = 0.0;
    double abs_error = 0.0;
    MeasureMethod method = MeasureMethod::grid_quadrature;
    long long sample_count = 0;
    std::uint64_t seed = 0;  // meaningful for monte_carlo only
};

// Density of the Hilbert (Busemann) measure against Lebesgue measure:
// pi / euclidean area of the unit tangent ball at p.
double busemann_density(const ConvexBody& body, Vec2 p);

// Integral of the Busemann density over the region. Metric balls go through
// radial quadrature (exact radius parameterization, stable arbitrarily close
// to the boundary); other regions use midpoint grid quadrature with exact
// cell clipping and a Richardson error estimate, falling back to seeded
// Halton sampling when the region is thinner than 3 cells.
// resolution <= 0 picks the default cell size (body diameter / 200).
MeasureEstimate region_volume(const ConvexBody& body, const Region& region,
                              double resolution = 0.0);

// Finsler length of a polyline: sum of finsler_norm(midpoint, segment) over
// subdivided segments, refined until successive values agree to 1e-6 relative.
double curve_length(const ConvexBody& body, const std::vector<Vec2>& polyline);

// Metric ball of radius R about x as a Region with n_dirs boundary vertices,
// each placed by the exact radial formula along its chord.
Region metric_ball(const ConvexBody& body, Vec2 x, double R, int n_dirs = 512);

// Two-sided bounds for the Hilbert volume of any metric ball of radius R in
// dimension n, and for the ratio vol_e(B_R)/vol_e(R * tangent ball).
struct BallVolumeBounds {
    double C1, C2;
};
BallVolumeBounds ball_volume_bounds(double R, int n);

struct TangentRatioBounds {
    double c1, c2;          // vol_e(B_R(x)) / vol_e(R TB(x)) bounds
    double c1_prime, c2_prime;  // variants without the 1/(2R) normalization
};
TangentRatioBounds tangent_ratio_bounds(double R, int n);

// Euclidean area enclosed by the region boundary (shoelace).
double region_euclid_area(const Region& region);

namespace detail {
// Hilbert volume of the shell between metric radii r0 < r1 about x, computed
// on shared radial quadrature nodes so the difference carries no cancellation.
// Used for ball-volume derivatives.
double ball_shell_volume(const ConvexBody& body, Vec2 x, double r0, double r1);
// Shell integral of weight(d(x, .)) against the Hilbert measure over
// {r0 < d(x, .) < r1}. Radial weights stay in double even on the deep path
// (the metric radius itself is well-conditioned; only the geometry is not).
double ball_radial_integral(const ConvexBody& body, Vec2 x, double r0, double r1,
                            const std::function<double(double)>& weight);
// Finsler length of the metric sphere of radius R about x, by doubling the
// direction count until the inscribed length stabilizes.
double sphere_finsler_length(const ConvexBody& body, Vec2 x, double R,
                             double rel_tol = 1e-5);
}  // namespace detail

}  // namespace hilbert
