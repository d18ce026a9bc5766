#pragma once

#include <functional>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/measure.hpp"
#include "hilbert/vec2.hpp"

namespace hilbert {

// Measure induced on a curve by the Hilbert measure: per segment, Finsler
// length times zeta at the outward normal times the extra density phi.
// `densities` holds the zeta * phi factor per segment of `base`.
struct HypersurfaceMeasure {
    std::vector<Vec2> base;
    std::vector<double> densities;
    double total = 0.0;
    bool closed = false;
};

// density == nullptr integrates with phi = 1. Closed curves (first point ~
// last, or any loop of >= 3 points) orient their normals outward.
HypersurfaceMeasure hypersurface_measure(const ConvexBody& body,
                                         const std::vector<Vec2>& curve,
                                         const std::function<double(Vec2)>& density = {});

struct CoareaResult {
    double lhs = 0.0;  // band integral of phi * F*(df) d(mu)
    double rhs = 0.0;  // integral over t of the level-set measures
    double rel_gap = 0.0;
    std::vector<std::pair<double, double>> levels;  // (t, level measure)
};

// Checks the co-area identity for a scalar field f over the band
// {t0 <= f <= t1}: grid quadrature with central-difference differentials on
// the left, marching-squares level tracing plus hypersurface measures on the
// right. Throws std::runtime_error if a traced level fails to close.
CoareaResult coarea_check(const ConvexBody& body, const std::function<double(Vec2)>& f,
                          const std::function<double(Vec2)>& phi, double t0, double t1,
                          int n_levels, double resolution = 0.0);

struct SphereAreaDerivative {
    double area;               // induced measure of the metric sphere
    double volume_derivative;  // (vol(B_{rho+eps}) - vol(B_rho)) / eps
};

SphereAreaDerivative sphere_area_derivative(const ConvexBody& body, Vec2 x, double rho,
                                            double eps);

}  // namespace hilbert
