#pragma once

#include <utility>
#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/mesh.hpp"

namespace hilbert {

// One value per mesh vertex; Dirichlet test functions carry exact zeros on
// boundary-flagged vertices.
struct PLFunction {
    std::vector<double> values;
};

struct SpectralEstimate {
    double lambda = 0.0;
    PLFunction minimizer;
    int restarts_used = 0;
    bool converged = false;
    double mesh_h = 0.0;  // max edge of the mesh the estimate lives on
};

// Dual-norm-squared energy over L2 mass, both against the Hilbert measure
// with one-point (centroid) quadrature per triangle; the gradient covector of
// a PL function is constant per triangle. Throws std::domain_error when the
// denominator vanishes.
double rayleigh_quotient(const ConvexBody& body, const Mesh& mesh, const PLFunction& f);

// Minimizes the Rayleigh quotient over Dirichlet PL functions by normalized
// subgradient descent with Armijo backtracking on the L2(mu) unit sphere:
// best of `restarts` seeded nonnegative random starts plus any caller-provided
// warm starts (warm starts listed first for tie-breaking). converged means the
// winner's relative decrease fell below 1e-8 across 50 iterations. Restarts
// run in parallel; the reduction is deterministic (tie -> lowest index).
SpectralEstimate minimize_rayleigh(const ConvexBody& body, const Mesh& mesh,
                                   int restarts = 5, int max_iter = 2000,
                                   const std::vector<PLFunction>& warm_starts = {});

// Dirichlet estimates on the exhaustion by homotheties alpha * C about the
// area centroid. One mesh is built on the largest homothety; each smaller
// stage keeps the triangles lying inside its own homothety, so the PL spaces
// nest, and each stage warm-starts from the previous minimizer extended by
// zero — the reported sequence is non-increasing by construction.
std::vector<std::pair<double, SpectralEstimate>> lambda1_exhaustion(
    const ConvexBody& body, const std::vector<double>& alphas, double h);

// Linear extrapolation of the exhaustion tail to alpha -> 1 in the variable
// (1 - alpha). Falls back to the last value when only one stage exists.
double richardson_extrapolate(const std::vector<std::pair<double, SpectralEstimate>>& seq);

// Vertex values clamp(1 - max(0, d(center, v) - R), 0, 1). Throws
// std::domain_error unless the ball of radius R+1 fits inside the meshed
// region (every boundary vertex at distance >= R+1).
PLFunction annulus_test_function(const ConvexBody& body, Vec2 center, double R,
                                 const Mesh& mesh);

// Continuum Rayleigh quotient of the annulus test function via radial
// quadrature: the dual norm of the differential of a distance function is 1
// across the band, so the quotient reduces to shell and weighted-shell
// volumes. Stable at radii far beyond what Euclidean meshes can resolve.
double annulus_quotient(const ConvexBody& body, Vec2 center, double R);

struct SandwichReport {
    double rho = 0.0;
    // ambient bodies used: (1-rho)C, C, (1+rho)C, and for polygons a smoothed
    // variant whose certified defect is at most rho
    std::vector<double> lambdas;
    double max_spread = 0.0;  // (max - min) / min over lambdas
};

// Lambda estimates for one region and one mesh while the ambient body varies
// over nearby sandwiching bodies. Requires the region closure inside
// (1 - 2 rho) C; throws std::domain_error otherwise.
SandwichReport sandwich_stability(const ConvexBody& body, const Region& region, double rho,
                                  double h);

}  // namespace hilbert
