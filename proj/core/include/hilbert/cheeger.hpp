#pragma once

#include <vector>

#include "hilbert/convex_body.hpp"
#include "hilbert/measure.hpp"
#include "hilbert/mesh.hpp"
#include "hilbert/spectrum.hpp"

namespace hilbert {

struct CheegerCandidate {
    Vec2 center{};
    double R = 0.0;
    double mu = 0.0;        // region volume
    double nu_plain = 0.0;  // boundary length in the tangent norms
    double nu_zeta = 0.0;   // boundary length weighted by the normal density factor
    double q_plain = 0.0;   // nu_plain / mu
    double q_zeta = 0.0;    // nu_zeta / mu
};

// Candidate-family upper bounds for the isoperimetric constants. The best
// quotients are minima over the candidates; lambda_estimate and
// inequality_slack stay NaN until a spectral estimate is chained in.
struct CheegerReport {
    std::vector<CheegerCandidate> candidates;
    double best_quotient_plain = 0.0;
    double best_quotient_zeta = 0.0;
    int best_index_plain = -1;
    int best_index_zeta = -1;
    double lambda_estimate = 0.0;
    double inequality_slack = 0.0;  // lambda_estimate - (best_quotient_zeta)^2 / 4
};

// Boundary measure over region volume. weighted == false uses the plain
// tangent-norm arclength of the boundary; weighted == true multiplies each
// segment by the density factor at its outward normal. Throws
// std::invalid_argument on a degenerate region.
double cheeger_quotient(const ConvexBody& body, const Region& region, bool weighted);

// Evaluates both quotients over metric balls on the centers x radii grid.
// Candidates run in parallel; ties break to the lowest candidate index.
CheegerReport cheeger_scan(const ConvexBody& body, const std::vector<Vec2>& centers,
                           const std::vector<double>& radii);

// Vertex values: 1 inside the region, 1 - d(v, boundary)/eps within the
// outward eps-tube, 0 beyond; distance to the boundary approximated as the
// minimum over 512 boundary samples. Throws std::domain_error when the tube
// leaves the meshed area (some boundary-flagged mesh vertex lies in the open
// tube or the region).
PLFunction tube_function(const ConvexBody& body, const Region& region, double eps,
                         const Mesh& mesh);

// First-power analogue of the Rayleigh quotient with the same one-point
// quadrature: sum of dual_norm(df) over sum of |f|, both against the Hilbert
// measure. Throws std::domain_error on zero denominator.
double sobolev_quotient(const ConvexBody& body, const Mesh& mesh, const PLFunction& f);

// One-sided facts chaining the scan to a spectral estimate: the quarter-square
// lower-bound slack (meaningful as a consistency report, since the scan gives
// only upper bounds on the isoperimetric constant), the disk benchmark where
// the constant is 1, and the per-segment weighted/plain ratio window.
struct CheegerChainReport {
    CheegerReport scan;  // copy with lambda_estimate and inequality_slack filled
    double lambda = 0.0;
    bool disk_reference = false;  // ellipse bodies: isoperimetric constant is 1
    double disk_slack = 0.0;      // lambda - 1/4, set when disk_reference
    double segment_ratio_min = 0.0;
    double segment_ratio_max = 0.0;
    bool segment_ratios_in_bounds = false;  // within [pi/8, 2*pi]
};

CheegerChainReport cheeger_chain_report(const ConvexBody& body, const CheegerReport& scan,
                                        const SpectralEstimate& lambda);

}  // namespace hilbert
