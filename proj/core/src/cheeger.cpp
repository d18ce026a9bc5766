#include "hilbert/cheeger.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hilbert/calculus.hpp"
#include "hilbert/measure.hpp"
#include "hilbert/metric.hpp"

namespace hilbert {
namespace {

constexpr double kPi = 3.14159265358979323846;

inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

bool point_in_loop(const std::vector<Vec2>& loop, Vec2 p) {
    bool in = false;
    for (std::size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
        const Vec2 a = loop[i], b = loop[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double t = (p.y - b.y) / (a.y - b.y);
            if (p.x < b.x + t * (a.x - b.x)) in = !in;
        }
    }
    return in;
}

// 512 stations equally spaced by arclength along the closed loop
std::vector<Vec2> resample_loop(const std::vector<Vec2>& loop, int n) {
    const std::size_t m = loop.size();
    std::vector<double> cum(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        cum[i + 1] = cum[i] + dist(loop[i], loop[(i + 1) % m]);
    const double total = cum[m];
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n));
    std::size_t seg = 0;
    for (int k = 0; k < n; ++k) {
        const double s = total * static_cast<double>(k) / n;
        while (seg + 1 < m && cum[seg + 1] < s) ++seg;
        const double len = cum[seg + 1] - cum[seg];
        const double w = len > 0.0 ? (s - cum[seg]) / len : 0.0;
        out.push_back(loop[seg] + w * (loop[(seg + 1) % m] - loop[seg]));
    }
    return out;
}

// Boundary measure of an exact metric ball; the polyline the region carries is
// only a sampling, so refine the sphere itself until the measure settles.
double ball_boundary_measure(const ConvexBody& body, Vec2 c, double R, bool weighted) {
    if (!weighted) return detail::sphere_finsler_length(body, c, R, 1e-7);
    double prev = -1.0;
    for (int n = 1024; n <= (1 << 16); n *= 2) {
        const Region ring = metric_ball(body, c, R, n);
        const double cur = hypersurface_measure(body, ring.boundary).total;
        if (prev >= 0.0 && std::fabs(cur - prev) <= 3e-7 * cur) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

double cheeger_quotient(const ConvexBody& body, const Region& region, bool weighted) {
    if (region.boundary.size() < 3)
        throw std::invalid_argument("region: expected at least 3 boundary points");
    const double mu = region_volume(body, region).value;
    if (!(mu > 0.0)) throw std::invalid_argument("region: degenerate (zero volume)");
    double nu;
    if (region.from_metric_ball) {
        nu = ball_boundary_measure(body, region.ball_center, region.ball_radius, weighted);
    } else if (weighted) {
        nu = hypersurface_measure(body, region.boundary).total;
    } else {
        std::vector<Vec2> loop = region.boundary;
        loop.push_back(loop.front());
        nu = curve_length(body, loop);
    }
    return nu / mu;
}

CheegerReport cheeger_scan(const ConvexBody& body, const std::vector<Vec2>& centers,
                           const std::vector<double>& radii) {
    if (centers.empty() || radii.empty())
        throw std::invalid_argument("scan: empty candidate grid");
    std::vector<CheegerCandidate> cands;
    cands.reserve(centers.size() * radii.size());
    for (const Vec2& c : centers)
        for (double R : radii) {
            if (!(R > 0.0)) throw std::invalid_argument("scan: radii must be positive");
            CheegerCandidate cd;
            cd.center = c;
            cd.R = R;
            cands.push_back(cd);
        }

    auto eval = [&body](CheegerCandidate cd) {
        const Region ball = metric_ball(body, cd.center, cd.R);
        cd.mu = region_volume(body, ball).value;
        cd.nu_plain = ball_boundary_measure(body, cd.center, cd.R, false);
        cd.nu_zeta = ball_boundary_measure(body, cd.center, cd.R, true);
        cd.q_plain = cd.nu_plain / cd.mu;
        cd.q_zeta = cd.nu_zeta / cd.mu;
        return cd;
    };
    std::vector<std::future<CheegerCandidate>> jobs;
    jobs.reserve(cands.size());
    for (const CheegerCandidate& cd : cands)
        jobs.push_back(std::async(std::launch::async, eval, cd));

    CheegerReport report;
    report.lambda_estimate = std::numeric_limits<double>::quiet_NaN();
    report.inequality_slack = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const CheegerCandidate cd = jobs[i].get();
        if (report.best_index_plain < 0 || cd.q_plain < report.best_quotient_plain) {
            report.best_quotient_plain = cd.q_plain;
            report.best_index_plain = static_cast<int>(i);
        }
        if (report.best_index_zeta < 0 || cd.q_zeta < report.best_quotient_zeta) {
            report.best_quotient_zeta = cd.q_zeta;
            report.best_index_zeta = static_cast<int>(i);
        }
        report.candidates.push_back(cd);
    }
    return report;
}

PLFunction tube_function(const ConvexBody& body, const Region& region, double eps,
                         const Mesh& mesh) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps: must be positive");
    if (region.boundary.size() < 3)
        throw std::invalid_argument("region: expected at least 3 boundary points");
    const std::vector<Vec2> samples = resample_loop(region.boundary, 512);

    PLFunction f;
    f.values.assign(mesh.vertices.size(), 0.0);
    const std::size_t n = mesh.vertices.size();
    auto eval_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Vec2 v = mesh.vertices[i];
            if (point_in_loop(region.boundary, v)) {
                f.values[i] = 1.0;
                continue;
            }
            double d = std::numeric_limits<double>::infinity();
            for (const Vec2& s : samples) d = std::min(d, hilbert_distance(body, v, s));
            f.values[i] = d < eps ? 1.0 - d / eps : 0.0;
        }
    };
    const std::size_t n_jobs =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                       (n + 255) / 256));
    std::vector<std::future<void>> jobs;
    for (std::size_t j = 0; j < n_jobs; ++j)
        jobs.push_back(std::async(std::launch::async, eval_range, n * j / n_jobs,
                                  n * (j + 1) / n_jobs));
    for (auto& job : jobs) job.get();

    for (std::size_t i = 0; i < n; ++i)
        if (mesh.boundary[i] && f.values[i] > 0.0)
            throw std::domain_error("tube: the eps-neighborhood leaves the meshed area");
    return f;
}

double sobolev_quotient(const ConvexBody& body, const Mesh& mesh, const PLFunction& f) {
    if (f.values.size() != mesh.vertices.size())
        throw std::invalid_argument("sobolev: value count must match vertex count");
    double num = 0.0, den = 0.0;
    for (const auto& t : mesh.triangles) {
        const Vec2 a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
        const double area2 = cross(b - a, c - a);
        if (area2 <= 0.0) throw std::domain_error("mesh: triangle with non-positive area");
        const Vec2 m = (a + b + c) / 3.0;
        const Vec2 df = (f.values[t[0]] * perp(c - b) + f.values[t[1]] * perp(a - c) +
                         f.values[t[2]] * perp(b - a)) /
                        area2;
        const double w = busemann_density(body, m) * (0.5 * area2);
        const double mean = (f.values[t[0]] + f.values[t[1]] + f.values[t[2]]) / 3.0;
        num += dual_norm(body, m, df) * w;
        den += std::fabs(mean) * w;
    }
    if (den <= 0.0) throw std::domain_error("sobolev: test function has zero mass");
    return num / den;
}

CheegerChainReport cheeger_chain_report(const ConvexBody& body, const CheegerReport& scan,
                                        const SpectralEstimate& lambda) {
    if (scan.candidates.empty()) throw std::invalid_argument("scan: no candidates");
    CheegerChainReport out;
    out.scan = scan;
    out.lambda = lambda.lambda;
    out.scan.lambda_estimate = lambda.lambda;
    out.scan.inequality_slack =
        lambda.lambda - 0.25 * scan.best_quotient_zeta * scan.best_quotient_zeta;
    out.disk_reference = body.kind == BodyKind::ellipse;
    out.disk_slack = lambda.lambda - 0.25;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const CheegerCandidate& cd : scan.candidates) {
        const Region ball = metric_ball(body, cd.center, cd.R);
        const HypersurfaceMeasure hm = hypersurface_measure(body, ball.boundary);
        for (double z : hm.densities) {
            lo = std::min(lo, z);
            hi = std::max(hi, z);
        }
    }
    out.segment_ratio_min = lo;
    out.segment_ratio_max = hi;
    out.segment_ratios_in_bounds = lo >= kPi / 8.0 - 1e-9 && hi <= 2.0 * kPi + 1e-9;
    return out;
}

}  // namespace hilbert
