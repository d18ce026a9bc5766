#include "hilbert/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hilbert/finsler.hpp"
#include "hilbert/measure.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/rng.hpp"

namespace hilbert {
namespace {

inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

// Everything the quotient and its subgradient need, frozen per triangle:
// one-point quadrature at the centroid, hat-gradient covectors, tangent norm.
struct TriData {
    std::array<int, 3> idx{};
    std::array<Vec2, 3> g{};  // d(hat_i) on this triangle, constant covector
    double weight = 0.0;      // density(centroid) * area
    Norm2D norm;              // tangent norm at the centroid (exact dual paths)
};

struct Assembled {
    std::vector<TriData> tris;
    std::vector<int> free_vertices;  // indices with boundary flag off
};

Assembled assemble(const ConvexBody& body, const Mesh& mesh) {
    Assembled out;
    out.tris.reserve(mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        const Vec2 a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
        const double area2 = cross(b - a, c - a);
        if (area2 <= 0.0) throw std::domain_error("mesh: triangle with non-positive area");
        TriData td;
        td.idx = t;
        td.g = {perp(c - b) / area2, perp(a - c) / area2, perp(b - a) / area2};
        const Vec2 m = (a + b + c) / 3.0;
        td.weight = busemann_density(body, m) * (0.5 * area2);
        td.norm = hilbert_norm_at(body, m);
        out.tris.push_back(std::move(td));
    }
    for (int i = 0; i < static_cast<int>(mesh.vertices.size()); ++i)
        if (!mesh.boundary[i]) out.free_vertices.push_back(i);
    return out;
}

double numerator(const Assembled& A, const std::vector<double>& f) {
    double n = 0.0;
    for (const auto& t : A.tris) {
        const Vec2 l = f[t.idx[0]] * t.g[0] + f[t.idx[1]] * t.g[1] + f[t.idx[2]] * t.g[2];
        const double d = norm_dual(t.norm, l);
        n += d * d * t.weight;
    }
    return n;
}

double denominator(const Assembled& A, const std::vector<double>& f) {
    double d = 0.0;
    for (const auto& t : A.tris) {
        const double mean = (f[t.idx[0]] + f[t.idx[1]] + f[t.idx[2]]) / 3.0;
        d += mean * mean * t.weight;
    }
    return d;
}

double quotient_or_inf(const Assembled& A, const std::vector<double>& f) {
    const double d = denominator(A, f);
    if (d <= 0.0) return std::numeric_limits<double>::infinity();
    return numerator(A, f) / d;
}

// d/df of N - q * D at f. Danskin: the dual norm's derivative in the covector
// is evaluation at the support point.
void subgradient(const Assembled& A, const std::vector<double>& f, double q,
                 std::vector<double>& grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& t : A.tris) {
        const Vec2 l = f[t.idx[0]] * t.g[0] + f[t.idx[1]] * t.g[1] + f[t.idx[2]] * t.g[2];
        const SupportPoint sp = support_point(t.norm, l);
        const double mean = (f[t.idx[0]] + f[t.idx[1]] + f[t.idx[2]]) / 3.0;
        for (int k = 0; k < 3; ++k) {
            grad[t.idx[k]] += 2.0 * sp.dual * dot(t.g[k], sp.point) * t.weight;
            grad[t.idx[k]] -= q * (2.0 / 3.0) * mean * t.weight;
        }
    }
}

struct DescentResult {
    std::vector<double> f;
    double q = std::numeric_limits<double>::infinity();
    bool converged = false;
};

// Armijo-backtracked descent on the quotient itself; the quotient is scale
// invariant, so trials need no renormalization. Mass is renormalized to one
// after each accepted step to keep values in range.
DescentResult descend(const Assembled& A, std::vector<double> f, int max_iter) {
    DescentResult out;
    const double d0 = denominator(A, f);
    if (!(d0 > 0.0)) return out;  // invalid start, quotient stays infinite
    {
        const double s = 1.0 / std::sqrt(d0);
        for (int i : A.free_vertices) f[i] *= s;
    }
    double q = numerator(A, f) / denominator(A, f);
    std::vector<double> grad(f.size(), 0.0), trial(f.size(), 0.0);
    double step = 0.5;
    int since_progress = 0;
    double window_q = q;
    out.converged = false;
    const int n_free = static_cast<int>(A.free_vertices.size());
    for (int it = 0; it < max_iter; ++it) {
        subgradient(A, f, q, grad);
        double gnorm2 = 0.0;
        for (int i : A.free_vertices) gnorm2 += grad[i] * grad[i];
        const double gnorm = std::sqrt(gnorm2);
        if (gnorm == 0.0) {
            out.converged = true;
            break;
        }
        trial = f;
        bool accepted = false;
        double t = step;
        for (int half = 0; half < 30; ++half) {
            for (int i : A.free_vertices) trial[i] = f[i] - (t / gnorm) * grad[i];
            const double qt = quotient_or_inf(A, trial);
            // Armijo on the quotient: predicted decrease is t * gnorm / D(f),
            // and D(f) = 1 after renormalization.
            if (qt <= q - 1e-4 * t * gnorm) {
                f = trial;
                q = qt;
                accepted = true;
                step = std::min(t * 2.0, 0.5);
                break;
            }
            t *= 0.5;
        }
        if (accepted) {
            const double d = denominator(A, f);
            const double s = 1.0 / std::sqrt(d);
            for (int i : A.free_vertices) f[i] *= s;
            q = numerator(A, f) / denominator(A, f);
        }
        ++since_progress;
        if (since_progress >= 50) {
            const double rel = (window_q - q) / std::max(std::abs(window_q), 1e-300);
            if (rel < 1e-8) {
                out.converged = true;
                break;
            }
            window_q = q;
            since_progress = 0;
        }
        if (!accepted && n_free == 0) break;
    }
    out.f = std::move(f);
    out.q = q;
    return out;
}

}  // namespace

double rayleigh_quotient(const ConvexBody& body, const Mesh& mesh, const PLFunction& f) {
    if (f.values.size() != mesh.vertices.size())
        throw std::invalid_argument("rayleigh: value count must match vertex count");
    double num = 0.0, den = 0.0;
    for (const auto& t : mesh.triangles) {
        const Vec2 a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
        const double area2 = cross(b - a, c - a);
        if (area2 <= 0.0) throw std::domain_error("mesh: triangle with non-positive area");
        const Vec2 m = (a + b + c) / 3.0;
        const Vec2 l = (f.values[t[0]] * perp(c - b) + f.values[t[1]] * perp(a - c) +
                        f.values[t[2]] * perp(b - a)) /
                       area2;
        const double w = busemann_density(body, m) * (0.5 * area2);
        const double d = dual_norm(body, m, l);
        const double mean = (f.values[t[0]] + f.values[t[1]] + f.values[t[2]]) / 3.0;
        num += d * d * w;
        den += mean * mean * w;
    }
    if (den <= 0.0) throw std::domain_error("rayleigh: test function has zero mass");
    return num / den;
}

SpectralEstimate minimize_rayleigh(const ConvexBody& body, const Mesh& mesh, int restarts,
                                   int max_iter, const std::vector<PLFunction>& warm_starts) {
    if (restarts < 1) throw std::invalid_argument("restarts: must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter: must be positive");
    const Assembled A = assemble(body, mesh);
    if (A.free_vertices.empty())
        throw std::domain_error("mesh: no interior vertices to optimize over");

    std::vector<std::vector<double>> starts;
    for (const auto& w : warm_starts) {
        if (w.values.size() != mesh.vertices.size())
            throw std::invalid_argument("warm start: value count must match vertex count");
        std::vector<double> f = w.values;
        for (int i = 0; i < static_cast<int>(f.size()); ++i)
            if (mesh.boundary[i]) f[i] = 0.0;
        starts.push_back(std::move(f));
    }
    for (int r = 0; r < restarts; ++r) {
        Rng rng(0x5EEDull + static_cast<std::uint64_t>(r));
        std::vector<double> f(mesh.vertices.size(), 0.0);
        for (int i : A.free_vertices) f[i] = rng.uniform();
        starts.push_back(std::move(f));
    }

    std::vector<std::future<DescentResult>> jobs;
    jobs.reserve(starts.size());
    for (auto& s : starts)
        jobs.push_back(std::async(std::launch::async,
                                  [&A, max_iter](std::vector<double> f0) {
                                      return descend(A, std::move(f0), max_iter);
                                  },
                                  std::move(s)));

    DescentResult best;
    bool have = false;
    for (auto& j : jobs) {
        DescentResult r = j.get();
        if (!have || r.q < best.q) {  // strict: ties keep the earliest candidate
            best = std::move(r);
            have = true;
        }
    }
    if (!std::isfinite(best.q))
        throw std::domain_error("minimize: no start produced a positive-mass function");

    SpectralEstimate est;
    est.minimizer.values = std::move(best.f);
    est.lambda = rayleigh_quotient(body, mesh, est.minimizer);
    est.restarts_used = restarts;
    est.converged = best.converged;
    est.mesh_h = mesh_max_edge(mesh);
    return est;
}

std::vector<std::pair<double, SpectralEstimate>> lambda1_exhaustion(
    const ConvexBody& body, const std::vector<double>& alphas, double h) {
    if (alphas.empty()) throw std::invalid_argument("alphas: must be non-empty");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0 && alphas[i] < 1.0))
            throw std::invalid_argument("alphas: must lie in (0, 1)");
        if (i > 0 && !(alphas[i] > alphas[i - 1]))
            throw std::invalid_argument("alphas: must be strictly increasing");
    }
    const Vec2 p0 = centroid(body);
    const ConvexBody big = homothety(body, p0, alphas.back());

    Region region;
    if (body.kind == BodyKind::polygon) {
        region.boundary = big.vertices;
    } else {
        const double perim_bound = M_PI * euclid_diameter(big);
        const int n = std::max(256, static_cast<int>(std::ceil(perim_bound / (0.45 * h))));
        region.boundary = boundary_polyline(big, n);
    }
    const Mesh base = triangulate(body, region, h);

    std::vector<std::pair<double, SpectralEstimate>> out;
    out.reserve(alphas.size());
    std::vector<int> prev_map;       // base vertex -> previous stage vertex (or -1)
    std::vector<double> prev_f;      // previous minimizer, previous-stage indexing
    for (double alpha : alphas) {
        const ConvexBody stage_body = homothety(body, p0, alpha);
        std::vector<char> keep(base.vertices.size(), 0);
        for (std::size_t i = 0; i < base.vertices.size(); ++i)
            keep[i] = classify(stage_body, base.vertices[i]) >= 0 ? 1 : 0;
        MeshRestriction r = restrict_mesh(base, keep);
        if (r.mesh.triangles.empty())
            throw std::domain_error("exhaustion: stage region is below mesh resolution");

        std::vector<PLFunction> warm;
        if (!prev_f.empty()) {
            PLFunction w;
            w.values.assign(r.mesh.vertices.size(), 0.0);
            for (std::size_t b = 0; b < prev_map.size(); ++b) {
                if (prev_map[b] < 0 || r.vertex_map[b] < 0) continue;
                w.values[r.vertex_map[b]] = prev_f[prev_map[b]];
            }
            warm.push_back(std::move(w));
        }
        SpectralEstimate est = minimize_rayleigh(body, r.mesh, 5, 2000, warm);
        prev_map = r.vertex_map;
        prev_f = est.minimizer.values;
        out.emplace_back(alpha, std::move(est));
    }
    return out;
}

double richardson_extrapolate(const std::vector<std::pair<double, SpectralEstimate>>& seq) {
    if (seq.empty()) throw std::invalid_argument("extrapolate: empty sequence");
    if (seq.size() == 1) return seq.back().second.lambda;
    const auto& [a1, e1] = seq[seq.size() - 2];
    const auto& [a2, e2] = seq[seq.size() - 1];
    const double x1 = 1.0 - a1, x2 = 1.0 - a2;
    if (std::abs(x1 - x2) < 1e-15) return e2.lambda;
    return (e2.lambda * x1 - e1.lambda * x2) / (x1 - x2);
}

PLFunction annulus_test_function(const ConvexBody& body, Vec2 center, double R,
                                 const Mesh& mesh) {
    if (!(R > 0.0)) throw std::invalid_argument("R: must be positive");
    PLFunction f;
    f.values.resize(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const double d = hilbert_distance(body, center, mesh.vertices[i]);
        if (mesh.boundary[i] && d < R + 1.0)
            throw std::domain_error(
                "annulus: the ball of radius R+1 does not fit inside the meshed region");
        f.values[i] = std::clamp(1.0 - std::max(0.0, d - R), 0.0, 1.0);
    }
    return f;
}

double annulus_quotient(const ConvexBody& body, Vec2 center, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("R: must be positive");
    const double band = detail::ball_shell_volume(body, center, R, R + 1.0);
    const double core = detail::ball_shell_volume(body, center, 0.0, R);
    const double taper = detail::ball_radial_integral(
        body, center, R, R + 1.0, [R](double t) {
            const double v = 1.0 - (t - R);
            return v * v;
        });
    return band / (core + taper);
}

SandwichReport sandwich_stability(const ConvexBody& body, const Region& region, double rho,
                                  double h) {
    if (!(rho > 0.0 && rho < 0.5))
        throw std::invalid_argument("rho: must lie in (0, 0.5)");
    const Vec2 c = centroid(body);
    const ConvexBody deep = homothety(body, c, 1.0 - 2.0 * rho);
    for (const Vec2& p : region.boundary)
        if (classify(deep, p) <= 0)
            throw std::domain_error("sandwich: region must stay inside the shrunken body");

    const Mesh mesh = triangulate(body, region, h);

    std::vector<ConvexBody> ambient;
    ambient.push_back(homothety(body, c, 1.0 - rho));
    ambient.push_back(body);
    ambient.push_back(homothety(body, c, 1.0 + rho));
    if (body.kind == BodyKind::polygon) {
        double r = 0.25 * euclid_diameter(body) * rho;
        SmoothedPolygon sp = smooth_polygon(body, r);
        while (sp.rho > rho) {
            r *= 0.5;
            sp = smooth_polygon(body, r);
        }
        ambient.push_back(sp.body);
    }

    SandwichReport report;
    report.rho = rho;
    std::vector<PLFunction> warm;
    for (std::size_t k = 0; k < ambient.size(); ++k) {
        const SpectralEstimate est =
            minimize_rayleigh(ambient[k], mesh, warm.empty() ? 5 : 2, 2000, warm);
        if (warm.empty()) warm.push_back(est.minimizer);
        report.lambdas.push_back(est.lambda);
    }
    const double lo = *std::min_element(report.lambdas.begin(), report.lambdas.end());
    const double hi = *std::max_element(report.lambdas.begin(), report.lambdas.end());
    report.max_spread = (hi - lo) / lo;
    return report;
}

}  // namespace hilbert
