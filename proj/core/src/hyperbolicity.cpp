#include "hilbert/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hilbert/detail/polygon_kernel.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/rng.hpp"

namespace hilbert {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Point at metric distance t from x along the chord in direction u.
Vec2 polar_point(const ConvexBody& body, Vec2 x, Vec2 u, double t) {
    const Chord ch = chord(body, x, u);
    const double alpha = dist(x, ch.a), beta = dist(ch.b, x);
    return detail::radial_sphere_point(alpha, beta, std::expm1(2.0 * t), x, u);
}

// Each quadruple consumes exactly eight uniforms, so sample index i maps to a
// fixed stretch of the stream and prefixes are reproducible.
double quadruple_value(const ConvexBody& body, Vec2 center, double scale, Rng& rng) {
    Vec2 p[4];
    for (auto& q : p) {
        const double theta = rng.uniform(0.0, 2.0 * kPi);
        const double t = rng.uniform(0.0, scale);
        q = polar_point(body, center, {std::cos(theta), std::sin(theta)}, t);
    }
    const Vec2 w = p[0], x = p[1], y = p[2], z = p[3];
    const double xz = gromov_product(body, w, x, z);
    const double yz = gromov_product(body, w, y, z);
    const double xy = gromov_product(body, w, x, y);
    return std::min(xz, yz) - xy;
}

}  // namespace

double gromov_product(const ConvexBody& body, Vec2 w, Vec2 x, Vec2 y) {
    return 0.5 * (hilbert_distance(body, x, w) + hilbert_distance(body, y, w) -
                  hilbert_distance(body, x, y));
}

DeltaEstimate four_point_delta(const ConvexBody& body, Vec2 center, double scale,
                               long long samples, std::uint64_t seed) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale: must be positive");
    if (samples < 0) throw std::invalid_argument("samples: must be nonnegative");
    DeltaEstimate est;
    est.sample_count = samples;
    est.scale = scale;
    est.method = "four-point";
    est.seed = seed;
    if (samples == 0) return est;

    const long long chunk = 4096;
    const long long n_chunks = (samples + chunk - 1) / chunk;
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(),
                              static_cast<unsigned>(n_chunks)));
    auto run_chunks = [&](long long first_chunk, long long step) {
        double best = 0.0;
        for (long long c = first_chunk; c < n_chunks; c += step) {
            const long long lo = c * chunk, hi = std::min(samples, lo + chunk);
            Rng rng(seed);
            rng.discard(static_cast<std::uint64_t>(lo) * 8);
            for (long long i = lo; i < hi; ++i)
                best = std::max(best, quadruple_value(body, center, scale, rng));
        }
        return best;
    };
    std::vector<std::future<double>> jobs;
    for (unsigned wkr = 0; wkr < workers; ++wkr)
        jobs.push_back(std::async(std::launch::async, run_chunks, static_cast<long long>(wkr),
                                  static_cast<long long>(workers)));
    double best = 0.0;
    for (auto& j : jobs) best = std::max(best, j.get());
    est.delta = best;
    return est;
}

double thin_triangle_delta(const ConvexBody& body, Vec2 x, Vec2 y, Vec2 z,
                           int samples_per_side) {
    if (samples_per_side < 2)
        throw std::invalid_argument("samples_per_side: must be at least 2");

    // Stations at uniform metric arclength along the chord segment [a, b].
    auto stations = [&](Vec2 a, Vec2 b) {
        std::vector<Vec2> out;
        out.reserve(static_cast<std::size_t>(samples_per_side));
        const double d = hilbert_distance(body, a, b);
        if (d == 0.0) {
            out.assign(static_cast<std::size_t>(samples_per_side), a);
            return out;
        }
        const Vec2 u = normalized(b - a);
        const Chord ch = chord(body, a, u);
        const double alpha = dist(a, ch.a), beta = dist(ch.b, a);
        for (int i = 0; i < samples_per_side; ++i) {
            const double t = d * static_cast<double>(i) / (samples_per_side - 1);
            out.push_back(detail::radial_sphere_point(alpha, beta, std::expm1(2.0 * t), a, u));
        }
        return out;
    };
    const std::vector<Vec2> side_xy = stations(x, y);
    std::vector<Vec2> others = stations(y, z);
    {
        const std::vector<Vec2> zx = stations(z, x);
        others.insert(others.end(), zx.begin(), zx.end());
    }
    double worst = 0.0;
    for (const Vec2& p : side_xy) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const Vec2& q : others)
            nearest = std::min(nearest, hilbert_distance(body, p, q));
        worst = std::max(worst, nearest);
    }
    return worst;
}

}  // namespace hilbert
