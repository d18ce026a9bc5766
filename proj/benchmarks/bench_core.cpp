#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hilbert/cheeger.hpp"
#include "hilbert/convex_body.hpp"
#include "hilbert/hyperbolicity.hpp"
#include "hilbert/measure.hpp"
#include "hilbert/mesh.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/rng.hpp"
#include "hilbert/spectrum.hpp"

namespace {

using namespace hilbert;

constexpr double kPi = 3.14159265358979323846;

ConvexBody disk_body() {
  ConvexBody b;
  b.kind = BodyKind::ellipse;
  b.center = {0, 0};
  b.axes = {1, 1};
  return b;
}

ConvexBody ngon_body(int n) {
  ConvexBody b;
  b.kind = BodyKind::polygon;
  for (int k = 0; k < n; ++k) {
    double a = 2.0 * kPi * k / n;
    b.vertices.push_back({std::cos(a), std::sin(a)});
  }
  return b;
}

std::vector<Vec2> interior_points(const ConvexBody& body, int n, std::uint64_t seed) {
  Rng rng(seed);
  Vec2 c = centroid(body);
  ConvexBody safe = homothety(body, c, 0.95);
  std::vector<Vec2> pts;
  while (static_cast<int>(pts.size()) < n) {
    Vec2 p{c.x + rng.uniform(-1.5, 1.5), c.y + rng.uniform(-1.5, 1.5)};
    if (classify(safe, p) > 0) pts.push_back(p);
  }
  return pts;
}

void bm_distance(benchmark::State& state) {
  ConvexBody body = state.range(0) == 0 ? disk_body() : ngon_body(state.range(0));
  auto pts = interior_points(body, 256, 7);
  std::size_t i = 0;
  for (auto _ : state) {
    const Vec2& p = pts[i % pts.size()];
    const Vec2& q = pts[(i + 97) % pts.size()];
    benchmark::DoNotOptimize(hilbert_distance(body, p, q));
    ++i;
  }
}
BENCHMARK(bm_distance)->Arg(0)->Arg(3)->Arg(8)->Arg(64);

void bm_finsler_norm(benchmark::State& state) {
  ConvexBody body = state.range(0) == 0 ? disk_body() : ngon_body(state.range(0));
  auto pts = interior_points(body, 256, 11);
  std::size_t i = 0;
  for (auto _ : state) {
    const Vec2& p = pts[i % pts.size()];
    benchmark::DoNotOptimize(finsler_norm(body, p, {0.3, -0.9}));
    ++i;
  }
}
BENCHMARK(bm_finsler_norm)->Arg(0)->Arg(8)->Arg(64);

void bm_dual_norm(benchmark::State& state) {
  ConvexBody body = state.range(0) == 0 ? disk_body() : ngon_body(state.range(0));
  auto pts = interior_points(body, 256, 13);
  std::size_t i = 0;
  for (auto _ : state) {
    const Vec2& p = pts[i % pts.size()];
    benchmark::DoNotOptimize(dual_norm(body, p, {1.1, 0.4}));
    ++i;
  }
}
BENCHMARK(bm_dual_norm)->Arg(0)->Arg(8)->Arg(64);

void bm_busemann_density(benchmark::State& state) {
  ConvexBody body = ngon_body(static_cast<int>(state.range(0)));
  auto pts = interior_points(body, 256, 17);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(busemann_density(body, pts[i % pts.size()]));
    ++i;
  }
}
BENCHMARK(bm_busemann_density)->Arg(3)->Arg(8)->Arg(64);

void bm_ball_volume(benchmark::State& state) {
  ConvexBody body = ngon_body(5);
  Vec2 c = centroid(body);
  double R = static_cast<double>(state.range(0));
  for (auto _ : state) {
    MeasureEstimate v = region_volume(body, metric_ball(body, c, R));
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(bm_ball_volume)->Arg(1)->Arg(4)->Arg(16);

void bm_metric_ball_boundary(benchmark::State& state) {
  ConvexBody body = ngon_body(8);
  Vec2 c = centroid(body);
  for (auto _ : state) {
    Region r = metric_ball(body, c, 3.0, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(r.boundary.data());
  }
}
BENCHMARK(bm_metric_ball_boundary)->Arg(64)->Arg(512);

void bm_rayleigh_quotient(benchmark::State& state) {
  ConvexBody body = disk_body();
  Mesh m = triangulate(body, metric_ball(body, {0, 0}, 1.5, 64),
                       1.2 / static_cast<double>(state.range(0)));
  Rng rng(23);
  PLFunction f;
  f.values.assign(m.vertices.size(), 0.0);
  for (std::size_t i = 0; i < m.vertices.size(); ++i)
    if (!m.boundary[i]) f.values[i] = rng.uniform(0.1, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(rayleigh_quotient(body, m, f));
  state.counters["triangles"] = static_cast<double>(m.triangles.size());
}
BENCHMARK(bm_rayleigh_quotient)->Arg(4)->Arg(8)->Arg(16);

void bm_four_point_delta(benchmark::State& state) {
  ConvexBody body = ngon_body(3);
  Vec2 c = centroid(body);
  for (auto _ : state) {
    DeltaEstimate e = four_point_delta(body, c, 6.0, state.range(0), 1);
    benchmark::DoNotOptimize(e.delta);
  }
}
BENCHMARK(bm_four_point_delta)->Arg(1000)->Arg(10000);

void bm_cheeger_quotient(benchmark::State& state) {
  ConvexBody body = ngon_body(6);
  Vec2 c = centroid(body);
  Region ball = metric_ball(body, c, 2.0, 512);
  for (auto _ : state)
    benchmark::DoNotOptimize(cheeger_quotient(body, ball, state.range(0) != 0));
}
BENCHMARK(bm_cheeger_quotient)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
