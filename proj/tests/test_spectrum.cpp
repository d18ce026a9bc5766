#include "doctest.h"

#include "hilbert/convex_body.hpp"
#include "hilbert/measure.hpp"
#include "hilbert/mesh.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/rng.hpp"
#include "hilbert/spectrum.hpp"
#include "test_bodies.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#ifdef HGEO_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace hilbert;

namespace {

PLFunction random_dirichlet(const Mesh& m, std::uint64_t seed) {
  Rng rng(seed);
  PLFunction f;
  f.values.assign(m.vertices.size(), 0.0);
  for (std::size_t i = 0; i < m.vertices.size(); ++i)
    if (!m.boundary[i]) f.values[i] = rng.uniform(0.1, 1.0);
  return f;
}

Mesh disk_mesh(double R, double h) {
  ConvexBody d = unit_disk();
  return triangulate(d, metric_ball(d, {0, 0}, R, 64), h);
}

}  // namespace

TEST_CASE("rayleigh quotient is invariant under scaling of the function") {
  ConvexBody d = unit_disk();
  Mesh m = disk_mesh(1.5, 0.3);
  PLFunction f = random_dirichlet(m, 1);
  double q = rayleigh_quotient(d, m, f);
  CHECK(q > 0.0);
  PLFunction g = f;
  for (double& v : g.values) v *= 7.25;
  CHECK(rayleigh_quotient(d, m, g) == doctest::Approx(q).epsilon(1e-12));
}

TEST_CASE("rayleigh quotient is a projective invariant") {
  ConvexBody tri = triangle_body();
  ConvexBody img = affine_image(tri, 1.8, 0.2, -0.6, 1.1, {0.5, -0.5});
  auto map = [](Vec2 v) {
    return Vec2{1.8 * v.x + 0.2 * v.y + 0.5, -0.6 * v.x + 1.1 * v.y - 0.5};
  };
  Vec2 c = centroid(tri);
  Mesh m = triangulate(tri, metric_ball(tri, c, 1.5, 48), 0.3);
  Mesh mi = m;
  for (Vec2& v : mi.vertices) v = map(v);
  PLFunction f = random_dirichlet(m, 2);
  double q0 = rayleigh_quotient(tri, m, f);
  double q1 = rayleigh_quotient(img, mi, f);
  CHECK(q1 == doctest::Approx(q0).epsilon(1e-9));
}

TEST_CASE("rayleigh quotient rejects zero mass") {
  ConvexBody d = unit_disk();
  Mesh m = disk_mesh(1.0, 0.3);
  PLFunction zero;
  zero.values.assign(m.vertices.size(), 0.0);
  CHECK_THROWS_AS(rayleigh_quotient(d, m, zero), std::domain_error);
}

TEST_CASE("flipping the sign of the minimizer cannot help") {
  ConvexBody d = unit_disk();
  Mesh m = disk_mesh(1.5, 0.35);
  SpectralEstimate est = minimize_rayleigh(d, m, 3, 800);
  PLFunction absf = est.minimizer;
  for (double& v : absf.values) v = std::fabs(v);
  CHECK(rayleigh_quotient(d, m, absf) <= est.lambda * (1.0 + 1e-12) + 1e-12);
}

TEST_CASE("reported lambda equals the quotient of the reported minimizer") {
  ConvexBody b = pentagon_body();
  Vec2 c = centroid(b);
  Mesh m = triangulate(b, metric_ball(b, c, 1.8, 48), 0.3);
  SpectralEstimate est = minimize_rayleigh(b, m, 3, 600);
  CHECK(est.lambda ==
        doctest::Approx(rayleigh_quotient(b, m, est.minimizer)).epsilon(1e-12));
  CHECK(est.mesh_h == doctest::Approx(mesh_max_edge(m)));
  CHECK(est.restarts_used == 3);
}

TEST_CASE("minimization is deterministic") {
  ConvexBody d = unit_disk();
  Mesh m = disk_mesh(1.2, 0.35);
  SpectralEstimate a = minimize_rayleigh(d, m, 4, 500);
  SpectralEstimate b = minimize_rayleigh(d, m, 4, 500);
  CHECK(a.lambda == b.lambda);
  REQUIRE(a.minimizer.values.size() == b.minimizer.values.size());
  for (std::size_t i = 0; i < a.minimizer.values.size(); ++i)
    CHECK(a.minimizer.values[i] == b.minimizer.values[i]);
}

#ifdef HGEO_HAVE_EIGEN
TEST_CASE("descent reaches the exact discrete minimum of the disk problem") {
  // On the disk the dual metric and density have closed forms, so the discrete
  // problem (one-point quadrature, PL gradients) is a generalized eigenproblem
  // we can assemble and solve independently.
  ConvexBody d = unit_disk();
  Mesh m = disk_mesh(1.5, 0.45);
  const int n = static_cast<int>(m.vertices.size());
  std::vector<int> free_id(n, -1);
  int nf = 0;
  for (int i = 0; i < n; ++i)
    if (!m.boundary[i]) free_id[i] = nf++;
  REQUIRE(nf >= 3);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nf, nf);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nf, nf);
  for (const auto& t : m.triangles) {
    Vec2 a = m.vertices[t[0]], b = m.vertices[t[1]], c = m.vertices[t[2]];
    double area2 = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    Vec2 q{(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
    double s = q.x * q.x + q.y * q.y;
    double w = std::pow(1.0 - s, -1.5) * 0.5 * area2;  // density * area
    // PL gradients: grad phi_k = perp(opposite edge) / (2 area)
    Vec2 g[3];
    Vec2 v[3] = {a, b, c};
    for (int k = 0; k < 3; ++k) {
      Vec2 e1 = v[(k + 1) % 3], e2 = v[(k + 2) % 3];
      g[k] = {-(e2.y - e1.y) / area2, (e2.x - e1.x) / area2};
    }
    // Dual metric on covectors: (1-s) (I - q q^T).
    for (int r = 0; r < 3; ++r) {
      for (int cidx = 0; cidx < 3; ++cidx) {
        int ir = free_id[t[r]], ic = free_id[t[cidx]];
        if (ir < 0 || ic < 0) continue;
        double qr = q.x * g[r].x + q.y * g[r].y;
        double qc = q.x * g[cidx].x + q.y * g[cidx].y;
        double dot = g[r].x * g[cidx].x + g[r].y * g[cidx].y;
        K(ir, ic) += w * (1.0 - s) * (dot - qr * qc);
        M(ir, ic) += w / 9.0;
      }
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, K);
  REQUIRE(solver.info() == Eigen::Success);
  double mu_max = solver.eigenvalues().maxCoeff();
  REQUIRE(mu_max > 0.0);
  double lambda_exact = 1.0 / mu_max;

  SpectralEstimate est = minimize_rayleigh(d, m, 4, 60000);
  CHECK(est.converged);
  CHECK(est.lambda >= lambda_exact * (1.0 - 1e-9) - 1e-12);
  CHECK(est.lambda <= lambda_exact * (1.0 + 1e-6));
}
#endif

TEST_CASE("refining the mesh does not raise the minimum") {
  ConvexBody d = unit_disk();
  Mesh m = disk_mesh(1.5, 0.4);
  SpectralEstimate coarse = minimize_rayleigh(d, m, 3, 2500);
  Mesh f = refine_mesh(m);

  // Prolongate the coarse minimizer: original vertices keep their values and
  // each new vertex is the midpoint of a coarse edge.
  std::map<std::pair<long long, long long>, double> mid_value;
  auto key = [](Vec2 p) {
    return std::make_pair(static_cast<long long>(std::llround(p.x * 1e12)),
                          static_cast<long long>(std::llround(p.y * 1e12)));
  };
  std::map<std::pair<long long, long long>, double> coarse_at;
  for (std::size_t i = 0; i < m.vertices.size(); ++i)
    coarse_at[key(m.vertices[i])] = coarse.minimizer.values[i];
  for (const auto& t : m.triangles) {
    for (int k = 0; k < 3; ++k) {
      Vec2 a = m.vertices[t[k]], b = m.vertices[t[(k + 1) % 3]];
      Vec2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
      mid_value[key(mid)] = 0.5 * (coarse.minimizer.values[t[k]] +
                                   coarse.minimizer.values[t[(k + 1) % 3]]);
    }
  }
  PLFunction warm;
  warm.values.assign(f.vertices.size(), 0.0);
  for (std::size_t i = 0; i < f.vertices.size(); ++i) {
    auto k = key(f.vertices[i]);
    if (coarse_at.count(k))
      warm.values[i] = coarse_at[k];
    else {
      REQUIRE(mid_value.count(k));
      warm.values[i] = mid_value[k];
    }
    if (f.boundary[i]) warm.values[i] = 0.0;
  }
  // The prolongated function reproduces the coarse quotient...
  CHECK(rayleigh_quotient(d, f, warm) == doctest::Approx(coarse.lambda).epsilon(0.05));
  // ...and optimizing over the richer space can only go down from there.
  SpectralEstimate fine = minimize_rayleigh(d, f, 2, 2500, {warm});
  CHECK(fine.lambda <= rayleigh_quotient(d, f, warm) + 1e-9);
}

TEST_CASE("exhaustion produces a non-increasing converged sequence") {
  ConvexBody d = unit_disk();
  auto seq = lambda1_exhaustion(d, {0.55, 0.7, 0.85}, 0.3);
  REQUIRE(seq.size() == 3);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].second.lambda > 0.0);
    CHECK(seq[i].first == doctest::Approx(i == 0 ? 0.55 : (i == 1 ? 0.7 : 0.85)));
    if (i > 0) CHECK(seq[i].second.lambda <= seq[i - 1].second.lambda + 1e-8);
  }
}

TEST_CASE("exhaustion validates its inputs") {
  ConvexBody d = unit_disk();
  CHECK_THROWS_AS(lambda1_exhaustion(d, {}, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(lambda1_exhaustion(d, {0.7, 0.5}, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(lambda1_exhaustion(d, {0.5, 1.2}, 0.3), std::invalid_argument);
}

TEST_CASE("richardson extrapolation is exact on affine data") {
  std::vector<std::pair<double, SpectralEstimate>> seq(2);
  seq[0].first = 0.8;
  seq[0].second.lambda = 1.0 + 2.0 * (1.0 - 0.8);
  seq[1].first = 0.9;
  seq[1].second.lambda = 1.0 + 2.0 * (1.0 - 0.9);
  CHECK(richardson_extrapolate(seq) == doctest::Approx(1.0).epsilon(1e-12));
  seq.resize(1);
  CHECK(richardson_extrapolate(seq) == doctest::Approx(seq[0].second.lambda));
}

TEST_CASE("annulus test function is a clamped distance profile") {
  ConvexBody d = unit_disk();
  Mesh m = disk_mesh(2.3, 0.35);
  PLFunction f = annulus_test_function(d, {0, 0}, 1.0, m);
  REQUIRE(f.values.size() == m.vertices.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    double dist = hilbert_distance(d, {0, 0}, m.vertices[i]);
    CHECK(f.values[i] >= 0.0);
    CHECK(f.values[i] <= 1.0);
    if (dist <= 1.0) CHECK(f.values[i] == doctest::Approx(1.0));
    if (dist >= 2.0) CHECK(f.values[i] == doctest::Approx(0.0));
  }
  Mesh tight = disk_mesh(1.6, 0.35);
  CHECK_THROWS_AS(annulus_test_function(d, {0, 0}, 1.0, tight), std::domain_error);
}

TEST_CASE("continuum annulus quotient matches its mesh counterpart") {
  // A ring mesh tracks the metric geometry, so the radial profile stays
  // resolved all the way out to radius R+1.
  ConvexBody d = unit_disk();
  double cont = annulus_quotient(d, {0, 0}, 1.5);
  std::vector<double> radii;
  for (int i = 1; i <= 20; ++i) radii.push_back(0.13 * i);
  Mesh m = ring_mesh(d, {0, 0}, radii, 64);
  PLFunction f = annulus_test_function(d, {0, 0}, 1.5, m);
  double meshq = rayleigh_quotient(d, m, f);
  CHECK(cont == doctest::Approx(meshq).epsilon(0.15));
}

TEST_CASE("annulus quotient decays on a polygon") {
  ConvexBody tri = triangle_body();
  Vec2 c = centroid(tri);
  double q5 = annulus_quotient(tri, c, 5.0);
  double q10 = annulus_quotient(tri, c, 10.0);
  CHECK(q10 < q5);
  CHECK(q10 / q5 >= 0.3);
  CHECK(q10 / q5 <= 0.7);
}

TEST_CASE("lambda estimates are stable under sandwiching the body") {
  ConvexBody d = unit_disk();
  Region ball = metric_ball(d, {0, 0}, 1.2, 48);
  SandwichReport rep = sandwich_stability(d, ball, 0.04, 0.3);
  CHECK(rep.rho == doctest::Approx(0.04));
  CHECK(rep.lambdas.size() >= 3);
  for (double l : rep.lambdas) CHECK(l > 0.0);
  CHECK(rep.max_spread >= 0.0);
  CHECK(rep.max_spread < 0.6);

  Region fat = metric_ball(d, {0, 0}, 3.5, 48);
  CHECK_THROWS_AS(sandwich_stability(d, fat, 0.2, 0.3), std::domain_error);
}
