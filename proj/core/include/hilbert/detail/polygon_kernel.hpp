#pragma once

// Scalar-generic geometric kernel for polygon bodies. Everything here is exact
// up to rounding in the working precision T; the deep-ball pipelines
// instantiate it with __float128 where double cannot represent the boundary
// margin e^{-2R}.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "hilbert/detail/scalar.hpp"
#include "hilbert/vec2.hpp"

namespace hilbert::detail {

template <class T>
inline T pi_T() {
    return T(3.14159265358979323846264338327950288L);
}

// Chord parameters of the line p + t d against a convex CCW polygon, obtained
// by halfplane clipping (robust: no per-vertex special cases). For interior p,
// t_minus < 0 < t_plus in units of |d|.
template <class T>
struct LineHits {
    T t_minus, t_plus;
};

template <class T>
LineHits<T> polygon_line_hits(const std::vector<Vec2T<T>>& v, Vec2T<T> p, Vec2T<T> d) {
    const std::size_t n = v.size();
    bool have_lo = false, have_hi = false;
    T lo = 0, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2T<T> e = v[(i + 1) % n] - v[i];
        const Vec2T<T> nout{e.y, -e.x};  // outward normal of a CCW edge
        const T den = dot(nout, d);
        const T num = dot(nout, v[i] - p);  // margin along nout
        if (den == T(0)) continue;          // parallel edge never binds for interior p
        const T t = num / den;
        if (den > T(0)) {
            if (!have_hi || t < hi) { hi = t; have_hi = true; }
        } else {
            if (!have_lo || t > lo) { lo = t; have_lo = true; }
        }
    }
    if (!have_lo || !have_hi || !(lo < T(0)) || !(hi > T(0)))
        throw std::domain_error("chord: point not strictly interior to the body");
    return {lo, hi};
}

// Finsler norm of u at p: (1/2)|u|(1/|p-p+| + 1/|p-p-|) with the chord taken
// along u. In chord parameter units the |u| factors cancel.
template <class T>
T polygon_finsler(const std::vector<Vec2T<T>>& v, Vec2T<T> p, Vec2T<T> u) {
    const LineHits<T> h = polygon_line_hits(v, p, u);
    return (T(1) / h.t_plus - T(1) / h.t_minus) / T(2);
}

// Hilbert distance (1/2) log of the cross ratio [a,p,q,b] on the chord through
// p and q. Exact parameterization: q sits at t = 1.
template <class T>
T polygon_distance(const std::vector<Vec2T<T>>& v, Vec2T<T> p, Vec2T<T> q) {
    const Vec2T<T> d = q - p;
    if (norm2(d) == T(0)) return T(0);
    const LineHits<T> h = polygon_line_hits(v, p, d);
    if (!(h.t_plus > T(1)))
        throw std::domain_error("distance: second point not strictly interior");
    const T ratio = ((T(1) - h.t_minus) / (-h.t_minus)) * (h.t_plus / (h.t_plus - T(1)));
    return r_log(ratio) / T(2);
}

// Exact point of the metric sphere of radius R in direction unit_d: with
// alpha = |x-a|, beta = |b-x|, gamma = |b-a| along the chord, the radial offset
// is alpha beta (e^{2R}-1) / (gamma + (e^{2R}-1) alpha).
template <class T>
Vec2T<T> radial_sphere_point(T alpha, T beta, T expm1_2R, Vec2T<T> x, Vec2T<T> unit_d) {
    const T gamma = alpha + beta;
    const T s = alpha * beta * expm1_2R / (gamma + expm1_2R * alpha);
    return x + s * unit_d;
}

// Tangent unit ball of a polygon body: the Finsler norm is piecewise linear
// with sector boundaries at the directions toward the body vertices, so the
// ball is exactly the 2E-gon with vertices +/- w_k / F(w_k), w_k = V_k - p
// (the norm is symmetric). Returned in counterclockwise order.
template <class T>
std::vector<Vec2T<T>> polygon_tangent_ball(const std::vector<Vec2T<T>>& v, Vec2T<T> p) {
    const std::size_t n = v.size();
    std::vector<Vec2T<T>> ball;
    ball.reserve(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2T<T> w = v[k] - p;
        const T f = polygon_finsler(v, p, w);
        ball.push_back(w / f);
        ball.push_back(-(T(1) / f) * w);
    }
    // Angular sort without atan2 (works for any scalar T): half-plane index,
    // then cross product inside each half.
    auto half = [](const Vec2T<T>& a) { return (a.y < T(0) || (a.y == T(0) && a.x < T(0))) ? 1 : 0; };
    std::sort(ball.begin(), ball.end(), [&](const Vec2T<T>& a, const Vec2T<T>& b) {
        const int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        return cross(a, b) > T(0);
    });
    return ball;
}

template <class T>
T shoelace_area(const std::vector<Vec2T<T>>& poly) {
    T s = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
    return s / T(2);
}

// Dual norm of the covector l at p: a max over the exact tangent-ball vertices.
template <class T>
T polygon_dual_norm(const std::vector<Vec2T<T>>& v, Vec2T<T> p, Vec2T<T> l) {
    const std::size_t n = v.size();
    T best = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2T<T> w = v[k] - p;
        const T lw = r_abs(dot(l, w));
        if (lw == T(0)) continue;
        const T cand = lw / polygon_finsler(v, p, w);
        if (cand > best) best = cand;
    }
    return best;
}

// omega_2 / vol_e(tangent ball), computed from the exact 2E-gon.
template <class T>
T polygon_busemann(const std::vector<Vec2T<T>>& v, Vec2T<T> p) {
    return pi_T<T>() / shoelace_area(polygon_tangent_ball(v, p));
}

}  // namespace hilbert::detail
