#include "hilbert/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "hilbert/detail/polygon_kernel.hpp"
#include "hilbert/finsler.hpp"
#include "hilbert/metric.hpp"

namespace hilbert {

namespace {

// zeta at the outward normal of the curve at m with tangent t. The normal n
// (F(n) = 1) supports the covector vanishing on t and positive outward, which
// for a counterclockwise loop is (t.y, -t.x).
double zeta_at(const ConvexBody& body, Vec2 m, Vec2 t) {
    const Norm2D F = hilbert_norm_at(body, m);
    const Vec2 conormal{t.y, -t.x};
    const Vec2 n = support_point(F, conormal).point;
    return zeta(F, n);
}

std::vector<Vec2> close_and_orient(std::vector<Vec2> pts, bool& closed) {
    if (pts.size() >= 2 && dist(pts.front(), pts.back()) <= 1e-12) pts.pop_back();
    closed = pts.size() >= 3;
    if (closed && detail::shoelace_area(pts) < 0.0) std::reverse(pts.begin(), pts.end());
    return pts;
}

}  // namespace

HypersurfaceMeasure hypersurface_measure(const ConvexBody& body,
                                         const std::vector<Vec2>& curve,
                                         const std::function<double(Vec2)>& density) {
    HypersurfaceMeasure out;
    if (curve.size() < 2) return out;
    bool closed = false;
    std::vector<Vec2> pts = close_and_orient(curve, closed);
    out.closed = closed;
    const std::size_t nseg0 = closed ? pts.size() : pts.size() - 1;

    // zeta varies smoothly along the curve; evaluate it at a bounded number of
    // stations (by arclength index) and interpolate for refined segments.
    const int n_stations =
        static_cast<int>(std::clamp<std::size_t>(nseg0 / 4, 32, 128));
    std::vector<double> station_zeta(static_cast<std::size_t>(n_stations));
    for (int s = 0; s < n_stations; ++s) {
        const std::size_t i =
            static_cast<std::size_t>((static_cast<double>(s) + 0.5) / n_stations * nseg0);
        const Vec2 p = pts[i], q = pts[(i + 1) % pts.size()];
        station_zeta[static_cast<std::size_t>(s)] =
            zeta_at(body, 0.5 * (p + q), normalized(q - p));
    }
    auto zeta_interp = [&](double frac) {  // frac in [0,1) along the loop
        const double u = frac * n_stations - 0.5;
        int s0 = static_cast<int>(std::floor(u));
        const double w = u - s0;
        int s1 = s0 + 1;
        if (closed) {
            s0 = (s0 % n_stations + n_stations) % n_stations;
            s1 = s1 % n_stations;
        } else {
            s0 = std::clamp(s0, 0, n_stations - 1);
            s1 = std::clamp(s1, 0, n_stations - 1);
        }
        return (1.0 - w) * station_zeta[static_cast<std::size_t>(s0)] +
               w * station_zeta[static_cast<std::size_t>(s1)];
    };

    double prev_total = -1.0;
    int splits = 1;
    const std::size_t cap = 1 << 16;
    for (;;) {
        double total = 0.0;
        for (std::size_t i = 0; i < nseg0; ++i) {
            const Vec2 a = pts[i], b = pts[(i + 1) % pts.size()];
            for (int j = 0; j < splits; ++j) {
                const Vec2 p = a + (static_cast<double>(j) / splits) * (b - a);
                const Vec2 q = a + (static_cast<double>(j + 1) / splits) * (b - a);
                if (dist(p, q) <= 1e-15) continue;
                const Vec2 m = 0.5 * (p + q);
                const double z =
                    zeta_interp((static_cast<double>(i) + (j + 0.5) / splits) / nseg0);
                const double phi = density ? density(m) : 1.0;
                total += finsler_norm(body, m, q - p) * z * phi;
            }
        }
        if (prev_total >= 0.0 && std::fabs(total - prev_total) <= 1e-6 * std::fabs(total)) {
            prev_total = total;
            break;
        }
        prev_total = total;
        if (nseg0 * static_cast<std::size_t>(splits) * 2 > cap) break;
        splits *= 2;
    }

    // report the curve at the final refinement with per-segment densities
    out.total = prev_total;
    for (std::size_t i = 0; i < nseg0; ++i) {
        const Vec2 a = pts[i], b = pts[(i + 1) % pts.size()];
        for (int j = 0; j < splits; ++j) {
            const Vec2 p = a + (static_cast<double>(j) / splits) * (b - a);
            const Vec2 m = a + ((static_cast<double>(j) + 0.5) / splits) * (b - a);
            out.base.push_back(p);
            const double z =
                zeta_interp((static_cast<double>(i) + (j + 0.5) / splits) / nseg0);
            out.densities.push_back(z * (density ? density(m) : 1.0));
        }
    }
    if (!closed) out.base.push_back(pts.back());
    return out;
}

namespace {

struct LevelGrid {
    double x0, y0, res;
    int nx, ny;  // node counts
    std::vector<double> f;       // node values; NaN where invalid
    double at(int ix, int iy) const { return f[static_cast<std::size_t>(iy) * nx + ix]; }
    Vec2 node(int ix, int iy) const { return {x0 + ix * res, y0 + iy * res}; }
};

// Marching squares for one level; returns a single closed loop or throws.
std::vector<Vec2> trace_level(const LevelGrid& g, double t) {
    // key = directed grid-edge id where the contour enters a cell
    const auto edge_key = [&](int ix, int iy, int side) {
        return (static_cast<long long>(iy) * g.nx + ix) * 4 + side;
    };
    std::map<long long, std::pair<long long, Vec2>> next;  // entry edge -> (exit edge, point)
    const auto interp = [&](Vec2 a, double fa, Vec2 b, double fb) {
        const double w = (t - fa) / (fb - fa);
        return a + w * (b - a);
    };
    for (int iy = 0; iy + 1 < g.ny; ++iy) {
        for (int ix = 0; ix + 1 < g.nx; ++ix) {
            const double f00 = g.at(ix, iy), f10 = g.at(ix + 1, iy);
            const double f11 = g.at(ix + 1, iy + 1), f01 = g.at(ix, iy + 1);
            if (std::isnan(f00) || std::isnan(f10) || std::isnan(f11) || std::isnan(f01))
                continue;
            int code = 0;
            if (f00 < t) code |= 1;
            if (f10 < t) code |= 2;
            if (f11 < t) code |= 4;
            if (f01 < t) code |= 8;
            if (code == 0 || code == 15) continue;
            const Vec2 p00 = g.node(ix, iy), p10 = g.node(ix + 1, iy);
            const Vec2 p11 = g.node(ix + 1, iy + 1), p01 = g.node(ix, iy + 1);
            // sides: 0 bottom, 1 right, 2 top, 3 left; crossing points:
            const Vec2 pb = (code & 1) != ((code & 2) >> 1) ? interp(p00, f00, p10, f10) : Vec2{};
            const Vec2 pr = ((code & 2) >> 1) != ((code & 4) >> 2) ? interp(p10, f10, p11, f11) : Vec2{};
            const Vec2 pt = ((code & 4) >> 2) != ((code & 8) >> 3) ? interp(p11, f11, p01, f01) : Vec2{};
            const Vec2 pl = (code & 1) != ((code & 8) >> 3) ? interp(p00, f00, p01, f01) : Vec2{};
            // each side maps to a grid edge shared with the neighboring cell
            const auto key_of = [&](int s) {
                switch (s) {
                    case 0: return edge_key(ix, iy, 0);
                    case 1: return edge_key(ix + 1, iy, 3);
                    case 2: return edge_key(ix, iy + 1, 0);
                    default: return edge_key(ix, iy, 3);
                }
            };
            // orient segments consistently: the sublevel set stays on one side
            auto emit = [&](int s_in, Vec2 a, int s_out) {
                next[key_of(s_in)] = {key_of(s_out), a};
            };
            switch (code) {
                case 1: emit(3, pl, 0); break;
                case 2: emit(0, pb, 1); break;
                case 3: emit(3, pl, 1); break;
                case 4: emit(1, pr, 2); break;
                case 6: emit(0, pb, 2); break;
                case 7: emit(3, pl, 2); break;
                case 8: emit(2, pt, 3); break;
                case 9: emit(2, pt, 0); break;
                case 11: emit(2, pt, 1); break;
                case 12: emit(1, pr, 3); break;
                case 13: emit(1, pr, 0); break;
                case 14: emit(0, pb, 3); break;
                case 5:  // saddles: split by the cell-center average
                case 10: {
                    const double fc = 0.25 * (f00 + f10 + f11 + f01);
                    const bool center_low = fc < t;
                    if (code == 5) {
                        if (center_low) {
                            emit(3, pl, 2);
                            emit(1, pr, 0);
                        } else {
                            emit(3, pl, 0);
                            emit(1, pr, 2);
                        }
                    } else {
                        if (center_low) {
                            emit(0, pb, 1);
                            emit(2, pt, 3);
                        } else {
                            emit(0, pb, 3);
                            emit(2, pt, 1);
                        }
                    }
                    break;
                }
                default: break;
            }
        }
    }
    if (next.empty()) throw std::runtime_error("level tracing: empty level set");
    std::vector<Vec2> loop;
    const long long start = next.begin()->first;
    long long cur = start;
    for (std::size_t guard = 0; guard <= next.size(); ++guard) {
        const auto it = next.find(cur);
        if (it == next.end()) throw std::runtime_error("level tracing: non-closed contour");
        loop.push_back(it->second.second);
        cur = it->second.first;
        if (cur == start) break;
    }
    if (cur != start) throw std::runtime_error("level tracing: non-closed contour");
    if (loop.size() < next.size())
        throw std::runtime_error("level tracing: level set has several components");
    return loop;
}

}  // namespace

CoareaResult coarea_check(const ConvexBody& body, const std::function<double(Vec2)>& f,
                          const std::function<double(Vec2)>& phi, double t0, double t1,
                          int n_levels, double resolution) {
    if (!(t0 < t1)) throw std::invalid_argument("t_range: need t0 < t1");
    if (n_levels < 2) throw std::invalid_argument("n_levels: expected at least 2");
    const double res = resolution > 0 ? resolution : euclid_diameter(body) / 200.0;

    const auto hull = boundary_polyline(body, 256);
    double x0 = hull[0].x, x1 = x0, y0 = hull[0].y, y1 = y0;
    for (const Vec2& p : hull) {
        x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }

    LevelGrid g;
    g.x0 = x0, g.y0 = y0, g.res = res;
    g.nx = static_cast<int>(std::ceil((x1 - x0) / res)) + 1;
    g.ny = static_cast<int>(std::ceil((y1 - y0) / res)) + 1;
    g.f.assign(static_cast<std::size_t>(g.nx) * g.ny,
               std::numeric_limits<double>::quiet_NaN());
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const Vec2 p = g.node(ix, iy);
            if (strictly_inside(body, p))
                g.f[static_cast<std::size_t>(iy) * g.nx + ix] = f(p);
        }

    // Left side: band integral of phi * F*(df) against the Hilbert measure.
    // Cell fraction inside the band from a 4x4 subsample; differentials by
    // central differences with half-cell step.
    double lhs = 0.0;
    for (int iy = 0; iy + 1 < g.ny; ++iy) {
        for (int ix = 0; ix + 1 < g.nx; ++ix) {
            int in_band = 0, valid = 0;
            for (int sy = 0; sy < 4; ++sy)
                for (int sx = 0; sx < 4; ++sx) {
                    const Vec2 s{g.x0 + (ix + (sx + 0.5) / 4.0) * res,
                                 g.y0 + (iy + (sy + 0.5) / 4.0) * res};
                    if (!strictly_inside(body, s)) continue;
                    ++valid;
                    const double v = f(s);
                    if (v >= t0 && v < t1) ++in_band;
                }
            if (in_band == 0 || valid == 0) continue;
            const Vec2 c{g.x0 + (ix + 0.5) * res, g.y0 + (iy + 0.5) * res};
            const double hstep = res / 2.0;
            const Vec2 cxp{c.x + hstep, c.y}, cxm{c.x - hstep, c.y};
            const Vec2 cyp{c.x, c.y + hstep}, cym{c.x, c.y - hstep};
            if (!strictly_inside(body, cxp) || !strictly_inside(body, cxm) ||
                !strictly_inside(body, cyp) || !strictly_inside(body, cym))
                continue;
            const Vec2 df{(f(cxp) - f(cxm)) / (2 * hstep), (f(cyp) - f(cym)) / (2 * hstep)};
            const double w = static_cast<double>(in_band) / 16.0;
            lhs += w * (phi ? phi(c) : 1.0) * dual_norm(body, c, df) *
                   busemann_density(body, c) * res * res;
        }
    }

    // Right side: trapezoid over traced levels of the induced measure.
    CoareaResult out;
    double rhs = 0.0;
    for (int j = 0; j < n_levels; ++j) {
        const double t = t0 + (t1 - t0) * j / (n_levels - 1);
        const auto loop = trace_level(g, t);
        const double m = hypersurface_measure(body, loop, phi).total;
        out.levels.emplace_back(t, m);
        const double w = (j == 0 || j == n_levels - 1) ? 0.5 : 1.0;
        rhs += w * m * (t1 - t0) / (n_levels - 1);
    }

    out.lhs = lhs;
    out.rhs = rhs;
    out.rel_gap = std::fabs(lhs - rhs) / std::max(std::fabs(rhs), 1e-300);
    return out;
}

SphereAreaDerivative sphere_area_derivative(const ConvexBody& body, Vec2 x, double rho,
                                            double eps) {
    if (!(rho > 0.0) || !(eps > 0.0))
        throw std::invalid_argument("sphere: need rho > 0 and eps > 0");
    const Region ball = metric_ball(body, x, rho, 1024);
    const double area = hypersurface_measure(body, ball.boundary).total;
    const double dv = detail::ball_shell_volume(body, x, rho, rho + eps) / eps;
    return {area, dv};
}

}  // namespace hilbert
