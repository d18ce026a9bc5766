#pragma once

#include <string>
#include <vector>

#include "hilbert/vec2.hpp"

namespace hilbert {

enum class BodyKind { polygon, ellipse, rounded_polygon };

// A bounded open convex body in the plane. Only the fields of the active kind
// are meaningful. Polygons are counterclockwise and strictly convex.
struct ConvexBody {
    BodyKind kind = BodyKind::polygon;
    std::vector<Vec2> vertices;  // polygon / rounded_polygon base vertices
    Vec2 center{};               // ellipse
    Vec2 axes{};                 // ellipse semi-axes, both > 0
    double angle = 0.0;          // ellipse rotation (radians)
    double corner_radius = 0.0;  // rounded_polygon arc radius
};

// Endpoints of the full chord through an interior point: `a` lies against the
// query direction, `b` along it.
struct Chord {
    Vec2 a, b;
};

// Absolute Euclidean tolerance for boundary classification.
inline constexpr double kBoundaryTol = 1e-9;

ConvexBody parse_body(const std::string& json_text);
ConvexBody load_body(const std::string& path);
std::string body_to_json(const ConvexBody& body);

// Throws std::invalid_argument naming the offending field.
void validate_body(const ConvexBody& body);

// +1 interior (margin > tol), 0 within tol of the boundary, -1 outside.
int classify(const ConvexBody& body, Vec2 p, double tol = kBoundaryTol);
bool contains(const ConvexBody& body, Vec2 p, double tol = kBoundaryTol);
// Strict floating-point interiority, no tolerance band. This is the gate used
// by constructions that may legally operate arbitrarily close to the boundary.
bool strictly_inside(const ConvexBody& body, Vec2 p);

// Throws std::domain_error if p is not strictly interior or dir is zero.
Chord chord(const ConvexBody& body, Vec2 p, Vec2 dir);

ConvexBody homothety(const ConvexBody& body, Vec2 center, double factor);

// Corner rounding by inscribed circular arcs tangent to both edges. `rho` is a
// certified homothety defect: (1-rho) C subset result subset (1+rho) C about the
// area centroid.
struct SmoothedPolygon {
    ConvexBody body;
    double rho = 0.0;
};
SmoothedPolygon smooth_polygon(const ConvexBody& polygon, double corner_radius);

Vec2 centroid(const ConvexBody& body);
double euclid_area(const ConvexBody& body);
double euclid_diameter(const ConvexBody& body);

// n boundary points, counterclockwise, roughly equal arclength; the closing
// edge (back to front) is implicit.
std::vector<Vec2> boundary_polyline(const ConvexBody& body, int n);

// Image under x -> A x + t with det A > 0. Rounded polygons are rejected
// (affine maps do not preserve circular arcs).
ConvexBody affine_image(const ConvexBody& body, double a00, double a01, double a10,
                        double a11, Vec2 t);

}  // namespace hilbert
