#pragma once

#include <cmath>

#include "hilbert/detail/scalar.hpp"

namespace hilbert {

template <class T>
struct Vec2T {
    T x = 0;
    T y = 0;

    friend Vec2T operator+(Vec2T a, Vec2T b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2T operator-(Vec2T a, Vec2T b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2T operator*(T s, Vec2T a) { return {s * a.x, s * a.y}; }
    friend Vec2T operator*(Vec2T a, T s) { return {s * a.x, s * a.y}; }
    friend Vec2T operator/(Vec2T a, T s) { return {a.x / s, a.y / s}; }
    Vec2T operator-() const { return {-x, -y}; }
    friend bool operator==(Vec2T a, Vec2T b) { return a.x == b.x && a.y == b.y; }
};

template <class T> inline T dot(Vec2T<T> a, Vec2T<T> b) { return a.x * b.x + a.y * b.y; }
// z-component of the cross product; positive when b lies counterclockwise of a.
template <class T> inline T cross(Vec2T<T> a, Vec2T<T> b) { return a.x * b.y - a.y * b.x; }
template <class T> inline T norm2(Vec2T<T> a) { return a.x * a.x + a.y * a.y; }
template <class T> inline T norm(Vec2T<T> a) { return detail::r_sqrt(norm2(a)); }
template <class T> inline Vec2T<T> normalized(Vec2T<T> a) { return a / norm(a); }
// counterclockwise quarter turn
template <class T> inline Vec2T<T> perp(Vec2T<T> a) { return {-a.y, a.x}; }

using Vec2 = Vec2T<double>;

inline double dist(Vec2 a, Vec2 b) { return norm(b - a); }

}  // namespace hilbert
