#pragma once

// Scalar shims so the geometric kernel can run in double or, where double ulps
// cannot represent boundary margins (deep metric balls), in __float128.

#include <cmath>

#if defined(HILBERTGEO_HAS_FLOAT128)
#include <quadmath.h>
#endif

namespace hilbert::detail {

template <class T> inline T r_sqrt(T x) { return std::sqrt(x); }
template <class T> inline T r_exp(T x) { return std::exp(x); }
template <class T> inline T r_expm1(T x) { return std::expm1(x); }
template <class T> inline T r_log(T x) { return std::log(x); }
template <class T> inline T r_abs(T x) { return std::fabs(x); }
template <class T> inline T r_cos(T x) { return std::cos(x); }
template <class T> inline T r_sin(T x) { return std::sin(x); }
template <class T> inline double r_to_double(T x) { return static_cast<double>(x); }

#if defined(HILBERTGEO_HAS_FLOAT128)
template <> inline __float128 r_sqrt(__float128 x) { return sqrtq(x); }
template <> inline __float128 r_exp(__float128 x) { return expq(x); }
template <> inline __float128 r_expm1(__float128 x) { return expm1q(x); }
template <> inline __float128 r_log(__float128 x) { return logq(x); }
template <> inline __float128 r_abs(__float128 x) { return fabsq(x); }
template <> inline __float128 r_cos(__float128 x) { return cosq(x); }
template <> inline __float128 r_sin(__float128 x) { return sinq(x); }
using deep_real = __float128;
#else
using deep_real = long double;
#endif

}  // namespace hilbert::detail
