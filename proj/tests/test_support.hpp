#pragma once

#include <cmath>

#include "projcert/harness.hpp"
#include "projcert/random.hpp"

namespace testing {

using projcert::Complex;
using projcert::kI;
using projcert::Conic;
using projcert::HomLine;
using projcert::HomPoint;
using projcert::Mat3;
using projcert::Vec3;


inline Conic diag_conic(double a, double b, double c) {
  Mat3 m = Mat3::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return Conic(m);
}

/// x^2/a2 + y^2/b2 = 1
inline Conic central(double a2, double b2) { return diag_conic(1.0 / a2, 1.0 / b2, -1.0); }

inline Conic circle(double cx, double cy, double r2) {
  Mat3 m;
  m << 1.0, 0.0, -cx, 0.0, 1.0, -cy, -cx, -cy, cx * cx + cy * cy - r2;
  return Conic(m);
}

inline Vec3 random_vec(projcert::Rng& rng, bool complex = false) {
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    v[i] = Complex(rng.uniform(-1.0, 1.0), complex ? rng.uniform(-1.0, 1.0) : 0.0);
  }
  return v;
}

inline Conic random_conic(projcert::Rng& rng, bool complex = false) {
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      m(i, j) = m(j, i) = Complex(rng.uniform(-1.0, 1.0), complex ? rng.uniform(-1.0, 1.0) : 0.0);
    }
  }
  return Conic(m);
}

inline double dist(const HomPoint& a, const HomPoint& b) { return projcert::projective_distance(a, b); }
inline double dist(const HomLine& a, const HomLine& b) { return projcert::projective_distance(a, b); }
inline double dist(const Conic& a, const Conic& b) { return projcert::conic_distance(a, b); }
inline double dist(const projcert::DualConic& a, const projcert::DualConic& b) { return projcert::conic_distance(a, b); }

template <class F>
projcert::ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const projcert::Error& e) {
    return e.code();
  }
  return static_cast<projcert::ErrorCode>(-1);
}

}  // namespace testing
