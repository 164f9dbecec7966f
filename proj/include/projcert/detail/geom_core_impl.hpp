#pragma once

#include <cmath>

namespace projcert {

template <class Tag>
Homogeneous<Tag>::Homogeneous(const Vec3& v) : v_(v) {
  double max_mod = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
      throw Error(ErrorCode::InvalidInput, "non-finite homogeneous coordinate");
    }
    max_mod = std::max(max_mod, std::abs(v[i]));
  }
  if (max_mod < 1e-300) throw Error(ErrorCode::ZeroVector, "all coordinates vanish");
}

template <class Derived>
auto canonical(const Eigen::MatrixBase<Derived>& v) -> typename Derived::PlainObject {
  typename Derived::PlainObject out = v;
  const double n = out.norm();
  if (!(n > 1e-300)) throw Error(ErrorCode::ZeroVector, "cannot normalize a zero vector");
  out /= n;
  Eigen::Index best = 0;
  double best_mod = -1.0;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    // Ties resolved towards the lowest index; the slack keeps the choice
    // stable under roundoff.
    const double m = std::abs(out[i]);
    if (m > best_mod * (1.0 + 1e-12)) {
      best_mod = m;
      best = i;
    }
  }
  const Complex phase = std::conj(out[best]) / best_mod;
  out *= phase;
  out[best] = Complex(out[best].real(), 0.0);
  return out;
}

}  // namespace projcert
