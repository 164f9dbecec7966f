#pragma once

#include <array>
#include <span>
#include <vector>

#include "projcert/conics.hpp"

namespace projcert {

/// Ternary form of degree <= 4. Coefficients follow the monomials
/// x^i y^j z^k in descending lexicographic order of (i, j, k).
class PlaneCurve {
 public:
  PlaneCurve(int degree, Eigen::VectorXcd coeffs);

  static PlaneCurve from_line(const HomLine& l);
  static PlaneCurve from_conic(const Conic& c);

  static std::size_t size(int degree) { return static_cast<std::size_t>((degree + 1) * (degree + 2) / 2); }
  static std::vector<std::array<int, 3>> exponents(int degree);
  /// Monomial vector of the unit-normalized point.
  static Eigen::VectorXcd monomials(int degree, const Vec3& p);

  int degree() const { return degree_; }
  const Eigen::VectorXcd& coeffs() const { return c_; }

  /// |c . m(p)| / (|c| |m(p)|)
  double evaluate(const HomPoint& p) const;

  friend PlaneCurve operator*(const PlaneCurve& a, const PlaneCurve& b);

 private:
  int degree_;
  Eigen::VectorXcd c_;
};

/// Orthonormal basis (columns) of the curves of the given degree through all
/// points, using singular values below rel_tol * sigma_max as the null space.
Eigen::MatrixXcd curves_through(int degree, std::span<const HomPoint> pts, double rel_tol = 1e-10);

/// Right singular vector of the smallest singular value: the curve closest
/// to passing through every point.
Eigen::VectorXcd least_squares_curve(int degree, std::span<const HomPoint> pts);

}  // namespace projcert
