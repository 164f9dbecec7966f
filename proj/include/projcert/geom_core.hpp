#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "projcert/error.hpp"

namespace projcert {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;
using Vec6 = Eigen::Matrix<Complex, 6, 1>;

inline constexpr Complex kI{0.0, 1.0};

/// Pass band for exact incidence claims. A residual <= eps "holds"; a
/// residual >= sep * eps certifiably "fails"; anything between is undecided.
struct Tolerance {
  double eps = 1e-9;
  double sep = 1e4;

  bool holds(double residual) const { return residual <= eps; }
  bool fails(double residual) const { return residual >= sep * eps; }
  void validate() const;
};

/// Threshold below which two normalized homogeneous vectors are the same
/// projective object.
inline constexpr double kProjectiveEqualityTol = 1e-10;
/// Root separation (on normalized coefficients) below which two roots are
/// reported as one double root.
inline constexpr double kMultiplicityTol = 1e-6;

struct PointTag {};
struct LineTag {};

/// A complex homogeneous triple, meaningful only up to a nonzero complex
/// scale. The coordinates are kept as given; use normalize() for a canonical
/// representative.
template <class Tag>
class Homogeneous {
 public:
  Homogeneous(Complex c0, Complex c1, Complex c2) : Homogeneous(Vec3(c0, c1, c2)) {}
  explicit Homogeneous(const Vec3& v);

  const Vec3& vec() const { return v_; }
  Complex operator[](int i) const { return v_[i]; }

 private:
  Vec3 v_;
};

using HomPoint = Homogeneous<PointTag>;
using HomLine = Homogeneous<LineTag>;

/// Verdict of a predicate together with the scale-free residual it was
/// decided on.
struct Verdict {
  double residual = 0.0;
  bool holds = false;
};

// ---------------------------------------------------------------------------
// Vector helpers

/// Unit Euclidean norm, largest-modulus coordinate rotated to positive real.
/// Ties go to the lowest index. Works for any length.
template <class Derived>
auto canonical(const Eigen::MatrixBase<Derived>& v) -> typename Derived::PlainObject;

Vec3 normalize(const Vec3& v);
HomPoint normalize(const HomPoint& p);
HomLine normalize(const HomLine& l);

/// Smallest singular value of the 2 x n matrix stacking the two normalized
/// vectors. Zero iff the vectors are proportional over C.
double projective_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);
double projective_distance(const HomPoint& a, const HomPoint& b);
double projective_distance(const HomLine& a, const HomLine& b);

bool projectively_equal(const HomPoint& a, const HomPoint& b, double tol = kProjectiveEqualityTol);
bool projectively_equal(const HomLine& a, const HomLine& b, double tol = kProjectiveEqualityTol);

/// Largest imaginary magnitude of the canonical representative; zero for
/// objects that have a real representative.
double imaginary_part(const Vec3& v);

/// Affine coordinates (x/z, y/z) of a point with a (numerically) real
/// representative. Throws InvalidInput for points at infinity.
std::array<double, 2> affine(const HomPoint& p);
HomPoint affine_point(double x, double y);
/// Line a*x + b*y + c = 0.
HomLine affine_line(double a, double b, double c);

Mat3 cross_matrix(const Vec3& v);
/// Plain bilinear (not Hermitian) product.
Complex dot(const Vec3& a, const Vec3& b);
/// Unconjugated cross product (Eigen conjugates for complex scalars).
Vec3 cross(const Vec3& a, const Vec3& b);

// ---------------------------------------------------------------------------
// Incidence

/// Line through two distinct points. Throws DegenerateJoin when p == q.
HomLine join(const HomPoint& p, const HomPoint& q);
/// Dual of join. Throws DegenerateMeet when l == m.
HomPoint meet(const HomLine& l, const HomLine& m);

/// residual = |p.l| / (|p| |l|)
Verdict incident(const HomPoint& p, const HomLine& l, const Tolerance& tol = {});
/// residual = |det| of the normalized rows.
Verdict collinear(const HomPoint& p, const HomPoint& q, const HomPoint& r, const Tolerance& tol = {});
Verdict concurrent(const HomLine& l, const HomLine& m, const HomLine& n, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Projective transforms

/// Invertible complex 3x3 collineation. Points map by T, lines by T^-T and
/// conic matrices by congruence with T^-1.
class Transform {
 public:
  explicit Transform(const Mat3& m);
  static Transform identity() { return Transform(Mat3::Identity()); }

  const Mat3& matrix() const { return m_; }
  const Mat3& inverse_matrix() const { return inv_; }
  Transform inverse() const { return Transform(inv_); }

  HomPoint apply(const HomPoint& p) const;
  HomLine apply(const HomLine& l) const;

 private:
  Mat3 m_;
  Mat3 inv_;
};

// ---------------------------------------------------------------------------
// Polynomial roots

/// Roots of sum_k c[k] x^(n-k) (highest degree first) as eigenvalues of the
/// companion matrix. Leading coefficient must be nonzero.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

/// Root of a binary form, as a normalized (s, t) pair.
struct BinaryRoot {
  Eigen::Vector2cd st;
};

/// Roots of the binary form sum_k c[k] s^(n-k) t^k. The dehomogenization
/// side is chosen from the larger end coefficient so roots at infinity are
/// handled uniformly. Returns an empty vector when the form vanishes
/// identically (all coefficients below 1e-14 relative).
std::vector<BinaryRoot> binary_form_roots(std::span<const Complex> coeffs);

/// Distance between two binary roots (|s1 t2 - s2 t1| on normalized pairs).
double root_separation(const BinaryRoot& a, const BinaryRoot& b);

}  // namespace projcert

#include "projcert/detail/geom_core_impl.hpp"
