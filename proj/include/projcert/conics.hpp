#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "projcert/geom_core.hpp"

namespace projcert {

struct PrimalTag {};
struct DualTag {};

/// Symmetric 3x3 complex form up to scale. The stored matrix is exactly
/// symmetric, Frobenius-normalized, with the largest-modulus coefficient
/// rotated to positive real. Singular values are cached at construction.
template <class Tag>
class SymmetricForm {
 public:
  explicit SymmetricForm(const Mat3& a);

  /// Upper-triangle coefficients a00, a01, a02, a11, a12, a22.
  static SymmetricForm from_coefficients(const Vec6& c);

  const Mat3& matrix() const { return a_; }
  Vec6 coefficients() const;
  const Eigen::Vector3d& singular_values() const { return sigma_; }
  double spectral_norm() const { return sigma_[0]; }
  /// 1, 2 or 3; singular values below 1e-10 relative count as zero.
  int rank() const;

 private:
  Mat3 a_;
  Eigen::Vector3d sigma_;
};

/// Point conic: points p with p^T A p = 0.
using Conic = SymmetricForm<PrimalTag>;
/// Line conic: lines l with l^T B l = 0.
using DualConic = SymmetricForm<DualTag>;

struct LinePair {
  HomLine first;
  HomLine second;
};

struct PointPair {
  HomPoint first;
  HomPoint second;
};

Mat3 adjugate(const Mat3& a);
Vec6 upper_triangle(const Mat3& a);
Mat3 from_upper_triangle(const Vec6& c);
/// sym(l m^T) = (l m^T + m l^T) / 2
Mat3 symmetric_product(const Vec3& l, const Vec3& m);

/// projective_distance of the coefficient vectors.
double conic_distance(const Conic& a, const Conic& b);
double conic_distance(const DualConic& a, const DualConic& b);

// ---------------------------------------------------------------------------
// Evaluation and classification

/// |p^T A p| / (|p|^2 |A|_2)
double evaluate(const Conic& c, const HomPoint& p);
/// |l^T B l| / (|l|^2 |B|_2)
double evaluate(const DualConic& c, const HomLine& l);
Verdict on_conic(const Conic& c, const HomPoint& p, const Tolerance& tol = {});

int classify(const Conic& c);
int classify(const DualConic& c);

/// Tangency residual of a line: evaluate(dual(c), l). For a line pair the
/// tangent lines are the lines through the singular point.
double tangency(const Conic& c, const HomLine& l);
Verdict tangent(const Conic& c, const HomLine& l, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Duality and polarity

/// Adjugate. Throws RankOne when the adjugate vanishes.
DualConic dual(const Conic& c);
Conic dual(const DualConic& c);

HomLine polar(const Conic& c, const HomPoint& p);
/// Throws SingularConic for rank < 3.
HomPoint pole(const Conic& c, const HomLine& l);
/// Contact point of a tangent line (pole through the adjugate).
HomPoint contact_point(const Conic& c, const HomLine& tangent_line);

/// Polar line at p. Throws PointNotOnConic unless evaluate(c, p) <= eps, and
/// SingularConic for rank < 3.
HomLine tangent_at(const Conic& c, const HomPoint& p, const Tolerance& tol = {});

/// The two lines through p tangent to c, possibly complex. For p on c the
/// tangent at p is returned twice.
LinePair tangents_from(const Conic& c, const HomPoint& p);

// ---------------------------------------------------------------------------
// Degenerate conics

Conic line_pair(const HomLine& l, const HomLine& m);
DualConic point_pair(const HomPoint& p, const HomPoint& q);

/// Throws NotDegenerate for rank 3. For rank 1 both lines coincide.
LinePair split_degenerate(const Conic& c);
PointPair split_degenerate(const DualConic& c);

// ---------------------------------------------------------------------------
// Constructions

/// Throws DegeneratePointSet when the conic is not unique.
Conic conic_through_5(std::span<const HomPoint, 5> pts);

/// Member of a conic pencil s*D1 + t*D2 together with its parameter
/// lambda = t/s (at_infinity when s == 0).
struct PencilSolution {
  Conic conic;
  Complex lambda;
  bool at_infinity = false;
};

struct TangentConicSolutions {
  /// Rank-3 solutions, in root order. Never auto-selected.
  std::vector<PencilSolution> smooth;
  /// Roots whose pencil member is degenerate (spurious tangency).
  std::vector<PencilSolution> degenerate;
};

/// Conics through four points tangent to a line. The pencil is
/// D1 + lambda D2 with D1 = (p1 v p2)(p3 v p4), D2 = (p1 v p3)(p2 v p4), each
/// built from unit lines. Throws TangentLineThroughBasePoint and
/// DegeneratePointSet (three collinear points).
TangentConicSolutions conic_4pts_tangent_line(std::span<const HomPoint, 4> pts, const HomLine& l,
                                              const Tolerance& tol = {});

/// The unique conic tangent to l1 at t1 and to l2 at t2 passing through p.
Conic conic_double_contact(const HomLine& l1, const HomPoint& t1, const HomLine& l2, const HomPoint& t2,
                           const HomPoint& p, const Tolerance& tol = {});

Conic pencil_member(const Conic& c1, const Conic& c2, Complex lambda);

/// Smallest singular value of the 3x6 matrix of normalized coefficient rows.
Verdict dependent(const Conic& a, const Conic& b, const Conic& c, const Tolerance& tol = {});
Verdict dependent(const DualConic& a, const DualConic& b, const DualConic& c, const Tolerance& tol = {});
/// Dependence of the duals. Requires every rank >= 2.
Verdict codependent(const Conic& a, const Conic& b, const Conic& c, const Tolerance& tol = {});

struct LineIntersection {
  HomPoint first;
  HomPoint second;
  /// Roots closer than kMultiplicityTol: the line is tangent and both points
  /// are the contact point.
  bool tangent = false;
  double separation = 0.0;
};

/// Throws LineOnConic when l is a component of c.
LineIntersection intersect_conic_line(const Conic& c, const HomLine& l);

struct ConicIntersection {
  std::array<HomPoint, 4> points;
  std::array<int, 4> multiplicity;
  /// The degenerate pencil member that was split.
  Conic degenerate_member;
};

/// Throws SharedComponent when the conics coincide or share a line.
ConicIntersection intersect_conics(const Conic& a, const Conic& b);

/// Rational parameterization through a seed point on c: t = 0 returns the
/// seed. For real c and a real seed, real t gives real points.
HomPoint point_on_conic(const Conic& c, const HomPoint& seed, double t);
/// A point on c, as real as the probes allow.
HomPoint seed_point(const Conic& c);

// ---------------------------------------------------------------------------
// Transforms

Conic apply(const Transform& t, const Conic& c);
DualConic apply(const Transform& t, const DualConic& c);

}  // namespace projcert
