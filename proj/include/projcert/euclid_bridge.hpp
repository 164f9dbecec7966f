#pragma once

#include <vector>

#include "projcert/conics.hpp"

namespace projcert {

/// The absolute circle points and the line at infinity they span.
struct AbsolutePair {
  HomPoint I{1.0, kI, 0.0};
  HomPoint J{1.0, -kI, 0.0};
  HomLine l_inf{0.0, 0.0, 1.0};

  /// sym(I J^T + J I^T) / 2 = diag(1, 1, 0): the dual conic of the pair.
  DualConic dual_degenerate() const;
};

inline const AbsolutePair kAbsolute{};

/// Conics confocal to `base`: duals dual(base) + lambda * diag(1,1,0). The
/// dual of the base is scaled so that its (2,2) entry is -1 whenever that
/// entry is not negligible, which makes lambda the classical
/// x^2/(a^2+lambda) + y^2/(b^2+lambda) = 1 parameter for central conics.
class ConfocalFamily {
 public:
  explicit ConfocalFamily(const Conic& base);

  const Conic& base() const { return base_; }
  const Mat3& dual_base() const { return dual_base_; }
  DualConic dual_degenerate() const { return kAbsolute.dual_degenerate(); }

  /// Primal member for parameter lambda (adjugate of the dual pencil member).
  Conic member(Complex lambda) const;
  Mat3 dual_member(Complex lambda) const;

 private:
  Conic base_;
  Mat3 dual_base_;
};

struct FociResult {
  PointPair real_pair;
  PointPair complex_pair;
  /// Max imaginary magnitude of the two real_pair points after normalization.
  double real_pair_imag = 0.0;
};

struct ConfocalMember {
  Conic conic;
  Complex lambda;
};

struct ConfocalSolutions {
  /// Smooth members through the point, ordered by descending Re(lambda)
  /// (ellipse-like first for a real ellipse family).
  std::vector<ConfocalMember> smooth;
  /// Roots whose member is degenerate (the focal axis and the like).
  std::vector<ConfocalMember> degenerate;
  /// Smooth members in raw root order.
  std::vector<ConfocalMember> raw;
};

/// A circle tangent to four given lines, identified by the sign pattern of
/// the signed distances.
struct TangentCircle {
  Conic circle;
  HomPoint center;
  Complex radius_squared;
  double residual = 0.0;
};

bool is_circle(const Conic& c, const Tolerance& tol = {});

/// Meet of the tangents at I and J. Throws NotACircle.
HomPoint circle_center(const Conic& c, const Tolerance& tol = {});

/// Circle centered at the affine point m tangent to l. The radius is taken
/// algebraically, r^2 = (l.m)^2 / ((l0^2 + l1^2) m2^2), so complex lines
/// give the algebraically tangent circle. Throws CenterOnLine.
Conic circle_from_center_tangent(const HomPoint& m, const HomLine& l, const Tolerance& tol = {});

/// Circle from affine center and squared radius.
Conic circle_from_center_radius2(const HomPoint& m, Complex radius_squared);

/// Foci via the tangents from I and J. Throws IsCircle.
FociResult foci(const Conic& c, const Tolerance& tol = {});

/// Members of the family through p. Throws FocusInput when p is a focus
/// (double root).
ConfocalSolutions confocal_through(const ConfocalFamily& family, const HomPoint& p);

/// Codependence residual of base, member and the absolute dual conic.
Verdict confocal(const Conic& base, const Conic& member, const Tolerance& tol = {});

/// The two bisectors of a and b, algebraically: a/sqrt(a0^2+a1^2) -+
/// b/sqrt(b0^2+b1^2). Throws ParallelLines.
LinePair angle_bisectors(const HomLine& a, const HomLine& b);

/// Every circle tangent to all four lines, enumerated over the sign patterns
/// of the (algebraically normalized) signed distances. `residual` is the
/// smallest relative singular value of the 4x4 system; only candidates with
/// residual <= eps are returned.
std::vector<TangentCircle> circles_tangent_to_lines(std::span<const HomLine, 4> lines, const Tolerance& tol = {});

/// Smallest residual over all sign patterns: zero iff a circle touches all
/// four lines.
double circle_condition_residual(std::span<const HomLine, 4> lines);

}  // namespace projcert
