#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "projcert/euclid_bridge.hpp"
#include "projcert/plane_curve.hpp"
#include "projcert/report.hpp"

namespace projcert {

/// Four tangents a, b, c, d of X with the vertex pairs P=a^b, Q=c^d,
/// S=a^c, T=b^d, U=b^c, V=a^d.
struct QuadScenario {
  Conic X;
  std::array<HomLine, 4> lines;

  const HomLine& a() const { return lines[0]; }
  const HomLine& b() const { return lines[1]; }
  const HomLine& c() const { return lines[2]; }
  const HomLine& d() const { return lines[3]; }
};

// ---------------------------------------------------------------------------
// Quadrilateral theorems over confocal families

/// M = t_P ^ t_Q is the center of a circle tangent to the four tangents
/// from P and Q to X. Witnesses: M, circle, a, b, c, d, tP, tQ.
ScenarioReport cqt_forward(const Conic& X, const Conic& R, const HomPoint& P, const HomPoint& Q,
                           const Tolerance& tol = {});

/// Recovers the confocal member through P and Q from a circle and four common
/// tangents (P = a^b, Q = c^d). Witnesses: M, P, Q, member, R.
ScenarioReport cqt_backward(const Conic& X, const Conic& circle, std::span<const HomLine, 4> lines,
                            const Tolerance& tol = {});

/// Circle tangent to a, b, c, d  <=>  P and Q on a common member confocal to X.
/// Each branch through P is reported; ambiguity produces a note.
ScenarioReport cqt_pure(const QuadScenario& s, const Tolerance& tol = {});

/// The three vertex pairs each on a confocal member iff the circle exists.
ScenarioReport cqt_three_conics(const QuadScenario& s, const Tolerance& tol = {});

/// P on R, S on G (both confocal to X) with P v S tangent to X. With M the
/// meet of the tangents at P and S, Q and T the second contacts from M, the
/// lines Q v T, P v T and Q v S are tangent to X.
ScenarioReport cqt_tangent2(const Conic& X, const Conic& R, const Conic& G, const HomPoint& P, const HomPoint& S,
                            const Tolerance& tol = {});

/// Tangent at P to a confocal member bisects the tangents from P to X.
ScenarioReport billiard_bisector(const Conic& X, const Conic& member, const HomPoint& P, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Projective versions

/// Two lines through disjoint pairs of the four common points of X and R.
struct Pairing {
  HomLine I;
  HomLine J;
};

/// The three pairings of the common points. Throws DegeneratePairing unless
/// X and R meet in four distinct points.
std::vector<Pairing> pairings_of(const Conic& X, const Conic& R);

/// Primal construction: k = P v Q, green contacts k^I and k^J, C the conic
/// tangent to I, J there through the first blue point; C must contain the
/// other three blue points (tangents at P, Q to R met with X).
/// Witnesses: C, GI, GJ, k, blue0..blue3, tP, tQ.
ScenarioReport cqt_primal(const Conic& X, const Conic& R, const HomPoint& P, const HomPoint& Q,
                          const Pairing& pairing, const Tolerance& tol = {});

/// Four lines t, two conics X and R tangent to all of them, I and J opposite
/// vertices of the t quadrilateral, P and Q on R.
struct ProjectiveScenario {
  Conic X;
  Conic R;
  std::array<HomLine, 4> t;
  HomPoint I;
  HomPoint J;
  HomPoint P;
  HomPoint Q;
};

/// Dual statement, checked through cqt_primal in the dual plane and then
/// directly: C through I and J, tangent to the four tangents from P and Q to
/// X, with the tangents at I, J (to C) and at P, Q (to R) concurrent.
ScenarioReport cqt_projective(const ProjectiveScenario& s, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Cayley-Bacharach

struct CbCubicOptions {
  /// Number of intersection points the third cubic is fitted through (8 for
  /// the theorem, 7 for the negative control).
  int fitted = 8;
  /// Number of generic members of the fitted family to test.
  int members = 1;
  std::uint64_t seed = 1;
};

/// A and B meet in the nine given points; cubics through the first
/// `fitted` of them must vanish at the ninth.
ScenarioReport cb_cubic(const PlaneCurve& A, const PlaneCurve& B, std::span<const HomPoint> nine,
                        const CbCubicOptions& opts = {}, const Tolerance& tol = {});

/// Decomposed inputs: A and B are products of three lines each; the nine
/// points are the pairwise meets.
ScenarioReport cb_cubic(std::span<const HomLine, 3> a, std::span<const HomLine, 3> b, const CbCubicOptions& opts = {},
                        const Tolerance& tol = {});

/// Four red lines, two blue lines and a blue conic.
struct CbQuarticScenario {
  std::array<HomLine, 4> red;
  std::array<HomLine, 2> blue;
  Conic blue_conic;
};

/// G1 through the blue-conic points on r3, r4 and the blue-line points on
/// r1, r2; G2 through the blue-line points on r3, r4 and the first
/// blue-conic point on r1. The three remaining blue-conic points on r1, r2
/// must lie on G2. Witnesses: G1, G2, circled0..2, and the six conics
/// B1, B2, R1, R2 (as line pairs / blue conic).
ScenarioReport cb_quartic_special(const CbQuarticScenario& s, const Tolerance& tol = {});

/// A configuration that degenerates as the two blue lines merge: the blue
/// conic, r3, r4 and G1 stay fixed, the blue lines are b2 + lambda b1 and
/// b2, and r1, r2 are rebuilt through the points where they meet G1.
struct LimitScenario {
  Conic blue_conic;
  HomLine r3;
  HomLine r4;
  Conic G1;
  HomLine b1;
  HomLine b2;
};

/// The cb_quartic_special scenario at lambda > 0.
CbQuarticScenario instantiate(const LimitScenario& s, double lambda);

/// Holds threshold of the scan. Near the limit the configuration is pinned
/// by nearly coincident points and residuals grow like 1/lambda^2.
inline constexpr double kLimitScanEps = 1e-8;

/// Runs the schedule; lambda = 0 uses the double-contact limit and is cross
/// checked against cqt_primal. Checks are decided at max(eps, kLimitScanEps).
ScenarioReport limit_scan(const LimitScenario& s, std::span<const double> schedule, const Tolerance& tol = {});

struct ChaslesConics {
  Conic B1;
  Conic B2;
  Conic R1;
  Conic R2;
  Conic G1;
  Conic G2;
};

/// The six conics of a certified cb_quartic_special report.
ChaslesConics chasles_conics(const ScenarioReport& cb4);

/// Conics as points of P^5: {B2, R1, G2} and {B2, R2, G1} collinear, all
/// five spanning a plane, and span(R2, G2) ^ span(R1, G1) = B1.
/// Throws RankDeficientInput when two of the six coincide.
ScenarioReport chasles_p5(const ChaslesConics& c, const Tolerance& tol = {});

/// Unit upper-triangle coefficient vector.
Vec6 p5_point(const Conic& c);

// ---------------------------------------------------------------------------
// Counterexamples (deterministic generators)

struct DarbouxParams {
  double alpha_deg = 75.0;
  double beta_deg = 30.0;
};

/// Symmetric tangents of x^2/4 + y^2 = 1: two circles, two members, two
/// consistent pairings and one inconsistent one.
ScenarioReport counterexample_darboux(const DarbouxParams& p = {}, const Tolerance& tol = {});

struct NonTheoremParams {
  double alpha_deg = 70.0;
  double beta_deg = 25.0;
};

/// Symmetric tangents with the incompatible member choice (all four tangent
/// triples non-concurrent) plus a generic instance where they concur.
ScenarioReport counterexample_nontheorem1(const NonTheoremParams& p = {}, const Tolerance& tol = {});

struct AkopyanBobenkoParams {
  /// b = (2 cos t, sin t) on alpha: x^2/4 + y^2 = 1.
  double b_deg = 190.0;
  /// beta: x^2/rx^2 + (y - y0)^2/ry^2 = 1.
  double beta_rx = 1.0;
  double beta_ry = 0.4;
  double beta_y = -0.2;
};

/// Points a, b, c, d on alpha with ab and cd tangent to beta; both members
/// gamma of the pencil tangent to ac and bd, one with collinear contact
/// points and one without, and the conic through the four contacts tangent
/// there.
ScenarioReport counterexample_akopyan_bobenko(const AkopyanBobenkoParams& p = {}, const Tolerance& tol = {});

}  // namespace projcert
