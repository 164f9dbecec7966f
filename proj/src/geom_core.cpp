#include "projcert/geom_core.hpp"

#include <algorithm>
#include <cmath>

namespace projcert {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegenerateJoin: return "DegenerateJoin";
    case ErrorCode::DegenerateMeet: return "DegenerateMeet";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::RankOne: return "RankOne";
    case ErrorCode::SingularConic: return "SingularConic";
    case ErrorCode::PointNotOnConic: return "PointNotOnConic";
    case ErrorCode::NotDegenerate: return "NotDegenerate";
    case ErrorCode::DegeneratePointSet: return "DegeneratePointSet";
    case ErrorCode::TangentLineThroughBasePoint: return "TangentLineThroughBasePoint";
    case ErrorCode::ContactPointOffLine: return "ContactPointOffLine";
    case ErrorCode::InconsistentThroughPoint: return "InconsistentThroughPoint";
    case ErrorCode::LineOnConic: return "LineOnConic";
    case ErrorCode::SharedComponent: return "SharedComponent";
    case ErrorCode::NotACircle: return "NotACircle";
    case ErrorCode::CenterOnLine: return "CenterOnLine";
    case ErrorCode::IsCircle: return "IsCircle";
    case ErrorCode::FocusInput: return "FocusInput";
    case ErrorCode::ParallelLines: return "ParallelLines";
    case ErrorCode::ParallelTangents: return "ParallelTangents";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::NotTangent: return "NotTangent";
    case ErrorCode::DegenerateQuadrilateral: return "DegenerateQuadrilateral";
    case ErrorCode::NoSecondTangent: return "NoSecondTangent";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::FewerThanNineIntersections: return "FewerThanNineIntersections";
    case ErrorCode::CoincidentIntersections: return "CoincidentIntersections";
    case ErrorCode::DegenerateBlueConic: return "DegenerateBlueConic";
    case ErrorCode::RankDeficientInput: return "RankDeficientInput";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::UnknownTheorem: return "UnknownTheorem";
    case ErrorCode::NothingRealToDraw: return "NothingRealToDraw";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

void Tolerance::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidInput, "eps must lie in (0, 1)");
  if (!(sep >= 1e3)) throw Error(ErrorCode::InvalidInput, "sep must be >= 1e3");
}

Vec3 normalize(const Vec3& v) { return canonical(v); }
HomPoint normalize(const HomPoint& p) { return HomPoint(canonical(p.vec())); }
HomLine normalize(const HomLine& l) { return HomLine(canonical(l.vec())); }

double projective_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "size mismatch");
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 1e-300) || !(nb > 1e-300)) throw Error(ErrorCode::ZeroVector, "zero vector in distance");
  // For unit rows u, v: sigma_min^2 = 1 - |<u,v>|, and |u ^ v|^2 = 1 - |<u,v>|^2.
  // Summing the 2x2 minors avoids the cancellation in 1 - |<u,v>|.
  double wedge2 = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = i + 1; j < a.size(); ++j) {
      wedge2 += std::norm(a[i] * b[j] - a[j] * b[i]);
    }
  }
  const double wedge = std::sqrt(wedge2) / (na * nb);
  const double overlap = std::abs(a.dot(b)) / (na * nb);
  return wedge / std::sqrt(1.0 + std::min(1.0, overlap));
}

double projective_distance(const HomPoint& a, const HomPoint& b) {
  return projective_distance(Eigen::VectorXcd(a.vec()), Eigen::VectorXcd(b.vec()));
}
double projective_distance(const HomLine& a, const HomLine& b) {
  return projective_distance(Eigen::VectorXcd(a.vec()), Eigen::VectorXcd(b.vec()));
}

bool projectively_equal(const HomPoint& a, const HomPoint& b, double tol) {
  return projective_distance(a, b) < tol;
}
bool projectively_equal(const HomLine& a, const HomLine& b, double tol) {
  return projective_distance(a, b) < tol;
}

double imaginary_part(const Vec3& v) {
  const Vec3 c = canonical(v);
  return c.imag().cwiseAbs().maxCoeff();
}

std::array<double, 2> affine(const HomPoint& p) {
  const Vec3 c = canonical(p.vec());
  if (std::abs(c[2]) < 1e-14) throw Error(ErrorCode::InvalidInput, "point at infinity has no affine coordinates");
  return {(c[0] / c[2]).real(), (c[1] / c[2]).real()};
}

HomPoint affine_point(double x, double y) { return HomPoint(x, y, 1.0); }
HomLine affine_line(double a, double b, double c) { return HomLine(a, b, c); }

Mat3 cross_matrix(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v[2], v[1],
       v[2], 0.0, -v[0],
       -v[1], v[0], 0.0;
  return m;
}

Complex dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

namespace {

Vec3 unit(const Vec3& v) { return v / v.norm(); }

double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  Mat3 m;
  m.row(0) = unit(a).transpose();
  m.row(1) = unit(b).transpose();
  m.row(2) = unit(c).transpose();
  return std::abs(m.determinant());
}

}  // namespace

HomLine join(const HomPoint& p, const HomPoint& q) {
  if (projectively_equal(p, q)) throw Error(ErrorCode::DegenerateJoin, "join of coincident points");
  return HomLine(cross(unit(p.vec()), unit(q.vec())));
}

HomPoint meet(const HomLine& l, const HomLine& m) {
  if (projectively_equal(l, m)) throw Error(ErrorCode::DegenerateMeet, "meet of coincident lines");
  return HomPoint(cross(unit(l.vec()), unit(m.vec())));
}

Verdict incident(const HomPoint& p, const HomLine& l, const Tolerance& tol) {
  const double r = std::abs(dot(p.vec(), l.vec())) / (p.vec().norm() * l.vec().norm());
  return {r, tol.holds(r)};
}

Verdict collinear(const HomPoint& p, const HomPoint& q, const HomPoint& r, const Tolerance& tol) {
  const double res = det3(p.vec(), q.vec(), r.vec());
  return {res, tol.holds(res)};
}

Verdict concurrent(const HomLine& l, const HomLine& m, const HomLine& n, const Tolerance& tol) {
  const double res = det3(l.vec(), m.vec(), n.vec());
  return {res, tol.holds(res)};
}

Transform::Transform(const Mat3& m) : m_(m) {
  const double scale = m.norm();
  if (!(scale > 0.0) || std::abs(m.determinant()) < 1e-12 * scale * scale * scale) {
    throw Error(ErrorCode::SingularTransform, "transform matrix is (numerically) singular");
  }
  inv_ = m.inverse();
}

HomPoint Transform::apply(const HomPoint& p) const { return HomPoint(m_ * p.vec()); }
HomLine Transform::apply(const HomLine& l) const { return HomLine(inv_.transpose() * l.vec()); }

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  if (coeffs.empty() || std::abs(coeffs[0]) == 0.0) {
    throw Error(ErrorCode::InvalidInput, "leading coefficient must be nonzero");
  }
  const auto n = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (n == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) companion(0, j) = -coeffs[static_cast<std::size_t>(j) + 1] / coeffs[0];
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<BinaryRoot> binary_form_roots(std::span<const Complex> coeffs) {
  double max_c = 0.0;
  for (const Complex& c : coeffs) max_c = std::max(max_c, std::abs(c));
  if (!(max_c > 0.0)) return {};
  std::vector<Complex> scaled(coeffs.begin(), coeffs.end());
  for (Complex& c : scaled) {
    c /= max_c;
    if (std::abs(c) < 1e-14) c = 0.0;
  }
  const bool in_s = std::abs(scaled.front()) >= std::abs(scaled.back());
  if (!in_s) std::reverse(scaled.begin(), scaled.end());
  // Leading coefficient is now the larger end; strip leading zeros only if
  // both ends vanished (form divisible by s*t).
  std::size_t lead = 0;
  while (lead < scaled.size() && scaled[lead] == Complex(0.0)) ++lead;
  if (lead == scaled.size()) return {};
  std::vector<BinaryRoot> out;
  // Each stripped leading zero is a root at "infinity" of the chosen side.
  for (std::size_t k = 0; k < lead; ++k) {
    Eigen::Vector2cd st = in_s ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
    out.push_back({st});
  }
  const std::span<const Complex> rest(scaled.data() + lead, scaled.size() - lead);
  for (const Complex& x : polynomial_roots(rest)) {
    Eigen::Vector2cd st = in_s ? Eigen::Vector2cd(x, 1.0) : Eigen::Vector2cd(1.0, x);
    out.push_back({st / st.norm()});
  }
  return out;
}

double root_separation(const BinaryRoot& a, const BinaryRoot& b) {
  return std::abs(a.st[0] * b.st[1] - a.st[1] * b.st[0]);
}

}  // namespace projcert
