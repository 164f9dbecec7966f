#include "projcert/conics.hpp"

#include <algorithm>
#include <cmath>

namespace projcert {

namespace {

constexpr double kRankTol = 1e-10;

Vec3 unit(const Vec3& v) { return v / v.norm(); }

Eigen::Vector3d singular_values_of(const Mat3& a) {
  Eigen::JacobiSVD<Mat3> svd(a);
  return svd.singularValues();
}

int rank_from_sigma(const Eigen::Vector3d& s) {
  if (s[0] <= 0.0) return 0;
  int r = 1;
  if (s[1] / s[0] >= kRankTol) ++r;
  if (s[2] / s[0] >= kRankTol) ++r;
  return r;
}

/// Splits a symmetric matrix of rank <= 2 into two vectors u, v with
/// sym(u v^T) proportional to it.
std::pair<Vec3, Vec3> split_symmetric(const Mat3& a) {
  const Mat3 s = a / a.norm();
  const Eigen::Vector3d sigma = singular_values_of(s);
  if (sigma[1] / sigma[0] < kRankTol) {
    Eigen::Index col = 0;
    s.colwise().norm().maxCoeff(&col);
    const Vec3 l = s.col(col);
    return {l, l};
  }
  // For A = l m^T + m l^T the adjugate is -(l x m)(l x m)^T, so
  // A +- [l x m]_x is the rank-one matrix 2 l m^T (or 2 m l^T).
  const Mat3 b = adjugate(s);
  Eigen::Index i = 0;
  b.diagonal().cwiseAbs().maxCoeff(&i);
  const Complex beta = std::sqrt(-b(i, i));
  const Vec3 p = b.col(i) / beta;
  const Mat3 c = s + cross_matrix(p);
  Eigen::Index r = 0;
  Eigen::Index q = 0;
  c.cwiseAbs().maxCoeff(&r, &q);
  return {unit(c.row(r).transpose()), unit(c.col(q))};
}

Complex quad(const Mat3& a, const Vec3& u, const Vec3& v) { return u.transpose() * a * v; }

/// Two independent points on l.
std::pair<Vec3, Vec3> span_of_line(const Vec3& l) {
  Eigen::Index k = 0;
  l.cwiseAbs().maxCoeff(&k);
  const Vec3 e1 = Vec3::Unit((k + 1) % 3);
  const Vec3 e2 = Vec3::Unit((k + 2) % 3);
  return {unit(cross(l, e1)), unit(cross(l, e2))};
}

}  // namespace

// ---------------------------------------------------------------------------
// SymmetricForm

template <class Tag>
SymmetricForm<Tag>::SymmetricForm(const Mat3& a) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        throw Error(ErrorCode::InvalidInput, "non-finite conic coefficient");
      }
    }
  }
  Mat3 s = 0.5 * (a + a.transpose());
  const double n = s.norm();
  if (!(n > 1e-300)) throw Error(ErrorCode::ZeroVector, "zero conic matrix");
  const auto leading = [](const Mat3& m) {
    constexpr std::array<std::array<int, 2>, 6> pos{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
    std::array<int, 2> best = pos[0];
    double best_mod = -1.0;
    for (const auto& ij : pos) {
      if (std::abs(m(ij[0], ij[1])) > best_mod * (1.0 + 1e-12)) {
        best_mod = std::abs(m(ij[0], ij[1]));
        best = ij;
      }
    }
    return best;
  };
  // Already canonical input is kept bit for bit (serialization round trips).
  const auto lead = leading(s);
  const Complex lv = s(lead[0], lead[1]);
  if (!(std::abs(n - 1.0) < 1e-14 && lv.imag() == 0.0 && lv.real() > 0.0)) {
    s /= n;
    const auto ij = leading(s);
    const Complex c = s(ij[0], ij[1]);
    s *= std::conj(c) / std::abs(c);
    s(ij[0], ij[1]) = s(ij[1], ij[0]) = Complex(s(ij[0], ij[1]).real(), 0.0);
  }
  a_ = s;
  sigma_ = singular_values_of(a_);
}

template <class Tag>
SymmetricForm<Tag> SymmetricForm<Tag>::from_coefficients(const Vec6& c) {
  return SymmetricForm(from_upper_triangle(c));
}

template <class Tag>
Vec6 SymmetricForm<Tag>::coefficients() const {
  return upper_triangle(a_);
}

template <class Tag>
int SymmetricForm<Tag>::rank() const {
  return rank_from_sigma(sigma_);
}

template class SymmetricForm<PrimalTag>;
template class SymmetricForm<DualTag>;

Mat3 adjugate(const Mat3& a) {
  Mat3 r;
  r(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  r(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  r(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  r(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  r(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  r(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  r(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  r(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  r(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return r;
}

Vec6 upper_triangle(const Mat3& a) {
  Vec6 c;
  c << a(0, 0), a(0, 1), a(0, 2), a(1, 1), a(1, 2), a(2, 2);
  return c;
}

Mat3 from_upper_triangle(const Vec6& c) {
  Mat3 a;
  a << c[0], c[1], c[2],
       c[1], c[3], c[4],
       c[2], c[4], c[5];
  return a;
}

Mat3 symmetric_product(const Vec3& l, const Vec3& m) {
  return 0.5 * (l * m.transpose() + m * l.transpose());
}

double conic_distance(const Conic& a, const Conic& b) {
  return projective_distance(Eigen::VectorXcd(a.coefficients()), Eigen::VectorXcd(b.coefficients()));
}

double conic_distance(const DualConic& a, const DualConic& b) {
  return projective_distance(Eigen::VectorXcd(a.coefficients()), Eigen::VectorXcd(b.coefficients()));
}

// ---------------------------------------------------------------------------
// Evaluation

double evaluate(const Conic& c, const HomPoint& p) {
  const Vec3& v = p.vec();
  return std::abs(quad(c.matrix(), v, v)) / (v.squaredNorm() * c.spectral_norm());
}

double evaluate(const DualConic& c, const HomLine& l) {
  const Vec3& v = l.vec();
  return std::abs(quad(c.matrix(), v, v)) / (v.squaredNorm() * c.spectral_norm());
}

Verdict on_conic(const Conic& c, const HomPoint& p, const Tolerance& tol) {
  const double r = evaluate(c, p);
  return {r, tol.holds(r)};
}

int classify(const Conic& c) { return c.rank(); }
int classify(const DualConic& c) { return c.rank(); }

double tangency(const Conic& c, const HomLine& l) { return evaluate(dual(c), l); }

Verdict tangent(const Conic& c, const HomLine& l, const Tolerance& tol) {
  const double r = tangency(c, l);
  return {r, tol.holds(r)};
}

// ---------------------------------------------------------------------------
// Duality and polarity

DualConic dual(const Conic& c) {
  if (c.rank() < 2) throw Error(ErrorCode::RankOne, "adjugate of a double line vanishes");
  return DualConic(adjugate(c.matrix()));
}

Conic dual(const DualConic& c) {
  if (c.rank() < 2) throw Error(ErrorCode::RankOne, "adjugate of a double point vanishes");
  return Conic(adjugate(c.matrix()));
}

HomLine polar(const Conic& c, const HomPoint& p) { return HomLine(c.matrix() * unit(p.vec())); }

HomPoint pole(const Conic& c, const HomLine& l) {
  if (c.rank() < 3) throw Error(ErrorCode::SingularConic, "pole requires a smooth conic");
  return HomPoint(adjugate(c.matrix()) * unit(l.vec()));
}

HomPoint contact_point(const Conic& c, const HomLine& tangent_line) { return pole(c, tangent_line); }

HomLine tangent_at(const Conic& c, const HomPoint& p, const Tolerance& tol) {
  if (c.rank() < 3) throw Error(ErrorCode::SingularConic, "tangent requires a smooth conic");
  if (!on_conic(c, p, tol).holds) throw Error(ErrorCode::PointNotOnConic, "point is not on the conic");
  return polar(c, p);
}

LinePair tangents_from(const Conic& c, const HomPoint& p) {
  const Mat3& a = c.matrix();
  const Vec3 v = unit(p.vec());
  const Vec3 av = a * v;
  // Tangent-pair conic from p: (p^T A p) A - (A p)(A p)^T.
  const Mat3 d = quad(a, v, v) * a - av * av.transpose();
  if (d.norm() < 1e-14) throw Error(ErrorCode::InvalidInput, "point is a singular point of the conic");
  const auto [l, m] = split_symmetric(d);
  return {HomLine(l), HomLine(m)};
}

// ---------------------------------------------------------------------------
// Degenerate conics

Conic line_pair(const HomLine& l, const HomLine& m) {
  return Conic(symmetric_product(unit(l.vec()), unit(m.vec())));
}

DualConic point_pair(const HomPoint& p, const HomPoint& q) {
  return DualConic(symmetric_product(unit(p.vec()), unit(q.vec())));
}

LinePair split_degenerate(const Conic& c) {
  if (c.rank() == 3) throw Error(ErrorCode::NotDegenerate, "smooth conic cannot be split");
  const auto [l, m] = split_symmetric(c.matrix());
  return {HomLine(l), HomLine(m)};
}

PointPair split_degenerate(const DualConic& c) {
  if (c.rank() == 3) throw Error(ErrorCode::NotDegenerate, "smooth dual conic cannot be split");
  const auto [p, q] = split_symmetric(c.matrix());
  return {HomPoint(p), HomPoint(q)};
}

// ---------------------------------------------------------------------------
// Constructions

Conic conic_through_5(std::span<const HomPoint, 5> pts) {
  Eigen::Matrix<Complex, 5, 6> m;
  for (int i = 0; i < 5; ++i) {
    const Vec3 p = unit(pts[static_cast<std::size_t>(i)].vec());
    m.row(i) << p[0] * p[0], 2.0 * p[0] * p[1], 2.0 * p[0] * p[2], p[1] * p[1], 2.0 * p[1] * p[2], p[2] * p[2];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(m), Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s[4] / s[0] < kRankTol) throw Error(ErrorCode::DegeneratePointSet, "conic through the five points is not unique");
  const Vec6 c = svd.matrixV().col(5);
  return Conic::from_coefficients(c);
}

TangentConicSolutions conic_4pts_tangent_line(std::span<const HomPoint, 4> pts, const HomLine& l,
                                              const Tolerance& tol) {
  for (const HomPoint& p : pts) {
    if (incident(p, l, tol).holds) {
      throw Error(ErrorCode::TangentLineThroughBasePoint, "tangent line passes through a base point");
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      for (std::size_t k = j + 1; k < 4; ++k) {
        if (collinear(pts[i], pts[j], pts[k], tol).holds) {
          throw Error(ErrorCode::DegeneratePointSet, "three base points are collinear");
        }
      }
    }
  }
  const auto unit_join = [](const HomPoint& p, const HomPoint& q) { return canonical(join(p, q).vec()); };
  const Mat3 d1 = symmetric_product(unit_join(pts[0], pts[1]), unit_join(pts[2], pts[3]));
  const Mat3 d2 = symmetric_product(unit_join(pts[0], pts[2]), unit_join(pts[1], pts[3]));
  const Vec3 lv = unit(l.vec());
  const auto f = [&](const Mat3& m) { return quad(adjugate(m), lv, lv); };
  const Complex ca = f(d1);
  const Complex cc = f(d2);
  const Complex cb = f(d1 + d2) - ca - cc;
  const std::array<Complex, 3> form{ca, cb, cc};

  TangentConicSolutions out;
  for (const BinaryRoot& r : binary_form_roots(form)) {
    const Complex s = r.st[0];
    const Complex t = r.st[1];
    PencilSolution sol{Conic(s * d1 + t * d2), Complex(0.0), false};
    if (std::abs(s) < 1e-14) {
      sol.at_infinity = true;
    } else {
      sol.lambda = t / s;
    }
    if (sol.conic.rank() == 3) {
      out.smooth.push_back(sol);
    } else {
      out.degenerate.push_back(sol);
    }
  }
  return out;
}

Conic conic_double_contact(const HomLine& l1, const HomPoint& t1, const HomLine& l2, const HomPoint& t2,
                           const HomPoint& p, const Tolerance& tol) {
  if (!incident(t1, l1, tol).holds || !incident(t2, l2, tol).holds) {
    throw Error(ErrorCode::ContactPointOffLine, "contact point does not lie on its tangent line");
  }
  if (projectively_equal(t1, t2)) throw Error(ErrorCode::InconsistentThroughPoint, "contact points coincide");
  const Vec3 chord = unit(join(t1, t2).vec());
  const Vec3 pv = unit(p.vec());
  if (incident(p, HomLine(chord), tol).holds) {
    throw Error(ErrorCode::InconsistentThroughPoint, "through-point lies on the chord of contact");
  }
  if (incident(p, l1, tol).holds || incident(p, l2, tol).holds) {
    throw Error(ErrorCode::InconsistentThroughPoint, "through-point lies on a tangent line");
  }
  const Mat3 lines = symmetric_product(unit(l1.vec()), unit(l2.vec()));
  const Mat3 chord2 = chord * chord.transpose();
  const Complex mu = -quad(lines, pv, pv) / quad(chord2, pv, pv);
  return Conic(lines + mu * chord2);
}

Conic pencil_member(const Conic& c1, const Conic& c2, Complex lambda) {
  return Conic(c1.matrix() + lambda * c2.matrix());
}

namespace {

double dependence_residual(const std::array<Mat3, 3>& ms) {
  Eigen::Matrix<Complex, 3, 6> m;
  for (int i = 0; i < 3; ++i) {
    const Vec6 c = upper_triangle(ms[static_cast<std::size_t>(i)]);
    m.row(i) = (c / c.norm()).transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd{Eigen::MatrixXcd(m)};
  return svd.singularValues()[2];
}

}  // namespace

Verdict dependent(const Conic& a, const Conic& b, const Conic& c, const Tolerance& tol) {
  const double r = dependence_residual({a.matrix(), b.matrix(), c.matrix()});
  return {r, tol.holds(r)};
}

Verdict dependent(const DualConic& a, const DualConic& b, const DualConic& c, const Tolerance& tol) {
  const double r = dependence_residual({a.matrix(), b.matrix(), c.matrix()});
  return {r, tol.holds(r)};
}

Verdict codependent(const Conic& a, const Conic& b, const Conic& c, const Tolerance& tol) {
  return dependent(dual(a), dual(b), dual(c), tol);
}

LineIntersection intersect_conic_line(const Conic& c, const HomLine& l) {
  const Mat3& a = c.matrix();
  const auto [u, v] = span_of_line(canonical(l.vec()));
  const std::array<Complex, 3> form{quad(a, u, u), 2.0 * quad(a, u, v), quad(a, v, v)};
  const double scale = std::max({std::abs(form[0]), std::abs(form[1]), std::abs(form[2])});
  if (scale < 1e-12) throw Error(ErrorCode::LineOnConic, "line is a component of the conic");
  const std::vector<BinaryRoot> roots = binary_form_roots(form);
  const auto point = [&](const Eigen::Vector2cd& st) { return HomPoint(st[0] * u + st[1] * v); };
  LineIntersection out{point(roots[0].st), point(roots[1].st), false, 0.0};
  out.separation = projective_distance(out.first, out.second);
  if (out.separation < kMultiplicityTol) {
    // The sum of the roots is exact even when each root is only
    // sqrt(machine-eps) accurate, so take the midpoint.
    Eigen::Vector2cd a0 = canonical(roots[0].st);
    Eigen::Vector2cd a1 = canonical(roots[1].st);
    const HomPoint mid = point(0.5 * (a0 + a1));
    out.first = mid;
    out.second = mid;
    out.tangent = true;
  }
  return out;
}

ConicIntersection intersect_conics(const Conic& a, const Conic& b) {
  if (conic_distance(a, b) < kProjectiveEqualityTol) throw Error(ErrorCode::SharedComponent, "conics coincide");
  const Mat3& a1 = a.matrix();
  const Mat3& a2 = b.matrix();
  // det(s A1 + t A2) = s^3 det A1 + s^2 t tr(adj(A1) A2) + s t^2 tr(A1 adj(A2)) + t^3 det A2
  const std::array<Complex, 4> cubic{a1.determinant(), (adjugate(a1) * a2).trace(), (a1 * adjugate(a2)).trace(),
                                     a2.determinant()};
  std::vector<Mat3> candidates;
  const std::vector<BinaryRoot> roots = binary_form_roots(cubic);
  if (roots.empty()) {
    candidates = {a1, a2};
  } else {
    for (const BinaryRoot& r : roots) candidates.push_back(r.st[0] * a1 + r.st[1] * a2);
  }
  // Prefer the best-conditioned line pair over near-double lines.
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Eigen::Vector3d s = singular_values_of(candidates[i]);
    const double score = s[1] / s[0];
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  const Conic degenerate(candidates[best]);
  const Conic& other = conic_distance(degenerate, a) >= conic_distance(degenerate, b) ? a : b;
  const auto [l, m] = split_symmetric(degenerate.matrix());
  LineIntersection il{HomPoint(1.0, 0.0, 0.0), HomPoint(1.0, 0.0, 0.0)};
  LineIntersection im = il;
  try {
    il = intersect_conic_line(other, HomLine(l));
    im = intersect_conic_line(other, HomLine(m));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::LineOnConic) throw Error(ErrorCode::SharedComponent, "conics share a line");
    throw;
  }
  ConicIntersection out{{il.first, il.second, im.first, im.second}, {0, 0, 0, 0}, degenerate};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (projective_distance(out.points[i], out.points[j]) < kMultiplicityTol) ++out.multiplicity[i];
    }
  }
  return out;
}

HomPoint point_on_conic(const Conic& c, const HomPoint& seed, double t) {
  const Mat3& a = c.matrix();
  const Vec3 s = unit(seed.vec());
  const Vec3 tl = canonical(Vec3(a * s));
  // u lies on the tangent at the seed, v does not; q(t) = u + t v sweeps the
  // pencil of lines through the seed.
  Vec3 u;
  Vec3 v;
  const double planar = std::norm(tl[0]) + std::norm(tl[1]);
  if (planar >= 1e-6) {
    u = Vec3(tl[1], -tl[0], 0.0);
    v = Vec3(std::conj(tl[0]), std::conj(tl[1]), 0.0);
  } else {
    u = Vec3(0.0, tl[2], -tl[1]);
    v = Vec3(0.0, std::conj(tl[1]), std::conj(tl[2]));
    if (u.norm() < 1e-6) {
      u = Vec3(tl[2], 0.0, -tl[0]);
      v = Vec3(std::conj(tl[0]), 0.0, std::conj(tl[2]));
    }
  }
  const Vec3 q = u + t * v;
  // Second intersection of s v q: (q^T A q) s - 2 (s^T A q) q.
  const Vec3 r = quad(a, q, q) * s - 2.0 * quad(a, s, q) * q;
  if (r.norm() < 1e-14) return HomPoint(s);
  return HomPoint(r);
}

HomPoint seed_point(const Conic& c) {
  std::vector<HomLine> probes;
  try {
    const HomPoint center = pole(c, HomLine(0.0, 0.0, 1.0));
    const Vec3 m = canonical(center.vec());
    if (std::abs(m[2]) > 1e-8) {
      const Vec3 mc = m / m[2];
      probes.emplace_back(0.0, 1.0, -mc[1]);
      probes.emplace_back(1.0, 0.0, -mc[0]);
      probes.emplace_back(1.0, 1.0, -mc[0] - mc[1]);
      probes.emplace_back(1.0, -1.0, -mc[0] + mc[1]);
    }
  } catch (const Error&) {
  }
  probes.emplace_back(0.0, 1.0, 0.0);
  probes.emplace_back(1.0, 0.0, 0.0);
  probes.emplace_back(0.0, 0.0, 1.0);
  probes.emplace_back(1.0, 1.0, 1.0);
  std::optional<HomPoint> best;
  double best_imag = 0.0;
  for (const HomLine& l : probes) {
    try {
      const LineIntersection x = intersect_conic_line(c, l);
      for (const HomPoint& p : {x.first, x.second}) {
        const double im = imaginary_part(p.vec());
        if (!best || im < best_imag) {
          best = p;
          best_imag = im;
        }
      }
      if (best_imag < 1e-12) break;
    } catch (const Error&) {
    }
  }
  if (!best) throw Error(ErrorCode::InvalidInput, "no probe line meets the conic");
  return *best;
}

Conic apply(const Transform& t, const Conic& c) {
  const Mat3& inv = t.inverse_matrix();
  return Conic(inv.transpose() * c.matrix() * inv);
}

DualConic apply(const Transform& t, const DualConic& c) {
  const Mat3& m = t.matrix();
  return DualConic(m * c.matrix() * m.transpose());
}

}  // namespace projcert
