#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "projcert/random.hpp"
#include "projcert/theorems.hpp"

namespace projcert {

namespace {

double min_pairwise_distance(std::span<const HomPoint> pts, std::size_t skip_stride = 0) {
  double best = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (skip_stride > 0 && i < skip_stride && j == i + skip_stride) continue;
      best = std::min(best, projective_distance(pts[i], pts[j]));
    }
  }
  return best;
}

std::string lambda_label(std::size_t step, double lambda) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "step %zu (lambda=%g) ", step, lambda);
  return buf;
}

Vec3 unit_line(const HomLine& l) { return canonical(l.vec()); }

}  // namespace

ScenarioReport cb_cubic(const PlaneCurve& A, const PlaneCurve& B, std::span<const HomPoint> nine,
                        const CbCubicOptions& opts, const Tolerance& tol) {
  if (A.degree() != 3 || B.degree() != 3) throw Error(ErrorCode::InvalidInput, "cb_cubic needs two cubics");
  if (nine.size() != 9) throw Error(ErrorCode::FewerThanNineIntersections, "need nine intersection points");
  if (min_pairwise_distance(nine) < kMultiplicityTol) {
    throw Error(ErrorCode::FewerThanNineIntersections, "intersection points are not distinct");
  }
  if (opts.fitted < 1 || opts.fitted > 8 || opts.members < 1) throw Error(ErrorCode::InvalidInput, "bad options");
  ScenarioReport r("cb_cubic", tol);
  double on_a = 0.0;
  double on_b = 0.0;
  for (const HomPoint& p : nine) {
    on_a = std::max(on_a, A.evaluate(p));
    on_b = std::max(on_b, B.evaluate(p));
  }
  r.holds("nine points on A", on_a);
  r.holds("nine points on B", on_b);

  const auto fitted = static_cast<std::size_t>(opts.fitted);
  const Eigen::MatrixXcd basis = curves_through(3, nine.first(fitted));
  r.observe("fitted family dimension", static_cast<double>(basis.cols()));
  Rng rng(opts.seed);
  for (int m = 0; m < opts.members; ++m) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(10);
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      c += basis.col(j) * Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    const PlaneCurve third(3, c);
    const std::string label = "member " + std::to_string(m) + " through the ninth point";
    if (opts.fitted == 8) {
      r.holds(label, third.evaluate(nine[8]));
    } else {
      r.fails(label, third.evaluate(nine[8]));
    }
  }
  for (std::size_t i = 0; i < nine.size(); ++i) r.witness("p" + std::to_string(i + 1), nine[i]);
  return r;
}

ScenarioReport cb_cubic(std::span<const HomLine, 3> a, std::span<const HomLine, 3> b, const CbCubicOptions& opts,
                        const Tolerance& tol) {
  const PlaneCurve A = PlaneCurve::from_line(a[0]) * PlaneCurve::from_line(a[1]) * PlaneCurve::from_line(a[2]);
  const PlaneCurve B = PlaneCurve::from_line(b[0]) * PlaneCurve::from_line(b[1]) * PlaneCurve::from_line(b[2]);
  std::vector<HomPoint> nine;
  try {
    for (const HomLine& l : a) {
      for (const HomLine& m : b) nine.push_back(meet(l, m));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateMeet) throw;
    throw Error(ErrorCode::FewerThanNineIntersections, "the cubics share a line");
  }
  ScenarioReport r = cb_cubic(A, B, nine, opts, tol);
  for (std::size_t i = 0; i < 3; ++i) {
    r.witness("a" + std::to_string(i + 1), a[i]);
    r.witness("b" + std::to_string(i + 1), b[i]);
  }
  return r;
}

namespace {

/// `merging` tolerates coincidence of the paired blue-line points b1^ri, b2^ri.
ScenarioReport quartic_special(const CbQuarticScenario& s, const Tolerance& tol, bool merging) {
  if (s.blue_conic.rank() < 3) throw Error(ErrorCode::DegenerateBlueConic, "blue conic is degenerate");
  std::array<std::vector<HomPoint>, 2> bl;
  std::vector<HomPoint> all;
  try {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t i = 0; i < 4; ++i) {
        bl[j].push_back(meet(s.blue[j], s.red[i]));
        all.push_back(bl[j][i]);
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateMeet) throw;
    throw Error(ErrorCode::CoincidentIntersections, "a blue line coincides with a red line");
  }
  std::vector<LineIntersection> cp;
  for (const HomLine& l : s.red) {
    cp.push_back(intersect_conic_line(s.blue_conic, l));
    if (cp.back().tangent) throw Error(ErrorCode::CoincidentIntersections, "red line tangent to the blue conic");
    all.push_back(cp.back().first);
    all.push_back(cp.back().second);
  }
  if (min_pairwise_distance(all, merging ? 4 : 0) < kMultiplicityTol) {
    throw Error(ErrorCode::CoincidentIntersections, "the sixteen intersections are not distinct");
  }

  ScenarioReport r("cb_quartic_special", tol);
  const std::array<HomPoint, 8> g1_pts{cp[2].first, cp[2].second, cp[3].first, cp[3].second,
                                       bl[0][0],    bl[0][1],     bl[1][0],    bl[1][1]};
  const Eigen::VectorXcd g1c = least_squares_curve(2, g1_pts);
  const Conic g1 = Conic::from_coefficients(Vec6(g1c[0], g1c[1] / 2.0, g1c[2] / 2.0, g1c[3], g1c[4] / 2.0, g1c[5]));
  double g1_res = 0.0;
  for (const HomPoint& p : g1_pts) g1_res = std::max(g1_res, evaluate(g1, p));
  r.holds("G1 through its eight points", g1_res);

  // Member of the pencil through B1 ^ R2 that passes through cp[0].first;
  // stays well conditioned as the blue lines merge.
  const Conic b1 = line_pair(s.blue[0], s.blue[1]);
  const Conic r2 = line_pair(s.red[2], s.red[3]);
  const Vec3 c0 = cp[0].first.vec() / cp[0].first.vec().norm();
  const Complex fb = c0.transpose() * b1.matrix() * c0;
  const Complex fr = c0.transpose() * r2.matrix() * c0;
  const Conic g2(fb * r2.matrix() - fr * b1.matrix());
  double g2_res = 0.0;
  for (const HomPoint& p : {bl[0][2], bl[0][3], bl[1][2], bl[1][3], cp[0].first}) g2_res = std::max(g2_res, evaluate(g2, p));
  r.holds("G2 through its five points", g2_res);
  const std::array<HomPoint, 3> circled{cp[0].second, cp[1].first, cp[1].second};
  for (std::size_t k = 0; k < 3; ++k) r.holds("circled " + std::to_string(k) + " on G2", evaluate(g2, circled[k]));
  r.fails("circled points collinear", collinear(circled[0], circled[1], circled[2]).residual);

  r.witness("B1", b1);
  r.witness("B2", s.blue_conic);
  r.witness("R1", line_pair(s.red[0], s.red[1]));
  r.witness("R2", r2);
  r.witness("G1", g1);
  r.witness("G2", g2);
  for (std::size_t k = 0; k < 3; ++k) r.witness("circled" + std::to_string(k), circled[k]);
  for (std::size_t i = 0; i < 4; ++i) r.witness("r" + std::to_string(i + 1), s.red[i]);
  r.witness("b1", s.blue[0]);
  r.witness("b2", s.blue[1]);
  return r;
}

}  // namespace

ScenarioReport cb_quartic_special(const CbQuarticScenario& s, const Tolerance& tol) {
  return quartic_special(s, tol, false);
}

CbQuarticScenario instantiate(const LimitScenario& s, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidInput, "instantiate needs lambda > 0");
  const HomLine b1(unit_line(s.b2) + lambda * unit_line(s.b1));
  const LineIntersection on2 = intersect_conic_line(s.G1, s.b2);
  const LineIntersection on1 = intersect_conic_line(s.G1, b1);
  const HomPoint& q2 = on2.first;
  const HomPoint& q4 = on2.second;
  const bool straight = projective_distance(on1.first, q2) <= projective_distance(on1.second, q2);
  const HomPoint& q1 = straight ? on1.first : on1.second;
  const HomPoint& q3 = straight ? on1.second : on1.first;
  return {{join(q1, q2), join(q3, q4), s.r3, s.r4}, {b1, s.b2}, s.blue_conic};
}

ScenarioReport limit_scan(const LimitScenario& s, std::span<const double> schedule, const Tolerance& base) {
  const double eps = std::max(base.eps, kLimitScanEps);
  // Same Fails threshold sep * eps as the caller's tolerance.
  const Tolerance tol{eps, std::max(1e3, base.sep * base.eps / eps)};
  ScenarioReport r("limit_scan", tol);
  for (std::size_t step = 0; step < schedule.size(); ++step) {
    const double lambda = schedule[step];
    const std::string prefix = lambda_label(step, lambda);
    if (lambda > 0.0) {
      const CbQuarticScenario inst = instantiate(s, lambda);
      const ScenarioReport cb = quartic_special(inst, tol, true);
      r.merge(cb, prefix);
      for (std::size_t i = 0; i < 4; ++i) {
        const double gap = projective_distance(meet(inst.blue[0], inst.red[i]), meet(inst.blue[1], inst.red[i]));
        r.observe(prefix + "gap on r" + std::to_string(i + 1), gap);
        if (gap < kMultiplicityTol) r.note(prefix + "tangency on r" + std::to_string(i + 1));
      }
      continue;
    }
    const LineIntersection on2 = intersect_conic_line(s.G1, s.b2);
    const HomLine r1 = tangent_at(s.G1, on2.first, tol);
    const HomLine r2 = tangent_at(s.G1, on2.second, tol);
    const HomPoint p = meet(s.b2, s.r3);
    const HomPoint q = meet(s.b2, s.r4);
    const LineIntersection c1 = intersect_conic_line(s.blue_conic, r1);
    const LineIntersection c2 = intersect_conic_line(s.blue_conic, r2);
    const Conic g2 = conic_double_contact(s.r3, p, s.r4, q, c1.first, tol);
    const std::array<HomPoint, 3> circled{c1.second, c2.first, c2.second};
    for (std::size_t k = 0; k < 3; ++k) {
      r.holds(prefix + "circled " + std::to_string(k) + " on G2", evaluate(g2, circled[k]));
    }
    for (std::size_t i = 0; i < 4; ++i) r.observe(prefix + "gap on r" + std::to_string(i + 1), 0.0);
    r.note(prefix + "blue lines coincide; contacts on r1..r4");
    const ScenarioReport primal = cqt_primal(s.blue_conic, g2, p, q, Pairing{r1, r2}, tol);
    r.merge(primal, prefix + "primal: ");
    r.holds(prefix + "primal witness equals G1", conic_distance(primal.get<Conic>("C"), s.G1));
    r.witness(prefix + "G2", g2);
    r.witness(prefix + "r1", r1);
    r.witness(prefix + "r2", r2);
  }
  return r;
}

ChaslesConics chasles_conics(const ScenarioReport& cb4) {
  return {cb4.get<Conic>("B1"), cb4.get<Conic>("B2"), cb4.get<Conic>("R1"),
          cb4.get<Conic>("R2"), cb4.get<Conic>("G1"), cb4.get<Conic>("G2")};
}

Vec6 p5_point(const Conic& c) {
  const Vec6 v = upper_triangle(c.matrix());
  return v / v.norm();
}

ScenarioReport chasles_p5(const ChaslesConics& c, const Tolerance& tol) {
  const std::array<Vec6, 6> v{p5_point(c.B1), p5_point(c.B2), p5_point(c.R1),
                              p5_point(c.R2), p5_point(c.G1), p5_point(c.G2)};
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      if (projective_distance(Eigen::VectorXcd(v[i]), Eigen::VectorXcd(v[j])) < 1e-8) {
        throw Error(ErrorCode::RankDeficientInput, "two of the six conics coincide");
      }
    }
  }
  enum { B1, B2, R1, R2, G1, G2 };
  const auto sigma = [&](std::initializer_list<int> idx) {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(idx.size()), 6);
    Eigen::Index row = 0;
    for (int i : idx) m.row(row++) = v[static_cast<std::size_t>(i)].transpose();
    Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
    return Eigen::VectorXd(s / s[0]);
  };
  ScenarioReport r("chasles_p5", tol);
  const Eigen::VectorXd s1 = sigma({B2, R1, G2});
  r.holds("B2,R1,G2 collinear", s1[2]);
  r.fails("B2,R1,G2 rank > 1", s1[1]);
  const Eigen::VectorXd s2 = sigma({B2, R2, G1});
  r.holds("B2,R2,G1 collinear", s2[2]);
  r.fails("B2,R2,G1 rank > 1", s2[1]);
  const Eigen::VectorXd s3 = sigma({B2, R1, G2, R2, G1});
  r.holds("five conics span a plane", s3[3]);
  r.fails("five conics rank > 2", s3[2]);

  Eigen::Matrix<Complex, 6, 4> m;
  m.col(0) = v[R2];
  m.col(1) = v[G2];
  m.col(2) = -v[R1];
  m.col(3) = -v[G1];
  Eigen::JacobiSVD<Eigen::Matrix<Complex, 6, 4>> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  r.holds("span(R2,G2) meets span(R1,G1)", sv[3] / sv[0]);
  const Eigen::Vector4cd z = svd.matrixV().col(3);
  const Vec6 meet_point = z[0] * v[R2] + z[1] * v[G2];
  r.holds("meet equals B1", projective_distance(Eigen::VectorXcd(meet_point), Eigen::VectorXcd(v[B1])));
  return r;
}

}  // namespace projcert
