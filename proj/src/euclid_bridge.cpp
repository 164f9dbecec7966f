#include "projcert/euclid_bridge.hpp"

#include <algorithm>
#include <cmath>

namespace projcert {

namespace {

Mat3 absolute_dual_matrix() {
  Mat3 d = Mat3::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = 1.0;
  return d;
}

}  // namespace

DualConic AbsolutePair::dual_degenerate() const {
  const Vec3 i = I.vec();
  const Vec3 j = J.vec();
  return DualConic(0.5 * (i * j.transpose() + j * i.transpose()));
}

ConfocalFamily::ConfocalFamily(const Conic& base) : base_(base) {
  if (base.rank() < 3) throw Error(ErrorCode::SingularConic, "confocal family needs a smooth base conic");
  dual_base_ = adjugate(base.matrix());
  const Complex b22 = dual_base_(2, 2);
  if (std::abs(b22) > 1e-8 * dual_base_.norm()) {
    dual_base_ /= -b22;
  } else {
    dual_base_ /= dual_base_.norm();
  }
}

Mat3 ConfocalFamily::dual_member(Complex lambda) const { return dual_base_ + lambda * absolute_dual_matrix(); }

Conic ConfocalFamily::member(Complex lambda) const { return Conic(adjugate(dual_member(lambda))); }

bool is_circle(const Conic& c, const Tolerance& tol) {
  return tol.holds(evaluate(c, kAbsolute.I)) && tol.holds(evaluate(c, kAbsolute.J));
}

HomPoint circle_center(const Conic& c, const Tolerance& tol) {
  if (c.rank() < 3 || !is_circle(c, tol)) throw Error(ErrorCode::NotACircle, "conic is not a smooth circle");
  return meet(tangent_at(c, kAbsolute.I, tol), tangent_at(c, kAbsolute.J, tol));
}

Conic circle_from_center_radius2(const HomPoint& m, Complex radius_squared) {
  const Vec3 v = canonical(m.vec());
  if (std::abs(v[2]) < 1e-12) throw Error(ErrorCode::InvalidInput, "circle center at infinity");
  const Complex x = v[0] / v[2];
  const Complex y = v[1] / v[2];
  Mat3 a;
  a << 1.0, 0.0, -x,
       0.0, 1.0, -y,
       -x, -y, x * x + y * y - radius_squared;
  return Conic(a);
}

Conic circle_from_center_tangent(const HomPoint& m, const HomLine& l, const Tolerance& tol) {
  if (incident(m, l, tol).holds) throw Error(ErrorCode::CenterOnLine, "center lies on the tangent line");
  const Vec3 v = canonical(m.vec());
  if (std::abs(v[2]) < 1e-12) throw Error(ErrorCode::InvalidInput, "circle center at infinity");
  const Vec3 mc = v / v[2];
  const Vec3 lv = canonical(l.vec());
  const Complex n2 = lv[0] * lv[0] + lv[1] * lv[1];
  if (std::abs(n2) < 1e-12) throw Error(ErrorCode::InvalidInput, "isotropic line has no Euclidean distance");
  const Complex d = dot(lv, mc);
  return circle_from_center_radius2(HomPoint(mc), d * d / n2);
}

FociResult foci(const Conic& c, const Tolerance& tol) {
  if (c.rank() < 3) throw Error(ErrorCode::SingularConic, "foci need a smooth conic");
  if (is_circle(c, tol)) throw Error(ErrorCode::IsCircle, "the foci of a circle degenerate to its center");
  const LinePair from_i = tangents_from(c, kAbsolute.I);
  const LinePair from_j = tangents_from(c, kAbsolute.J);
  const PointPair a{meet(from_i.first, from_j.first), meet(from_i.second, from_j.second)};
  const PointPair b{meet(from_i.first, from_j.second), meet(from_i.second, from_j.first)};
  const auto imag = [](const PointPair& p) {
    return std::max(imaginary_part(p.first.vec()), imaginary_part(p.second.vec()));
  };
  const double ia = imag(a);
  const double ib = imag(b);
  FociResult out{ia <= ib ? a : b, ia <= ib ? b : a, std::min(ia, ib)};
  out.real_pair = {normalize(out.real_pair.first), normalize(out.real_pair.second)};
  out.complex_pair = {normalize(out.complex_pair.first), normalize(out.complex_pair.second)};
  return out;
}

ConfocalSolutions confocal_through(const ConfocalFamily& family, const HomPoint& p) {
  const Vec3 v = p.vec() / p.vec().norm();
  const auto f = [&](const Mat3& m) -> Complex { return v.transpose() * adjugate(m) * v; };
  const Mat3& b0 = family.dual_base();
  const Mat3 d = absolute_dual_matrix();
  const Complex css = f(b0);
  const Complex ctt = f(d);
  const Complex cst = f(b0 + d) - css - ctt;
  const std::array<Complex, 3> form{css, cst, ctt};
  const std::vector<BinaryRoot> roots = binary_form_roots(form);
  if (roots.size() == 2 && root_separation(roots[0], roots[1]) < kMultiplicityTol) {
    throw Error(ErrorCode::FocusInput, "point is a focus of the family (double root)");
  }
  ConfocalSolutions out;
  for (const BinaryRoot& r : roots) {
    const Complex s = r.st[0];
    const Complex t = r.st[1];
    if (std::abs(s) < 1e-14) {
      out.degenerate.push_back({Conic(adjugate(d) + Mat3::Zero()), Complex(INFINITY, 0.0)});
      continue;
    }
    const Complex lambda = t / s;
    const Mat3 dm = family.dual_member(lambda);
    const Mat3 primal = adjugate(dm);
    if (primal.norm() < 1e-14 * dm.norm() * dm.norm()) continue;
    ConfocalMember m{Conic(primal), lambda};
    if (m.conic.rank() == 3) {
      out.smooth.push_back(m);
    } else {
      out.degenerate.push_back(m);
    }
  }
  out.raw = out.smooth;
  std::stable_sort(out.smooth.begin(), out.smooth.end(), [](const ConfocalMember& a, const ConfocalMember& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
    return a.lambda.imag() > b.lambda.imag();
  });
  return out;
}

Verdict confocal(const Conic& base, const Conic& member, const Tolerance& tol) {
  return dependent(dual(base), dual(member), kAbsolute.dual_degenerate(), tol);
}

LinePair angle_bisectors(const HomLine& a, const HomLine& b) {
  const Vec3 av = canonical(a.vec());
  const Vec3 bv = canonical(b.vec());
  const double cross = std::abs(av[0] * bv[1] - av[1] * bv[0]);
  if (cross < 1e-12) throw Error(ErrorCode::ParallelLines, "lines are parallel");
  const Complex na = std::sqrt(av[0] * av[0] + av[1] * av[1]);
  const Complex nb = std::sqrt(bv[0] * bv[0] + bv[1] * bv[1]);
  if (std::abs(na) < 1e-12 || std::abs(nb) < 1e-12) {
    throw Error(ErrorCode::InvalidInput, "isotropic line has no bisector");
  }
  const Vec3 an = av / na;
  const Vec3 bn = bv / nb;
  return {HomLine(an - bn), HomLine(an + bn)};
}

namespace {

struct PatternSolve {
  double residual;
  Eigen::Vector4cd null;
};

std::vector<PatternSolve> solve_sign_patterns(std::span<const HomLine, 4> lines) {
  std::array<Vec3, 4> n;
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec3 v = canonical(lines[i].vec());
    const Complex len = std::sqrt(v[0] * v[0] + v[1] * v[1]);
    if (std::abs(len) < 1e-12) throw Error(ErrorCode::InvalidInput, "isotropic line in circle condition");
    n[i] = v / len;
  }
  std::vector<PatternSolve> out;
  for (int mask = 0; mask < 8; ++mask) {
    Eigen::Matrix4cd m;
    for (int i = 0; i < 4; ++i) {
      const double sign = (i == 0 || ((mask >> (i - 1)) & 1) == 0) ? 1.0 : -1.0;
      const Vec3& l = n[static_cast<std::size_t>(i)];
      Eigen::Vector4cd row(l[0], l[1], -sign, l[2]);
      m.row(i) = (row / row.norm()).transpose();
    }
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    out.push_back({s[3] / s[0], svd.matrixV().col(3)});
  }
  return out;
}

}  // namespace

std::vector<TangentCircle> circles_tangent_to_lines(std::span<const HomLine, 4> lines, const Tolerance& tol) {
  std::vector<TangentCircle> out;
  for (const PatternSolve& ps : solve_sign_patterns(lines)) {
    if (!tol.holds(ps.residual)) continue;
    const Eigen::Vector4cd& z = ps.null;
    if (std::abs(z[3]) < 1e-10 * z.norm()) continue;
    const Complex r = z[2] / z[3];
    if (std::abs(r) < 1e-10) continue;
    const HomPoint center(z[0] / z[3], z[1] / z[3], 1.0);
    out.push_back({circle_from_center_radius2(center, r * r), center, r * r, ps.residual});
  }
  return out;
}

double circle_condition_residual(std::span<const HomLine, 4> lines) {
  double best = INFINITY;
  for (const PatternSolve& ps : solve_sign_patterns(lines)) best = std::min(best, ps.residual);
  return best;
}

}  // namespace projcert
