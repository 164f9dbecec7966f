#include "projcert/plane_curve.hpp"

#include <cmath>

namespace projcert {

PlaneCurve::PlaneCurve(int degree, Eigen::VectorXcd coeffs) : degree_(degree), c_(std::move(coeffs)) {
  if (degree < 1 || degree > 4) throw Error(ErrorCode::InvalidInput, "curve degree must lie in 1..4");
  if (static_cast<std::size_t>(c_.size()) != size(degree)) {
    throw Error(ErrorCode::InvalidInput, "coefficient count does not match degree");
  }
  if (!(c_.norm() > 0.0)) throw Error(ErrorCode::ZeroVector, "zero curve");
}

std::vector<std::array<int, 3>> PlaneCurve::exponents(int degree) {
  std::vector<std::array<int, 3>> out;
  for (int i = degree; i >= 0; --i) {
    for (int j = degree - i; j >= 0; --j) out.push_back({i, j, degree - i - j});
  }
  return out;
}

Eigen::VectorXcd PlaneCurve::monomials(int degree, const Vec3& p) {
  const Vec3 u = p / p.norm();
  const auto ex = exponents(degree);
  Eigen::VectorXcd m(static_cast<Eigen::Index>(ex.size()));
  for (std::size_t n = 0; n < ex.size(); ++n) {
    Complex v = 1.0;
    for (int axis = 0; axis < 3; ++axis) {
      for (int e = 0; e < ex[n][static_cast<std::size_t>(axis)]; ++e) v *= u[axis];
    }
    m[static_cast<Eigen::Index>(n)] = v;
  }
  return m;
}

PlaneCurve PlaneCurve::from_line(const HomLine& l) {
  Eigen::VectorXcd c(3);
  c << l[0], l[1], l[2];
  return PlaneCurve(1, c);
}

PlaneCurve PlaneCurve::from_conic(const Conic& conic) {
  const Mat3& a = conic.matrix();
  Eigen::VectorXcd c(6);
  c << a(0, 0), 2.0 * a(0, 1), 2.0 * a(0, 2), a(1, 1), 2.0 * a(1, 2), a(2, 2);
  return PlaneCurve(2, c);
}

double PlaneCurve::evaluate(const HomPoint& p) const {
  const Eigen::VectorXcd m = monomials(degree_, p.vec());
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) s += c_[i] * m[i];
  return std::abs(s) / (c_.norm() * m.norm());
}

PlaneCurve operator*(const PlaneCurve& a, const PlaneCurve& b) {
  const int d = a.degree_ + b.degree_;
  const auto ea = PlaneCurve::exponents(a.degree_);
  const auto eb = PlaneCurve::exponents(b.degree_);
  const auto ed = PlaneCurve::exponents(d);
  const auto index_of = [&](int i, int j) {
    // Position of (i, j, d-i-j) in descending lex order.
    std::size_t before = 0;
    for (int ii = d; ii > i; --ii) before += static_cast<std::size_t>(d - ii + 1);
    return before + static_cast<std::size_t>(d - i - j);
  };
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ed.size()));
  for (std::size_t m = 0; m < ea.size(); ++m) {
    for (std::size_t n = 0; n < eb.size(); ++n) {
      const std::size_t k = index_of(ea[m][0] + eb[n][0], ea[m][1] + eb[n][1]);
      c[static_cast<Eigen::Index>(k)] += a.c_[static_cast<Eigen::Index>(m)] * b.c_[static_cast<Eigen::Index>(n)];
    }
  }
  return PlaneCurve(d, c);
}

Eigen::MatrixXcd curves_through(int degree, std::span<const HomPoint> pts, double rel_tol) {
  const auto cols = static_cast<Eigen::Index>(PlaneCurve::size(degree));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(std::max<Eigen::Index>(static_cast<Eigen::Index>(pts.size()), cols), cols);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = PlaneCurve::monomials(degree, pts[i].vec()).transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > rel_tol * s[0]) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

Eigen::VectorXcd least_squares_curve(int degree, std::span<const HomPoint> pts) {
  const auto cols = static_cast<Eigen::Index>(PlaneCurve::size(degree));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(std::max<Eigen::Index>(static_cast<Eigen::Index>(pts.size()), cols), cols);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = PlaneCurve::monomials(degree, pts[i].vec()).transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(cols - 1);
}

}  // namespace projcert
