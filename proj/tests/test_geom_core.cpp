#include <doctest.h>

#include "test_support.hpp"

using namespace projcert;
using namespace testing;

TEST_CASE("normalize: unit norm, largest coordinate positive real") {
  const Vec3 a = normalize(Vec3(2.0, 0.0, 0.0));
  CHECK(std::abs(a[0] - 1.0) < 1e-15);
  const Vec3 b = normalize(Vec3(0.0, Complex(0.0, 2.0), 0.0));
  CHECK(std::abs(b[1] - 1.0) < 1e-15);
  CHECK(std::abs(b[0]) == 0.0);
  const Vec3 c = normalize(Vec3(3.0, 4.0, 0.0));
  CHECK(std::abs(c[0] - 0.6) < 1e-15);
  CHECK(std::abs(c[1] - 0.8) < 1e-15);
}

TEST_CASE("normalize: zero vector is rejected") {
  CHECK(error_of([] { HomPoint p(0.0, 0.0, 0.0); }) == ErrorCode::ZeroVector);
}

TEST_CASE("join and meet") {
  CHECK(dist(join(HomPoint(1.0, 0.0, 0.0), HomPoint(0.0, 1.0, 0.0)), HomLine(0.0, 0.0, 1.0)) < 1e-15);
  CHECK(dist(join(HomPoint(1.0, 0.0, 1.0), HomPoint(0.0, 1.0, 1.0)), HomLine(-1.0, -1.0, 1.0)) < 1e-15);
  CHECK(dist(meet(HomLine(1.0, 0.0, 0.0), HomLine(0.0, 1.0, 0.0)), HomPoint(0.0, 0.0, 1.0)) < 1e-15);
  CHECK(dist(meet(HomLine(1.0, 0.0, -2.0), HomLine(0.0, 1.0, -1.0)), HomPoint(2.0, 1.0, 1.0)) < 1e-15);
  const HomPoint p(0.3, 0.1, 1.0);
  CHECK(error_of([&] { join(p, p); }) == ErrorCode::DegenerateJoin);
  const HomLine l(1.0, 2.0, 3.0);
  CHECK(error_of([&] { meet(l, HomLine(Vec3(2.0 * l.vec()))); }) == ErrorCode::DegenerateMeet);
}

TEST_CASE("join of complex points is bilinear") {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const HomPoint p(random_vec(rng, true));
    const HomPoint q(random_vec(rng, true));
    const HomLine l = join(p, q);
    CHECK(incident(p, l).residual < 1e-15);
    CHECK(incident(q, l).residual < 1e-15);
  }
}

TEST_CASE("incidence") {
  const Verdict on = incident(HomPoint(2.0, 1.0, 1.0), HomLine(1.0, 0.0, -2.0));
  CHECK(on.residual == 0.0);
  CHECK(on.holds);
  CHECK(incident(HomPoint(1.0, kI, 0.0), HomLine(0.0, 0.0, 1.0)).holds);
  const Verdict off = incident(HomPoint(1.0, 0.0, 0.0), HomLine(1.0, 0.0, 0.0));
  CHECK(std::abs(off.residual - 1.0) < 1e-15);
  CHECK_FALSE(off.holds);
}

TEST_CASE("collinear and concurrent") {
  CHECK(collinear(HomPoint(0.0, 0.0, 1.0), HomPoint(1.0, 0.0, 1.0), HomPoint(2.0, 0.0, 1.0)).holds);
  const Verdict v = collinear(HomPoint(1.0, 0.0, 0.0), HomPoint(0.0, 1.0, 0.0), HomPoint(0.0, 0.0, 1.0));
  CHECK(std::abs(v.residual - 1.0) < 1e-15);
  CHECK_FALSE(v.holds);
  CHECK(concurrent(HomLine(1.0, 0.0, -1.0), HomLine(0.0, 1.0, -1.0), HomLine(1.0, -1.0, 0.0)).holds);
}

TEST_CASE("transforms") {
  const HomPoint p(0.2, -0.7, 1.0);
  CHECK(dist(Transform::identity().apply(p), p) == 0.0);
  Mat3 d = Mat3::Identity();
  d(2, 2) = 2.0;
  CHECK(dist(Transform(d).apply(HomPoint(0.0, 0.0, 1.0)), HomPoint(0.0, 0.0, 1.0)) < 1e-15);
  CHECK(error_of([] { Transform t(Mat3::Zero()); }) == ErrorCode::SingularTransform);
}

TEST_CASE("property: transforms preserve incidence residuals") {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    Mat3 m = Mat3::Identity();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m(i, j) += 0.3 * Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    const Transform t(m);
    const HomPoint p(random_vec(rng, true));
    const HomPoint q(random_vec(rng, true));
    const HomLine l = join(p, q);
    CHECK(incident(t.apply(p), t.apply(l)).residual < 1e-12);
    CHECK(dist(t.inverse().apply(t.apply(p)), p) < 1e-12);
  }
}

TEST_CASE("property: join/meet duality") {
  Rng rng(3);
  for (int k = 0; k < 500; ++k) {
    const HomPoint p(random_vec(rng, k % 2 == 1));
    const HomPoint q(random_vec(rng, k % 2 == 1));
    const HomPoint r(random_vec(rng, k % 2 == 1));
    if (collinear(p, q, r).residual < 1e-3) continue;
    CHECK(dist(meet(join(p, q), join(p, r)), p) < 1e-12);
  }
}

TEST_CASE("property: predicates are scale invariant") {
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const Vec3 a = random_vec(rng, true);
    const Vec3 b = random_vec(rng, true);
    const Vec3 c = random_vec(rng, true);
    const Complex s(rng.uniform(0.1, 10.0), rng.uniform(-10.0, 10.0));
    const double r0 = collinear(HomPoint(a), HomPoint(b), HomPoint(c)).residual;
    const double r1 = collinear(HomPoint(Vec3(s * a)), HomPoint(b), HomPoint(Vec3(1e-5 * c))).residual;
    CHECK(std::abs(r0 - r1) < 1e-12);
    const double i0 = incident(HomPoint(a), HomLine(b)).residual;
    const double i1 = incident(HomPoint(Vec3(s * a)), HomLine(Vec3(1e3 * b))).residual;
    CHECK(std::abs(i0 - i1) < 1e-12);
  }
}

TEST_CASE("projective distance is phase blind") {
  const Vec3 v(1.0, Complex(0.5, 2.0), -3.0);
  CHECK(projective_distance(HomPoint(v), HomPoint(Vec3(Complex(0.0, -7.0) * v))) < 1e-15);
  CHECK(projective_distance(HomPoint(1.0, 0.0, 0.0), HomPoint(0.0, 1.0, 0.0)) > 0.5);
}

TEST_CASE("tolerance validation") {
  CHECK(error_of([] { Tolerance{0.0, 1e4}.validate(); }) == ErrorCode::InvalidInput);
  CHECK(error_of([] { Tolerance{1e-9, 10.0}.validate(); }) == ErrorCode::InvalidInput);
  Tolerance{1e-9, 1e4}.validate();
}

TEST_CASE("binary form roots handle roots at infinity") {
  // s*t = 0: roots (1,0) and (0,1)
  const std::array<Complex, 3> st{0.0, 1.0, 0.0};
  const auto roots = binary_form_roots(st);
  REQUIRE(roots.size() == 2);
  CHECK(root_separation(roots[0], roots[1]) > 0.99);
  // s^2 - 4 t^2
  const std::array<Complex, 3> q{1.0, 0.0, -4.0};
  for (const BinaryRoot& r : binary_form_roots(q)) {
    const Complex s = r.st[0];
    const Complex t = r.st[1];
    CHECK(std::abs(s * s - 4.0 * t * t) < 1e-14);
  }
}
