#include <doctest.h>

#include "test_support.hpp"

using namespace projcert;
using namespace testing;

TEST_CASE("absolute pair") {
  CHECK(dist(join(kAbsolute.I, kAbsolute.J), kAbsolute.l_inf) < 1e-15);
  CHECK(dist(HomPoint(Vec3(kAbsolute.I.vec().conjugate())), kAbsolute.J) < 1e-15);
}

TEST_CASE("is_circle") {
  CHECK(is_circle(circle(2.0, 3.0, 5.0)));
  CHECK_FALSE(is_circle(central(4.0, 1.0)));
  const Conic mixed = pencil_member(circle(0.0, 0.0, 1.0), circle(3.0, -1.0, 2.0), Complex(0.7, 0.2));
  CHECK(is_circle(mixed));
}

TEST_CASE("circle_center") {
  CHECK(dist(circle_center(circle(0.0, 0.0, 1.0)), HomPoint(0.0, 0.0, 1.0)) < 1e-15);
  CHECK(dist(circle_center(circle(2.0, 3.0, 7.0)), HomPoint(2.0, 3.0, 1.0)) < 1e-15);
  CHECK(error_of([] { circle_center(central(4.0, 1.0)); }) == ErrorCode::NotACircle);
  Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    const Conic c = circle(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0), rng.uniform(0.1, 10.0));
    const HomPoint m = circle_center(c);
    CHECK(dist(m, pole(c, kAbsolute.l_inf)) < 1e-10);
    CHECK(imaginary_part(m.vec()) < 1e-9);
  }
}

TEST_CASE("circle_from_center_tangent") {
  CHECK(dist(circle_from_center_tangent(HomPoint(0.0, 0.0, 1.0), HomLine(1.0, 0.0, -1.0)), circle(0.0, 0.0, 1.0)) <
        1e-15);
  const double s3 = std::sqrt(3.0);
  const Conic c = circle_from_center_tangent(HomPoint(3.0 + s3, -s3, 1.0), HomLine(1.0, 0.0, -2.0));
  CHECK(dist(c, circle(3.0 + s3, -s3, (1.0 + s3) * (1.0 + s3))) < 1e-14);
  CHECK(intersect_conic_line(c, HomLine(1.0, 0.0, -2.0)).tangent);
  CHECK(error_of([] { circle_from_center_tangent(HomPoint(1.0, 0.0, 1.0), HomLine(1.0, 0.0, -1.0)); }) ==
        ErrorCode::CenterOnLine);
}

TEST_CASE("foci") {
  const double s3 = std::sqrt(3.0);
  for (const Conic& c : {central(4.0, 1.0), central(2.0, -1.0)}) {
    const FociResult f = foci(c);
    const HomPoint f1(s3, 0.0, 1.0);
    const HomPoint f2(-s3, 0.0, 1.0);
    CHECK(std::min(dist(f.real_pair.first, f1), dist(f.real_pair.first, f2)) < 1e-12);
    CHECK(std::min(dist(f.real_pair.second, f1), dist(f.real_pair.second, f2)) < 1e-12);
    CHECK(f.real_pair_imag < 1e-8);
    CHECK(imaginary_part(f.complex_pair.first.vec()) > 0.1);
    CHECK(dist(HomPoint(Vec3(f.complex_pair.first.vec().conjugate())), f.complex_pair.second) < 1e-12);
  }
  CHECK(error_of([] { foci(circle(0.0, 0.0, 1.0)); }) == ErrorCode::IsCircle);
}

TEST_CASE("confocal_through") {
  const ConfocalFamily fam(central(4.0, 1.0));
  const ConfocalSolutions s = confocal_through(fam, HomPoint(2.0, 1.0, 1.0));
  REQUIRE(s.smooth.size() == 2);
  CHECK(dist(s.smooth[0].conic, central(6.0, 3.0)) < 1e-14);
  CHECK(dist(s.smooth[1].conic, central(2.0, -1.0)) < 1e-14);
  CHECK(std::abs(s.smooth[0].lambda - 2.0) < 1e-13);
  CHECK(std::abs(s.smooth[1].lambda + 2.0) < 1e-13);

  const ConfocalSolutions axis = confocal_through(fam, HomPoint(3.0, 0.0, 1.0));
  REQUIRE(axis.smooth.size() == 1);
  CHECK(dist(axis.smooth[0].conic, central(9.0, 6.0)) < 1e-14);
  REQUIRE(axis.degenerate.size() == 1);
  CHECK(std::abs(axis.degenerate[0].lambda + 1.0) < 1e-13);

  const ConfocalSolutions on = confocal_through(fam, HomPoint(0.0, 1.0, 1.0));
  bool has_base = false;
  for (const ConfocalMember& m : on.smooth) has_base = has_base || dist(m.conic, fam.base()) < 1e-12;
  CHECK(has_base);
  CHECK(error_of([&] { confocal_through(fam, HomPoint(std::sqrt(3.0), 0.0, 1.0)); }) == ErrorCode::FocusInput);
}

TEST_CASE("property: confocal members share foci and are codependent") {
  Rng rng(14);
  for (int k = 0; k < 100; ++k) {
    const double a2 = rng.uniform(1.5, 6.0);
    const double b2 = rng.uniform(0.2, a2 - 0.5);
    const Conic x = central(a2, b2);
    const ConfocalFamily fam(x);
    const HomPoint p(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0), 1.0);
    const ConfocalSolutions s = confocal_through(fam, p);
    const FociResult fx = foci(x);
    for (const ConfocalMember& m : s.smooth) {
      CHECK(evaluate(m.conic, p) < 1e-12);
      CHECK(confocal(x, m.conic).residual < 1e-9);
      const FociResult fm = foci(m.conic);
      CHECK(std::min(dist(fm.real_pair.first, fx.real_pair.first), dist(fm.real_pair.first, fx.real_pair.second)) <
            1e-8);
    }
  }
}

TEST_CASE("angle_bisectors") {
  const LinePair axes = angle_bisectors(HomLine(1.0, 0.0, 0.0), HomLine(0.0, 1.0, 0.0));
  const HomLine d1(1.0, -1.0, 0.0);
  const HomLine d2(1.0, 1.0, 0.0);
  CHECK(std::min(dist(axes.first, d1), dist(axes.first, d2)) < 1e-15);
  CHECK(std::min(dist(axes.second, d1), dist(axes.second, d2)) < 1e-15);
  const LinePair at = angle_bisectors(HomLine(1.0, 0.0, -2.0), HomLine(0.0, 1.0, -1.0));
  for (const HomLine& l : {at.first, at.second}) CHECK(incident(HomPoint(2.0, 1.0, 1.0), l).holds);
  CHECK(error_of([] { angle_bisectors(HomLine(1.0, 0.0, 0.0), HomLine(1.0, 0.0, -3.0)); }) ==
        ErrorCode::ParallelLines);
}

TEST_CASE("property: bisectors are perpendicular and reflect a onto b") {
  Rng rng(19);
  for (int k = 0; k < 200; ++k) {
    const HomLine a(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const HomLine b(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    LinePair bis{a, b};
    try {
      bis = angle_bisectors(a, b);
    } catch (const Error&) {
      continue;
    }
    const Vec3 u = canonical(bis.first.vec());
    const Vec3 v = canonical(bis.second.vec());
    CHECK(std::abs(u[0] * v[0] + u[1] * v[1]) < 1e-12);
    // reflection across the first bisector
    const double nx = u[0].real();
    const double ny = u[1].real();
    const double n2 = nx * nx + ny * ny;
    Mat3 refl = Mat3::Identity();
    refl(0, 0) = 1.0 - 2.0 * nx * nx / n2;
    refl(0, 1) = refl(1, 0) = -2.0 * nx * ny / n2;
    refl(1, 1) = 1.0 - 2.0 * ny * ny / n2;
    refl(0, 2) = -2.0 * nx * u[2].real() / n2;
    refl(1, 2) = -2.0 * ny * u[2].real() / n2;
    const Transform t(refl);
    CHECK(dist(t.apply(a), b) < 1e-10);
  }
}

TEST_CASE("circles tangent to four lines") {
  // sides of the unit square; the inscribed circle is centered at (1/2, 1/2)
  const std::array<HomLine, 4> square{HomLine(1.0, 0.0, 0.0), HomLine(1.0, 0.0, -1.0), HomLine(0.0, 1.0, 0.0),
                                      HomLine(0.0, 1.0, -1.0)};
  const auto cs = circles_tangent_to_lines(square);
  REQUIRE(cs.size() >= 1);
  bool inscribed = false;
  for (const TangentCircle& c : cs) inscribed = inscribed || dist(c.circle, circle(0.5, 0.5, 0.25)) < 1e-12;
  CHECK(inscribed);
  const std::array<HomLine, 4> skew{HomLine(1.0, 0.0, 0.0), HomLine(1.0, 0.0, -1.0), HomLine(0.0, 1.0, 0.0),
                                    HomLine(1.0, 2.0, -5.0)};
  CHECK(circle_condition_residual(skew) > 1e-3);
}
