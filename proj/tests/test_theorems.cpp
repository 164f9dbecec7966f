#include <doctest.h>

#include <algorithm>
#include <string>

#include "test_support.hpp"

using namespace projcert;
using namespace testing;

namespace {

const double kS3 = std::sqrt(3.0);
const double kS2 = std::sqrt(2.0);

// x^2/4 + y^2 = 1 with R: x^2/6 + y^2/3 = 1, P = (2,1), Q = (0,-sqrt 3)
struct Fixture {
  Conic X = central(4.0, 1.0);
  Conic R = central(6.0, 3.0);
  HomPoint P = affine_point(2.0, 1.0);
  HomPoint Q = affine_point(0.0, -kS3);
};

double nearest(const ScenarioReport& r, const HomLine& l) {
  double best = INFINITY;
  for (const char* n : {"a", "b", "c", "d"}) best = std::min(best, dist(r.get<HomLine>(n), l));
  return best;
}

HomLine tangent_at_param(double t) { return HomLine(std::cos(t) / 2.0, std::sin(t), -1.0); }

int count_prefix(const ScenarioReport& r, std::string_view prefix, Expect e) {
  return static_cast<int>(std::count_if(r.checks().begin(), r.checks().end(), [&](const Check& c) {
    return c.expect == e && std::string_view(c.label).starts_with(prefix);
  }));
}

bool has_note(const ScenarioReport& r, std::string_view text) {
  return std::any_of(r.notes().begin(), r.notes().end(),
                     [&](const std::string& n) { return n.find(text) != std::string::npos; });
}

std::array<HomLine, 4> tangent_lines(const ScenarioReport& fwd) {
  return {fwd.get<HomLine>("a"), fwd.get<HomLine>("b"), fwd.get<HomLine>("c"), fwd.get<HomLine>("d")};
}

}  // namespace

TEST_CASE("cqt_forward reproduces the hand-computed fixture") {
  const Fixture w;
  const ScenarioReport r = cqt_forward(w.X, w.R, w.P, w.Q);
  CHECK(r.certified());
  CHECK(dist(r.get<HomPoint>("M"), affine_point(3.0 + kS3, -kS3)) < 1e-10);
  CHECK(nearest(r, HomLine(1.0, 0.0, -2.0)) < 1e-10);
  CHECK(nearest(r, HomLine(0.0, 1.0, -1.0)) < 1e-10);
  CHECK(nearest(r, HomLine(1.0 / kS2, 1.0, kS3)) < 1e-10);
  CHECK(nearest(r, HomLine(-1.0 / kS2, 1.0, kS3)) < 1e-10);
  const double rad = 1.0 + kS3;
  CHECK(dist(r.get<Conic>("circle"), circle(3.0 + kS3, -kS3, rad * rad)) < 1e-10);
  for (const char* l : {"circle tangent to a", "circle tangent to b", "circle tangent to c", "circle tangent to d"}) {
    CHECK(r.residual(l) < 1e-10);
  }
}

TEST_CASE("cqt_forward rejects P = Q") {
  const Fixture w;
  CHECK(error_of([&] { cqt_forward(w.X, w.R, w.P, w.P); }) == ErrorCode::CoincidentPoints);
}

TEST_CASE("cqt_backward recovers the member") {
  const Fixture w;
  const ScenarioReport fwd = cqt_forward(w.X, w.R, w.P, w.Q);
  const auto lines = tangent_lines(fwd);
  const ScenarioReport back = cqt_backward(w.X, fwd.get<Conic>("circle"), lines);
  CHECK(back.certified());
  CHECK(dist(back.get<Conic>("R"), w.R) < 1e-9);
}

TEST_CASE("cqt_backward rejects lines off the circle") {
  const Fixture w;
  const ScenarioReport fwd = cqt_forward(w.X, w.R, w.P, w.Q);
  auto lines = tangent_lines(fwd);
  lines[3] = tangent_at_param(0.3);
  CHECK(error_of([&] { cqt_backward(w.X, fwd.get<Conic>("circle"), lines); }) == ErrorCode::NotTangent);
}

TEST_CASE("round trip over random members") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Scenario s = random_instance("thm2", seed);
    const ScenarioReport r = check_scenario(s);
    CHECK_MESSAGE(r.certified(), seed);
    CHECK(r.residual("round trip recovers R") < 1e-8);
  }
}

TEST_CASE("cqt_pure on the fixture quadrilateral") {
  const Fixture w;
  const ScenarioReport fwd = cqt_forward(w.X, w.R, w.P, w.Q);
  const QuadScenario q{w.X, tangent_lines(fwd)};
  const ScenarioReport r = cqt_pure(q);
  CHECK(r.certified());
  CHECK(r.residual("(ii) P,Q on a confocal conic") < 1e-10);
  bool ellipse_found = false;
  for (const char* n : {"R0", "R1"}) {
    if (r.has_witness(n) && dist(r.get<Conic>(n), w.R) < 1e-9) ellipse_found = true;
  }
  CHECK(ellipse_found);
}

TEST_CASE("cqt_pure flags the symmetric ambiguity") {
  const double a = 75.0 * M_PI / 180.0;
  const double b = 30.0 * M_PI / 180.0;
  const QuadScenario q{central(4.0, 1.0),
                       {tangent_at_param(a), tangent_at_param(b), tangent_at_param(M_PI - a),
                        tangent_at_param(M_PI - b)}};
  const ScenarioReport r = cqt_pure(q);
  CHECK(r.certified());
  CHECK(has_note(r, "ambiguous"));
}

TEST_CASE("cqt_pure negative controls fail on both sides") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Scenario s = random_instance("thm1", seed, true);
    const ScenarioReport r = check_scenario(s);
    CHECK(r.certified());
    CHECK(r.check("(i) circle tangent to a,b,c,d").expect == Expect::Fails);
    CHECK(r.residual("(ii) P,Q on a confocal conic") >= 1e-5);
  }
}

TEST_CASE("cqt_three_conics") {
  const Fixture w;
  const ScenarioReport fwd = cqt_forward(w.X, w.R, w.P, w.Q);
  const ScenarioReport r = cqt_three_conics({w.X, tangent_lines(fwd)});
  CHECK(r.certified());
  for (const char* p : {"pair P,Q on a confocal conic", "pair S,T on a confocal conic", "pair U,V on a confocal conic"}) {
    CHECK(r.check(p).expect == Expect::Holds);
    CHECK(r.residual(p) < 1e-9);
  }
}

TEST_CASE("cqt_three_conics perturbed lines fail every pair") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ScenarioReport r = check_scenario(random_instance("thm3", seed, true));
    CHECK(r.certified());
    CHECK(count_prefix(r, "pair ", Expect::Fails) == 3);
  }
}

TEST_CASE("cqt_three_conics reports a degenerate pair") {
  const Fixture w;
  const ScenarioReport fwd = cqt_forward(w.X, w.R, w.P, w.Q);
  auto lines = tangent_lines(fwd);
  lines[1] = lines[0];
  const ScenarioReport r = cqt_three_conics({w.X, lines});
  CHECK(has_note(r, "degenerate pair P,Q"));
  CHECK_FALSE(r.has_check("pair P,Q on a confocal conic"));
}

TEST_CASE("cqt_tangent2 random instances") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ScenarioReport r = check_scenario(random_instance("thm4", seed));
    CHECK_MESSAGE(r.certified(), seed);
    for (const char* l : {"Q v T tangent to X", "P v T tangent to X", "Q v S tangent to X"}) CHECK(r.residual(l) < 1e-8);
  }
}

TEST_CASE("cqt_tangent2 needs P v S tangent to X") {
  const Scenario s = random_instance("thm4", 3);
  const Conic& G = s.get<Conic>("G");
  const HomPoint off = point_on_conic(G, s.get<HomPoint>("S"), 0.7);
  CHECK(error_of([&] {
          cqt_tangent2(s.get<Conic>("X"), s.get<Conic>("R"), G, s.get<HomPoint>("P"), off);
        }) == ErrorCode::NotTangent);
}

TEST_CASE("billiard bisector on the fixture") {
  const Fixture w;
  CHECK(billiard_bisector(w.X, w.R, w.P).certified());
  CHECK(billiard_bisector(w.X, w.R, w.Q).certified());
}

TEST_CASE("cqt_primal holds for every pairing") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Scenario s = random_instance("thm6", seed);
    const Conic& X = s.get<Conic>("X");
    const Conic& R = s.get<Conic>("R");
    const std::vector<Pairing> ps = pairings_of(X, R);
    REQUIRE(ps.size() == 3);
    for (const Pairing& p : ps) {
      try {
        const ScenarioReport r = cqt_primal(X, R, s.get<HomPoint>("P"), s.get<HomPoint>("Q"), p);
        CHECK(r.certified());
        ++checked;
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegeneratePairing);
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("cqt_primal rejects X = R") {
  const Scenario s = random_instance("thm6", 1);
  const Conic& X = s.get<Conic>("X");
  const Pairing p{s.get<HomLine>("I"), s.get<HomLine>("J")};
  CHECK(error_of([&] { cqt_primal(X, X, s.get<HomPoint>("P"), s.get<HomPoint>("Q"), p); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("transform invariance of the primal verdict") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ScenarioReport r = check_scenario(random_instance("thm6", seed));
    CHECK(r.certified());
    CHECK(r.residual("transform: residual drift") < 1e-7);
  }
}

TEST_CASE("cqt_projective random instances") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) CHECK_MESSAGE(check_scenario(random_instance("thm5", seed)).certified(), seed);
}

TEST_CASE("cb_cubic on the 3x3 grid") {
  const std::array<HomLine, 3> a{HomLine(1.0, 0.0, 0.0), HomLine(1.0, 0.0, -1.0), HomLine(1.0, 0.0, -2.0)};
  const std::array<HomLine, 3> b{HomLine(0.0, 1.0, 0.0), HomLine(0.0, 1.0, -1.0), HomLine(0.0, 1.0, -2.0)};
  const ScenarioReport r = cb_cubic(a, b, CbCubicOptions{8, 10, 7});
  CHECK(r.certified());
  CHECK(r.residual("fitted family dimension") == 2.0);
  for (int m = 0; m < 10; ++m) CHECK(r.residual("member " + std::to_string(m) + " through the ninth point") < 1e-10);

  const ScenarioReport neg = cb_cubic(a, b, CbCubicOptions{7, 10, 7});
  CHECK(neg.residual("fitted family dimension") == 3.0);
  for (int m = 0; m < 10; ++m) CHECK(neg.residual("member " + std::to_string(m) + " through the ninth point") >= 1e-5);
}

TEST_CASE("cb_cubic needs nine distinct points") {
  const std::array<HomLine, 3> a{HomLine(1.0, 0.0, 0.0), HomLine(1.0, 0.0, -1.0), HomLine(1.0, 0.0, -2.0)};
  const std::array<HomLine, 3> b{HomLine(1.0, 0.0, 0.0), HomLine(0.0, 1.0, -1.0), HomLine(0.0, 1.0, -2.0)};
  CHECK(error_of([&] { cb_cubic(a, b); }) == ErrorCode::FewerThanNineIntersections);
}

TEST_CASE("cb_cubic random lines") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CHECK(check_scenario(random_instance("cb3", seed)).certified());
    CHECK(check_scenario(random_instance("cb3", seed, true)).certified());
  }
}

namespace {

CbQuarticScenario cb4_from(const Scenario& s) {
  return {{s.get<HomLine>("r1"), s.get<HomLine>("r2"), s.get<HomLine>("r3"), s.get<HomLine>("r4")},
          {s.get<HomLine>("b1"), s.get<HomLine>("b2")},
          s.get<Conic>("Bc")};
}

LimitScenario limit_from(const Scenario& s) {
  return {s.get<Conic>("Bc"), s.get<HomLine>("r3"), s.get<HomLine>("r4"),
          s.get<Conic>("G1"), s.get<HomLine>("b1"), s.get<HomLine>("b2")};
}

}  // namespace

TEST_CASE("cb_quartic_special") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ScenarioReport r = cb_quartic_special(cb4_from(random_instance("cb4", seed)));
    CHECK_MESSAGE(r.certified(), seed);
    for (int k = 0; k < 3; ++k) CHECK(r.residual("circled " + std::to_string(k) + " on G2") <= 1e-9);
  }
}

TEST_CASE("cb_quartic_special negative control") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    CHECK_FALSE(check_scenario(random_instance("cb4", seed, true)).certified());
  }
}

TEST_CASE("cb_quartic_special rejects a degenerate blue conic") {
  CbQuarticScenario s = cb4_from(random_instance("cb4", 5));
  s.blue_conic = line_pair(HomLine(1.0, 2.0, 3.0), HomLine(-1.0, 0.5, 1.0));
  CHECK(error_of([&] { cb_quartic_special(s); }) == ErrorCode::DegenerateBlueConic);
}

TEST_CASE("limit_scan keeps the circled residuals small") {
  const std::array<double, 5> schedule{1.0, 0.1, 0.01, 1e-4, 0.0};
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ScenarioReport r = limit_scan(limit_from(random_instance("limit", seed)), schedule);
    CHECK_MESSAGE(r.certified(), seed);
    for (const Check& c : r.checks()) {
      if (c.expect == Expect::Holds && c.label.find("circled") != std::string::npos) CHECK(c.residual < 1e-8);
    }
    CHECK(r.residual("step 4 (lambda=0) primal witness equals G1") < 1e-8);
  }
}

TEST_CASE("limit_scan on an empty schedule") {
  const ScenarioReport r = limit_scan(limit_from(random_instance("limit", 1)), std::span<const double>{});
  CHECK(r.checks().empty());
  CHECK(r.witnesses().empty());
}

TEST_CASE("chasles_p5 from cb_quartic_special") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ScenarioReport cb = cb_quartic_special(cb4_from(random_instance("cb4", seed)));
    const ScenarioReport r = chasles_p5(chasles_conics(cb));
    CHECK_MESSAGE(r.certified(), seed);
    CHECK(r.residual("meet equals B1") < 1e-9);
  }
}

TEST_CASE("chasles_p5 on random conics fails") {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const ChaslesConics c{random_conic(rng), random_conic(rng), random_conic(rng),
                          random_conic(rng), random_conic(rng), random_conic(rng)};
    CHECK_FALSE(chasles_p5(c).certified());
  }
}

TEST_CASE("chasles_p5 rejects B1 = B2") {
  const ScenarioReport cb = cb_quartic_special(cb4_from(random_instance("cb4", 2)));
  ChaslesConics c = chasles_conics(cb);
  c.B2 = c.B1;
  CHECK(error_of([&] { chasles_p5(c); }) == ErrorCode::RankDeficientInput);
}

TEST_CASE("darboux counterexample") {
  const ScenarioReport r = counterexample_darboux();
  CHECK(r.certified());
  for (const char* n : {"C0", "C1", "R0", "R1", "center0", "center1", "X", "P", "Q"}) CHECK(r.has_witness(n));
  CHECK(count_prefix(r, "consistent: ", Expect::Holds) == 2);
  CHECK(count_prefix(r, "inconsistent: ", Expect::Fails) == 2);
  for (const Check& c : r.checks()) {
    if (c.expect == Expect::Holds) CHECK(c.residual <= 1e-9);
    if (c.expect == Expect::Fails) CHECK(c.residual >= 0.05);
  }
  CHECK(error_of([] { counterexample_darboux({40.0, 40.0}); }) == ErrorCode::DegenerateQuadrilateral);
}

TEST_CASE("nontheorem1 counterexample") {
  const ScenarioReport r = counterexample_nontheorem1();
  CHECK(r.certified());
  CHECK(count_prefix(r, "incompatible: ", Expect::Fails) == 4);
  CHECK(count_prefix(r, "symmetric sibling: ", Expect::Holds) >= 1);
  CHECK(count_prefix(r, "generic: ", Expect::Holds) >= 4);
  for (const Check& c : r.checks()) {
    if (c.expect == Expect::Holds) CHECK(c.residual <= 1e-9);
    if (c.expect == Expect::Fails) CHECK(c.residual >= 1e-5);
  }
}

TEST_CASE("akopyan-bobenko counterexample") {
  const ScenarioReport r = counterexample_akopyan_bobenko();
  CHECK(r.certified());
  CHECK(r.residual("intended branch: contacts collinear") <= 1e-9);
  CHECK(count_prefix(r, "flawed branch: ", Expect::Fails) >= 1);
  for (const char* n : {"alpha", "beta", "gamma0", "gamma1", "contact conic", "T1", "T2", "T3", "T4"}) {
    CHECK(r.has_witness(n));
  }
  for (const Check& c : r.checks()) {
    if (c.expect == Expect::Fails) CHECK(c.residual >= 1e-5);
  }
}
