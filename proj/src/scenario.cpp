#include <algorithm>
#include <cmath>

#include "projcert/harness.hpp"

namespace projcert {

void Config::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be >= 1");
  tolerance().validate();
  if (!(eps * sep < 1.0)) throw Error(ErrorCode::InvalidInput, "eps * sep must be < 1");
}

double Scenario::param(std::string_view name, double fallback) const {
  const auto it = params.find(std::string(name));
  return it == params.end() ? fallback : it->second;
}

const std::vector<TheoremInfo>& theorem_ids() {
  static const std::vector<TheoremInfo> ids{
      {"thm1", "circle tangent to a,b,c,d iff P,Q on a confocal conic", true},
      {"thm2", "tangent meet M is the circle center; converse recovers the member", false},
      {"thm3", "three vertex pairs on confocal conics iff a circle exists", true},
      {"thm4", "quadrilateral closure from two confocal members", false},
      {"thm5", "projective dual statement (four common tangents, points I, J)", false},
      {"thm6", "primal construction through the four blue points", false},
      {"cb3", "Cayley-Bacharach for cubics", true},
      {"cb4", "decomposed quartics: circled points on the second green conic", true},
      {"limit", "blue lines merging into a double line", false},
      {"p5", "collinearities of six conics in P^5", true},
      {"bisector", "tangent of a confocal member bisects the tangents to X", false},
  };
  return ids;
}

const std::vector<std::string_view>& counterexample_ids() {
  static const std::vector<std::string_view> ids{"darboux", "nontheorem1", "akopyan-bobenko"};
  return ids;
}

bool is_theorem_id(std::string_view id) {
  const auto& ids = theorem_ids();
  return std::any_of(ids.begin(), ids.end(), [&](const TheoremInfo& t) { return t.id == id; });
}

ScenarioReport run_counterexample(std::string_view id, const Tolerance& tol) {
  if (id == "darboux") return counterexample_darboux({}, tol);
  if (id == "nontheorem1") return counterexample_nontheorem1({}, tol);
  if (id == "akopyan-bobenko") return counterexample_akopyan_bobenko({}, tol);
  throw Error(ErrorCode::UnknownTheorem, "unknown counterexample " + std::string(id));
}

Scenario scenario_from_report(std::string theorem, const ScenarioReport& r) {
  Scenario s;
  s.theorem = std::move(theorem);
  s.objects = r.witnesses();
  return s;
}

namespace {

std::array<HomLine, 4> quad_lines(const Scenario& s) {
  return {s.get<HomLine>("a"), s.get<HomLine>("b"), s.get<HomLine>("c"), s.get<HomLine>("d")};
}

ScenarioReport check_thm2(const Scenario& s, const Tolerance& tol) {
  const Conic& x = s.get<Conic>("X");
  const Conic& r = s.get<Conic>("R");
  ScenarioReport out("thm2", tol);
  const ScenarioReport fwd = cqt_forward(x, r, s.get<HomPoint>("P"), s.get<HomPoint>("Q"), tol);
  out.merge(fwd, "forward: ");
  const std::array<HomLine, 4> lines{fwd.get<HomLine>("a"), fwd.get<HomLine>("b"), fwd.get<HomLine>("c"),
                                     fwd.get<HomLine>("d")};
  const ScenarioReport back = cqt_backward(x, fwd.get<Conic>("circle"), lines, tol);
  out.merge(back, "backward: ");
  out.holds("round trip recovers R", conic_distance(back.get<Conic>("R"), r));
  return out;
}

ScenarioReport check_thm6(const Scenario& s, const Tolerance& tol) {
  const Conic& x = s.get<Conic>("X");
  const Conic& r = s.get<Conic>("R");
  const HomPoint& p = s.get<HomPoint>("P");
  const HomPoint& q = s.get<HomPoint>("Q");
  const Pairing pairing{s.get<HomLine>("I"), s.get<HomLine>("J")};
  ScenarioReport out("thm6", tol);
  const ScenarioReport base = cqt_primal(x, r, p, q, pairing, tol);
  out.merge(base);
  const Transform t = transform_from_seed(static_cast<std::uint64_t>(s.param("transform_seed", 7.0)));
  const ScenarioReport moved = cqt_primal(apply(t, x), apply(t, r), t.apply(p), t.apply(q),
                                          Pairing{t.apply(pairing.I), t.apply(pairing.J)}, tol);
  double drift = 0.0;
  bool same = base.certified() == moved.certified();
  for (const Check& c : base.checks()) {
    if (c.expect == Expect::Observe) continue;
    const Check& m = moved.check(c.label);
    drift = std::max(drift, std::abs(c.residual - m.residual));
    same = same && c.passed == m.passed;
  }
  out.holds("transform: residual drift", drift, 1e-7);
  out.holds("transform: verdicts agree", same ? 0.0 : 1.0);
  out.holds("transform: C maps to C", conic_distance(apply(t, base.get<Conic>("C")), moved.get<Conic>("C")));
  return out;
}

}  // namespace

ScenarioReport check_scenario(const Scenario& s, const Tolerance& tol) {
  const std::string& id = s.theorem;
  if (id == "thm1") return cqt_pure({s.get<Conic>("X"), quad_lines(s)}, tol);
  if (id == "thm2") return check_thm2(s, tol);
  if (id == "thm3") return cqt_three_conics({s.get<Conic>("X"), quad_lines(s)}, tol);
  if (id == "thm4") {
    return cqt_tangent2(s.get<Conic>("X"), s.get<Conic>("R"), s.get<Conic>("G"), s.get<HomPoint>("P"),
                        s.get<HomPoint>("S"), tol);
  }
  if (id == "thm5") {
    const ProjectiveScenario ps{s.get<Conic>("X"),
                                s.get<Conic>("R"),
                                {s.get<HomLine>("t1"), s.get<HomLine>("t2"), s.get<HomLine>("t3"), s.get<HomLine>("t4")},
                                s.get<HomPoint>("I"),
                                s.get<HomPoint>("J"),
                                s.get<HomPoint>("P"),
                                s.get<HomPoint>("Q")};
    return cqt_projective(ps, tol);
  }
  if (id == "thm6") return check_thm6(s, tol);
  if (id == "cb3") {
    const std::array<HomLine, 3> a{s.get<HomLine>("a1"), s.get<HomLine>("a2"), s.get<HomLine>("a3")};
    const std::array<HomLine, 3> b{s.get<HomLine>("b1"), s.get<HomLine>("b2"), s.get<HomLine>("b3")};
    CbCubicOptions opts;
    opts.fitted = static_cast<int>(s.param("fitted", 8.0));
    opts.members = static_cast<int>(s.param("members", 1.0));
    opts.seed = static_cast<std::uint64_t>(s.param("fit_seed", 1.0));
    return cb_cubic(a, b, opts, tol);
  }
  if (id == "cb4") {
    const CbQuarticScenario q{{s.get<HomLine>("r1"), s.get<HomLine>("r2"), s.get<HomLine>("r3"), s.get<HomLine>("r4")},
                              {s.get<HomLine>("b1"), s.get<HomLine>("b2")},
                              s.get<Conic>("Bc")};
    return cb_quartic_special(q, tol);
  }
  if (id == "limit") {
    const LimitScenario l{s.get<Conic>("Bc"), s.get<HomLine>("r3"), s.get<HomLine>("r4"),
                          s.get<Conic>("G1"), s.get<HomLine>("b1"), s.get<HomLine>("b2")};
    constexpr std::array<double, 5> schedule{1.0, 0.1, 0.01, 1e-4, 0.0};
    return limit_scan(l, schedule, tol);
  }
  if (id == "p5") {
    const ChaslesConics c{s.get<Conic>("B1"), s.get<Conic>("B2"), s.get<Conic>("R1"),
                          s.get<Conic>("R2"), s.get<Conic>("G1"), s.get<Conic>("G2")};
    return chasles_p5(c, tol);
  }
  if (id == "bisector") return billiard_bisector(s.get<Conic>("X"), s.get<Conic>("member"), s.get<HomPoint>("P"), tol);
  if (id == "darboux") {
    return counterexample_darboux({s.param("alpha_deg", 75.0), s.param("beta_deg", 30.0)}, tol);
  }
  if (id == "nontheorem1") {
    return counterexample_nontheorem1({s.param("alpha_deg", 70.0), s.param("beta_deg", 25.0)}, tol);
  }
  if (id == "akopyan-bobenko") {
    AkopyanBobenkoParams p;
    p.b_deg = s.param("b_deg", p.b_deg);
    p.beta_rx = s.param("beta_rx", p.beta_rx);
    p.beta_ry = s.param("beta_ry", p.beta_ry);
    p.beta_y = s.param("beta_y", p.beta_y);
    return counterexample_akopyan_bobenko(p, tol);
  }
  throw Error(ErrorCode::UnknownTheorem, "unknown theorem id " + id);
}

}  // namespace projcert
