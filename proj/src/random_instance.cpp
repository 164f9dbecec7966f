#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "projcert/harness.hpp"
#include "projcert/random.hpp"

namespace projcert {

namespace {

constexpr int kMaxRejections = 10000;

/// x^2/a^2 + y^2/b^2 = 1 rotated by theta and moved to (cx, cy).
struct Ellipse {
  double a, b, cx, cy, theta;

  Mat3 frame() const {
    Mat3 t = Mat3::Identity();
    t(0, 0) = std::cos(theta);
    t(0, 1) = -std::sin(theta);
    t(1, 0) = std::sin(theta);
    t(1, 1) = std::cos(theta);
    t(0, 2) = cx;
    t(1, 2) = cy;
    return t;
  }
  Conic member(double lambda) const {
    Mat3 d = Mat3::Zero();
    d(0, 0) = 1.0 / (a * a + lambda);
    d(1, 1) = 1.0 / (b * b + lambda);
    d(2, 2) = -1.0;
    return apply(Transform(frame()), Conic(d));
  }
  Conic conic() const { return member(0.0); }
  /// Point of the member with parameter lambda; t is an angle for
  /// ellipses and a hyperbolic parameter (branch by sign of `side`).
  HomPoint point(double lambda, double t, double side = 1.0) const {
    const double u2 = a * a + lambda;
    const double v2 = b * b + lambda;
    double x = 0.0;
    double y = 0.0;
    if (v2 > 0.0) {
      x = std::sqrt(u2) * std::cos(t);
      y = std::sqrt(v2) * std::sin(t);
    } else {
      x = side * std::sqrt(u2) * std::cosh(t);
      y = std::sqrt(-v2) * std::sinh(t);
    }
    return HomPoint(frame() * Vec3(x, y, 1.0));
  }
};

Ellipse random_ellipse(Rng& rng) {
  Ellipse e{};
  e.a = rng.uniform(1.0, 3.0);
  e.b = rng.uniform(0.4, 0.9) * e.a;
  e.cx = rng.uniform(-2.0, 2.0);
  e.cy = rng.uniform(-2.0, 2.0);
  e.theta = rng.uniform(0.0, std::numbers::pi);
  return e;
}

/// Ellipse members (lambda > -b^2) or, with probability 1/3, hyperbolas
/// (-a^2 < lambda < -b^2); stays away from the base conic and the
/// degenerate members.
double random_lambda(Rng& rng, const Ellipse& e, bool hyperbolas = true) {
  const double a2 = e.a * e.a;
  const double b2 = e.b * e.b;
  if (hyperbolas && rng.uniform() < 1.0 / 3.0) {
    const double gap = 0.1 * (a2 - b2);
    return rng.uniform(-a2 + gap, -b2 - gap);
  }
  for (;;) {
    const double l = rng.uniform(-0.9 * b2, 4.0);
    if (std::abs(l) > 0.1) return l;
  }
}

double random_parameter(Rng& rng, const Ellipse& e, double lambda) {
  if (e.b * e.b + lambda > 0.0) return rng.uniform(0.0, 2.0 * std::numbers::pi);
  return rng.uniform(-1.5, 1.5);
}

double affine_distance(const HomPoint& p, const HomPoint& q) {
  const auto a = affine(p);
  const auto b = affine(q);
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

/// |sin| of the angle between two real affine lines.
double line_angle(const HomLine& l, const HomLine& m) {
  const Vec3 a = canonical(l.vec());
  const Vec3 b = canonical(m.vec());
  const double cross = std::abs(a[0] * b[1] - a[1] * b[0]);
  return cross / (std::hypot(std::abs(a[0]), std::abs(a[1])) * std::hypot(std::abs(b[0]), std::abs(b[1])));
}

HomLine random_line(Rng& rng) {
  const double px = rng.uniform(-2.0, 2.0);
  const double py = rng.uniform(-2.0, 2.0);
  const double phi = rng.uniform(0.0, std::numbers::pi);
  return HomLine(std::sin(phi), -std::cos(phi), -(std::sin(phi) * px - std::cos(phi) * py));
}

HomPoint random_affine_point(Rng& rng) { return HomPoint(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), 1.0); }

Transform random_transform(Rng& rng) {
  for (;;) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m(i, j) += 0.4 * rng.uniform(-1.0, 1.0);
    }
    const Eigen::Vector3d s = Eigen::JacobiSVD<Eigen::Matrix3d>(m).singularValues();
    if (s[2] > s[0] / 20.0) return Transform(m.cast<Complex>());
  }
}

template <class F>
Scenario sample(std::uint64_t seed, F&& attempt) {
  Rng rng(seed);
  for (int k = 0; k < kMaxRejections; ++k) {
    try {
      if (std::optional<Scenario> s = attempt(rng)) return *s;
    } catch (const Error&) {
      // Construction hit a degenerate configuration: resample.
    }
  }
  throw Error(ErrorCode::SamplingExhausted, "no valid instance after 10^4 rejections");
}

struct ConfocalPair {
  Ellipse e;
  double lambda;
  Conic x;
  Conic r;
  HomPoint p;
  HomPoint q;
};

/// X, a confocal member R and two points on it, with the usual
/// nondegeneracy margins.
std::optional<ConfocalPair> confocal_pair(Rng& rng) {
  const Ellipse e = random_ellipse(rng);
  const double lambda = random_lambda(rng, e);
  const double side = rng.uniform() < 0.5 ? 1.0 : -1.0;
  const HomPoint p = e.point(lambda, random_parameter(rng, e, lambda), side);
  const HomPoint q = e.point(lambda, random_parameter(rng, e, lambda), rng.uniform() < 0.5 ? side : -side);
  const Conic x = e.conic();
  const Conic r = e.member(lambda);
  if (affine_distance(p, q) < 0.1) return std::nullopt;
  if (evaluate(x, p) < 1e-2 || evaluate(x, q) < 1e-2) return std::nullopt;
  const HomLine tp = tangent_at(r, p);
  const HomLine tq = tangent_at(r, q);
  if (line_angle(tp, tq) < 0.05) return std::nullopt;
  const auto m = affine(meet(tp, tq));
  if (std::hypot(m[0], m[1]) > 50.0) return std::nullopt;
  return ConfocalPair{e, lambda, x, r, p, q};
}

void add_quad(Scenario& s, const Conic& x, const std::array<HomLine, 4>& lines) {
  s.add("X", x);
  s.add("a", lines[0]);
  s.add("b", lines[1]);
  s.add("c", lines[2]);
  s.add("d", lines[3]);
}

std::optional<Scenario> quad_instance(Rng& rng, std::string_view id, bool negative) {
  const auto cp = confocal_pair(rng);
  if (!cp) return std::nullopt;
  const LinePair ab = tangents_from(cp->x, cp->p);
  const LinePair cd = tangents_from(cp->x, cp->q);
  std::array<HomLine, 4> lines{ab.first, ab.second, cd.first, cd.second};
  Scenario s;
  s.theorem = std::string(id);
  if (negative) {
    const double delta = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.05, 0.3);
    const HomPoint touch = contact_point(cp->x, lines[3]);
    lines[3] = tangent_at(cp->x, point_on_conic(cp->x, touch, delta));
    if (circle_condition_residual(lines) < 1e-3) return std::nullopt;
    s.params["negative"] = 1.0;
  }
  add_quad(s, cp->x, lines);
  return s;
}

std::optional<Scenario> thm2_instance(Rng& rng) {
  const auto cp = confocal_pair(rng);
  if (!cp) return std::nullopt;
  Scenario s;
  s.theorem = "thm2";
  s.add("X", cp->x);
  s.add("R", cp->r);
  s.add("P", cp->p);
  s.add("Q", cp->q);
  s.params["lambda"] = cp->lambda;
  return s;
}

std::optional<Scenario> thm4_instance(Rng& rng) {
  const Ellipse e = random_ellipse(rng);
  const double lr = rng.uniform(0.2, 4.0);
  const double lg = rng.uniform(0.2, 4.0);
  if (std::abs(lr - lg) < 0.2) return std::nullopt;
  const Conic x = e.conic();
  const Conic r = e.member(lr);
  const Conic g = e.member(lg);
  const HomPoint p = e.point(lr, rng.uniform(0.0, 2.0 * std::numbers::pi));
  const LinePair tl = tangents_from(x, p);
  const LineIntersection on_g = intersect_conic_line(g, rng.uniform() < 0.5 ? tl.first : tl.second);
  const HomPoint s = rng.uniform() < 0.5 ? on_g.first : on_g.second;
  if (imaginary_part(s.vec()) > 1e-12) return std::nullopt;
  if (affine_distance(p, s) < 0.1) return std::nullopt;
  const HomLine tp = tangent_at(r, p);
  const HomLine ts = tangent_at(g, s);
  if (line_angle(tp, ts) < 0.05) return std::nullopt;
  const HomPoint m = meet(tp, ts);
  const auto ma = affine(m);
  if (std::hypot(ma[0], ma[1]) > 50.0) return std::nullopt;
  if (evaluate(r, m) < 1e-3 || evaluate(g, m) < 1e-3) return std::nullopt;
  Scenario sc;
  sc.theorem = "thm4";
  sc.add("X", x);
  sc.add("R", r);
  sc.add("G", g);
  sc.add("P", p);
  sc.add("S", HomPoint(Vec3(s.vec().real().cast<Complex>())));
  return sc;
}

bool general_lines(const std::array<HomLine, 4>& t) {
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (line_angle(t[i], t[j]) < 0.1) return false;
      for (std::size_t k = j + 1; k < 4; ++k) {
        if (concurrent(t[i], t[j], t[k]).residual < 0.05) return false;
      }
    }
  }
  return true;
}

bool well_conditioned(const Conic& c) { return c.singular_values()[2] > 1e-2 * c.singular_values()[0]; }

std::optional<Scenario> thm5_instance(Rng& rng) {
  std::array<HomLine, 4> t{random_line(rng), random_line(rng), random_line(rng), random_line(rng)};
  if (!general_lines(t)) return std::nullopt;
  const auto dual_conic = [&](const HomLine& extra) {
    const std::array<HomPoint, 5> pts{HomPoint(t[0].vec()), HomPoint(t[1].vec()), HomPoint(t[2].vec()),
                                      HomPoint(t[3].vec()), HomPoint(extra.vec())};
    return Conic(adjugate(conic_through_5(pts).matrix()));
  };
  const Conic x = dual_conic(random_line(rng));
  const Conic r = dual_conic(random_line(rng));
  if (!well_conditioned(x) || !well_conditioned(r) || conic_distance(x, r) < 0.05) return std::nullopt;
  const HomPoint seed = contact_point(r, t[0]);
  const HomPoint p = point_on_conic(r, seed, rng.uniform(-2.0, 2.0));
  const HomPoint q = point_on_conic(r, seed, rng.uniform(-2.0, 2.0));
  if (projective_distance(p, q) < 0.05) return std::nullopt;
  for (const HomLine& l : t) {
    const HomPoint c = contact_point(r, l);
    if (projective_distance(p, c) < 0.05 || projective_distance(q, c) < 0.05) return std::nullopt;
  }
  const HomPoint i = meet(t[0], t[1]);
  const HomPoint j = meet(t[2], t[3]);
  if (projective_distance(i, j) < 0.05) return std::nullopt;
  // The tangents at P and Q to R must not pass through I or J.
  for (const HomPoint& v : {p, q}) {
    const HomLine tv = tangent_at(r, v);
    if (incident(i, tv).residual < 0.02 || incident(j, tv).residual < 0.02) return std::nullopt;
  }
  if (incident(meet(tangent_at(r, p), tangent_at(r, q)), join(i, j)).residual < 0.02) return std::nullopt;
  const Transform tr = random_transform(rng);
  Scenario s;
  s.theorem = "thm5";
  s.add("X", apply(tr, x));
  s.add("R", apply(tr, r));
  for (std::size_t k = 0; k < 4; ++k) s.add("t" + std::to_string(k + 1), tr.apply(t[k]));
  s.add("I", tr.apply(i));
  s.add("J", tr.apply(j));
  s.add("P", tr.apply(p));
  s.add("Q", tr.apply(q));
  return s;
}

std::optional<Scenario> thm6_instance(Rng& rng) {
  const std::array<HomPoint, 4> base{random_affine_point(rng), random_affine_point(rng), random_affine_point(rng),
                                     random_affine_point(rng)};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      for (std::size_t k = j + 1; k < 4; ++k) {
        if (collinear(base[i], base[j], base[k]).residual < 0.05) return std::nullopt;
      }
    }
  }
  const auto through = [&](const HomPoint& extra) {
    const std::array<HomPoint, 5> pts{base[0], base[1], base[2], base[3], extra};
    return conic_through_5(pts);
  };
  const Conic x = through(random_affine_point(rng));
  const Conic r = through(random_affine_point(rng));
  if (!well_conditioned(x) || !well_conditioned(r) || conic_distance(x, r) < 0.05) return std::nullopt;
  const HomPoint p = point_on_conic(r, base[0], rng.uniform(-2.0, 2.0));
  const HomPoint q = point_on_conic(r, base[0], rng.uniform(-2.0, 2.0));
  if (projective_distance(p, q) < 0.05) return std::nullopt;
  for (const HomPoint& b : base) {
    if (projective_distance(p, b) < 0.05 || projective_distance(q, b) < 0.05) return std::nullopt;
  }
  constexpr std::array<std::array<int, 4>, 3> pairs{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  const std::uint64_t which = rng.below(3);
  const auto& pr = pairs[which];
  const HomLine li = join(base[static_cast<std::size_t>(pr[0])], base[static_cast<std::size_t>(pr[1])]);
  const HomLine lj = join(base[static_cast<std::size_t>(pr[2])], base[static_cast<std::size_t>(pr[3])]);
  if (incident(meet(li, lj), join(p, q)).residual < 0.02) return std::nullopt;
  Scenario s;
  s.theorem = "thm6";
  s.add("X", x);
  s.add("R", r);
  s.add("P", p);
  s.add("Q", q);
  s.add("I", li);
  s.add("J", lj);
  s.params["pairing"] = static_cast<double>(which);
  s.params["transform_seed"] = static_cast<double>(rng.next() >> 12);
  return s;
}

std::optional<Scenario> cb3_instance(Rng& rng, bool negative) {
  const std::array<HomLine, 6> l{random_line(rng), random_line(rng), random_line(rng),
                                 random_line(rng), random_line(rng), random_line(rng)};
  std::vector<HomPoint> nine;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 3; j < 6; ++j) {
      if (line_angle(l[i], l[j]) < 0.1) return std::nullopt;
      nine.push_back(meet(l[i], l[j]));
    }
  }
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = i + 1; j < 9; ++j) {
      if (projective_distance(nine[i], nine[j]) < 0.05) return std::nullopt;
    }
  }
  Scenario s;
  s.theorem = "cb3";
  for (std::size_t i = 0; i < 3; ++i) s.add("a" + std::to_string(i + 1), l[i]);
  for (std::size_t i = 0; i < 3; ++i) s.add("b" + std::to_string(i + 1), l[i + 3]);
  s.params["fitted"] = negative ? 7.0 : 8.0;
  s.params["members"] = 1.0;
  s.params["fit_seed"] = static_cast<double>(rng.next() >> 12);
  return s;
}

std::optional<LimitScenario> limit_instance(Rng& rng) {
  const Ellipse e = random_ellipse(rng);
  const Conic bc = e.conic();
  const auto chord = [&]() {
    const double t1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double t2 = t1 + rng.uniform(0.6, 2.0 * std::numbers::pi - 0.6);
    return join(e.point(0.0, t1), e.point(0.0, t2));
  };
  const HomLine r3 = chord();
  const HomLine r4 = chord();
  if (line_angle(r3, r4) < 0.1) return std::nullopt;
  const double mu = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.3, 2.0);
  const Conic g1(bc.matrix() + mu * line_pair(r3, r4).matrix());
  if (!well_conditioned(g1)) return std::nullopt;
  const HomPoint seed = intersect_conic_line(bc, r3).first;
  std::array<HomPoint, 4> q{seed, seed, seed, seed};
  for (HomPoint& v : q) v = point_on_conic(g1, seed, rng.uniform(-2.0, 2.0));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (projective_distance(q[i], q[j]) < 0.05) return std::nullopt;
    }
  }
  LimitScenario s{bc, r3, r4, g1, join(q[0], q[2]), join(q[1], q[3])};
  if (line_angle(s.b1, s.b2) < 0.1) return std::nullopt;
  // The lambda = 1 instance must have sixteen well separated intersections.
  const CbQuarticScenario inst = instantiate(s, 1.0);
  std::vector<HomPoint> all;
  for (const HomLine& r : inst.red) {
    for (const HomLine& b : inst.blue) all.push_back(meet(r, b));
    const LineIntersection c = intersect_conic_line(bc, r);
    all.push_back(c.first);
    all.push_back(c.second);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (projective_distance(all[i], all[j]) < 1e-2) return std::nullopt;
    }
  }
  // The limit configuration: contacts of r1, r2 with G1 away from r3, r4.
  const LineIntersection on2 = intersect_conic_line(g1, s.b2);
  for (const HomPoint& v : {on2.first, on2.second}) {
    if (incident(v, r3).residual < 0.02 || incident(v, r4).residual < 0.02) return std::nullopt;
  }
  return s;
}

void add_limit(Scenario& sc, const LimitScenario& s) {
  sc.add("Bc", s.blue_conic);
  sc.add("r3", s.r3);
  sc.add("r4", s.r4);
  sc.add("G1", s.G1);
  sc.add("b1", s.b1);
  sc.add("b2", s.b2);
}

void add_cb4(Scenario& sc, const CbQuarticScenario& s) {
  for (std::size_t i = 0; i < 4; ++i) sc.add("r" + std::to_string(i + 1), s.red[i]);
  sc.add("b1", s.blue[0]);
  sc.add("b2", s.blue[1]);
  sc.add("Bc", s.blue_conic);
}

Conic random_conic(Rng& rng) {
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
  }
  return Conic(m);
}

std::optional<Scenario> bisector_instance(Rng& rng) {
  const Ellipse e = random_ellipse(rng);
  const double lambda = random_lambda(rng, e);
  const HomPoint p = e.point(lambda, random_parameter(rng, e, lambda), rng.uniform() < 0.5 ? 1.0 : -1.0);
  const Conic x = e.conic();
  if (evaluate(x, p) < 1e-2) return std::nullopt;
  Scenario s;
  s.theorem = "bisector";
  s.add("X", x);
  s.add("member", e.member(lambda));
  s.add("P", p);
  s.params["lambda"] = lambda;
  return s;
}

}  // namespace

Scenario random_instance(std::string_view id, std::uint64_t seed, bool negative) {
  if (!is_theorem_id(id)) throw Error(ErrorCode::UnknownTheorem, "unknown theorem id " + std::string(id));
  if (id == "thm1" || id == "thm3") {
    return sample(seed, [&](Rng& rng) { return quad_instance(rng, id, negative); });
  }
  if (id == "thm2") return sample(seed, [](Rng& rng) { return thm2_instance(rng); });
  if (id == "thm4") return sample(seed, [](Rng& rng) { return thm4_instance(rng); });
  if (id == "thm5") return sample(seed, [](Rng& rng) { return thm5_instance(rng); });
  if (id == "thm6") return sample(seed, [](Rng& rng) { return thm6_instance(rng); });
  if (id == "cb3") return sample(seed, [&](Rng& rng) { return cb3_instance(rng, negative); });
  if (id == "bisector") return sample(seed, [](Rng& rng) { return bisector_instance(rng); });
  if (id == "p5" && negative) {
    return sample(seed, [](Rng& rng) -> std::optional<Scenario> {
      Scenario s;
      s.theorem = "p5";
      for (const char* name : {"B1", "B2", "R1", "R2", "G1", "G2"}) s.add(name, random_conic(rng));
      s.params["negative"] = 1.0;
      return s;
    });
  }
  return sample(seed, [&](Rng& rng) -> std::optional<Scenario> {
    const auto lim = limit_instance(rng);
    if (!lim) return std::nullopt;
    Scenario s;
    s.theorem = std::string(id);
    if (id == "limit") {
      add_limit(s, *lim);
      return s;
    }
    CbQuarticScenario inst = instantiate(*lim, 1.0);
    if (id == "cb4") {
      if (negative) {
        const Vec3 v = canonical(inst.red[0].vec());
        const Vec3 kick(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        inst.red[0] = HomLine(v + 1e-2 * kick);
        s.params["negative"] = 1.0;
      }
      add_cb4(s, inst);
      return s;
    }
    const ChaslesConics c = chasles_conics(cb_quartic_special(inst));
    s.add("B1", c.B1);
    s.add("B2", c.B2);
    s.add("R1", c.R1);
    s.add("R2", c.R2);
    s.add("G1", c.G1);
    s.add("G2", c.G2);
    return s;
  });
}

Transform transform_from_seed(std::uint64_t seed) {
  Rng rng(seed);
  return random_transform(rng);
}

}  // namespace projcert
