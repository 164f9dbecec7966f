#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "projcert/theorems.hpp"

namespace projcert {

namespace {

Conic standard_ellipse() {
  Mat3 a = Mat3::Zero();
  a(0, 0) = 0.25;
  a(1, 1) = 1.0;
  a(2, 2) = -1.0;
  return Conic(a);
}

/// Tangent of x^2/4 + y^2 = 1 at (2 cos t, sin t).
HomLine ellipse_tangent(double t) { return HomLine(std::cos(t) / 2.0, std::sin(t), -1.0); }

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

HomPoint tangent_meet(const Conic& c, const HomPoint& p, const HomPoint& q, const Tolerance& tol) {
  return meet(tangent_at(c, p, tol), tangent_at(c, q, tol));
}

std::string idx(const char* base, std::size_t k) { return base + std::to_string(k); }

/// Members of the pencil s A + t B tangent to l.
std::vector<Conic> pencil_tangent_to(const Conic& a, const Conic& b, const HomLine& l) {
  const Vec3 v = l.vec() / l.vec().norm();
  const auto f = [&](const Mat3& m) -> Complex { return v.transpose() * adjugate(m) * v; };
  const Complex css = f(a.matrix());
  const Complex ctt = f(b.matrix());
  const Complex cst = f(a.matrix() + b.matrix()) - css - ctt;
  const std::array<Complex, 3> form{css, cst, ctt};
  std::vector<Conic> out;
  for (const BinaryRoot& r : binary_form_roots(form)) out.emplace_back(r.st[0] * a.matrix() + r.st[1] * b.matrix());
  return out;
}

double max_triple(const std::array<HomPoint, 4>& p) {
  return std::max({collinear(p[0], p[1], p[2]).residual, collinear(p[0], p[1], p[3]).residual,
                   collinear(p[0], p[2], p[3]).residual, collinear(p[1], p[2], p[3]).residual});
}

}  // namespace

ScenarioReport counterexample_darboux(const DarbouxParams& prm, const Tolerance& tol) {
  const double al = radians(prm.alpha_deg);
  const double be = radians(prm.beta_deg);
  const Conic x = standard_ellipse();
  const std::array<HomLine, 4> lines{ellipse_tangent(al), ellipse_tangent(be), ellipse_tangent(std::numbers::pi - al),
                                     ellipse_tangent(std::numbers::pi - be)};
  HomPoint p(lines[0].vec());
  HomPoint q(lines[0].vec());
  try {
    p = meet(lines[0], lines[1]);
    q = meet(lines[2], lines[3]);
  } catch (const Error&) {
    throw Error(ErrorCode::DegenerateQuadrilateral, "alpha and beta give coincident tangents");
  }
  ScenarioReport r("darboux", tol);
  constexpr std::array<const char*, 4> names{"a", "b", "c", "d"};
  for (std::size_t i = 0; i < 4; ++i) r.holds(std::string(names[i]) + " tangent to X", tangency(x, lines[i]));

  const std::vector<TangentCircle> circles = circles_tangent_to_lines(lines, tol);
  r.holds("two circles tangent to a,b,c,d", std::abs(static_cast<double>(circles.size()) - 2.0));
  const std::vector<ConfocalMember> members = confocal_through(ConfocalFamily(x), p).smooth;
  r.holds("two confocal members through P", std::abs(static_cast<double>(members.size()) - 2.0));
  for (std::size_t j = 0; j < circles.size(); ++j) {
    for (std::size_t i = 0; i < 4; ++i) {
      r.holds(idx("C", j) + " tangent to " + names[i], tangency(circles[j].circle, lines[i]));
    }
    r.witness(idx("C", j), circles[j].circle);
    r.witness(idx("center", j), circles[j].center);
  }
  std::vector<std::size_t> matched;
  for (std::size_t k = 0; k < members.size() && circles.size() == 2; ++k) {
    const Conic& m = members[k].conic;
    r.holds(idx("R", k) + " confocal to X", confocal(x, m, tol).residual);
    r.holds(idx("R", k) + " through P", evaluate(m, p));
    r.holds(idx("R", k) + " through Q", evaluate(m, q));
    const HomPoint mk = tangent_meet(m, p, q, tol);
    const double d0 = projective_distance(mk, circles[0].center);
    const double d1 = projective_distance(mk, circles[1].center);
    const std::size_t j = d0 <= d1 ? 0 : 1;
    matched.push_back(j);
    r.holds("consistent: tangents of " + idx("R", k) + " meet at center of " + idx("C", j), std::min(d0, d1));
    r.fails("inconsistent: tangents of " + idx("R", k) + " miss center of " + idx("C", 1 - j), std::max(d0, d1));
    r.witness(idx("R", k), m);
    r.witness(idx("M", k), normalize(mk));
  }
  r.holds("members pair with distinct circles", matched.size() == 2 && matched[0] != matched[1] ? 0.0 : 1.0);
  r.witness("X", x);
  for (std::size_t i = 0; i < 4; ++i) r.witness(names[i], lines[i]);
  r.witness("P", p);
  r.witness("Q", q);
  return r;
}

ScenarioReport counterexample_nontheorem1(const NonTheoremParams& prm, const Tolerance& tol) {
  const double al = radians(prm.alpha_deg);
  const double be = radians(prm.beta_deg);
  const Conic x = standard_ellipse();
  const ConfocalFamily family(x);
  const std::array<HomLine, 4> lines{ellipse_tangent(al), ellipse_tangent(be), ellipse_tangent(std::numbers::pi - be),
                                     ellipse_tangent(std::numbers::pi - al)};
  HomPoint p(lines[0].vec());
  HomPoint q = p;
  HomPoint s = p;
  HomPoint t = p;
  try {
    p = meet(lines[0], lines[1]);
    q = meet(lines[2], lines[3]);
    s = meet(lines[0], lines[2]);
    t = meet(lines[1], lines[3]);
  } catch (const Error&) {
    throw Error(ErrorCode::DegenerateQuadrilateral, "alpha and beta give coincident tangents");
  }
  ScenarioReport r("nontheorem1", tol);
  constexpr std::array<const char*, 4> names{"a", "b", "c", "d"};
  for (std::size_t i = 0; i < 4; ++i) r.holds(std::string(names[i]) + " tangent to X", tangency(x, lines[i]));

  const std::vector<ConfocalMember> rs = confocal_through(family, p).smooth;
  const std::vector<ConfocalMember> gs = confocal_through(family, s).smooth;
  if (rs.size() != 2 || gs.size() != 2) throw Error(ErrorCode::DegenerateQuadrilateral, "expected two members");
  // Meets of the tangent pairs for every member choice; pick the pair with
  // the two meets farthest apart (incompatible) and closest (compatible).
  std::size_t bad_r = 0, bad_g = 0, good_r = 0, good_g = 0;
  double worst = -1.0;
  double best = INFINITY;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double d = projective_distance(tangent_meet(rs[i].conic, p, q, tol), tangent_meet(gs[j].conic, s, t, tol));
      if (d > worst) {
        worst = d;
        bad_r = i;
        bad_g = j;
      }
      if (d < best) {
        best = d;
        good_r = i;
        good_g = j;
      }
    }
  }
  const auto tangents = [&](std::size_t ri, std::size_t gi) {
    return std::array<HomLine, 4>{tangent_at(rs[ri].conic, p, tol), tangent_at(rs[ri].conic, q, tol),
                                  tangent_at(gs[gi].conic, s, tol), tangent_at(gs[gi].conic, t, tol)};
  };
  const Conic& rr = rs[bad_r].conic;
  const Conic& gg = gs[bad_g].conic;
  r.holds("R confocal to X", confocal(x, rr, tol).residual);
  r.holds("G confocal to X", confocal(x, gg, tol).residual);
  r.holds("P on R", evaluate(rr, p));
  r.holds("Q on R", evaluate(rr, q));
  r.holds("S on G", evaluate(gg, s));
  r.holds("T on G", evaluate(gg, t));
  const std::array<HomLine, 4> tb = tangents(bad_r, bad_g);
  constexpr std::array<std::array<int, 3>, 4> triples{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  constexpr std::array<const char*, 4> tn{"tP", "tQ", "tS", "tT"};
  for (const auto& tr : triples) {
    const std::string label = std::string(tn[tr[0]]) + "," + tn[tr[1]] + "," + tn[tr[2]];
    r.fails("incompatible: " + label + " concurrent",
            concurrent(tb[tr[0]], tb[tr[1]], tb[tr[2]]).residual);
  }
  const std::array<HomLine, 4> tg = tangents(good_r, good_g);
  for (const auto& tr : triples) {
    const std::string label = std::string(tn[tr[0]]) + "," + tn[tr[1]] + "," + tn[tr[2]];
    r.holds("symmetric sibling: " + label + " concurrent", concurrent(tg[tr[0]], tg[tr[1]], tg[tr[2]]).residual);
  }
  r.witness("X", x);
  for (std::size_t i = 0; i < 4; ++i) r.witness(names[i], lines[i]);
  r.witness("P", p);
  r.witness("Q", q);
  r.witness("S", s);
  r.witness("T", t);
  r.witness("R", rr);
  r.witness("G", gg);
  for (std::size_t i = 0; i < 4; ++i) r.witness(tn[i], tb[i]);

  // Generic instance: tangents from two points of one member.
  const Conic gr = family.member(Complex(2.0, 0.0));
  const HomPoint seed = seed_point(gr);
  const HomPoint gp = point_on_conic(gr, seed, 0.37);
  const HomPoint gq = point_on_conic(gr, seed, -1.9);
  const LinePair ab = tangents_from(x, gp);
  const LinePair cd = tangents_from(x, gq);
  const HomPoint gs_pt = meet(ab.first, cd.first);
  const HomPoint gt_pt = meet(ab.second, cd.second);
  const std::vector<ConfocalMember> gsm = confocal_through(family, gs_pt).smooth;
  std::size_t sel = 0;
  for (std::size_t k = 1; k < gsm.size(); ++k) {
    if (evaluate(gsm[k].conic, gt_pt) < evaluate(gsm[sel].conic, gt_pt)) sel = k;
  }
  const Conic& ggen = gsm[sel].conic;
  r.holds("generic: T on G", evaluate(ggen, gt_pt));
  const std::array<HomLine, 4> tgen{tangent_at(gr, gp, tol), tangent_at(gr, gq, tol), tangent_at(ggen, gs_pt, tol),
                                    tangent_at(ggen, gt_pt, tol)};
  for (const auto& tr : triples) {
    const std::string label = std::string(tn[tr[0]]) + "," + tn[tr[1]] + "," + tn[tr[2]];
    r.holds("generic: " + label + " concurrent", concurrent(tgen[tr[0]], tgen[tr[1]], tgen[tr[2]]).residual);
  }
  r.witness("generic R", gr);
  r.witness("generic G", ggen);
  return r;
}

ScenarioReport counterexample_akopyan_bobenko(const AkopyanBobenkoParams& prm, const Tolerance& tol) {
  const Conic alpha = standard_ellipse();
  Mat3 bm = Mat3::Zero();
  bm(0, 0) = 1.0 / (prm.beta_rx * prm.beta_rx);
  bm(1, 1) = 1.0 / (prm.beta_ry * prm.beta_ry);
  bm(1, 2) = bm(2, 1) = -prm.beta_y / (prm.beta_ry * prm.beta_ry);
  bm(2, 2) = prm.beta_y * prm.beta_y / (prm.beta_ry * prm.beta_ry) - 1.0;
  const Conic beta(bm);
  const double tb = radians(prm.b_deg);
  const HomPoint b(2.0 * std::cos(tb), std::sin(tb), 1.0);
  const HomLine ab = tangents_from(beta, b).first;
  const LineIntersection on_ab = intersect_conic_line(alpha, ab);
  const HomPoint a = projective_distance(on_ab.first, b) > projective_distance(on_ab.second, b) ? on_ab.first
                                                                                                  : on_ab.second;
  const auto mirror = [](const HomPoint& v) { return HomPoint(-v[0], v[1], v[2]); };
  const HomPoint c = mirror(b);
  const HomPoint d = mirror(a);
  const HomLine cd = join(c, d);
  const HomLine ac = join(a, c);
  const HomLine bd = join(b, d);

  ScenarioReport r("akopyan_bobenko", tol);
  r.holds("a on alpha", evaluate(alpha, a));
  r.holds("b on alpha", evaluate(alpha, b));
  r.holds("c on alpha", evaluate(alpha, c));
  r.holds("d on alpha", evaluate(alpha, d));
  r.holds("ab tangent to beta", tangency(beta, ab));
  r.holds("cd tangent to beta", tangency(beta, cd));
  const HomPoint t1 = contact_point(beta, ab);
  const HomPoint t2 = contact_point(beta, cd);

  const std::vector<Conic> gammas = pencil_tangent_to(alpha, beta, ac);
  if (gammas.size() != 2) throw Error(ErrorCode::DegenerateQuadrilateral, "expected two pencil members");
  std::array<double, 2> spread{};
  std::array<std::array<HomPoint, 4>, 2> contacts{{{t1, t2, t1, t2}, {t1, t2, t1, t2}}};
  for (std::size_t k = 0; k < 2; ++k) {
    const Conic& g = gammas[k];
    const std::string gk = idx("gamma", k);
    r.holds(gk + " in the pencil of alpha, beta", dependent(alpha, beta, g, tol).residual);
    r.holds(gk + " tangent to ac", tangency(g, ac));
    r.holds(gk + " tangent to bd", tangency(g, bd));
    contacts[k] = {t1, t2, contact_point(g, bd), contact_point(g, ac)};
    spread[k] = max_triple(contacts[k]);
    r.witness(gk, g);
  }
  const std::size_t flawed = spread[0] >= spread[1] ? 0 : 1;
  const std::size_t intended = 1 - flawed;
  r.holds("intended branch: contacts collinear", spread[intended]);
  constexpr std::array<std::array<int, 3>, 4> triples{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  const auto& fc = contacts[flawed];
  for (const auto& tr : triples) {
    r.fails("flawed branch: contacts " + std::to_string(tr[0]) + std::to_string(tr[1]) + std::to_string(tr[2]) +
                " collinear",
            collinear(fc[static_cast<std::size_t>(tr[0])], fc[static_cast<std::size_t>(tr[1])],
                      fc[static_cast<std::size_t>(tr[2])])
                .residual);
  }
  const Conic blue = conic_double_contact(ab, t1, cd, t2, fc[2], tol);
  r.holds("contact conic through the fourth contact", evaluate(blue, fc[3]));
  r.holds("contact conic tangent to bd", tangency(blue, bd));
  r.holds("contact conic tangent to ac", tangency(blue, ac));

  r.witness("alpha", alpha);
  r.witness("beta", beta);
  r.witness("a", a);
  r.witness("b", b);
  r.witness("c", c);
  r.witness("d", d);
  r.witness("ab", ab);
  r.witness("cd", cd);
  r.witness("ac", ac);
  r.witness("bd", bd);
  r.witness("flawed gamma", gammas[flawed]);
  r.witness("intended gamma", gammas[intended]);
  r.witness("contact conic", blue);
  for (std::size_t i = 0; i < 4; ++i) r.witness(idx("T", i + 1), fc[i]);
  return r;
}

}  // namespace projcert
