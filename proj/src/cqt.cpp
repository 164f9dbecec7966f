#include <algorithm>
#include <cmath>
#include <string>

#include "projcert/theorems.hpp"

namespace projcert {

namespace {

void require_distinct(const HomPoint& p, const HomPoint& q) {
  if (projective_distance(p, q) < 1e-8) throw Error(ErrorCode::CoincidentPoints, "P and Q coincide");
}

void require_not_focus(const Conic& x, const HomPoint& p) {
  std::vector<HomPoint> f;
  if (is_circle(x)) {
    f.push_back(circle_center(x));
  } else {
    const FociResult r = foci(x);
    f = {r.real_pair.first, r.real_pair.second, r.complex_pair.first, r.complex_pair.second};
  }
  for (const HomPoint& q : f) {
    if (projective_distance(p, q) < kMultiplicityTol) throw Error(ErrorCode::FocusInput, "point is a focus");
  }
}

HomPoint finite_meet(const HomLine& l, const HomLine& m) {
  const HomPoint p = meet(l, m);
  if (std::abs(canonical(p.vec())[2]) < 1e-12) throw Error(ErrorCode::ParallelTangents, "tangents are parallel");
  return p;
}

std::string branch_label(std::size_t k, const std::string& what) { return "branch " + std::to_string(k) + ": " + what; }

/// The tangent from m to c other than `known`, and its contact point.
HomPoint second_contact(const Conic& c, const HomPoint& m, const HomLine& known) {
  const LinePair t = tangents_from(c, m);
  const double d0 = projective_distance(t.first, known);
  const double d1 = projective_distance(t.second, known);
  if (std::max(d0, d1) < 1e-8) throw Error(ErrorCode::NoSecondTangent, "point lies on the conic");
  return contact_point(c, d0 >= d1 ? t.first : t.second);
}

struct VertexPair {
  const char* name;
  int l0, l1, m0, m1;
};

constexpr std::array<VertexPair, 3> kPairs{{{"P,Q", 0, 1, 2, 3}, {"S,T", 0, 2, 1, 3}, {"U,V", 1, 2, 0, 3}}};

void add_line_hypotheses(ScenarioReport& r, const QuadScenario& s) {
  constexpr std::array<const char*, 4> names{"a", "b", "c", "d"};
  for (std::size_t i = 0; i < 4; ++i) {
    r.holds(std::string(names[i]) + " tangent to X", tangency(s.X, s.lines[i]));
  }
}

/// Smallest member residual of q over the smooth confocal members through p.
struct BranchScan {
  double best = INFINITY;
  std::size_t best_index = 0;
  std::size_t containing = 0;
  std::vector<ConfocalMember> members;
};

BranchScan scan_branches(ScenarioReport& r, const Conic& x, const HomPoint& p, const HomPoint& q,
                         const std::string& prefix) {
  BranchScan out;
  out.members = confocal_through(ConfocalFamily(x), p).smooth;
  for (std::size_t k = 0; k < out.members.size(); ++k) {
    const double res = evaluate(out.members[k].conic, q);
    r.observe(prefix + branch_label(k, "second point on member"), res);
    if (res < out.best) {
      out.best = res;
      out.best_index = k;
    }
    if (r.tolerance().holds(res)) ++out.containing;
  }
  return out;
}

}  // namespace

ScenarioReport cqt_forward(const Conic& X, const Conic& R, const HomPoint& P, const HomPoint& Q,
                           const Tolerance& tol) {
  require_distinct(P, Q);
  require_not_focus(X, P);
  require_not_focus(X, Q);
  ScenarioReport r("cqt_forward", tol);
  r.holds("R confocal to X", confocal(X, R, tol).residual);
  r.holds("P on R", evaluate(R, P));
  r.holds("Q on R", evaluate(R, Q));
  const HomLine tp = tangent_at(R, P, tol);
  const HomLine tq = tangent_at(R, Q, tol);
  const HomPoint m = finite_meet(tp, tq);
  const LinePair ab = tangents_from(X, P);
  const LinePair cd = tangents_from(X, Q);
  const Conic circle = circle_from_center_tangent(m, ab.first, tol);
  r.observe("circle tangent to a", tangency(circle, ab.first));
  r.holds("circle tangent to b", tangency(circle, ab.second));
  r.holds("circle tangent to c", tangency(circle, cd.first));
  r.holds("circle tangent to d", tangency(circle, cd.second));
  r.witness("X", X);
  r.witness("R", R);
  r.witness("P", P);
  r.witness("Q", Q);
  r.witness("tP", tp);
  r.witness("tQ", tq);
  r.witness("M", normalize(m));
  r.witness("a", ab.first);
  r.witness("b", ab.second);
  r.witness("c", cd.first);
  r.witness("d", cd.second);
  r.witness("circle", circle);
  return r;
}

ScenarioReport cqt_backward(const Conic& X, const Conic& circle, std::span<const HomLine, 4> lines,
                            const Tolerance& tol) {
  constexpr std::array<const char*, 4> names{"a", "b", "c", "d"};
  ScenarioReport r("cqt_backward", tol);
  for (std::size_t i = 0; i < 4; ++i) {
    const double tx = tangency(X, lines[i]);
    const double tc = tangency(circle, lines[i]);
    if (!tol.holds(tx) || !tol.holds(tc)) {
      throw Error(ErrorCode::NotTangent, std::string("line ") + names[i] + " is not tangent to both conics");
    }
    r.holds(std::string(names[i]) + " tangent to X", tx);
    r.holds(std::string(names[i]) + " tangent to circle", tc);
  }
  const HomPoint m = circle_center(circle, tol);
  HomPoint p = m;
  HomPoint q = m;
  try {
    p = meet(lines[0], lines[1]);
    q = meet(lines[2], lines[3]);
  } catch (const Error&) {
    throw Error(ErrorCode::DegenerateQuadrilateral, "coincident tangent lines");
  }
  if (projective_distance(p, q) < 1e-8) throw Error(ErrorCode::DegenerateQuadrilateral, "P and Q coincide");
  const HomLine mp = join(m, p);
  const HomLine mq = join(m, q);

  const ConfocalSolutions sols = confocal_through(ConfocalFamily(X), p);
  if (sols.smooth.empty()) throw Error(ErrorCode::DegenerateQuadrilateral, "no smooth confocal member through P");
  std::size_t sel = 0;
  double best = INFINITY;
  for (std::size_t k = 0; k < sols.smooth.size(); ++k) {
    const HomLine tk = tangent_at(sols.smooth[k].conic, p, tol);
    const double res = incident(m, tk).residual;
    r.observe(branch_label(k, "tangent at P through M"), res);
    if (res < best) {
      best = res;
      sel = k;
    }
  }
  const Conic& member = sols.smooth[sel].conic;
  r.holds("selected member tangent at P through M", best);
  r.holds("Q on selected member", evaluate(member, q));
  r.holds("selected member tangent at Q through M", incident(m, tangent_at(member, q, tol)).residual);

  // Fifth point for the double-contact conic: the candidate farthest from
  // both tangent lines.
  HomPoint witness_point = point_on_conic(member, p, 1.0);
  double clearance = -1.0;
  for (const double t : {1.0, -1.0, 3.0, -3.0, 0.3, -0.3, 10.0, -10.0}) {
    const HomPoint w = point_on_conic(member, p, t);
    const double c = std::min(incident(w, mp).residual, incident(w, mq).residual);
    if (c > clearance) {
      clearance = c;
      witness_point = w;
    }
  }
  const Conic rr = conic_double_contact(mp, p, mq, q, witness_point, tol);
  r.holds("R confocal to X", confocal(X, rr, tol).residual);
  r.holds("R tangent to M v P", tangency(rr, mp));
  r.holds("R tangent to M v Q", tangency(rr, mq));
  r.holds("R equals selected member", conic_distance(rr, member));
  r.witness("X", X);
  r.witness("circle", circle);
  r.witness("M", normalize(m));
  r.witness("P", p);
  r.witness("Q", q);
  r.witness("member", member);
  r.witness("R", rr);
  for (std::size_t i = 0; i < 4; ++i) r.witness(names[i], lines[i]);
  return r;
}

ScenarioReport cqt_pure(const QuadScenario& s, const Tolerance& tol) {
  ScenarioReport r("cqt_pure", tol);
  add_line_hypotheses(r, s);
  const HomPoint p = meet(s.a(), s.b());
  const HomPoint q = meet(s.c(), s.d());
  const double ri = circle_condition_residual(s.lines);
  const BranchScan scan = scan_branches(r, s.X, p, q, "");
  if (tol.holds(ri)) {
    r.holds("(i) circle tangent to a,b,c,d", ri);
    r.holds("(ii) P,Q on a confocal conic", scan.best);
    if (scan.containing > 1) r.note("ambiguous: Q lies on every confocal member through P");
    const ScenarioReport fwd = cqt_forward(s.X, scan.members[scan.best_index].conic, p, q, tol);
    r.merge(fwd, "(ii)=>(i) ");
  } else {
    r.fails("(i) circle tangent to a,b,c,d", ri);
    r.fails("(ii) P,Q on a confocal conic", scan.best);
  }
  r.witness("X", s.X);
  r.witness("P", p);
  r.witness("Q", q);
  for (std::size_t k = 0; k < scan.members.size(); ++k) r.witness("R" + std::to_string(k), scan.members[k].conic);
  return r;
}

ScenarioReport cqt_three_conics(const QuadScenario& s, const Tolerance& tol) {
  ScenarioReport r("cqt_three_conics", tol);
  add_line_hypotheses(r, s);
  const double ri = circle_condition_residual(s.lines);
  const bool circumscribed = tol.holds(ri);
  if (circumscribed) {
    r.holds("(i) circle tangent to a,b,c,d", ri);
  } else {
    r.fails("(i) circle tangent to a,b,c,d", ri);
  }
  for (const VertexPair& vp : kPairs) {
    const std::string name(vp.name);
    try {
      const HomPoint p1 = meet(s.lines[static_cast<std::size_t>(vp.l0)], s.lines[static_cast<std::size_t>(vp.l1)]);
      const HomPoint p2 = meet(s.lines[static_cast<std::size_t>(vp.m0)], s.lines[static_cast<std::size_t>(vp.m1)]);
      if (projective_distance(p1, p2) < 1e-8) throw Error(ErrorCode::DegenerateQuadrilateral, "pair coincides");
      const BranchScan scan = scan_branches(r, s.X, p1, p2, name + " ");
      const std::string label = "pair " + name + " on a confocal conic";
      if (circumscribed) {
        r.holds(label, scan.best);
      } else {
        r.fails(label, scan.best);
      }
      r.witness(name.substr(0, 1), p1);
      r.witness(name.substr(2, 1), p2);
      if (!scan.members.empty()) r.witness("member " + name, scan.members[scan.best_index].conic);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateMeet && e.code() != ErrorCode::DegenerateQuadrilateral &&
          e.code() != ErrorCode::FocusInput) {
        throw;
      }
      r.note("degenerate pair " + name);
    }
  }
  r.witness("X", s.X);
  return r;
}

ScenarioReport cqt_tangent2(const Conic& X, const Conic& R, const Conic& G, const HomPoint& P, const HomPoint& S,
                            const Tolerance& tol) {
  const HomLine ps = join(P, S);
  const double t0 = tangency(X, ps);
  if (!tol.holds(t0)) throw Error(ErrorCode::NotTangent, "P v S is not tangent to X");
  ScenarioReport r("cqt_tangent2", tol);
  r.holds("P v S tangent to X", t0);
  r.holds("R confocal to X", confocal(X, R, tol).residual);
  r.holds("G confocal to X", confocal(X, G, tol).residual);
  r.holds("P on R", evaluate(R, P));
  r.holds("S on G", evaluate(G, S));
  const HomLine tp = tangent_at(R, P, tol);
  const HomLine ts = tangent_at(G, S, tol);
  const HomPoint m = finite_meet(tp, ts);
  const HomPoint q = second_contact(R, m, tp);
  const HomPoint t = second_contact(G, m, ts);
  if (imaginary_part(q.vec()) > 1e-9 || imaginary_part(t.vec()) > 1e-9) {
    r.note("complex contact points; tangencies evaluated algebraically");
  }
  r.holds("Q v T tangent to X", tangency(X, join(q, t)));
  r.holds("P v T tangent to X", tangency(X, join(P, t)));
  r.holds("Q v S tangent to X", tangency(X, join(q, S)));
  r.witness("X", X);
  r.witness("R", R);
  r.witness("G", G);
  r.witness("P", P);
  r.witness("S", S);
  r.witness("M", normalize(m));
  r.witness("Q", q);
  r.witness("T", t);
  return r;
}

ScenarioReport billiard_bisector(const Conic& X, const Conic& member, const HomPoint& P, const Tolerance& tol) {
  ScenarioReport r("billiard_bisector", tol);
  r.holds("member confocal to X", confocal(X, member, tol).residual);
  r.holds("P on member", evaluate(member, P));
  const LinePair ab = tangents_from(X, P);
  const LinePair bis = angle_bisectors(ab.first, ab.second);
  const HomLine tp = tangent_at(member, P, tol);
  const double d0 = projective_distance(tp, bis.first);
  const double d1 = projective_distance(tp, bis.second);
  r.observe("tangent vs first bisector", d0);
  r.observe("tangent vs second bisector", d1);
  r.holds("tangent is a bisector", std::min(d0, d1));
  r.witness("X", X);
  r.witness("member", member);
  r.witness("P", P);
  r.witness("a", ab.first);
  r.witness("b", ab.second);
  r.witness("tangent", tp);
  return r;
}

// ---------------------------------------------------------------------------

std::vector<Pairing> pairings_of(const Conic& X, const Conic& R) {
  const ConicIntersection in = intersect_conics(X, R);
  for (int m : in.multiplicity) {
    if (m != 1) throw Error(ErrorCode::DegeneratePairing, "conics do not meet in four distinct points");
  }
  const auto& p = in.points;
  return {{join(p[0], p[1]), join(p[2], p[3])},
          {join(p[0], p[2]), join(p[1], p[3])},
          {join(p[0], p[3]), join(p[1], p[2])}};
}

ScenarioReport cqt_primal(const Conic& X, const Conic& R, const HomPoint& P, const HomPoint& Q,
                          const Pairing& pairing, const Tolerance& tol) {
  if (conic_distance(X, R) < 1e-10) throw Error(ErrorCode::InvalidInput, "X and R coincide");
  require_distinct(P, Q);
  const ConicIntersection in = intersect_conics(X, R);
  for (int m : in.multiplicity) {
    if (m != 1) throw Error(ErrorCode::DegeneratePairing, "conics do not meet in four distinct points");
  }
  // Each pairing line must carry two base points and the two lines must
  // split the four.
  std::array<double, 4> on_i{};
  std::array<double, 4> on_j{};
  int count_i = 0;
  int count_j = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    on_i[k] = incident(in.points[k], pairing.I).residual;
    on_j[k] = incident(in.points[k], pairing.J).residual;
    if (on_i[k] < 1e-7) ++count_i;
    if (on_j[k] < 1e-7) ++count_j;
    if (on_i[k] < 1e-7 && on_j[k] < 1e-7) {
      throw Error(ErrorCode::DegeneratePairing, "a base point lies on both pairing lines");
    }
  }
  if (count_i != 2 || count_j != 2) {
    throw Error(ErrorCode::DegeneratePairing, "pairing lines must each pass through two base points");
  }
  ScenarioReport r("cqt_primal", tol);
  std::sort(on_i.begin(), on_i.end());
  std::sort(on_j.begin(), on_j.end());
  r.holds("I through two base points", on_i[1]);
  r.holds("J through two base points", on_j[1]);
  r.holds("P on R", evaluate(R, P));
  r.holds("Q on R", evaluate(R, Q));

  const HomLine tp = tangent_at(R, P, tol);
  const HomLine tq = tangent_at(R, Q, tol);
  const LineIntersection bp = intersect_conic_line(X, tp);
  const LineIntersection bq = intersect_conic_line(X, tq);
  const std::array<HomPoint, 4> blue{bp.first, bp.second, bq.first, bq.second};
  const HomLine k = join(P, Q);
  const HomPoint gi = meet(k, pairing.I);
  const HomPoint gj = meet(k, pairing.J);
  if (projective_distance(gi, gj) < 1e-8) throw Error(ErrorCode::DegeneratePairing, "P v Q passes through I ^ J");
  const Conic c = conic_double_contact(pairing.I, gi, pairing.J, gj, blue[0], tol);
  r.observe("C through blue 0", evaluate(c, blue[0]));
  r.holds("C through blue 1", evaluate(c, blue[1]));
  r.holds("C through blue 2", evaluate(c, blue[2]));
  r.holds("C through blue 3", evaluate(c, blue[3]));
  r.observe("C tangent to I", tangency(c, pairing.I));
  r.observe("C tangent to J", tangency(c, pairing.J));
  r.witness("X", X);
  r.witness("R", R);
  r.witness("P", P);
  r.witness("Q", Q);
  r.witness("I", pairing.I);
  r.witness("J", pairing.J);
  r.witness("tP", tp);
  r.witness("tQ", tq);
  r.witness("k", k);
  r.witness("GI", gi);
  r.witness("GJ", gj);
  for (std::size_t i = 0; i < 4; ++i) r.witness("blue" + std::to_string(i), blue[i]);
  r.witness("C", c);
  return r;
}

ScenarioReport cqt_projective(const ProjectiveScenario& s, const Tolerance& tol) {
  ScenarioReport r("cqt_projective", tol);
  for (std::size_t i = 0; i < 4; ++i) {
    r.holds("t" + std::to_string(i + 1) + " tangent to X", tangency(s.X, s.t[i]));
    r.holds("t" + std::to_string(i + 1) + " tangent to R", tangency(s.R, s.t[i]));
  }
  r.holds("P on R", evaluate(s.R, s.P));
  r.holds("Q on R", evaluate(s.R, s.Q));

  // Into the dual plane: tangent lines become points, points become lines.
  const Conic xd(adjugate(s.X.matrix()));
  const Conic rd(adjugate(s.R.matrix()));
  const HomLine tp = tangent_at(s.R, s.P, tol);
  const HomLine tq = tangent_at(s.R, s.Q, tol);
  const HomPoint pd(tp.vec());
  const HomPoint qd(tq.vec());
  const Pairing pairing{HomLine(s.I.vec()), HomLine(s.J.vec())};
  const ScenarioReport primal = cqt_primal(xd, rd, pd, qd, pairing, tol);
  r.merge(primal, "dual plane: ");

  const Conic c(adjugate(primal.get<Conic>("C").matrix()));
  const LinePair ab = tangents_from(s.X, s.P);
  const LinePair cd = tangents_from(s.X, s.Q);
  r.holds("C through I", evaluate(c, s.I));
  r.holds("C through J", evaluate(c, s.J));
  r.holds("C tangent to a", tangency(c, ab.first));
  r.holds("C tangent to b", tangency(c, ab.second));
  r.holds("C tangent to c", tangency(c, cd.first));
  r.holds("C tangent to d", tangency(c, cd.second));
  const HomLine ti = tangent_at(c, s.I, tol);
  const HomLine tj = tangent_at(c, s.J, tol);
  r.holds("tangents at I, J, P concurrent", concurrent(ti, tj, tp).residual);
  r.holds("tangents at I, J, Q concurrent", concurrent(ti, tj, tq).residual);
  r.witness("X", s.X);
  r.witness("R", s.R);
  r.witness("C", c);
  r.witness("I", s.I);
  r.witness("J", s.J);
  r.witness("P", s.P);
  r.witness("Q", s.Q);
  return r;
}

}  // namespace projcert
