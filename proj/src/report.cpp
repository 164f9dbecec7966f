#include "projcert/report.hpp"

#include <cmath>

namespace projcert {

std::string_view to_string(Expect e) {
  switch (e) {
    case Expect::Holds: return "holds";
    case Expect::Fails: return "fails";
    case Expect::Observe: return "observe";
  }
  return "observe";
}

ScenarioReport::ScenarioReport(std::string name, const Tolerance& tol) : name_(std::move(name)), tol_(tol) {}

void ScenarioReport::add(std::string label, double residual, Expect expect, double limit) {
  Check c{std::move(label), residual, expect, limit, false};
  switch (expect) {
    case Expect::Holds: c.passed = residual <= limit; break;
    case Expect::Fails: c.passed = tol_.fails(residual); break;
    case Expect::Observe: c.passed = true; break;
  }
  checks_.push_back(std::move(c));
}

void ScenarioReport::holds(std::string label, double residual) {
  add(std::move(label), residual, Expect::Holds, tol_.eps);
}

void ScenarioReport::holds(std::string label, double residual, double limit) {
  add(std::move(label), residual, Expect::Holds, limit);
}

void ScenarioReport::fails(std::string label, double residual) {
  add(std::move(label), residual, Expect::Fails, tol_.sep * tol_.eps);
}

void ScenarioReport::observe(std::string label, double residual) {
  add(std::move(label), residual, Expect::Observe, 0.0);
}

void ScenarioReport::witness(std::string name, GeomObject object) {
  witnesses_.push_back({std::move(name), std::move(object)});
}

void ScenarioReport::note(std::string text) { notes_.push_back(std::move(text)); }

void ScenarioReport::merge(const ScenarioReport& other, std::string_view prefix) {
  const std::string p(prefix);
  for (const Check& c : other.checks_) {
    Check copy = c;
    copy.label = p + c.label;
    checks_.push_back(std::move(copy));
  }
  for (const Witness& w : other.witnesses_) witnesses_.push_back({p + w.name, w.object});
  for (const std::string& n : other.notes_) notes_.push_back(p + n);
}

bool ScenarioReport::certified() const {
  for (const Check& c : checks_) {
    if (!c.passed) return false;
  }
  return true;
}

const Check& ScenarioReport::check(std::string_view label) const {
  for (const Check& c : checks_) {
    if (c.label == label) return c;
  }
  throw Error(ErrorCode::InvalidInput, "no check labelled " + std::string(label));
}

bool ScenarioReport::has_check(std::string_view label) const {
  for (const Check& c : checks_) {
    if (c.label == label) return true;
  }
  return false;
}

bool ScenarioReport::has_witness(std::string_view name) const {
  for (const Witness& w : witnesses_) {
    if (w.name == name) return true;
  }
  return false;
}

}  // namespace projcert
