#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "projcert/conics.hpp"

namespace projcert {

enum class Expect { Holds, Fails, Observe };

struct Check {
  std::string label;
  double residual = 0.0;
  Expect expect = Expect::Holds;
  /// Upper bound for Holds checks (eps unless the check pins its own).
  double limit = 0.0;
  bool passed = false;
};

using GeomObject = std::variant<HomPoint, HomLine, Conic>;

struct Witness {
  std::string name;
  GeomObject object;
};

/// Residuals, verdicts and witness objects of one scenario. The report is
/// certified iff every Holds check is <= its limit and every Fails check is
/// >= sep * eps.
class ScenarioReport {
 public:
  explicit ScenarioReport(std::string name, const Tolerance& tol = {});

  void holds(std::string label, double residual);
  void holds(std::string label, double residual, double limit);
  void fails(std::string label, double residual);
  void observe(std::string label, double residual);
  void witness(std::string name, GeomObject object);
  void note(std::string text);
  /// Appends the checks, witnesses and notes of `other`, prefixing labels.
  void merge(const ScenarioReport& other, std::string_view prefix = {});

  bool certified() const;
  const std::string& name() const { return name_; }
  const Tolerance& tolerance() const { return tol_; }
  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<Witness>& witnesses() const { return witnesses_; }
  const std::vector<std::string>& notes() const { return notes_; }

  /// Throws InvalidInput when the label is missing.
  const Check& check(std::string_view label) const;
  bool has_check(std::string_view label) const;
  double residual(std::string_view label) const { return check(label).residual; }

  template <class T>
  const T& get(std::string_view name) const {
    for (const Witness& w : witnesses_) {
      if (w.name == name) {
        if (const T* p = std::get_if<T>(&w.object)) return *p;
      }
    }
    throw Error(ErrorCode::InvalidInput, "no witness named " + std::string(name));
  }
  bool has_witness(std::string_view name) const;

 private:
  void add(std::string label, double residual, Expect expect, double limit);

  std::string name_;
  Tolerance tol_;
  std::vector<Check> checks_;
  std::vector<Witness> witnesses_;
  std::vector<std::string> notes_;
};

std::string_view to_string(Expect e);

}  // namespace projcert
