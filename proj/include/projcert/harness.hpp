#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "projcert/report.hpp"
#include "projcert/theorems.hpp"

namespace projcert {

struct Config {
  enum class Format { Text, Json };

  double eps = 1e-9;
  double sep = 1e4;
  int trials = 1000;
  std::uint64_t seed = 42;
  Format format = Format::Text;

  Tolerance tolerance() const { return {eps, sep}; }
  /// Throws InvalidInput.
  void validate() const;
};

/// Named geometric objects plus metadata; the unit of serialization.
struct Scenario {
  std::string theorem;
  std::vector<Witness> objects;
  std::map<std::string, double> params;
  std::vector<int> branches;

  template <class T>
  const T& get(std::string_view name) const {
    for (const Witness& w : objects) {
      if (w.name == name) {
        if (const T* p = std::get_if<T>(&w.object)) return *p;
      }
    }
    throw Error(ErrorCode::InvalidInput, "scenario has no object named " + std::string(name));
  }
  double param(std::string_view name, double fallback) const;
  void add(std::string name, GeomObject object) { objects.push_back({std::move(name), std::move(object)}); }
};

struct TheoremInfo {
  std::string_view id;
  std::string_view summary;
  bool has_negative;
};

/// thm1 thm2 thm3 thm4 thm5 thm6 cb3 cb4 limit p5 bisector.
const std::vector<TheoremInfo>& theorem_ids();
const std::vector<std::string_view>& counterexample_ids();
bool is_theorem_id(std::string_view id);

/// Deterministic for fixed (id, seed). Negative instances (where supported)
/// violate the theorem's hypothesis so that its conclusion must fail.
/// Throws UnknownTheorem and SamplingExhausted (after 10^4 rejections).
Scenario random_instance(std::string_view id, std::uint64_t seed, bool negative = false);

/// Near-identity projective transform with bounded condition number.
Transform transform_from_seed(std::uint64_t seed);

/// Runs the checker belonging to scenario.theorem (theorem or counterexample id).
ScenarioReport check_scenario(const Scenario& s, const Tolerance& tol = {});

/// Scenario holding the witnesses of a generator report.
Scenario scenario_from_report(std::string theorem, const ScenarioReport& r);

ScenarioReport run_counterexample(std::string_view id, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Trials

struct TrialOutcome {
  bool certified = false;
  bool error = false;
  double max_holds = 0.0;
  double min_fails = INFINITY;
  std::string failure;
};

/// Aggregate of many trials. Merging is associative and commutative except
/// for `failures`, which keeps the first few in trial order.
struct RunReport {
  static constexpr int kBuckets = 22;

  std::string theorem;
  std::uint64_t seed = 0;
  double eps = 0.0;
  double sep = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t certified = 0;
  std::uint64_t failed = 0;
  std::uint64_t errors = 0;
  double max_holds = 0.0;
  double min_fails = INFINITY;
  /// [0]: exact zeros; [k]: Holds residuals in [1e(k-21), 1e(k-20)); the last
  /// bucket also collects everything >= 1.
  std::array<std::uint64_t, kBuckets> histogram{};
  std::vector<std::string> failures;
};

TrialOutcome run_trial(std::string_view id, std::uint64_t trial_seed, const Tolerance& tol);
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

/// Reference loop.
RunReport run_serial(const Config& cfg, std::string_view id);
/// OpenMP loop over trials; identical result to run_serial.
RunReport run_parallel(const Config& cfg, std::string_view id);

/// 0 iff every trial certified.
int exit_code(const RunReport& r);

std::string to_json(const RunReport& r);
std::string to_text(const RunReport& r);
std::string to_json(const ScenarioReport& r);
std::string to_text(const ScenarioReport& r);

// ---------------------------------------------------------------------------
// Serialization and figures

std::string scenario_to_json(const Scenario& s);
/// Throws ParseError.
Scenario scenario_from_json(std::string_view text);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

/// SVG drawing of the real objects of the scenario and of the witnesses of
/// its checker. Throws NothingRealToDraw.
std::string render_svg(const Scenario& s, const Tolerance& tol = {});
void export_figure(const Scenario& s, const std::string& path, const Tolerance& tol = {});

}  // namespace projcert
