#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json_writer.hpp"
#include "projcert/harness.hpp"
#include "projcert/random.hpp"

namespace projcert {

namespace {

constexpr std::size_t kMaxFailures = 10;

int bucket_of(double residual) {
  if (residual == 0.0) return 0;
  if (!(residual < 1.0)) return RunReport::kBuckets - 1;
  const int k = static_cast<int>(std::floor(std::log10(residual))) + 21;
  return std::clamp(k, 1, RunReport::kBuckets - 1);
}

std::string describe(std::uint64_t index, std::uint64_t seed, const std::string& what) {
  char head[96];
  std::snprintf(head, sizeof head, "trial %llu (seed %llu): ", static_cast<unsigned long long>(index),
                static_cast<unsigned long long>(seed));
  return head + what;
}

RunReport empty_report(const Config& cfg, std::string_view id) {
  cfg.validate();
  if (!is_theorem_id(id)) throw Error(ErrorCode::UnknownTheorem, "unknown theorem id " + std::string(id));
  RunReport r;
  r.theorem = std::string(id);
  r.seed = cfg.seed;
  r.eps = cfg.eps;
  r.sep = cfg.sep;
  return r;
}

void absorb(RunReport& r, std::uint64_t index, const TrialOutcome& t) {
  ++r.trials;
  if (t.certified) ++r.certified;
  else ++r.failed;
  if (t.error) ++r.errors;
  r.max_holds = std::max(r.max_holds, t.max_holds);
  r.min_fails = std::min(r.min_fails, t.min_fails);
  if (!t.error) ++r.histogram[static_cast<std::size_t>(bucket_of(t.max_holds))];
  if (!t.certified && r.failures.size() < kMaxFailures) {
    r.failures.push_back(describe(index, trial_seed(r.seed, index), t.failure));
  }
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) { return mix_seed(base, index); }

TrialOutcome run_trial(std::string_view id, std::uint64_t seed, const Tolerance& tol) {
  TrialOutcome out;
  try {
    const ScenarioReport r = check_scenario(random_instance(id, seed), tol);
    out.certified = r.certified();
    for (const Check& c : r.checks()) {
      if (c.expect == Expect::Holds) out.max_holds = std::max(out.max_holds, c.residual);
      if (c.expect == Expect::Fails) out.min_fails = std::min(out.min_fails, c.residual);
      if (!c.passed && out.failure.empty()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " = %.3e (%s)", c.residual, std::string(to_string(c.expect)).c_str());
        out.failure = c.label + buf;
      }
    }
  } catch (const Error& e) {
    out.certified = false;
    out.error = true;
    out.failure = e.what();
  }
  return out;
}

RunReport run_serial(const Config& cfg, std::string_view id) {
  RunReport r = empty_report(cfg, id);
  const Tolerance tol = cfg.tolerance();
  for (int i = 0; i < cfg.trials; ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    absorb(r, index, run_trial(id, trial_seed(cfg.seed, index), tol));
  }
  return r;
}

RunReport run_parallel(const Config& cfg, std::string_view id) {
  RunReport r = empty_report(cfg, id);
  const Tolerance tol = cfg.tolerance();
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < cfg.trials; ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    outcomes[static_cast<std::size_t>(i)] = run_trial(id, trial_seed(cfg.seed, index), tol);
  }
  for (std::size_t i = 0; i < outcomes.size(); ++i) absorb(r, i, outcomes[i]);
  return r;
}

int exit_code(const RunReport& r) { return r.failed == 0 && r.trials > 0 ? 0 : 1; }

std::string to_json(const RunReport& r) {
  detail::JsonWriter w;
  w.begin_object();
  w.key("theorem");
  w.value(r.theorem);
  w.key("seed");
  w.value(r.seed);
  w.key("eps");
  w.value(r.eps);
  w.key("sep");
  w.value(r.sep);
  w.key("trials");
  w.value(r.trials);
  w.key("certified");
  w.value(r.certified);
  w.key("failed");
  w.value(r.failed);
  w.key("errors");
  w.value(r.errors);
  w.key("max_holds_residual");
  w.value(r.max_holds);
  w.key("min_fails_residual");
  w.value(r.min_fails);
  w.key("histogram");
  w.begin_array();
  for (const std::uint64_t h : r.histogram) w.value(h);
  w.end_array();
  w.key("failures");
  w.begin_array();
  for (const std::string& f : r.failures) w.value(f);
  w.end_array();
  w.end_object();
  return w.take();
}

std::string to_text(const RunReport& r) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s: %llu/%llu certified (seed %llu, eps %g, sep %g)\n", r.theorem.c_str(),
                static_cast<unsigned long long>(r.certified), static_cast<unsigned long long>(r.trials),
                static_cast<unsigned long long>(r.seed), r.eps, r.sep);
  out += buf;
  std::snprintf(buf, sizeof buf, "  max Holds residual %.3e, min Fails residual %.3e, errors %llu\n", r.max_holds,
                r.min_fails, static_cast<unsigned long long>(r.errors));
  out += buf;
  out += "  histogram of per-trial max Holds residual:\n";
  for (int k = 0; k < RunReport::kBuckets; ++k) {
    const std::uint64_t n = r.histogram[static_cast<std::size_t>(k)];
    if (n == 0) continue;
    if (k == 0) {
      std::snprintf(buf, sizeof buf, "    %-16s %llu\n", "0", static_cast<unsigned long long>(n));
    } else if (k == RunReport::kBuckets - 1) {
      std::snprintf(buf, sizeof buf, "    %-16s %llu\n", ">= 1e0", static_cast<unsigned long long>(n));
    } else {
      char range[32];
      std::snprintf(range, sizeof range, "[1e%d, 1e%d)", k - 21, k - 20);
      std::snprintf(buf, sizeof buf, "    %-16s %llu\n", range, static_cast<unsigned long long>(n));
    }
    out += buf;
  }
  for (const std::string& f : r.failures) out += "  FAIL " + f + "\n";
  out += exit_code(r) == 0 ? "CERTIFIED\n" : "NOT CERTIFIED\n";
  return out;
}

std::string to_json(const ScenarioReport& r) {
  detail::JsonWriter w;
  w.begin_object();
  w.key("name");
  w.value(r.name());
  w.key("certified");
  w.value(r.certified());
  w.key("eps");
  w.value(r.tolerance().eps);
  w.key("sep");
  w.value(r.tolerance().sep);
  w.key("checks");
  w.begin_array();
  for (const Check& c : r.checks()) {
    w.begin_object();
    w.key("label");
    w.value(c.label);
    w.key("expect");
    w.value(to_string(c.expect));
    w.key("residual");
    w.value(c.residual);
    w.key("limit");
    w.value(c.limit);
    w.key("passed");
    w.value(c.passed);
    w.end_object();
  }
  w.end_array();
  w.key("notes");
  w.begin_array();
  for (const std::string& n : r.notes()) w.value(n);
  w.end_array();
  w.key("witnesses");
  w.begin_array();
  for (const Witness& o : r.witnesses()) detail::write_witness(w, o);
  w.end_array();
  w.end_object();
  return w.take();
}

std::string to_text(const ScenarioReport& r) {
  std::string out = r.name() + "\n";
  char buf[256];
  for (const Check& c : r.checks()) {
    const char* mark = c.expect == Expect::Observe ? "  .  " : (c.passed ? "  ok " : "  BAD");
    std::snprintf(buf, sizeof buf, "%s %-7s %.3e  %s\n", mark, std::string(to_string(c.expect)).c_str(), c.residual,
                  c.label.c_str());
    out += buf;
  }
  for (const std::string& n : r.notes()) out += "  note: " + n + "\n";
  out += r.certified() ? "CERTIFIED\n" : "NOT CERTIFIED\n";
  return out;
}

}  // namespace projcert
