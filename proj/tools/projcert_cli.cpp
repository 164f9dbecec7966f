#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "projcert/harness.hpp"

using namespace projcert;

namespace {

constexpr int kUsageError = 2;

int cmd_verify(const std::string& id, const Config& cfg, bool serial) {
  const RunReport r = serial ? run_serial(cfg, id) : run_parallel(cfg, id);
  std::cout << (cfg.format == Config::Format::Json ? to_json(r) : to_text(r));
  return exit_code(r);
}

int cmd_counterexample(const std::string& id, const Tolerance& tol, bool json, const std::string& save) {
  const ScenarioReport r = run_counterexample(id, tol);
  std::cout << (json ? to_json(r) : to_text(r));
  if (!save.empty()) save_scenario(scenario_from_report(id, r), save);
  return r.certified() ? 0 : 1;
}

int cmd_check(const std::string& path, const Tolerance& tol, bool json) {
  const ScenarioReport r = check_scenario(load_scenario(path), tol);
  std::cout << (json ? to_json(r) : to_text(r));
  return r.certified() ? 0 : 1;
}

int cmd_list() {
  for (const TheoremInfo& t : theorem_ids()) {
    std::printf("%-16s %s%s\n", std::string(t.id).c_str(), std::string(t.summary).c_str(),
                t.has_negative ? " [negative control]" : "");
  }
  for (const std::string_view id : counterexample_ids()) std::printf("%-16s counterexample\n", std::string(id).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projcert: certified checks of confocal-conic and Cayley-Bacharach incidence theorems"};
  app.require_subcommand(1);

  Config cfg;
  std::string id;
  bool json = false;
  bool serial = false;
  auto* verify = app.add_subcommand("verify", "run randomized trials of a theorem");
  verify->add_option("id", id, "theorem id (see list)")->required();
  verify->add_option("--trials", cfg.trials, "number of trials")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "base seed");
  verify->add_option("--eps", cfg.eps, "Holds threshold");
  verify->add_option("--sep", cfg.sep, "Fails threshold is sep * eps");
  verify->add_flag("--json", json, "JSON report");
  verify->add_flag("--serial", serial, "single-threaded reference loop");

  std::string cx_id;
  std::string save;
  auto* cx = app.add_subcommand("counterexample", "build and certify a counterexample");
  cx->add_option("id", cx_id, "darboux | nontheorem1 | akopyan-bobenko")->required();
  cx->add_option("--eps", cfg.eps, "Holds threshold");
  cx->add_option("--sep", cfg.sep, "Fails threshold is sep * eps");
  cx->add_flag("--json", json, "JSON report");
  cx->add_option("--save", save, "write the witnesses as a scenario file");

  std::string scenario_path;
  std::string out_path;
  auto* exp = app.add_subcommand("export", "draw a scenario file as SVG");
  exp->add_option("--scenario", scenario_path, "scenario JSON")->required();
  exp->add_option("--out", out_path, "output .svg")->required();

  auto* check = app.add_subcommand("check", "run the checker on a scenario file");
  check->add_option("--scenario", scenario_path, "scenario JSON")->required();
  check->add_option("--eps", cfg.eps, "Holds threshold");
  check->add_option("--sep", cfg.sep, "Fails threshold is sep * eps");
  check->add_flag("--json", json, "JSON report");

  std::uint64_t sample_seed = 42;
  bool negative = false;
  auto* sample = app.add_subcommand("sample", "write one random instance as a scenario file");
  sample->add_option("id", id, "theorem id")->required();
  sample->add_option("--seed", sample_seed, "instance seed");
  sample->add_flag("--negative", negative, "negative control instance");
  sample->add_option("--out", out_path, "output .json (stdout when omitted)");

  auto* list = app.add_subcommand("list", "list theorem and counterexample ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (json) cfg.format = Config::Format::Json;
    cfg.validate();
    if (*verify) return cmd_verify(id, cfg, serial);
    if (*cx) return cmd_counterexample(cx_id, cfg.tolerance(), json, save);
    if (*check) return cmd_check(scenario_path, cfg.tolerance(), json);
    if (*exp) {
      export_figure(load_scenario(scenario_path), out_path, cfg.tolerance());
      return 0;
    }
    if (*sample) {
      const std::string text = scenario_to_json(random_instance(id, sample_seed, negative));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream(out_path, std::ios::binary) << text;
      }
      return 0;
    }
    if (*list) return cmd_list();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
