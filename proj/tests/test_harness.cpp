#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

using namespace projcert;
using namespace testing;

TEST_CASE("random_instance is deterministic") {
  for (const TheoremInfo& t : theorem_ids()) {
    CAPTURE(t.id);
    CHECK(scenario_to_json(random_instance(t.id, 9)) == scenario_to_json(random_instance(t.id, 9)));
    CHECK(scenario_to_json(random_instance(t.id, 9)) != scenario_to_json(random_instance(t.id, 10)));
  }
}

TEST_CASE("unknown ids") {
  CHECK(error_of([] { random_instance("thm7", 1); }) == ErrorCode::UnknownTheorem);
  CHECK(error_of([] { run_counterexample("nope"); }) == ErrorCode::UnknownTheorem);
  CHECK_FALSE(is_theorem_id("darboux"));
  CHECK(theorem_ids().size() == 11);
  CHECK(counterexample_ids().size() == 3);
}

TEST_CASE("every theorem id certifies a handful of trials") {
  for (const TheoremInfo& t : theorem_ids()) {
    Config cfg;
    cfg.trials = 20;
    const RunReport r = run_serial(cfg, t.id);
    CHECK_MESSAGE(exit_code(r) == 0, t.id);
    CHECK(r.certified == 20);
  }
}

TEST_CASE("serial and parallel runs agree") {
  for (const char* id : {"thm2", "cb4", "p5"}) {
    Config cfg;
    cfg.trials = 64;
    cfg.seed = 7;
    CHECK(to_json(run_serial(cfg, id)) == to_json(run_parallel(cfg, id)));
  }
}

TEST_CASE("json reports are byte-identical across runs") {
  Config cfg;
  cfg.trials = 50;
  cfg.seed = 123;
  CHECK(to_json(run_parallel(cfg, "thm1")) == to_json(run_parallel(cfg, "thm1")));
  CHECK(to_json(run_counterexample("darboux")) == to_json(run_counterexample("darboux")));
}

TEST_CASE("histogram totals") {
  Config cfg;
  cfg.trials = 30;
  const RunReport r = run_serial(cfg, "thm3");
  std::uint64_t total = 0;
  for (std::uint64_t h : r.histogram) total += h;
  CHECK(total == r.trials - r.errors);
  CHECK(r.max_holds <= cfg.eps);
}

TEST_CASE("an impossible tolerance is reported") {
  Config cfg;
  cfg.trials = 10;
  cfg.eps = 1e-15;
  const RunReport r = run_serial(cfg, "thm4");
  CHECK(exit_code(r) != 0);
  CHECK(r.failures.size() <= 10);
  CHECK(to_text(r).find("NOT CERTIFIED") != std::string::npos);
}

TEST_CASE("Config::validate") {
  Config cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.trials = 0;
  CHECK(error_of([&] { cfg.validate(); }) == ErrorCode::InvalidInput);
  cfg.trials = 1;
  cfg.eps = 0.0;
  CHECK(error_of([&] { cfg.validate(); }) == ErrorCode::InvalidInput);
  cfg.eps = 1e-2;
  cfg.sep = 1e3;
  CHECK(error_of([&] { cfg.validate(); }) == ErrorCode::InvalidInput);
}

TEST_CASE("scenario json round trip is exact") {
  for (const TheoremInfo& t : theorem_ids()) {
    const Scenario s = random_instance(t.id, 31, t.has_negative);
    const std::string text = scenario_to_json(s);
    const Scenario back = scenario_from_json(text);
    CHECK(scenario_to_json(back) == text);
    CHECK(to_json(check_scenario(back)) == to_json(check_scenario(s)));
  }
  const Scenario d = scenario_from_report("darboux", run_counterexample("darboux"));
  CHECK(scenario_to_json(scenario_from_json(scenario_to_json(d))) == scenario_to_json(d));
}

TEST_CASE("scenario json parse errors") {
  for (const char* bad : {"", "{", "[]", R"({"theorem": 3})",
                          R"({"theorem": "thm2", "objects": [{"name": "P", "kind": "blob", "coords": []}]})",
                          R"({"theorem": "thm2", "objects": [{"name": "P", "kind": "point", "coords": [[1,0]]}]})"}) {
    CAPTURE(bad);
    CHECK(error_of([&] { scenario_from_json(bad); }) == ErrorCode::ParseError);
  }
}

TEST_CASE("save and load") {
  const auto path = std::filesystem::temp_directory_path() / "projcert_test_scenario.json";
  const Scenario s = random_instance("thm5", 4);
  save_scenario(s, path.string());
  CHECK(scenario_to_json(load_scenario(path.string())) == scenario_to_json(s));
  std::filesystem::remove(path);
  CHECK(error_of([&] { load_scenario(path.string()); }) == ErrorCode::ParseError);
}

TEST_CASE("svg export") {
  const Scenario s = random_instance("thm2", 2);
  const std::string svg = render_svg(s);
  CHECK(svg.starts_with("<svg"));
  CHECK(svg == render_svg(s));
  CHECK(svg.find("<polyline") != std::string::npos);
  const Scenario d = scenario_from_report("darboux", run_counterexample("darboux"));
  CHECK(render_svg(d).size() > svg.size() / 2);
}

TEST_CASE("svg export needs something real") {
  Scenario s;
  s.theorem = "none";
  s.add("I", HomPoint(1.0, kI, 0.0));
  s.add("J", HomPoint(1.0, -kI, 0.0));
  s.add("empty", diag_conic(1.0, 1.0, 1.0));
  CHECK(error_of([&] { render_svg(s); }) == ErrorCode::NothingRealToDraw);
}

TEST_CASE("report text and json") {
  const ScenarioReport r = run_counterexample("nontheorem1");
  const std::string j = to_json(r);
  CHECK(j.find("\"certified\": true") != std::string::npos);
  CHECK(to_text(r).find("incompatible") != std::string::npos);
}
