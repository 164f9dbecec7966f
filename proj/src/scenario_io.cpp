#include <fstream>
#include <sstream>

#include <json.hpp>

#include "json_writer.hpp"
#include "projcert/harness.hpp"

namespace projcert {

namespace detail {

std::string_view kind_of(const GeomObject& o) {
  switch (o.index()) {
    case 0: return "point";
    case 1: return "line";
    default: return "conic";
  }
}

void write_witness(JsonWriter& w, const Witness& obj) {
  w.begin_object();
  w.key("name");
  w.value(obj.name);
  w.key("kind");
  w.value(kind_of(obj.object));
  w.key("coords");
  w.begin_array();
  const auto emit = [&](const auto& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) w.complex_pair(v[i].real(), v[i].imag());
  };
  if (const auto* p = std::get_if<HomPoint>(&obj.object)) emit(p->vec());
  if (const auto* l = std::get_if<HomLine>(&obj.object)) emit(l->vec());
  if (const auto* c = std::get_if<Conic>(&obj.object)) emit(c->coefficients());
  w.end_array();
  w.end_object();
}

}  // namespace detail

std::string scenario_to_json(const Scenario& s) {
  detail::JsonWriter w;
  w.begin_object();
  w.key("theorem");
  w.value(s.theorem);
  w.key("branches");
  w.begin_array();
  for (const int b : s.branches) w.value(b);
  w.end_array();
  w.key("params");
  w.begin_object();
  for (const auto& [k, v] : s.params) {
    w.key(k);
    w.value(v);
  }
  w.end_object();
  w.key("objects");
  w.begin_array();
  for (const Witness& o : s.objects) detail::write_witness(w, o);
  w.end_array();
  w.end_object();
  return w.take();
}

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_error("coordinate must be a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

GeomObject object_from(const std::string& kind, const json& coords) {
  if (!coords.is_array()) parse_error("coords must be an array");
  const std::size_t want = kind == "conic" ? 6 : 3;
  if (kind != "conic" && kind != "point" && kind != "line") parse_error("unknown object kind '" + kind + "'");
  if (coords.size() != want) parse_error(kind + " needs " + std::to_string(want) + " coordinates");
  if (kind == "conic") {
    Vec6 c;
    for (int i = 0; i < 6; ++i) c[i] = complex_from(coords[static_cast<std::size_t>(i)]);
    return Conic::from_coefficients(c);
  }
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = complex_from(coords[static_cast<std::size_t>(i)]);
  if (kind == "point") return HomPoint(v);
  return HomLine(v);
}

}  // namespace

Scenario scenario_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) parse_error("scenario must be a JSON object");
  Scenario s;
  try {
    if (!j.contains("theorem") || !j["theorem"].is_string()) parse_error("missing theorem id");
    s.theorem = j["theorem"].get<std::string>();
    if (j.contains("branches")) {
      for (const json& b : j["branches"]) s.branches.push_back(b.get<int>());
    }
    if (j.contains("params")) {
      for (const auto& [k, v] : j["params"].items()) s.params[k] = v.get<double>();
    }
    if (!j.contains("objects") || !j["objects"].is_array()) parse_error("missing objects array");
    for (const json& o : j["objects"]) {
      if (!o.is_object() || !o.contains("name") || !o.contains("kind") || !o.contains("coords")) {
        parse_error("object needs name, kind and coords");
      }
      s.add(o["name"].get<std::string>(), object_from(o["kind"].get<std::string>(), o["coords"]));
    }
  } catch (const json::exception& e) {
    parse_error(std::string("malformed scenario: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    parse_error(std::string("invalid object: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << scenario_to_json(s);
}

}  // namespace projcert
