#include "json_codec.hpp"

#include <cmath>

#include "vtkb/ontology_io.hpp"

namespace vtkb::detail {

namespace {

[[noreturn]] void bad(std::string_view where, const std::string& msg,
                      std::vector<std::string> expected = {}) {
  std::string prefix = where.empty() ? "" : std::string(where) + ": ";
  throw RequestError(ErrorCode::kParse, {}, prefix + msg, std::move(expected));
}

std::string path(std::string_view where, std::string_view key) {
  return where.empty() ? std::string(key) : std::string(where) + "." + std::string(key);
}

double require_number(const json& obj, std::string_view key, std::string_view where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_number()) bad(path(where, key), "expected a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) bad(path(where, key), "expected a finite number");
  return d;
}

std::optional<std::string> optional_string(const json& obj, std::string_view key,
                                           std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) bad(path(where, key), "expected a string");
  return it->get<std::string>();
}

Geolocation geolocation_from_json(const json& j, std::string_view where) {
  if (!j.is_object()) bad(where, "expected an object");
  std::string kind = require_string(j, "kind", where);
  if (kind == "Coordinates2D") {
    return Coordinates2D{require_number(j, "x", where), require_number(j, "y", where)};
  }
  if (kind == "Coordinates3D") {
    return Coordinates3D{require_number(j, "x", where), require_number(j, "y", where),
                         require_number(j, "z", where)};
  }
  if (kind == "GeoName") return GeoName{require_string(j, "name", where)};
  if (kind == "ObjectAnchored") return ObjectAnchored{qualify(require_string(j, "object", where))};
  bad(path(where, "kind"), "unknown geolocation kind '" + kind + "'",
      {"Coordinates2D", "Coordinates3D", "GeoName", "ObjectAnchored"});
}

json criteria_json(const std::vector<CriterionResult>& cs) {
  json out = json::array();
  for (const auto& c : cs) {
    out.push_back({{"name", c.name}, {"pass", c.pass}, {"explanation", c.explanation}});
  }
  return out;
}

json placement_json(const ScoredPlacement& sp) {
  json j = {{"data", sp.placement.data},
            {"technique", sp.placement.technique},
            {"slot", to_string(sp.placement.slot)},
            {"usability", sp.usability.score},
            {"source", to_string(sp.usability.source)}};
  if (sp.placement.slot_overridden) j["slot_overridden"] = true;
  return j;
}

}  // namespace

json parse_request(std::string_view body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    // Map the byte offset to a 1-based line/column.
    SourcePos pos{1, 1};
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, body.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (body[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else if ((static_cast<unsigned char>(body[i]) & 0xC0) != 0x80) {
        ++pos.column;
      }
    }
    std::string msg = e.what();
    if (auto colon = msg.rfind(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    throw RequestError(ErrorCode::kParse, pos, "malformed JSON: " + msg);
  }
}

const json& require_field(const json& obj, std::string_view key, std::string_view where) {
  if (!obj.is_object()) bad(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where, "missing field '" + std::string(key) + "'");
  return *it;
}

std::string require_string(const json& obj, std::string_view key, std::string_view where) {
  const json& v = require_field(obj, key, where);
  if (!v.is_string()) bad(path(where, key), "expected a string");
  return v.get<std::string>();
}

DataItem data_item_from_json(const json& j, std::string_view where) {
  if (!j.is_object()) bad(where, "expected a data item object");
  DataItem d;
  d.id = require_string(j, "id", where);
  d.data_type = qualify(require_string(j, "data_type", where));
  d.format = optional_string(j, "format", where);
  d.issue = qualify(require_string(j, "issue", where));
  if (auto obj = optional_string(j, "urban_object", where)) d.urban_object = qualify(*obj);
  d.geolocation = geolocation_from_json(require_field(j, "geolocation", where),
                                        path(where, "geolocation"));
  return d;
}

SceneSpec scene_from_json(const json& j, std::string_view where) {
  if (!j.is_object()) bad(where, "expected a scene object");
  SceneSpec s;
  const json& items = require_field(j, "data_items", where);
  if (!items.is_array()) bad(path(where, "data_items"), "expected an array");
  for (std::size_t i = 0; i < items.size(); ++i) {
    s.items.push_back(
        data_item_from_json(items[i], path(where, "data_items[" + std::to_string(i) + "]")));
  }
  s.task = qualify(require_string(j, "task", where));
  s.context = qualify(require_string(j, "context", where));
  if (auto it = j.find("active_rules"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) bad(path(where, "active_rules"), "expected an array");
    s.active_rules.emplace();
    for (const auto& r : *it) {
      if (!r.is_string()) bad(path(where, "active_rules"), "expected rule id strings");
      s.active_rules->push_back(r.get<std::string>());
    }
  }
  return s;
}

std::vector<PlanEntry> plan_from_json(const json& j, std::string_view where) {
  if (!j.is_array()) bad(where, "expected an array of placements");
  std::vector<PlanEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string at = std::string(where) + "[" + std::to_string(i) + "]";
    PlanEntry e;
    e.data = require_string(j[i], "data", at);
    e.technique = qualify(require_string(j[i], "technique", at));
    if (auto slot = optional_string(j[i], "slot", at)) {
      e.slot = parse_anchor_slot(*slot);
      if (!e.slot) {
        bad(at + ".slot", "unknown anchor slot '" + *slot + "'",
            {"Volume", "Surface", "TopOfObject", "SideOfObject", "Overlay"});
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

json to_json(const Term& t) {
  return std::visit(
      [](const auto& v) -> json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, NodeId>) {
          return v.id;
        } else {
          return v;
        }
      },
      t);
}

json to_json(const Geolocation& g) {
  json j = {{"kind", geolocation_kind(g)}};
  std::visit(
      [&](const auto& v) {
        using G = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<G, Coordinates2D>) {
          j["x"] = v.x;
          j["y"] = v.y;
        } else if constexpr (std::is_same_v<G, Coordinates3D>) {
          j["x"] = v.x;
          j["y"] = v.y;
          j["z"] = v.z;
        } else if constexpr (std::is_same_v<G, GeoName>) {
          j["name"] = v.name;
        } else {
          j["object"] = v.object;
        }
      },
      g);
  return j;
}

json to_json(const DataItem& d) {
  json j = {{"id", d.id}, {"data_type", d.data_type}};
  if (d.format) j["format"] = *d.format;
  j["issue"] = d.issue;
  if (d.urban_object) j["urban_object"] = *d.urban_object;
  j["geolocation"] = to_json(d.geolocation);
  return j;
}

json to_json(const TechniqueSpec& t) {
  json attrs = json::object();
  for (const auto& [key, value] : t.visual_attributes) {
    if (key == props::kTransparency) {
      attrs["transparency"] = to_json(value);
    } else if (key == props::kSizeMode) {
      attrs["size_mode"] = to_json(value);
    } else {
      attrs[key] = to_json(value);
    }
  }
  return {{"id", t.id},
          {"accepted_data_type", t.accepted_data_type},
          {"applicable_issues", t.applicable_issues},
          {"output_location",
           {{"space", to_string(t.output.space)},
            {"dimensionality", to_string(t.output.dimensionality)},
            {"anchor_slot", to_string(t.output.anchor_slot)}}},
          {"visualization_abstraction", t.visualization_abstraction},
          {"visual_attributes", attrs},
          {"reference", t.reference},
          {"example", t.example}};
}

json to_json(const MatchReport& r) {
  return {{"technique", r.technique},
          {"verdict", to_string(r.verdict)},
          {"criteria", criteria_json(r.criteria)}};
}

json to_json(const Conflict& c) {
  return {{"rule", c.rule},
          {"severity", to_string(c.severity)},
          {"placements",
           json::array({{{"data", c.data.first}, {"technique", c.techniques.first}},
                        {{"data", c.data.second}, {"technique", c.techniques.second}}})},
          {"message", c.message}};
}

json to_json(const RankedPlan& p) {
  json placements = json::array();
  for (const auto& sp : p.placements) placements.push_back(placement_json(sp));
  json warnings = json::array();
  for (const auto& c : p.warnings) warnings.push_back(to_json(c));
  return {{"score", p.score}, {"placements", placements}, {"warnings", warnings}};
}

json to_json(const CheckResult& r) {
  json conflicts = json::array();
  for (const auto& c : r.conflicts) conflicts.push_back(to_json(c));
  json placements = json::array();
  for (const auto& sp : r.placements) placements.push_back(placement_json(sp));
  return {{"valid", r.valid},
          {"conflicts", conflicts},
          {"score", r.score},
          {"placements", placements}};
}

json to_json(const BindingSet& b) {
  json rows = json::array();
  for (const auto& row : b.rows) {
    json r = json::array();
    for (const auto& t : row) r.push_back(term_to_string(t));
    rows.push_back(std::move(r));
  }
  return {{"variables", b.variables}, {"rows", rows}};
}

json to_json(const Violation& v) {
  return {{"line", v.pos.line},
          {"column", v.pos.column},
          {"kind", to_string(v.kind)},
          {"subject", v.subject},
          {"message", v.message}};
}

json to_json(const CompatibilityRule& r) {
  return {{"id", r.id}, {"severity", to_string(r.severity)}, {"source", serialize_rule(r)}};
}

}  // namespace vtkb::detail
