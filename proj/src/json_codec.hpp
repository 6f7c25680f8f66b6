#pragma once

// JSON payloads of the service API (snake_case fields, enums by name).
// Decoders throw RequestError, a ParseError that points into the request.

#include <string>

#include <json.hpp>

#include "vtkb/kb_model.hpp"
#include "vtkb/query_engine.hpp"
#include "vtkb/scene_selector.hpp"

namespace vtkb::detail {

using json = nlohmann::ordered_json;

class RequestError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Parses a request body; syntax errors carry the line/column of the failure.
json parse_request(std::string_view body);

// Field accessors for decoding; `where` is a JSON-pointer-ish path used in
// error messages.
const json& require_field(const json& obj, std::string_view key, std::string_view where);
std::string require_string(const json& obj, std::string_view key, std::string_view where);

DataItem data_item_from_json(const json& j, std::string_view where = "");
SceneSpec scene_from_json(const json& j, std::string_view where = "");
std::vector<PlanEntry> plan_from_json(const json& j, std::string_view where = "plan");

json to_json(const Term& t);
json to_json(const Geolocation& g);
json to_json(const DataItem& d);
json to_json(const TechniqueSpec& t);
json to_json(const MatchReport& r);
json to_json(const Conflict& c);
json to_json(const RankedPlan& p);
json to_json(const CheckResult& r);
json to_json(const BindingSet& b);
json to_json(const Violation& v);
json to_json(const CompatibilityRule& r);

}  // namespace vtkb::detail
