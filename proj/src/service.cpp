#include "service.hpp"

#include <set>

namespace vtkb::detail {

namespace {

json ids_under(const KnowledgeBase& kb, const SubsumptionClosure& closure,
               std::string_view root, bool individuals) {
  json out = json::array();
  if (!closure.contains(root)) return out;
  if (individuals) {
    for (const auto& id : instances_of(kb, closure, root)) out.push_back(id);
  } else {
    for (const auto& id : closure.descendants(root)) {
      if (id != root) out.push_back(id);
    }
  }
  return out;
}

json attributes_json(const std::vector<Attribute>& attrs) {
  json out = json::object();
  for (const auto& a : attrs) out[a.key] = to_json(a.value);
  return out;
}

int top_of(const json& request) {
  auto it = request.find("top");
  if (it == request.end() || it->is_null()) return 5;
  if (!it->is_number_integer()) {
    throw RequestError(ErrorCode::kParse, {}, "top: expected an integer");
  }
  return it->get<int>();
}

}  // namespace

Service::Service(const SourceDocument& doc, ServiceOptions options)
    : kb_(parse_kb(doc)),
      closure_(vtkb::classify(kb_)),
      catalog_(kb_, closure_),
      options_(options) {}

SelectorConfig Service::selector_config() const {
  SelectorConfig c;
  c.default_score = options_.default_score;
  c.default_rules_enabled = options_.default_rules_enabled;
  return c;
}

json Service::summary() const {
  json tasks = json::array();
  for (const auto& t : kb_.tasks()) {
    tasks.push_back({{"id", t.id}, {"attributes", attributes_json(t.attributes)}});
  }
  json contexts = json::array();
  for (const auto& c : kb_.contexts()) {
    contexts.push_back({{"id", c.id}, {"attributes", attributes_json(c.attributes)}});
  }
  json rules = json::array();
  for (const auto& r : effective_rules(kb_)) {
    rules.push_back(to_json(r));
  }
  json techniques = json::array();
  for (const auto& t : catalog_.techniques()) techniques.push_back(t.id);
  return {{"counts",
           {{"concepts", kb_.concepts().size()},
            {"properties", kb_.properties().size()},
            {"individuals", kb_.individuals().size()},
            {"evaluations", kb_.evaluations().size()}}},
          {"techniques", techniques},
          {"data_types", ids_under(kb_, closure_, concepts::kDataType, false)},
          {"issues", ids_under(kb_, closure_, concepts::kIssue, false)},
          {"urban_objects", ids_under(kb_, closure_, concepts::kUrbanObject, true)},
          {"tasks", tasks},
          {"contexts", contexts},
          {"rules", rules},
          {"default_rules_enabled", options_.default_rules_enabled}};
}

json Service::validate() const {
  json violations = json::array();
  for (const auto& v : vtkb::validate(kb_)) violations.push_back(to_json(v));
  return {{"valid", violations.empty()}, {"violations", violations}};
}

json Service::techniques() const {
  json out = json::array();
  for (const auto& t : catalog_.techniques()) out.push_back(to_json(t));
  return {{"techniques", out}};
}

json Service::technique(std::string_view id) const {
  const TechniqueSpec* t = catalog_.find(id);
  if (!t) throw NotFound("unknown technique " + std::string(id));
  return to_json(*t);
}

json Service::classify(bool hierarchy) const {
  if (hierarchy) {
    json out = json::array();
    for (const auto& id : closure_.concepts()) {
      out.push_back({{"id", id}, {"parents", closure_.direct_parents(id)}});
    }
    return {{"concepts", out}};
  }
  json pairs = json::array();
  for (const auto& [sub, sup] : closure_.pairs()) pairs.push_back(json::array({sub, sup}));
  return {{"pairs", pairs}};
}

json Service::query(const json& request) const {
  std::string text = require_string(request, "query", "");
  Query q;
  try {
    q = parse_query(text);
  } catch (const ParseError& e) {
    throw RequestError(ErrorCode::kParse, e.pos(), "query: " + e.detail(), e.expected());
  }
  BindingSet result = evaluate(kb_, closure_, q);
  json out = to_json(result);
  auto ex = request.find("explain");
  if (ex != request.end() && ex->is_boolean() && ex->get<bool>()) {
    json traces = json::array();
    for (const auto& row : result.rows) {
      json entries = json::array();
      for (const auto& t : vtkb::explain(kb_, closure_, q, row)) {
        entries.push_back({{"atom", t.atom}, {"justification", t.justification}});
      }
      traces.push_back(std::move(entries));
    }
    out["explanations"] = std::move(traces);
  }
  return out;
}

json Service::match(const json& request) const {
  DataItem item = data_item_from_json(request);
  check_data_item(kb_, closure_, item);
  json reports = json::array();
  json cands = json::array();
  for (const auto& t : catalog_.techniques()) {
    MatchReport r = match_report(closure_, item, t);
    if (r.verdict == Verdict::kMatch) cands.push_back(t.id);
    reports.push_back(to_json(r));
  }
  return {{"data", item.id}, {"candidates", cands}, {"reports", reports}};
}

json Service::recommend(const json& request) const {
  SceneSpec scene = scene_from_json(request);
  int top = top_of(request);
  json plans = json::array();
  for (const auto& p : vtkb::recommend(kb_, closure_, catalog_, scene, top, selector_config())) {
    plans.push_back(to_json(p));
  }
  return {{"plans", plans}};
}

json Service::check(const json& request) const {
  SceneSpec scene = scene_from_json(require_field(request, "scene", ""), "scene");
  auto plan = plan_from_json(require_field(request, "plan", ""), "plan");
  return to_json(vtkb::check(kb_, closure_, catalog_, scene, plan, selector_config()));
}

json validate_document(const SourceDocument& doc) {
  KnowledgeBase kb = parse_kb_unchecked(doc);
  json violations = json::array();
  for (const auto& v : vtkb::validate(kb)) violations.push_back(to_json(v));
  return {{"valid", violations.empty()}, {"violations", violations}};
}

Status status_of(const std::exception& e) {
  if (dynamic_cast<const RequestError*>(&e)) return Status::kBadRequest;
  if (dynamic_cast<const NotFound*>(&e)) return Status::kNotFound;
  const auto* err = dynamic_cast<const Error*>(&e);
  if (!err) return Status::kInternal;
  switch (err->code()) {
    case ErrorCode::kParse: return Status::kParse;
    case ErrorCode::kSemantic:
    case ErrorCode::kCycle: return Status::kSemantic;
    case ErrorCode::kIo: return Status::kIo;
    case ErrorCode::kUnknownConcept:
    case ErrorCode::kUnknownProperty:
    case ErrorCode::kUnknownTechnique:
    case ErrorCode::kUnknownReference: return Status::kUnknownReference;
    case ErrorCode::kInfeasibleItem: return Status::kInfeasible;
    case ErrorCode::kInvalidQuery: return Status::kInvalidQuery;
    case ErrorCode::kMissingFacet:
    case ErrorCode::kInvalidFacet:
    case ErrorCode::kRowNotInResult:
    case ErrorCode::kInvalidArgument: return Status::kInvalidArgument;
  }
  return Status::kInternal;
}

json error_json(const std::exception& e) {
  json body;
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    body["code"] = error_code_name(p->code());
    body["message"] = p->detail();
    if (p->pos().known()) {
      body["line"] = p->pos().line;
      body["column"] = p->pos().column;
    }
    if (!p->expected().empty()) body["expected"] = p->expected();
  } else if (dynamic_cast<const NotFound*>(&e)) {
    body["code"] = "NotFound";
    body["message"] = e.what();
  } else if (const auto* err = dynamic_cast<const Error*>(&e)) {
    body["code"] = error_code_name(err->code());
    body["message"] = e.what();
    if (const auto* inf = dynamic_cast<const InfeasibleItem*>(&e)) body["data"] = inf->data_id();
  } else {
    body["code"] = "InternalError";
    body["message"] = e.what();
  }
  return {{"error", body}};
}

}  // namespace vtkb::detail
