#include "vtkb/technique_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace vtkb {

namespace {

[[noreturn]] void invalid(const std::string& subject, const std::string& msg) {
  throw Error(ErrorCode::kInvalidFacet, subject + ": " + msg);
}

// Assertion values grouped by property id, in declaration order.
class Facets {
 public:
  explicit Facets(const Individual& ind) : id_(ind.id) {
    for (const auto& a : ind.assertions) values_[a.property.id].push_back(&a.value);
  }

  const std::vector<const Term*>* all(std::string_view prop) const {
    auto it = values_.find(prop);
    return it == values_.end() ? nullptr : &it->second;
  }

  // nullptr when absent; InvalidFacet when given more than once.
  const Term* single(std::string_view prop) const {
    const auto* vs = all(prop);
    if (!vs) return nullptr;
    if (vs->size() > 1) invalid(id_, "multiple values for " + std::string(prop));
    return vs->front();
  }

  const std::map<std::string, std::vector<const Term*>, std::less<>>& values() const {
    return values_;
  }

 private:
  std::string id_;
  std::map<std::string, std::vector<const Term*>, std::less<>> values_;
};

const std::string& node_value(const std::string& subject, std::string_view prop,
                              const Term& t) {
  if (const auto* n = std::get_if<NodeId>(&t)) return n->id;
  invalid(subject, std::string(prop) + " expects an identifier, got " + term_to_string(t));
}

const std::string& text_value(const std::string& subject, std::string_view prop,
                              const Term& t) {
  if (const auto* s = std::get_if<std::string>(&t)) return *s;
  invalid(subject, std::string(prop) + " expects a string, got " + term_to_string(t));
}

double number_value(const std::string& subject, std::string_view prop, const Term& t) {
  if (const auto* d = std::get_if<double>(&t)) {
    if (!std::isfinite(*d)) invalid(subject, std::string(prop) + " is not finite");
    return *d;
  }
  invalid(subject, std::string(prop) + " expects a number, got " + term_to_string(t));
}

void require_concept_under(const SubsumptionClosure& closure, const std::string& subject,
                           const std::string& id, std::string_view root,
                           std::string_view facet) {
  if (!closure.contains(id)) {
    throw Error(ErrorCode::kUnknownConcept,
                subject + ": " + std::string(facet) + " refers to undeclared concept " + id);
  }
  if (!closure.subsumed(id, root)) {
    invalid(subject, std::string(facet) + " " + id + " is not under " + std::string(root));
  }
}

Geolocation geolocation_of(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                           const std::string& subject, const std::string& target) {
  const Individual* loc = kb.find_individual(target);
  if (!loc) {
    throw Error(ErrorCode::kUnknownReference,
                subject + ": geolocation refers to undeclared individual " + target);
  }
  if (has_type(*loc, closure, concepts::kUrbanObject)) return ObjectAnchored{loc->id};

  Facets f(*loc);
  auto coord = [&](std::string_view prop) {
    const Term* t = f.single(prop);
    if (!t) throw MissingFacet(subject, "geolocation");
    return number_value(loc->id, prop, *t);
  };
  if (has_type(*loc, closure, concepts::kCoordinates3D)) {
    return Coordinates3D{coord(props::kLocX), coord(props::kLocY), coord(props::kLocZ)};
  }
  if (has_type(*loc, closure, concepts::kCoordinates2D)) {
    return Coordinates2D{coord(props::kLocX), coord(props::kLocY)};
  }
  if (has_type(*loc, closure, concepts::kGeoName)) {
    const Term* t = f.single(props::kGeoName);
    if (!t) throw MissingFacet(subject, "geolocation");
    const auto& name = text_value(loc->id, props::kGeoName, *t);
    if (name.empty()) invalid(loc->id, "empty geoName");
    return GeoName{name};
  }
  if (has_type(*loc, closure, concepts::kObjectAnchored)) {
    const Term* t = f.single(props::kHasUrbanObject);
    if (!t) throw MissingFacet(subject, "geolocation");
    const auto& obj = node_value(loc->id, props::kHasUrbanObject, *t);
    if (!kb.find_individual(obj)) {
      throw Error(ErrorCode::kUnknownReference,
                  loc->id + ": anchor object " + obj + " is not declared");
    }
    return ObjectAnchored{obj};
  }
  invalid(subject, "geolocation " + target + " has no recognized location type");
}

const std::set<std::string_view>& technique_properties() {
  static const std::set<std::string_view> s = {
      props::kAcceptsDataType, props::kHasIssue,  props::kOutputSpace,
      props::kOutputDim,       props::kAnchorSlot, props::kVisualizationAbstraction,
      props::kTransparency,    props::kSizeMode,   props::kReference,
      props::kExample};
  return s;
}

Assertion assertion(std::string_view prop, Term value) {
  return Assertion{Ref{std::string(prop), {}}, std::move(value), {}};
}

}  // namespace

std::string_view geolocation_kind(const Geolocation& g) {
  static constexpr std::string_view kNames[] = {"Coordinates2D", "Coordinates3D",
                                                "GeoName", "ObjectAnchored"};
  return kNames[g.index()];
}

std::optional<std::string> DataItem::effective_object() const {
  if (urban_object) return urban_object;
  if (const auto* a = std::get_if<ObjectAnchored>(&geolocation)) return a->object;
  return std::nullopt;
}

std::optional<std::string> output_location_problem(const OutputLocation& loc) {
  if (loc.space == OutputSpace::kScreenSpace && loc.anchor_slot != AnchorSlot::kOverlay) {
    return "ScreenSpace output must use the Overlay slot";
  }
  if (loc.anchor_slot == AnchorSlot::kVolume && loc.dimensionality != Dimensionality::k3D) {
    return "Volume slot requires 3D output";
  }
  return std::nullopt;
}

bool TechniqueSpec::transparency() const {
  auto it = visual_attributes.find(std::string(props::kTransparency));
  return it != visual_attributes.end() && std::get_if<bool>(&it->second) &&
         std::get<bool>(it->second);
}

SizeMode TechniqueSpec::size_mode() const {
  auto it = visual_attributes.find(std::string(props::kSizeMode));
  if (it != visual_attributes.end()) {
    if (const auto* s = std::get_if<std::string>(&it->second)) {
      if (auto m = parse_size_mode(*s)) return *m;
    }
  }
  return SizeMode::kFixed;
}

DataItem data_item_from_individual(const KnowledgeBase& kb,
                                   const SubsumptionClosure& closure,
                                   std::string_view id) {
  const Individual* ind = kb.find_individual(qualify(id));
  if (!ind) {
    throw Error(ErrorCode::kUnknownReference, "unknown data item " + std::string(id));
  }
  if (!has_type(*ind, closure, concepts::kData)) {
    invalid(ind->id, "not an instance of vt:Data");
  }
  Facets f(*ind);
  DataItem item;
  item.id = ind->id;

  const Term* t = f.single(props::kHasDataType);
  if (!t) throw MissingFacet(ind->id, "data_type");
  item.data_type = node_value(ind->id, props::kHasDataType, *t);
  require_concept_under(closure, ind->id, item.data_type, concepts::kDataType, "data_type");

  if ((t = f.single(props::kHasFormat))) {
    item.format = text_value(ind->id, props::kHasFormat, *t);
  }

  t = f.single(props::kHasIssue);
  if (!t) throw MissingFacet(ind->id, "issue");
  item.issue = node_value(ind->id, props::kHasIssue, *t);
  require_concept_under(closure, ind->id, item.issue, concepts::kIssue, "issue");

  if ((t = f.single(props::kHasUrbanObject))) {
    item.urban_object = node_value(ind->id, props::kHasUrbanObject, *t);
    if (!kb.find_individual(*item.urban_object)) {
      throw Error(ErrorCode::kUnknownReference,
                  ind->id + ": urban object " + *item.urban_object + " is not declared");
    }
  }

  t = f.single(props::kHasGeolocation);
  if (!t) throw MissingFacet(ind->id, "geolocation");
  item.geolocation =
      geolocation_of(kb, closure, ind->id, node_value(ind->id, props::kHasGeolocation, *t));
  return item;
}

TechniqueSpec technique_from_individual(const KnowledgeBase& kb,
                                        const SubsumptionClosure& closure,
                                        std::string_view id) {
  const Individual* ind = kb.find_individual(qualify(id));
  if (!ind || !has_type(*ind, closure, concepts::kTechnique)) {
    throw Error(ErrorCode::kUnknownTechnique, "unknown technique " + std::string(id));
  }
  Facets f(*ind);
  TechniqueSpec spec;
  spec.id = ind->id;

  const Term* t = f.single(props::kAcceptsDataType);
  if (!t) throw MissingFacet(ind->id, "accepted_data_type");
  spec.accepted_data_type = node_value(ind->id, props::kAcceptsDataType, *t);
  require_concept_under(closure, ind->id, spec.accepted_data_type, concepts::kDataType,
                        "accepted_data_type");

  if (const auto* issues = f.all(props::kHasIssue)) {
    std::set<std::string> sorted;
    for (const Term* v : *issues) {
      const auto& issue = node_value(ind->id, props::kHasIssue, *v);
      require_concept_under(closure, ind->id, issue, concepts::kIssue, "issue");
      sorted.insert(issue);
    }
    spec.applicable_issues.assign(sorted.begin(), sorted.end());
  }

  const Term* space = f.single(props::kOutputSpace);
  const Term* dim = f.single(props::kOutputDim);
  const Term* slot = f.single(props::kAnchorSlot);
  if (!space || !dim || !slot) throw MissingFacet(ind->id, "output_location");
  auto parse_or_throw = [&](auto parsed, std::string_view prop, const Term& v) {
    if (!parsed) invalid(ind->id, "bad " + std::string(prop) + " value " + term_to_string(v));
    return *parsed;
  };
  spec.output.space = parse_or_throw(
      parse_output_space(text_value(ind->id, props::kOutputSpace, *space)),
      props::kOutputSpace, *space);
  spec.output.dimensionality = parse_or_throw(
      parse_dimensionality(text_value(ind->id, props::kOutputDim, *dim)),
      props::kOutputDim, *dim);
  spec.output.anchor_slot = parse_or_throw(
      parse_anchor_slot(text_value(ind->id, props::kAnchorSlot, *slot)),
      props::kAnchorSlot, *slot);
  if (auto problem = output_location_problem(spec.output)) invalid(ind->id, *problem);

  if ((t = f.single(props::kVisualizationAbstraction))) {
    spec.visualization_abstraction =
        text_value(ind->id, props::kVisualizationAbstraction, *t);
  }

  t = f.single(props::kTransparency);
  if (!t) throw MissingFacet(ind->id, "transparency");
  if (!std::holds_alternative<bool>(*t)) {
    invalid(ind->id, "transparency expects a boolean, got " + term_to_string(*t));
  }
  spec.visual_attributes[std::string(props::kTransparency)] = *t;

  t = f.single(props::kSizeMode);
  if (!t) throw MissingFacet(ind->id, "size_mode");
  parse_or_throw(parse_size_mode(text_value(ind->id, props::kSizeMode, *t)),
                 props::kSizeMode, *t);
  spec.visual_attributes[std::string(props::kSizeMode)] = *t;

  if ((t = f.single(props::kReference))) {
    spec.reference = text_value(ind->id, props::kReference, *t);
  }
  if ((t = f.single(props::kExample))) {
    spec.example = text_value(ind->id, props::kExample, *t);
  }

  // Anything else is kept as an extra visual attribute (first value wins).
  for (const auto& [prop, values] : f.values()) {
    if (technique_properties().count(prop)) continue;
    spec.visual_attributes.emplace(prop, *values.front());
  }
  return spec;
}

void check_data_item(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                     const DataItem& item) {
  if (item.id.empty()) invalid("<data item>", "empty id");
  require_concept_under(closure, item.id, item.data_type, concepts::kDataType, "data_type");
  require_concept_under(closure, item.id, item.issue, concepts::kIssue, "issue");
  if (item.urban_object && !kb.find_individual(*item.urban_object)) {
    throw Error(ErrorCode::kUnknownReference,
                item.id + ": urban object " + *item.urban_object + " is not declared");
  }
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        auto finite = [&](double v) {
          if (!std::isfinite(v)) invalid(item.id, "geolocation coordinate is not finite");
        };
        if constexpr (std::is_same_v<G, Coordinates2D>) {
          finite(g.x), finite(g.y);
        } else if constexpr (std::is_same_v<G, Coordinates3D>) {
          finite(g.x), finite(g.y), finite(g.z);
        } else if constexpr (std::is_same_v<G, GeoName>) {
          if (g.name.empty()) invalid(item.id, "empty geoName");
        } else {
          if (!kb.find_individual(g.object)) {
            throw Error(ErrorCode::kUnknownReference,
                        item.id + ": anchor object " + g.object + " is not declared");
          }
        }
      },
      item.geolocation);
}

std::vector<Individual> embed(const DataItem& item, const std::string& geolocation_id) {
  Individual data{item.id, {Ref{std::string(concepts::kData), {}}}, {}, {}};
  data.assertions.push_back(assertion(props::kHasDataType, NodeId{item.data_type}));
  if (item.format) data.assertions.push_back(assertion(props::kHasFormat, *item.format));
  data.assertions.push_back(assertion(props::kHasIssue, NodeId{item.issue}));
  if (item.urban_object) {
    data.assertions.push_back(assertion(props::kHasUrbanObject, NodeId{*item.urban_object}));
  }
  data.assertions.push_back(assertion(props::kHasGeolocation, NodeId{geolocation_id}));

  Individual loc{geolocation_id, {}, {}, {}};
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Coordinates2D>) {
          loc.types.push_back(Ref{std::string(concepts::kCoordinates2D), {}});
          loc.assertions = {assertion(props::kLocX, g.x), assertion(props::kLocY, g.y)};
        } else if constexpr (std::is_same_v<G, Coordinates3D>) {
          loc.types.push_back(Ref{std::string(concepts::kCoordinates3D), {}});
          loc.assertions = {assertion(props::kLocX, g.x), assertion(props::kLocY, g.y),
                            assertion(props::kLocZ, g.z)};
        } else if constexpr (std::is_same_v<G, GeoName>) {
          loc.types.push_back(Ref{std::string(concepts::kGeoName), {}});
          loc.assertions = {assertion(props::kGeoName, g.name)};
        } else {
          loc.types.push_back(Ref{std::string(concepts::kObjectAnchored), {}});
          loc.assertions = {assertion(props::kHasUrbanObject, NodeId{g.object})};
        }
      },
      item.geolocation);
  return {std::move(data), std::move(loc)};
}

Individual embed(const TechniqueSpec& t) {
  Individual ind{t.id, {Ref{std::string(concepts::kTechnique), {}}}, {}, {}};
  auto& as = ind.assertions;
  as.push_back(assertion(props::kAcceptsDataType, NodeId{t.accepted_data_type}));
  for (const auto& issue : t.applicable_issues) {
    as.push_back(assertion(props::kHasIssue, NodeId{issue}));
  }
  as.push_back(assertion(props::kOutputSpace, std::string(to_string(t.output.space))));
  as.push_back(assertion(props::kOutputDim, std::string(to_string(t.output.dimensionality))));
  as.push_back(assertion(props::kAnchorSlot, std::string(to_string(t.output.anchor_slot))));
  if (!t.visualization_abstraction.empty()) {
    as.push_back(assertion(props::kVisualizationAbstraction, t.visualization_abstraction));
  }
  for (const auto& [key, value] : t.visual_attributes) as.push_back(assertion(key, value));
  if (!t.reference.empty()) as.push_back(assertion(props::kReference, t.reference));
  if (!t.example.empty()) as.push_back(assertion(props::kExample, t.example));
  return ind;
}

TechniqueCatalog::TechniqueCatalog(const KnowledgeBase& kb,
                                   const SubsumptionClosure& closure) {
  if (!closure.contains(concepts::kTechnique)) return;
  for (const auto& id : instances_of(kb, closure, concepts::kTechnique)) {
    try {
      techniques_.push_back(technique_from_individual(kb, closure, id));
    } catch (const Error& e) {
      rejected_.emplace_back(id, e.what());
    }
  }
  for (std::size_t i = 0; i < techniques_.size(); ++i) index_.emplace(techniques_[i].id, i);
}

const TechniqueSpec* TechniqueCatalog::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) it = index_.find(qualify(id));
  return it == index_.end() ? nullptr : &techniques_[it->second];
}

}  // namespace vtkb
