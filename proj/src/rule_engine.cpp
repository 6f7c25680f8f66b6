#include "vtkb/rule_engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace vtkb {

namespace {

RuleAtom atom(RulePredicate p, bool negated = false) {
  RuleAtom a;
  a.predicate = p;
  a.negated = negated;
  return a;
}

bool holds(const RuleAtom& a, const PlanContext& ctx, const Placement& p,
           const Placement& q) {
  const DataItem& dp = ctx.data(p.data);
  const DataItem& dq = ctx.data(q.data);
  switch (a.predicate) {
    case RulePredicate::kSameTechnique: return p.technique == q.technique;
    case RulePredicate::kSameDataType: return dp.data_type == dq.data_type;
    case RulePredicate::kSameIssue: return dp.issue == dq.issue;
    case RulePredicate::kSameObject: {
      auto op = dp.effective_object();
      auto oq = dq.effective_object();
      return op && oq && *op == *oq;
    }
    case RulePredicate::kSameLocation:
      return same_location(p.location, q.location, a.epsilon);
    case RulePredicate::kSlotEquals: return p.slot == a.slot && q.slot == a.slot;
    case RulePredicate::kSlotsOverlap: return slots_overlap(p.slot, q.slot);
  }
  return false;
}

std::string conflict_message(const CompatibilityRule& rule, const Placement& p,
                             const Placement& q) {
  return p.data + " (" + p.technique + ") and " + q.data + " (" + q.technique +
         ") violate " + rule.id;
}

}  // namespace

const std::vector<CompatibilityRule>& builtin_rules() {
  static const std::vector<CompatibilityRule> rules = [] {
    CompatibilityRule unique{std::string(kUniqueTechniqueRule), Severity::kForbid, {}, {}};
    unique.condition = {atom(RulePredicate::kSameTechnique),
                        atom(RulePredicate::kSameLocation),
                        atom(RulePredicate::kSameDataType),
                        atom(RulePredicate::kSameIssue, true)};
    unique.condition[1].epsilon = kDefaultLocationEpsilon;
    CompatibilityRule occlusion{std::string(kSlotOcclusionRule), Severity::kForbid, {}, {}};
    occlusion.condition = {atom(RulePredicate::kSameObject),
                           atom(RulePredicate::kSlotsOverlap)};
    return std::vector<CompatibilityRule>{occlusion, unique};
  }();
  return rules;
}

std::vector<CompatibilityRule> effective_rules(const KnowledgeBase& kb, bool include_builtins) {
  std::map<std::string, CompatibilityRule> by_id;
  if (include_builtins) {
    for (const auto& r : builtin_rules()) by_id[r.id] = r;
  }
  std::set<std::string> seen;
  for (const auto& r : kb.rules()) {
    if (seen.insert(r.id).second) by_id[r.id] = r;  // first declaration wins
  }
  std::vector<CompatibilityRule> out;
  for (auto& [id, r] : by_id) out.push_back(std::move(r));
  return out;
}

PlanContext::PlanContext(const TechniqueCatalog& catalog, const std::vector<DataItem>& items)
    : catalog_(catalog) {
  for (const auto& d : items) items_.emplace(d.id, &d);
}

const DataItem& PlanContext::data(std::string_view id) const {
  auto it = items_.find(id);
  if (it == items_.end()) {
    throw Error(ErrorCode::kUnknownReference, "unknown data item " + std::string(id));
  }
  return *it->second;
}

const TechniqueSpec& PlanContext::technique(std::string_view id) const {
  const TechniqueSpec* t = catalog_.find(id);
  if (!t) throw Error(ErrorCode::kUnknownReference, "unknown technique " + std::string(id));
  return *t;
}

bool slots_overlap(AnchorSlot a, AnchorSlot b) {
  if (a == AnchorSlot::kVolume && b == AnchorSlot::kVolume) return true;
  return a == b && (a == AnchorSlot::kTopOfObject || a == AnchorSlot::kSideOfObject);
}

bool same_location(const Geolocation& a, const Geolocation& b, double epsilon) {
  if (a.index() != b.index()) return false;
  if (const auto* p = std::get_if<Coordinates2D>(&a)) {
    const auto& q = std::get<Coordinates2D>(b);
    return std::hypot(p->x - q.x, p->y - q.y) <= epsilon;
  }
  if (const auto* p = std::get_if<Coordinates3D>(&a)) {
    const auto& q = std::get<Coordinates3D>(b);
    return std::hypot(p->x - q.x, p->y - q.y, p->z - q.z) <= epsilon;
  }
  if (const auto* p = std::get_if<GeoName>(&a)) return p->name == std::get<GeoName>(b).name;
  return std::get<ObjectAnchored>(a).object == std::get<ObjectAnchored>(b).object;
}

bool rule_fires(const CompatibilityRule& rule, const PlanContext& ctx, const Placement& p,
                const Placement& q) {
  if (rule.condition.empty()) return false;
  return std::all_of(rule.condition.begin(), rule.condition.end(), [&](const RuleAtom& a) {
    return holds(a, ctx, p, q) != a.negated;
  });
}

std::vector<Conflict> check_plan(const std::vector<CompatibilityRule>& rules,
                                 const PlanContext& ctx, const ScenePlan& plan) {
  std::vector<const Placement*> ps;
  for (const auto& p : plan.placements) {
    ctx.data(p.data);
    ctx.technique(p.technique);
    ps.push_back(&p);
  }
  std::sort(ps.begin(), ps.end(),
            [](const Placement* a, const Placement* b) { return a->data < b->data; });
  for (std::size_t i = 1; i < ps.size(); ++i) {
    if (ps[i]->data == ps[i - 1]->data) {
      throw Error(ErrorCode::kInvalidArgument, "data item " + ps[i]->data + " placed twice");
    }
  }
  std::vector<const CompatibilityRule*> sorted_rules;
  for (const auto& r : rules) sorted_rules.push_back(&r);
  std::stable_sort(sorted_rules.begin(), sorted_rules.end(),
                   [](const auto* a, const auto* b) { return a->id < b->id; });

  std::vector<Conflict> out;
  for (const auto* rule : sorted_rules) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        if (!rule_fires(*rule, ctx, *ps[i], *ps[j])) continue;
        out.push_back(Conflict{rule->id, rule->severity, {ps[i]->data, ps[j]->data},
                               {ps[i]->technique, ps[j]->technique},
                               conflict_message(*rule, *ps[i], *ps[j])});
      }
    }
  }
  return out;
}

std::vector<Conflict> check_occlusion(const PlanContext& ctx, const ScenePlan& plan) {
  std::vector<CompatibilityRule> only;
  for (const auto& r : builtin_rules()) {
    if (r.id == kSlotOcclusionRule) only.push_back(r);
  }
  return check_plan(only, ctx, plan);
}

bool has_forbid(const std::vector<Conflict>& conflicts) {
  return std::any_of(conflicts.begin(), conflicts.end(),
                     [](const Conflict& c) { return c.severity == Severity::kForbid; });
}

bool is_relocatable_label(const DataItem& item, const TechniqueSpec& technique) {
  return item.data_type == concepts::kText &&
         technique.output.dimensionality == Dimensionality::k3D &&
         technique.output.anchor_slot == AnchorSlot::kVolume &&
         std::holds_alternative<ObjectAnchored>(item.geolocation);
}

ScenePlan resolve_slots(const PlanContext& ctx,
                        const std::vector<std::pair<std::string, std::string>>& assignment) {
  ScenePlan plan;
  for (const auto& [data_id, technique_id] : assignment) {
    const DataItem& d = ctx.data(data_id);
    const TechniqueSpec& t = ctx.technique(technique_id);
    plan.placements.push_back(
        Placement{d.id, t.id, t.output.anchor_slot, false, d.geolocation});
  }

  std::vector<std::size_t> order(plan.placements.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return plan.placements[a].data < plan.placements[b].data;
  });

  auto& ps = plan.placements;
  for (std::size_t i : order) {
    const DataItem& d = ctx.data(ps[i].data);
    if (!is_relocatable_label(d, ctx.technique(ps[i].technique))) continue;
    const auto object = d.effective_object();
    bool volume_neighbour = false, top_taken = false, side_taken = false;
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (j == i || ctx.data(ps[j].data).effective_object() != object) continue;
      volume_neighbour |= ps[j].slot == AnchorSlot::kVolume;
      top_taken |= ps[j].slot == AnchorSlot::kTopOfObject;
      side_taken |= ps[j].slot == AnchorSlot::kSideOfObject;
    }
    if (!volume_neighbour) continue;
    ps[i].slot = (top_taken && !side_taken) ? AnchorSlot::kSideOfObject
                                            : AnchorSlot::kTopOfObject;
    ps[i].slot_overridden = true;
  }
  return plan;
}

}  // namespace vtkb
