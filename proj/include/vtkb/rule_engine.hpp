#pragma once

// Pairwise compatibility rules over scene plans, and anchor-slot resolution
// for labels that share an object with volumetric techniques.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vtkb/technique_model.hpp"

namespace vtkb {

struct Placement {
  std::string data;       // DataItem id
  std::string technique;  // TechniqueSpec id
  AnchorSlot slot = AnchorSlot::kVolume;
  bool slot_overridden = false;
  Geolocation location;

  bool operator==(const Placement&) const = default;
};

struct ScenePlan {
  std::vector<Placement> placements;
};

struct Conflict {
  std::string rule;
  Severity severity = Severity::kForbid;
  std::pair<std::string, std::string> data;        // ordered by data id
  std::pair<std::string, std::string> techniques;  // matching `data`
  std::string message;

  bool operator==(const Conflict&) const = default;
};

inline constexpr std::string_view kUniqueTechniqueRule = "unique-technique-per-location";
inline constexpr std::string_view kSlotOcclusionRule = "no-slot-occlusion";

// unique-technique-per-location:
//   forbid when sameTechnique && sameLocation(1) && sameDataType && !sameIssue
// no-slot-occlusion:
//   forbid when sameObject && slotsOverlap
const std::vector<CompatibilityRule>& builtin_rules();

// Built-ins (when enabled) with same-id KB rules taking their place, plus the
// remaining KB rules; sorted by id.
std::vector<CompatibilityRule> effective_rules(const KnowledgeBase& kb,
                                               bool include_builtins = true);

// Resolves the ids a plan refers to. Data items come from the caller (a scene
// or the KB); techniques must project from the KB.
class PlanContext {
 public:
  PlanContext(const TechniqueCatalog& catalog, const std::vector<DataItem>& items);

  // Throws Error(kUnknownReference).
  const DataItem& data(std::string_view id) const;
  const TechniqueSpec& technique(std::string_view id) const;

 private:
  const TechniqueCatalog& catalog_;
  std::map<std::string, const DataItem*, std::less<>> items_;
};

bool slots_overlap(AnchorSlot a, AnchorSlot b);
bool same_location(const Geolocation& a, const Geolocation& b, double epsilon);

// True when every atom of the rule holds for the pair.
bool rule_fires(const CompatibilityRule& rule, const PlanContext& ctx,
                const Placement& p, const Placement& q);

// One conflict per (rule, unordered pair), sorted by rule id then data pair.
// Throws Error(kUnknownReference) for dangling ids and Error(kInvalidArgument)
// when a data item is placed twice.
std::vector<Conflict> check_plan(const std::vector<CompatibilityRule>& rules,
                                 const PlanContext& ctx, const ScenePlan& plan);

// check_plan restricted to the built-in occlusion rule.
std::vector<Conflict> check_occlusion(const PlanContext& ctx, const ScenePlan& plan);

bool has_forbid(const std::vector<Conflict>& conflicts);

// Text data shown by a 3D Volume technique at an ObjectAnchored location.
bool is_relocatable_label(const DataItem& item, const TechniqueSpec& technique);

// Builds placements with each technique's declared slot, then moves every
// relocatable label that shares its object with another Volume placement to
// TopOfObject (or SideOfObject when Top is already taken), recording the
// override. Labels are handled in data-id order.
ScenePlan resolve_slots(const PlanContext& ctx,
                        const std::vector<std::pair<std::string, std::string>>& assignment);

}  // namespace vtkb
