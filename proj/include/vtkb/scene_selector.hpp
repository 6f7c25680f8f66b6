#pragma once

// Top-N rule-valid technique assignments for the data items of one scene.

#include <optional>
#include <string>
#include <vector>

#include "vtkb/evaluation_context.hpp"
#include "vtkb/rule_engine.hpp"
#include "vtkb/technique_matcher.hpp"

namespace vtkb {

struct SceneSpec {
  std::vector<DataItem> items;
  std::string task;
  std::string context;
  // nullopt: every effective rule (or none when the selector's
  // default_rules_enabled is off). An empty list disables all rules.
  std::optional<std::vector<std::string>> active_rules;
};

struct SelectorConfig {
  double default_score = kDefaultUsability;
  double warn_penalty = 0.1;
  bool default_rules_enabled = true;  // rules applied when active_rules is absent
  bool prune = true;                  // branch pruning on partial plans
};

struct ScoredPlacement {
  Placement placement;
  Usability usability;
};

struct RankedPlan {
  std::vector<ScoredPlacement> placements;  // data-id order
  double score = 0.0;
  std::vector<Conflict> warnings;
};

// The rules a scene asks for. Throws Error(kUnknownReference) for ids that are
// neither built-in nor declared in the KB.
std::vector<CompatibilityRule> scene_rules(const KnowledgeBase& kb, const SceneSpec& scene,
                                           const SelectorConfig& config = {});

// Checks ids (unique, task and context declared) and every item's facets.
void check_scene(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                 const SceneSpec& scene);

// mean(usability) - penalty * warnings, clamped to [0, 1]; 0 for no scores.
// Scores are summed in the order given.
double plan_score(const std::vector<double>& usabilities, std::size_t warnings,
                  double warn_penalty);

// Throws InfeasibleItem for the first item (by id) without candidates and
// Error(kInvalidArgument) for top_n < 1. An empty scene yields one empty plan.
std::vector<RankedPlan> recommend(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                                  const TechniqueCatalog& catalog, const SceneSpec& scene,
                                  int top_n, const SelectorConfig& config = {});
std::vector<RankedPlan> recommend(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                                  const SceneSpec& scene, int top_n,
                                  const SelectorConfig& config = {});

// Ranking order: score descending, then the technique ids in data-id order.
bool ranks_before(const RankedPlan& a, const RankedPlan& b);

struct PlanEntry {
  std::string data;
  std::string technique;
  std::optional<AnchorSlot> slot;  // resolved when absent
};

struct CheckResult {
  bool valid = true;
  std::vector<Conflict> conflicts;
  double score = 0.0;
  std::vector<ScoredPlacement> placements;  // data-id order
};

// Rules over a partial plan. Throws Error(kUnknownReference) for data items
// outside the scene or unknown techniques.
CheckResult check(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                  const TechniqueCatalog& catalog, const SceneSpec& scene,
                  const std::vector<PlanEntry>& plan, const SelectorConfig& config = {});

}  // namespace vtkb
