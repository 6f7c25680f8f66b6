#include "vtkb/scene_selector.hpp"

#include <algorithm>
#include <set>

namespace vtkb {

namespace {

struct Prepared {
  std::vector<CompatibilityRule> rules;
  std::vector<CompatibilityRule> forbid_rules;
  std::vector<const DataItem*> items;  // data-id order
};

Prepared prepare(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                 const SceneSpec& scene, const SelectorConfig& config) {
  check_scene(kb, closure, scene);
  Prepared p;
  p.rules = scene_rules(kb, scene, config);
  for (const auto& r : p.rules) {
    if (r.severity == Severity::kForbid) p.forbid_rules.push_back(r);
  }
  for (const auto& d : scene.items) p.items.push_back(&d);
  std::sort(p.items.begin(), p.items.end(),
            [](const DataItem* a, const DataItem* b) { return a->id < b->id; });
  return p;
}

class UsabilityCache {
 public:
  UsabilityCache(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                 const SceneSpec& scene, double default_score)
      : kb_(kb), closure_(closure), scene_(scene), default_(default_score) {}

  const Usability& get(const std::string& technique) {
    auto it = cache_.find(technique);
    if (it == cache_.end()) {
      it = cache_
               .emplace(technique, usability(kb_, closure_, technique, scene_.task,
                                             scene_.context, default_))
               .first;
    }
    return it->second;
  }

 private:
  const KnowledgeBase& kb_;
  const SubsumptionClosure& closure_;
  const SceneSpec& scene_;
  double default_;
  std::map<std::string, Usability> cache_;
};

// Placements sorted by data id, scored against the scene's task and context.
std::pair<std::vector<ScoredPlacement>, double> score_plan(
    ScenePlan plan, const std::vector<Conflict>& warnings, UsabilityCache& cache,
    const SelectorConfig& config) {
  std::sort(plan.placements.begin(), plan.placements.end(),
            [](const Placement& a, const Placement& b) { return a.data < b.data; });
  std::vector<ScoredPlacement> out;
  std::vector<double> scores;
  for (auto& p : plan.placements) {
    const Usability& u = cache.get(p.technique);
    scores.push_back(u.score);
    out.push_back(ScoredPlacement{std::move(p), u});
  }
  return {std::move(out), plan_score(scores, warnings.size(), config.warn_penalty)};
}

std::vector<Conflict> warnings_of(const std::vector<Conflict>& conflicts) {
  std::vector<Conflict> out;
  for (const auto& c : conflicts) {
    if (c.severity == Severity::kWarn) out.push_back(c);
  }
  return out;
}

class Search {
 public:
  Search(const Prepared& prepared, const PlanContext& ctx,
         std::vector<std::pair<const DataItem*, std::vector<std::string>>> order,
         UsabilityCache& cache, const SelectorConfig& config, std::size_t top_n)
      : prepared_(prepared),
        ctx_(ctx),
        order_(std::move(order)),
        cache_(cache),
        config_(config),
        top_n_(top_n) {}

  std::vector<RankedPlan> run() {
    chosen_.reserve(order_.size());
    descend(0);
    return std::move(best_);
  }

 private:
  // Pairs without relocatable labels keep their declared slots, so a Forbid
  // conflict among them survives any extension of the partial plan.
  bool partial_conflict(const Placement& added, bool added_label) const {
    if (added_label) return false;
    for (std::size_t i = 0; i + 1 < chosen_.size(); ++i) {
      if (labels_[i]) continue;
      for (const auto& rule : prepared_.forbid_rules) {
        if (rule_fires(rule, ctx_, added, placed_[i])) return true;
      }
    }
    return false;
  }

  void descend(std::size_t depth) {
    if (depth == order_.size()) {
      leaf();
      return;
    }
    const DataItem* item = order_[depth].first;
    for (const auto& tid : order_[depth].second) {
      const TechniqueSpec& t = ctx_.technique(tid);
      chosen_.emplace_back(item->id, tid);
      placed_.push_back(Placement{item->id, tid, t.output.anchor_slot, false, item->geolocation});
      labels_.push_back(is_relocatable_label(*item, t));
      if (!config_.prune || !partial_conflict(placed_.back(), labels_.back())) {
        descend(depth + 1);
      }
      chosen_.pop_back();
      placed_.pop_back();
      labels_.pop_back();
    }
  }

  void leaf() {
    ScenePlan plan = resolve_slots(ctx_, chosen_);
    auto conflicts = check_plan(prepared_.rules, ctx_, plan);
    if (has_forbid(conflicts)) return;
    RankedPlan ranked;
    ranked.warnings = warnings_of(conflicts);
    auto [placements, score] = score_plan(std::move(plan), ranked.warnings, cache_, config_);
    ranked.placements = std::move(placements);
    ranked.score = score;
    if (best_.size() == top_n_ && !ranks_before(ranked, best_.back())) return;
    auto pos = std::upper_bound(best_.begin(), best_.end(), ranked, ranks_before);
    best_.insert(pos, std::move(ranked));
    if (best_.size() > top_n_) best_.pop_back();
  }

  const Prepared& prepared_;
  const PlanContext& ctx_;
  std::vector<std::pair<const DataItem*, std::vector<std::string>>> order_;
  UsabilityCache& cache_;
  const SelectorConfig& config_;
  std::size_t top_n_;

  std::vector<std::pair<std::string, std::string>> chosen_;
  std::vector<Placement> placed_;
  std::vector<bool> labels_;
  std::vector<RankedPlan> best_;
};

}  // namespace

std::vector<CompatibilityRule> scene_rules(const KnowledgeBase& kb, const SceneSpec& scene,
                                           const SelectorConfig& config) {
  if (!scene.active_rules) {
    if (!config.default_rules_enabled) return {};
    return effective_rules(kb);
  }
  auto all = effective_rules(kb);
  std::vector<CompatibilityRule> out;
  std::set<std::string> wanted;
  for (const auto& id : *scene.active_rules) {
    auto it = std::find_if(all.begin(), all.end(),
                           [&](const CompatibilityRule& r) { return r.id == id; });
    if (it == all.end()) throw Error(ErrorCode::kUnknownReference, "unknown rule " + id);
    wanted.insert(id);
  }
  for (auto& r : all) {
    if (wanted.count(r.id)) out.push_back(std::move(r));
  }
  return out;
}

void check_scene(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                 const SceneSpec& scene) {
  if (!kb.find_task(qualify(scene.task))) {
    throw Error(ErrorCode::kUnknownReference, "unknown task " + scene.task);
  }
  if (!kb.find_context(qualify(scene.context))) {
    throw Error(ErrorCode::kUnknownReference, "unknown context " + scene.context);
  }
  std::set<std::string> ids;
  for (const auto& d : scene.items) {
    if (!ids.insert(d.id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate data item id " + d.id);
    }
    check_data_item(kb, closure, d);
  }
}

double plan_score(const std::vector<double>& usabilities, std::size_t warnings,
                  double warn_penalty) {
  if (usabilities.empty()) return 0.0;
  double sum = 0.0;
  for (double u : usabilities) sum += u;
  double score = sum / static_cast<double>(usabilities.size()) -
                 warn_penalty * static_cast<double>(warnings);
  return std::clamp(score, 0.0, 1.0);
}

bool ranks_before(const RankedPlan& a, const RankedPlan& b) {
  if (a.score != b.score) return a.score > b.score;
  return std::lexicographical_compare(
      a.placements.begin(), a.placements.end(), b.placements.begin(), b.placements.end(),
      [](const ScoredPlacement& x, const ScoredPlacement& y) {
        return x.placement.technique < y.placement.technique;
      });
}

std::vector<RankedPlan> recommend(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                                  const TechniqueCatalog& catalog, const SceneSpec& scene,
                                  int top_n, const SelectorConfig& config) {
  if (top_n < 1) throw Error(ErrorCode::kInvalidArgument, "top must be at least 1");
  Prepared prepared = prepare(kb, closure, scene, config);
  if (prepared.items.empty()) return {RankedPlan{}};

  std::vector<std::pair<const DataItem*, std::vector<std::string>>> order;
  for (const DataItem* d : prepared.items) {
    auto cands = candidates(catalog, closure, *d);
    if (cands.empty()) throw InfeasibleItem(d->id);
    order.emplace_back(d, std::move(cands));
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.second.size() < b.second.size();
  });

  PlanContext ctx(catalog, scene.items);
  UsabilityCache cache(kb, closure, scene, config.default_score);
  Search search(prepared, ctx, std::move(order), cache, config,
                static_cast<std::size_t>(top_n));
  return search.run();
}

std::vector<RankedPlan> recommend(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                                  const SceneSpec& scene, int top_n,
                                  const SelectorConfig& config) {
  return recommend(kb, closure, TechniqueCatalog(kb, closure), scene, top_n, config);
}

CheckResult check(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                  const TechniqueCatalog& catalog, const SceneSpec& scene,
                  const std::vector<PlanEntry>& plan, const SelectorConfig& config) {
  Prepared prepared = prepare(kb, closure, scene, config);
  PlanContext ctx(catalog, scene.items);

  std::vector<std::pair<std::string, std::string>> assignment;
  for (const auto& e : plan) assignment.emplace_back(e.data, e.technique);
  ScenePlan resolved = resolve_slots(ctx, assignment);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (!plan[i].slot) continue;
    auto& p = resolved.placements[i];
    p.slot = *plan[i].slot;
    p.slot_overridden = p.slot != ctx.technique(p.technique).output.anchor_slot;
  }

  CheckResult result;
  result.conflicts = check_plan(prepared.rules, ctx, resolved);
  result.valid = !has_forbid(result.conflicts);
  UsabilityCache cache(kb, closure, scene, config.default_score);
  auto [placements, score] =
      score_plan(std::move(resolved), warnings_of(result.conflicts), cache, config);
  result.placements = std::move(placements);
  result.score = score;
  return result;
}

}  // namespace vtkb
