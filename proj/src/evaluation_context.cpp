#include "vtkb/evaluation_context.hpp"

#include <algorithm>

namespace vtkb {

std::string_view to_string(ScoreSource s) {
  switch (s) {
    case ScoreSource::kExact: return "Exact";
    case ScoreSource::kTaskOnly: return "TaskOnly";
    case ScoreSource::kGeneric: return "Generic";
    case ScoreSource::kDefault: return "Default";
  }
  return "Default";
}

Usability usability(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                    std::string_view technique, std::string_view task,
                    std::string_view context, double default_score) {
  const std::string tid = qualify(technique);
  const Individual* ind = kb.find_individual(tid);
  if (!ind || !closure.contains(concepts::kTechnique) ||
      !has_type(*ind, closure, concepts::kTechnique)) {
    throw Error(ErrorCode::kUnknownTechnique, "unknown technique " + std::string(technique));
  }
  const std::string task_id = qualify(task);
  const std::string context_id = qualify(context);

  double sum[3] = {0, 0, 0};
  int count[3] = {0, 0, 0};
  for (const auto& e : kb.evaluations()) {
    if (e.technique.id != tid) continue;
    int level = -1;
    if (e.task && e.context) {
      if (e.task->id == task_id && e.context->id == context_id) level = 0;
    } else if (e.task && !e.context) {
      if (e.task->id == task_id) level = 1;
    } else if (!e.task && !e.context) {
      level = 2;
    }
    if (level < 0) continue;
    sum[level] += e.score;
    ++count[level];
  }
  static constexpr ScoreSource kSources[] = {ScoreSource::kExact, ScoreSource::kTaskOnly,
                                             ScoreSource::kGeneric};
  for (int level = 0; level < 3; ++level) {
    if (count[level] > 0) {
      double mean = std::clamp(sum[level] / count[level], 0.0, 1.0);
      return {mean, kSources[level]};
    }
  }
  return {std::clamp(default_score, 0.0, 1.0), ScoreSource::kDefault};
}

}  // namespace vtkb
