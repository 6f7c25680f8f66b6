#pragma once

// Usability lookup over evaluation records with wildcard fallback.

#include <string>

#include "vtkb/kb_model.hpp"

namespace vtkb {

enum class ScoreSource { kExact, kTaskOnly, kGeneric, kDefault };
std::string_view to_string(ScoreSource s);

inline constexpr double kDefaultUsability = 0.5;

struct Usability {
  double score = kDefaultUsability;
  ScoreSource source = ScoreSource::kDefault;

  bool operator==(const Usability&) const = default;
};

// First level with at least one record wins: (t, task, context), then
// (t, task, *), then (t, *, *), then the default. Several records at the
// winning level are averaged. Records of the form (t, *, context) are not
// consulted. Throws Error(kUnknownTechnique) when `technique` is not an
// individual typed under vt:Visualization_Technique.
Usability usability(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                    std::string_view technique, std::string_view task,
                    std::string_view context, double default_score = kDefaultUsability);

}  // namespace vtkb
