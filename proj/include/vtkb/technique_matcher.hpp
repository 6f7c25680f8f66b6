#pragma once

// Effectivity matching: which techniques can display a data item at all.

#include <string>
#include <vector>

#include "vtkb/technique_model.hpp"

namespace vtkb {

enum class Verdict { kMatch, kReject };
std::string_view to_string(Verdict v);

struct CriterionResult {
  std::string name;  // data_type, issue, location_compatibility
  bool pass = false;
  std::string explanation;
};

struct MatchReport {
  std::string technique;
  Verdict verdict = Verdict::kReject;
  std::vector<CriterionResult> criteria;
};

// Location kinds a technique with this output location can be anchored at.
// Overlay accepts anything; Surface takes Coordinates2D, GeoName or
// ObjectAnchored; Volume, TopOfObject and SideOfObject take Coordinates3D or
// ObjectAnchored.
bool location_compatible(const OutputLocation& out, const Geolocation& loc);

MatchReport match_report(const SubsumptionClosure& closure, const DataItem& item,
                         const TechniqueSpec& technique);

// Throws Error(kUnknownTechnique).
MatchReport match_report(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                         const DataItem& item, std::string_view technique_id);

// Sorted ids of the catalog techniques whose report is a Match.
std::vector<std::string> candidates(const TechniqueCatalog& catalog,
                                    const SubsumptionClosure& closure,
                                    const DataItem& item);
std::vector<std::string> candidates(const KnowledgeBase& kb,
                                    const SubsumptionClosure& closure,
                                    const DataItem& item);

}  // namespace vtkb
