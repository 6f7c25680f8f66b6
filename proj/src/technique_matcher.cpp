#include "vtkb/technique_matcher.hpp"

#include <algorithm>

namespace vtkb {

namespace {

std::string render_chain(const std::vector<std::string>& chain) {
  std::string out;
  for (const auto& c : chain) {
    if (!out.empty()) out += " ⊑ ";
    out += c;
  }
  return out;
}

CriterionResult data_type_criterion(const SubsumptionClosure& closure, const DataItem& item,
                                    const TechniqueSpec& t) {
  CriterionResult r{"data_type", false, {}};
  auto chain = closure.chain(item.data_type, t.accepted_data_type);
  if (!chain.empty()) {
    r.pass = true;
    r.explanation = render_chain(chain);
  } else {
    r.explanation = item.data_type + " is not subsumed by " + t.accepted_data_type;
  }
  return r;
}

CriterionResult issue_criterion(const SubsumptionClosure& closure, const DataItem& item,
                                const TechniqueSpec& t) {
  CriterionResult r{"issue", false, {}};
  if (t.applicable_issues.empty()) {
    r.pass = true;
    r.explanation = "technique is issue-generic";
    return r;
  }
  for (const auto& issue : t.applicable_issues) {
    auto chain = closure.chain(item.issue, issue);
    if (!chain.empty()) {
      r.pass = true;
      r.explanation = render_chain(chain);
      return r;
    }
  }
  std::string list;
  for (const auto& issue : t.applicable_issues) list += (list.empty() ? "" : ", ") + issue;
  r.explanation = item.issue + " is not subsumed by any of {" + list + "}";
  return r;
}

CriterionResult location_criterion(const DataItem& item, const TechniqueSpec& t) {
  CriterionResult r{"location_compatibility", location_compatible(t.output, item.geolocation),
                    {}};
  r.explanation = std::string(geolocation_kind(item.geolocation)) +
                  (r.pass ? " fits " : " does not fit ") +
                  std::string(to_string(t.output.dimensionality)) + "/" +
                  std::string(to_string(t.output.anchor_slot)) + " output";
  return r;
}

}  // namespace

std::string_view to_string(Verdict v) { return v == Verdict::kMatch ? "Match" : "Reject"; }

bool location_compatible(const OutputLocation& out, const Geolocation& loc) {
  const bool anchored = std::holds_alternative<ObjectAnchored>(loc);
  if (out.space == OutputSpace::kScreenSpace || out.anchor_slot == AnchorSlot::kOverlay) {
    return true;
  }
  switch (out.anchor_slot) {
    case AnchorSlot::kSurface:
      return anchored || std::holds_alternative<Coordinates2D>(loc) ||
             std::holds_alternative<GeoName>(loc);
    case AnchorSlot::kVolume:
    case AnchorSlot::kTopOfObject:
    case AnchorSlot::kSideOfObject:
      return anchored || std::holds_alternative<Coordinates3D>(loc);
    case AnchorSlot::kOverlay:
      return true;
  }
  return false;
}

MatchReport match_report(const SubsumptionClosure& closure, const DataItem& item,
                         const TechniqueSpec& technique) {
  MatchReport report;
  report.technique = technique.id;
  report.criteria = {data_type_criterion(closure, item, technique),
                     issue_criterion(closure, item, technique),
                     location_criterion(item, technique)};
  const bool all = std::all_of(report.criteria.begin(), report.criteria.end(),
                               [](const CriterionResult& c) { return c.pass; });
  report.verdict = all ? Verdict::kMatch : Verdict::kReject;
  return report;
}

MatchReport match_report(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                         const DataItem& item, std::string_view technique_id) {
  return match_report(closure, item, technique_from_individual(kb, closure, technique_id));
}

std::vector<std::string> candidates(const TechniqueCatalog& catalog,
                                    const SubsumptionClosure& closure,
                                    const DataItem& item) {
  std::vector<std::string> out;
  for (const auto& t : catalog.techniques()) {
    if (match_report(closure, item, t).verdict == Verdict::kMatch) out.push_back(t.id);
  }
  return out;  // catalog is sorted by id
}

std::vector<std::string> candidates(const KnowledgeBase& kb,
                                    const SubsumptionClosure& closure,
                                    const DataItem& item) {
  return candidates(TechniqueCatalog(kb, closure), closure, item);
}

}  // namespace vtkb
