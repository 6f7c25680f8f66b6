#pragma once

// Typed views over KB individuals: DataItem (an abstract-information item to
// display) and TechniqueSpec (a visualization technique), plus geolocations
// and output locations.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vtkb/kb_model.hpp"

namespace vtkb {

// VTKB property ids recognized by the projections.
namespace props {
inline constexpr std::string_view kHasDataType = "vt:hasDataType";
inline constexpr std::string_view kHasFormat = "vt:hasFormat";
inline constexpr std::string_view kHasIssue = "vt:hasIssue";
inline constexpr std::string_view kHasUrbanObject = "vt:hasUrbanObject";
inline constexpr std::string_view kHasGeolocation = "vt:hasGeolocation";
inline constexpr std::string_view kLocX = "vt:locX";
inline constexpr std::string_view kLocY = "vt:locY";
inline constexpr std::string_view kLocZ = "vt:locZ";
inline constexpr std::string_view kGeoName = "vt:geoName";
inline constexpr std::string_view kAcceptsDataType = "vt:acceptsDataType";
inline constexpr std::string_view kOutputSpace = "vt:outputSpace";
inline constexpr std::string_view kOutputDim = "vt:outputDim";
inline constexpr std::string_view kAnchorSlot = "vt:anchorSlot";
inline constexpr std::string_view kVisualizationAbstraction =
    "vt:visualizationAbstraction";
inline constexpr std::string_view kTransparency = "vt:transparency";
inline constexpr std::string_view kSizeMode = "vt:sizeMode";
inline constexpr std::string_view kReference = "vt:reference";
inline constexpr std::string_view kExample = "vt:example";
}  // namespace props

// Coordinates are meters in the scene frame.
struct Coordinates2D {
  double x = 0, y = 0;
  bool operator==(const Coordinates2D&) const = default;
};
struct Coordinates3D {
  double x = 0, y = 0, z = 0;
  bool operator==(const Coordinates3D&) const = default;
};
struct GeoName {
  std::string name;
  bool operator==(const GeoName&) const = default;
};
struct ObjectAnchored {
  std::string object;  // urban object individual id
  bool operator==(const ObjectAnchored&) const = default;
};

using Geolocation = std::variant<Coordinates2D, Coordinates3D, GeoName, ObjectAnchored>;

// "Coordinates2D", "Coordinates3D", "GeoName" or "ObjectAnchored".
std::string_view geolocation_kind(const Geolocation& g);

struct DataItem {
  std::string id;
  std::string data_type;                    // concept under vt:DataType
  std::optional<std::string> format;        // open vocabulary: jpg, pdf, ...
  std::string issue;                        // concept under vt:EnvironmentalIssue
  std::optional<std::string> urban_object;  // individual id
  Geolocation geolocation;

  // urban_object if set, otherwise the anchor object of an ObjectAnchored
  // location.
  std::optional<std::string> effective_object() const;

  bool operator==(const DataItem&) const = default;
};

struct OutputLocation {
  OutputSpace space = OutputSpace::kWorldSpace;
  Dimensionality dimensionality = Dimensionality::k3D;
  AnchorSlot anchor_slot = AnchorSlot::kVolume;

  bool operator==(const OutputLocation&) const = default;
};

// ScreenSpace implies Overlay; Volume implies 3D. Returns a description of the
// first broken invariant, or nullopt.
std::optional<std::string> output_location_problem(const OutputLocation& loc);

struct TechniqueSpec {
  std::string id;
  std::string accepted_data_type;
  std::vector<std::string> applicable_issues;  // sorted; empty = issue-generic
  OutputLocation output;
  std::string visualization_abstraction;
  // Keyed by property id. Always holds vt:transparency (boolean) and
  // vt:sizeMode ("Fixed" / "Dynamic"); unrecognized assertions are kept here.
  std::map<std::string, Term> visual_attributes;
  std::string reference;
  std::string example;

  bool transparency() const;
  SizeMode size_mode() const;

  bool operator==(const TechniqueSpec&) const = default;
};

// Throws MissingFacet (data_type, issue, geolocation) and
// Error(kInvalidFacet) for malformed values.
DataItem data_item_from_individual(const KnowledgeBase& kb,
                                   const SubsumptionClosure& closure,
                                   std::string_view id);

// Throws MissingFacet (accepted_data_type, output_location, transparency,
// size_mode) and Error(kInvalidFacet).
TechniqueSpec technique_from_individual(const KnowledgeBase& kb,
                                        const SubsumptionClosure& closure,
                                        std::string_view id);

// Checks a DataItem built outside the KB (JSON requests): concepts declared
// and under the right roots, object anchors exist, coordinates finite.
void check_data_item(const KnowledgeBase& kb, const SubsumptionClosure& closure,
                     const DataItem& item);

// Re-emits the individuals a DataItem projects from: the data individual and
// its geolocation individual (named `geolocation_id`). ObjectAnchored
// geolocations are written as an ObjectAnchored individual.
std::vector<Individual> embed(const DataItem& item, const std::string& geolocation_id);
Individual embed(const TechniqueSpec& technique);

// Techniques projected once from a KB. Individuals typed as techniques that
// fail projection are listed in rejected() rather than aborting the build.
class TechniqueCatalog {
 public:
  TechniqueCatalog() = default;
  TechniqueCatalog(const KnowledgeBase& kb, const SubsumptionClosure& closure);

  const std::vector<TechniqueSpec>& techniques() const { return techniques_; }
  const TechniqueSpec* find(std::string_view id) const;
  const std::vector<std::pair<std::string, std::string>>& rejected() const {
    return rejected_;
  }

 private:
  std::vector<TechniqueSpec> techniques_;  // sorted by id
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::pair<std::string, std::string>> rejected_;
};

}  // namespace vtkb
