#pragma once

// Paths and cached loads of the shipped fixture files.

#include <string>

#include "vtkb/ontology_io.hpp"
#include "vtkb/scene_selector.hpp"

namespace vtkb::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(VTKB_FIXTURE_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(VTKB_GOLDEN_DIR) + "/" + name;
}

inline const KnowledgeBase& reference_kb() {
  static const KnowledgeBase kb = parse_kb(read_document(fixture_path("paper_kb.vtkb")));
  return kb;
}

inline const SubsumptionClosure& reference_closure() {
  static const SubsumptionClosure c = classify(reference_kb());
  return c;
}

inline KnowledgeBase kb_from(const std::string& text) {
  return parse_kb(SourceDocument{text, "<test>"});
}

// The three data items of the building-B12 scene, projected from the KB.
inline DataItem reference_item(const std::string& id) {
  DataItem d = data_item_from_individual(reference_kb(), reference_closure(), id);
  d.id = id;
  return d;
}

inline SceneSpec reference_scene() {
  SceneSpec s;
  s.items = {reference_item("BuildingName_B12"), reference_item("AirQualityValue_B12"),
             reference_item("NoiseValue_B12")};
  s.task = "vt:EvaluateProject";
  s.context = "vt:OutsideOverview";
  return s;
}

inline constexpr const char* kBallsAQ = "vt:AirQuality_Scalar_VS_3D_ColoredBalls";
inline constexpr const char* kTexturesAQ = "vt:AirQuality_Scalar_WS_2D_ColoredTextures";
inline constexpr const char* kBallsNoise = "vt:Noise_Scalar_VS_3D_ColoredBalls";
inline constexpr const char* kTextLabel = "vt:BuildingLabel_Text_WS_3D_TextObject";

}  // namespace vtkb::testing
