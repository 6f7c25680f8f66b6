#pragma once

// Enumerations shared by several modules, with their canonical spellings.
// The spellings are used verbatim in VTKB text and in JSON payloads.

#include <optional>
#include <string_view>

namespace vtkb {

enum class OutputSpace { kWorldSpace, kViewSpace, kScreenSpace };
enum class Dimensionality { k2D, k3D };
enum class AnchorSlot { kVolume, kSurface, kTopOfObject, kSideOfObject, kOverlay };
enum class SizeMode { kFixed, kDynamic };
enum class Severity { kForbid, kWarn };
enum class ViewpointFrame { kInside, kOutside };

std::string_view to_string(OutputSpace v);
std::string_view to_string(Dimensionality v);
std::string_view to_string(AnchorSlot v);
std::string_view to_string(SizeMode v);
std::string_view to_string(Severity v);
std::string_view to_string(ViewpointFrame v);

std::optional<OutputSpace> parse_output_space(std::string_view s);
std::optional<Dimensionality> parse_dimensionality(std::string_view s);
std::optional<AnchorSlot> parse_anchor_slot(std::string_view s);
std::optional<SizeMode> parse_size_mode(std::string_view s);
std::optional<ViewpointFrame> parse_viewpoint_frame(std::string_view s);

}  // namespace vtkb
