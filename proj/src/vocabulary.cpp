#include "vtkb/vocabulary.hpp"

#include <array>
#include <utility>

namespace vtkb {
namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view s) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table,
                         E v) {
  for (const auto& [value, name] : table) {
    if (value == v) return name;
  }
  return "?";
}

constexpr std::array<std::pair<OutputSpace, std::string_view>, 3> kSpaces{{
    {OutputSpace::kWorldSpace, "WorldSpace"},
    {OutputSpace::kViewSpace, "ViewSpace"},
    {OutputSpace::kScreenSpace, "ScreenSpace"},
}};
constexpr std::array<std::pair<Dimensionality, std::string_view>, 2> kDims{{
    {Dimensionality::k2D, "2D"},
    {Dimensionality::k3D, "3D"},
}};
constexpr std::array<std::pair<AnchorSlot, std::string_view>, 5> kSlots{{
    {AnchorSlot::kVolume, "Volume"},
    {AnchorSlot::kSurface, "Surface"},
    {AnchorSlot::kTopOfObject, "TopOfObject"},
    {AnchorSlot::kSideOfObject, "SideOfObject"},
    {AnchorSlot::kOverlay, "Overlay"},
}};
constexpr std::array<std::pair<SizeMode, std::string_view>, 2> kSizeModes{{
    {SizeMode::kFixed, "Fixed"},
    {SizeMode::kDynamic, "Dynamic"},
}};
constexpr std::array<std::pair<Severity, std::string_view>, 2> kSeverities{{
    {Severity::kForbid, "forbid"},
    {Severity::kWarn, "warn"},
}};
constexpr std::array<std::pair<ViewpointFrame, std::string_view>, 2> kFrames{{
    {ViewpointFrame::kInside, "Inside"},
    {ViewpointFrame::kOutside, "Outside"},
}};

}  // namespace

std::string_view to_string(OutputSpace v) { return name_of(kSpaces, v); }
std::string_view to_string(Dimensionality v) { return name_of(kDims, v); }
std::string_view to_string(AnchorSlot v) { return name_of(kSlots, v); }
std::string_view to_string(SizeMode v) { return name_of(kSizeModes, v); }
std::string_view to_string(Severity v) { return name_of(kSeverities, v); }
std::string_view to_string(ViewpointFrame v) { return name_of(kFrames, v); }

std::optional<OutputSpace> parse_output_space(std::string_view s) {
  return lookup(kSpaces, s);
}
std::optional<Dimensionality> parse_dimensionality(std::string_view s) {
  return lookup(kDims, s);
}
std::optional<AnchorSlot> parse_anchor_slot(std::string_view s) {
  return lookup(kSlots, s);
}
std::optional<SizeMode> parse_size_mode(std::string_view s) {
  return lookup(kSizeModes, s);
}
std::optional<ViewpointFrame> parse_viewpoint_frame(std::string_view s) {
  return lookup(kFrames, s);
}

}  // namespace vtkb
