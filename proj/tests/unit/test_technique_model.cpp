#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "fixtures.hpp"
#include "vtkb/technique_model.hpp"

namespace vtkb {
namespace {

using testing::reference_closure;
using testing::reference_kb;

// Minimal vocabulary for hand-written technique and data individuals.
const char* kVocabulary = R"(
concept Thing . concept Data subclassof Thing .
concept Visualization_Technique subclassof Thing .
concept DataType subclassof Thing . concept Scalar subclassof DataType .
concept EnvironmentalIssue subclassof Thing . concept Noise subclassof EnvironmentalIssue .
concept UrbanObject subclassof Thing . concept Building subclassof UrbanObject .
concept Geolocation subclassof Thing . concept Coordinates2D subclassof Geolocation .
concept Coordinates3D subclassof Geolocation . concept GeoName subclassof Geolocation .
concept ObjectAnchored subclassof Geolocation .
property hasDataType object domain Data range DataType .
property hasFormat datum domain Data range Text .
property hasIssue object domain Thing range EnvironmentalIssue .
property hasUrbanObject object domain Thing range UrbanObject .
property hasGeolocation object domain Data range Thing .
property locX datum domain Geolocation range Number .
property locY datum domain Geolocation range Number .
property locZ datum domain Geolocation range Number .
property geoName datum domain GeoName range Text .
property acceptsDataType object domain Visualization_Technique range DataType .
property outputSpace datum domain Visualization_Technique range Text .
property outputDim datum domain Visualization_Technique range Text .
property anchorSlot datum domain Visualization_Technique range Text .
property transparency datum domain Visualization_Technique range Boolean .
property sizeMode datum domain Visualization_Technique range Text .
property glyphColor datum domain Visualization_Technique range Text .
individual b1 type Building .
)";

KnowledgeBase with_vocabulary(const std::string& extra) { return testing::kb_from(kVocabulary + extra); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kIo;
}

std::string missing_facet_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MissingFacet& e) {
    return e.facet();
  }
  ADD_FAILURE() << "no MissingFacet";
  return {};
}

TEST(DataItemView, ScalarWithThreeDimensionalLocation) {
  DataItem d = data_item_from_individual(reference_kb(), reference_closure(), "AirQualityValue_B12");
  EXPECT_EQ(d.id, "vt:AirQualityValue_B12");
  EXPECT_EQ(d.data_type, "vt:Scalar");
  EXPECT_EQ(d.issue, "vt:AirQuality");
  EXPECT_EQ(d.format, "xml");
  EXPECT_EQ(d.urban_object, "vt:B12");
  EXPECT_EQ(d.geolocation, Geolocation(Coordinates3D{120.5, 48, 31.2}));
}

TEST(DataItemView, TextLabelAnchoredToBuilding) {
  DataItem d = data_item_from_individual(reference_kb(), reference_closure(), "BuildingName_B12");
  EXPECT_EQ(d.data_type, "vt:Text");
  EXPECT_EQ(d.issue, "vt:None");
  EXPECT_EQ(d.geolocation, Geolocation(ObjectAnchored{"vt:B12"}));
  EXPECT_EQ(geolocation_kind(d.geolocation), "ObjectAnchored");
  EXPECT_EQ(d.effective_object(), "vt:B12");
}

TEST(DataItemView, EffectiveObjectFallsBackToAnchor) {
  DataItem d = data_item_from_individual(reference_kb(), reference_closure(), "NoiseValue_B12");
  EXPECT_FALSE(d.urban_object);
  EXPECT_FALSE(d.effective_object());
  d.geolocation = ObjectAnchored{"vt:B12"};
  EXPECT_EQ(d.effective_object(), "vt:B12");
}

TEST(DataItemView, MissingGeolocation) {
  auto kb = with_vocabulary("individual d type Data ; hasDataType Scalar ; hasIssue Noise .");
  auto c = classify(kb);
  EXPECT_EQ(missing_facet_of([&] { data_item_from_individual(kb, c, "d"); }), "geolocation");
}

TEST(DataItemView, MissingTypeAndIssue) {
  auto kb = with_vocabulary(
      "individual g type GeoName ; geoName \"Dock\" .\n"
      "individual d1 type Data ; hasIssue Noise ; hasGeolocation g .\n"
      "individual d2 type Data ; hasDataType Scalar ; hasGeolocation g .\n");
  auto c = classify(kb);
  EXPECT_EQ(missing_facet_of([&] { data_item_from_individual(kb, c, "d1"); }), "data_type");
  EXPECT_EQ(missing_facet_of([&] { data_item_from_individual(kb, c, "d2"); }), "issue");
}

TEST(DataItemView, LocationForms) {
  auto kb = with_vocabulary(
      "individual g2 type Coordinates2D ; locX 1 ; locY -2.5 .\n"
      "individual gn type GeoName ; geoName \"Dock\" .\n"
      "individual half type Coordinates3D ; locX 1 ; locY 2 .\n"
      "individual a type Data ; hasDataType Scalar ; hasIssue Noise ; hasGeolocation g2 .\n"
      "individual b type Data ; hasDataType Scalar ; hasIssue Noise ; hasGeolocation gn .\n"
      "individual c type Data ; hasDataType Scalar ; hasIssue Noise ; hasGeolocation b1 .\n"
      "individual e type Data ; hasDataType Scalar ; hasIssue Noise ; hasGeolocation half .\n");
  auto c = classify(kb);
  EXPECT_EQ(data_item_from_individual(kb, c, "a").geolocation, Geolocation(Coordinates2D{1, -2.5}));
  EXPECT_EQ(data_item_from_individual(kb, c, "b").geolocation, Geolocation(GeoName{"Dock"}));
  EXPECT_EQ(data_item_from_individual(kb, c, "c").geolocation, Geolocation(ObjectAnchored{"vt:b1"}));
  EXPECT_EQ(missing_facet_of([&] { data_item_from_individual(kb, c, "e"); }), "geolocation");
  // A data type outside vt:DataType only gets past the unchecked parser.
  auto bad = parse_kb_unchecked(SourceDocument{
      std::string(kVocabulary) +
      "individual gn type GeoName ; geoName \"Dock\" .\n"
      "individual f type Data ; hasDataType Noise ; hasIssue Noise ; hasGeolocation gn .\n"});
  EXPECT_EQ(code_of([&] { data_item_from_individual(bad, classify(bad), "f"); }),
            ErrorCode::kInvalidFacet);
  EXPECT_EQ(code_of([&] { data_item_from_individual(kb, c, "b1"); }), ErrorCode::kInvalidFacet);
  EXPECT_EQ(code_of([&] { data_item_from_individual(kb, c, "ghost"); }), ErrorCode::kUnknownReference);
}

TEST(TechniqueView, ColoredBalls) {
  TechniqueSpec t = technique_from_individual(reference_kb(), reference_closure(),
                                              "AirQuality_Scalar_VS_3D_ColoredBalls");
  EXPECT_EQ(t.accepted_data_type, "vt:Scalar");
  EXPECT_EQ(t.applicable_issues, std::vector<std::string>{"vt:AirQuality"});
  EXPECT_EQ(t.output, (OutputLocation{OutputSpace::kViewSpace, Dimensionality::k3D, AnchorSlot::kVolume}));
  EXPECT_EQ(t.visualization_abstraction, "colored balls");
  EXPECT_FALSE(t.transparency());
  EXPECT_EQ(t.size_mode(), SizeMode::kDynamic);
}

TEST(TechniqueView, ColoredTextures) {
  TechniqueSpec t = technique_from_individual(reference_kb(), reference_closure(),
                                              "AirQuality_Scalar_WS_2D_ColoredTextures");
  EXPECT_EQ(t.accepted_data_type, "vt:Scalar");
  EXPECT_EQ(t.applicable_issues, std::vector<std::string>{"vt:AirQuality"});
  EXPECT_EQ(t.output, (OutputLocation{OutputSpace::kWorldSpace, Dimensionality::k2D, AnchorSlot::kSurface}));
  EXPECT_TRUE(t.transparency());
  EXPECT_EQ(t.size_mode(), SizeMode::kFixed);
}

TEST(TechniqueView, MissingOutputLocation) {
  auto kb = with_vocabulary(
      "individual t type Visualization_Technique ; acceptsDataType Scalar ;\n"
      "  outputSpace \"WorldSpace\" ; transparency true ; sizeMode \"Fixed\" .\n");
  auto c = classify(kb);
  EXPECT_EQ(missing_facet_of([&] { technique_from_individual(kb, c, "t"); }), "output_location");
}

TEST(TechniqueView, RequiredAttributesAndExtras) {
  const std::string head =
      "individual t type Visualization_Technique ; acceptsDataType Scalar ;\n"
      "  outputSpace \"WorldSpace\" ; outputDim \"3D\" ; anchorSlot \"Volume\"";
  auto no_accept = with_vocabulary(
      "individual t type Visualization_Technique ; outputSpace \"WorldSpace\" ; outputDim \"3D\" ;"
      " anchorSlot \"Volume\" ; transparency true ; sizeMode \"Fixed\" .");
  EXPECT_EQ(missing_facet_of([&] { technique_from_individual(no_accept, classify(no_accept), "t"); }),
            "accepted_data_type");
  auto no_size = with_vocabulary(head + " ; transparency true .");
  EXPECT_EQ(missing_facet_of([&] { technique_from_individual(no_size, classify(no_size), "t"); }),
            "size_mode");
  auto no_transparency = with_vocabulary(head + " ; sizeMode \"Fixed\" .");
  EXPECT_EQ(missing_facet_of([&] {
              technique_from_individual(no_transparency, classify(no_transparency), "t");
            }),
            "transparency");
  auto extras = with_vocabulary(head + " ; transparency true ; sizeMode \"Fixed\" ; glyphColor \"red\" .");
  TechniqueSpec t = technique_from_individual(extras, classify(extras), "t");
  EXPECT_EQ(t.visual_attributes.at("vt:glyphColor"), Term(std::string("red")));
  EXPECT_TRUE(t.applicable_issues.empty());
}

TEST(TechniqueView, InvalidValues) {
  auto make = [](const std::string& space, const std::string& dim, const std::string& slot,
                 const std::string& size) {
    return with_vocabulary("individual t type Visualization_Technique ; acceptsDataType Scalar ;"
                           " outputSpace \"" + space + "\" ; outputDim \"" + dim +
                           "\" ; anchorSlot \"" + slot + "\" ; transparency true ; sizeMode \"" +
                           size + "\" .");
  };
  auto code = [&](const KnowledgeBase& kb) {
    return code_of([&] { technique_from_individual(kb, classify(kb), "t"); });
  };
  EXPECT_EQ(code(make("ScreenSpace", "2D", "Surface", "Fixed")), ErrorCode::kInvalidFacet);
  EXPECT_EQ(code(make("WorldSpace", "2D", "Volume", "Fixed")), ErrorCode::kInvalidFacet);
  EXPECT_EQ(code(make("Elsewhere", "3D", "Volume", "Fixed")), ErrorCode::kInvalidFacet);
  EXPECT_EQ(code(make("WorldSpace", "3D", "Volume", "Huge")), ErrorCode::kInvalidFacet);
  EXPECT_EQ(code_of([] { technique_from_individual(reference_kb(), reference_closure(), "B12"); }),
            ErrorCode::kUnknownTechnique);
  EXPECT_EQ(code_of([] { technique_from_individual(reference_kb(), reference_closure(), "Nope"); }),
            ErrorCode::kUnknownTechnique);
}

TEST(OutputLocationInvariants, Table) {
  EXPECT_FALSE(output_location_problem({OutputSpace::kScreenSpace, Dimensionality::k2D, AnchorSlot::kOverlay}));
  EXPECT_TRUE(output_location_problem({OutputSpace::kScreenSpace, Dimensionality::k2D, AnchorSlot::kSurface}));
  EXPECT_TRUE(output_location_problem({OutputSpace::kWorldSpace, Dimensionality::k2D, AnchorSlot::kVolume}));
  EXPECT_FALSE(output_location_problem({OutputSpace::kViewSpace, Dimensionality::k2D, AnchorSlot::kOverlay}));
}

TEST(OutputLocationInvariants, EveryFixtureTechnique) {
  TechniqueCatalog catalog(reference_kb(), reference_closure());
  EXPECT_EQ(catalog.techniques().size(), 4u);
  EXPECT_TRUE(catalog.rejected().empty());
  for (const auto& t : catalog.techniques()) {
    EXPECT_FALSE(output_location_problem(t.output)) << t.id;
    if (t.output.space == OutputSpace::kScreenSpace) EXPECT_EQ(t.output.anchor_slot, AnchorSlot::kOverlay);
    if (t.output.anchor_slot == AnchorSlot::kVolume) EXPECT_EQ(t.output.dimensionality, Dimensionality::k3D);
  }
}

TEST(Catalog, SortedLookupAndRejections) {
  auto kb = with_vocabulary(
      "individual z type Visualization_Technique ; acceptsDataType Scalar ; outputSpace \"ScreenSpace\" ;"
      " outputDim \"2D\" ; anchorSlot \"Overlay\" ; transparency true ; sizeMode \"Fixed\" .\n"
      "individual a type Visualization_Technique ; acceptsDataType Scalar .\n");
  TechniqueCatalog catalog(kb, classify(kb));
  ASSERT_EQ(catalog.techniques().size(), 1u);
  EXPECT_NE(catalog.find("z"), nullptr);
  EXPECT_NE(catalog.find("vt:z"), nullptr);
  EXPECT_EQ(catalog.find("a"), nullptr);
  ASSERT_EQ(catalog.rejected().size(), 1u);
  EXPECT_EQ(catalog.rejected()[0].first, "vt:a");
}

TEST(CheckDataItem, RejectsBadFacets) {
  DataItem good = testing::reference_item("AirQualityValue_B12");
  EXPECT_NO_THROW(check_data_item(reference_kb(), reference_closure(), good));
  auto with = [&](auto change) {
    DataItem d = good;
    change(d);
    return code_of([&] { check_data_item(reference_kb(), reference_closure(), d); });
  };
  EXPECT_EQ(with([](DataItem& d) { d.data_type = "vt:Nope"; }), ErrorCode::kUnknownConcept);
  EXPECT_EQ(with([](DataItem& d) { d.data_type = "vt:Noise"; }), ErrorCode::kInvalidFacet);
  EXPECT_EQ(with([](DataItem& d) { d.issue = "vt:Scalar"; }), ErrorCode::kInvalidFacet);
  EXPECT_EQ(with([](DataItem& d) { d.urban_object = "vt:B99"; }), ErrorCode::kUnknownReference);
  EXPECT_EQ(with([](DataItem& d) { d.geolocation = ObjectAnchored{"vt:B99"}; }),
            ErrorCode::kUnknownReference);
  EXPECT_EQ(with([](DataItem& d) {
              d.geolocation = Coordinates3D{std::numeric_limits<double>::infinity(), 0, 0};
            }),
            ErrorCode::kInvalidFacet);
  EXPECT_EQ(with([](DataItem& d) { d.geolocation = GeoName{""}; }), ErrorCode::kInvalidFacet);
}

// Types and assertions as comparable text, ignoring source positions.
std::vector<std::string> shape(const Individual& ind) {
  std::vector<std::string> out;
  for (const auto& t : ind.types) out.push_back("type " + t.id);
  for (const auto& a : ind.assertions) out.push_back(a.property.id + " " + term_to_string(a.value));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Embedding, DataItemsReproduceTheirIndividuals) {
  for (const char* id : {"AirQualityValue_B12", "NoiseValue_B12", "BuildingName_B12"}) {
    const Individual* original = reference_kb().find_individual(qualify(id));
    DataItem d = data_item_from_individual(reference_kb(), reference_closure(), id);
    std::string geo_id;
    for (const auto& a : original->assertions) {
      if (a.property.id == props::kHasGeolocation) geo_id = std::get<NodeId>(a.value).id;
    }
    auto emitted = embed(d, geo_id);
    ASSERT_EQ(emitted.size(), 2u);
    EXPECT_EQ(emitted[0].id, original->id);
    EXPECT_EQ(shape(emitted[0]), shape(*original)) << id;
    EXPECT_EQ(shape(emitted[1]), shape(*reference_kb().find_individual(geo_id))) << id;
  }
}

TEST(Embedding, TechniquesReproduceTheirIndividuals) {
  TechniqueCatalog catalog(reference_kb(), reference_closure());
  for (const auto& t : catalog.techniques()) {
    Individual emitted = embed(t);
    EXPECT_EQ(shape(emitted), shape(*reference_kb().find_individual(t.id))) << t.id;
  }
}

TEST(Embedding, ProjectEmbedProjectIsIdentity) {
  // A KB rebuilt from embedded individuals projects to the same views.
  KnowledgeBase kb;
  for (const auto& c : reference_kb().concepts()) kb.add_concept(c);
  for (const auto& p : reference_kb().properties()) kb.add_property(p);
  kb.add_individual(*reference_kb().find_individual("vt:B12"));
  TechniqueCatalog catalog(reference_kb(), reference_closure());
  for (const auto& t : catalog.techniques()) kb.add_individual(embed(t));
  std::vector<DataItem> items;
  int n = 0;
  for (const char* id : {"AirQualityValue_B12", "NoiseValue_B12", "BuildingName_B12"}) {
    items.push_back(data_item_from_individual(reference_kb(), reference_closure(), id));
    for (auto& ind : embed(items.back(), "vt:geo" + std::to_string(n++))) kb.add_individual(ind);
  }
  EXPECT_TRUE(validate(kb).empty());
  auto c = classify(kb);
  for (const auto& d : items) EXPECT_EQ(data_item_from_individual(kb, c, d.id), d);
  TechniqueCatalog again(kb, c);
  EXPECT_EQ(again.techniques(), catalog.techniques());
}

}  // namespace
}  // namespace vtkb
