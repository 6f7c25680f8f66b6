#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "service.hpp"

namespace vtkb::detail {
namespace {

const Service& service() {
  static const Service s(read_document(testing::fixture_path("paper_kb.vtkb")), ServiceOptions{});
  return s;
}

json fixture_json(const std::string& name) {
  return json::parse(read_document(testing::fixture_path(name)).text);
}

TEST(ServiceStatus, ExceptionMapping) {
  EXPECT_EQ(status_of(RequestError(ErrorCode::kParse, {1, 2}, "x")), Status::kBadRequest);
  EXPECT_EQ(status_of(NotFound("x")), Status::kNotFound);
  EXPECT_EQ(status_of(ParseError(ErrorCode::kParse, {1, 1}, "x")), Status::kParse);
  EXPECT_EQ(status_of(Error(ErrorCode::kCycle, "x")), Status::kSemantic);
  EXPECT_EQ(status_of(Error(ErrorCode::kSemantic, "x")), Status::kSemantic);
  EXPECT_EQ(status_of(Error(ErrorCode::kIo, "x")), Status::kIo);
  EXPECT_EQ(status_of(Error(ErrorCode::kUnknownConcept, "x")), Status::kUnknownReference);
  EXPECT_EQ(status_of(Error(ErrorCode::kUnknownTechnique, "x")), Status::kUnknownReference);
  EXPECT_EQ(status_of(InfeasibleItem("d")), Status::kInfeasible);
  EXPECT_EQ(status_of(Error(ErrorCode::kInvalidQuery, "x")), Status::kInvalidQuery);
  EXPECT_EQ(status_of(Error(ErrorCode::kMissingFacet, "x")), Status::kInvalidArgument);
  EXPECT_EQ(status_of(std::runtime_error("boom")), Status::kInternal);
}

TEST(ServiceStatus, ErrorDocuments) {
  json parse = error_json(ParseError(ErrorCode::kParse, {3, 7}, "bad", {"'.'"}));
  EXPECT_EQ(parse["error"]["line"], 3);
  EXPECT_EQ(parse["error"]["column"], 7);
  EXPECT_EQ(parse["error"]["expected"], json::array({"'.'"}));
  json inf = error_json(InfeasibleItem("d7"));
  EXPECT_EQ(inf["error"]["code"], "InfeasibleItem");
  EXPECT_EQ(inf["error"]["data"], "d7");
  EXPECT_EQ(error_json(NotFound("gone"))["error"]["code"], "NotFound");
  EXPECT_EQ(error_json(std::runtime_error("boom"))["error"]["code"], "InternalError");
}

TEST(ServiceRequests, MalformedJsonHasPosition) {
  try {
    parse_request("{\n  \"a\": ,\n}");
    FAIL();
  } catch (const RequestError& e) {
    EXPECT_EQ(e.pos().line, 2);
    EXPECT_EQ(e.pos().column, 8);
  }
}

TEST(ServiceRequests, SummaryCounts) {
  json s = service().summary();
  const KnowledgeBase& kb = testing::reference_kb();
  EXPECT_EQ(s["counts"]["concepts"], kb.concepts().size());
  EXPECT_EQ(s["counts"]["individuals"], kb.individuals().size());
  EXPECT_EQ(s["techniques"].size(), 4u);
  EXPECT_EQ(s["rules"].size(), 2u);
  EXPECT_TRUE(s["default_rules_enabled"].get<bool>());
  EXPECT_EQ(s["urban_objects"], json::array({"vt:B12"}));
}

TEST(ServiceRequests, TechniqueLookup) {
  EXPECT_EQ(service().technique(testing::kBallsAQ)["id"], testing::kBallsAQ);
  EXPECT_THROW(service().technique("vt:Nope"), NotFound);
  EXPECT_EQ(service().techniques()["techniques"].size(), 4u);
}

TEST(ServiceRequests, QueryAndExplain) {
  json q = {{"query", read_document(testing::fixture_path("q1.vq")).text}, {"explain", true}};
  json r = service().query(q);
  EXPECT_EQ(r["rows"].size(), 2u);
  EXPECT_EQ(r["explanations"].size(), 2u);
  EXPECT_THROW(service().query({{"query", "select ?x where { ?x type"}}), RequestError);
  EXPECT_THROW(service().query({{"nope", 1}}), RequestError);
}

TEST(ServiceRequests, MatchReportsEveryTechnique) {
  json r = service().match(fixture_json("data_aq_3d.json"));
  EXPECT_EQ(r["reports"].size(), 4u);
  EXPECT_EQ(r["candidates"], json::array({testing::kBallsAQ, testing::kBallsNoise}));
}

TEST(ServiceRequests, RecommendTop) {
  json scene = fixture_json("scene_b12.json");
  EXPECT_EQ(service().recommend(scene)["plans"].size(), 1u);
  scene["top"] = "three";
  EXPECT_THROW(service().recommend(scene), RequestError);
  scene["top"] = 0;
  EXPECT_THROW(service().recommend(scene), Error);
}

TEST(ServiceRequests, CheckDoubleBalls) {
  json r = service().check({{"scene", fixture_json("scene_b12.json")},
                            {"plan", fixture_json("plan_double_balls.json")}});
  EXPECT_FALSE(r["valid"].get<bool>());
  EXPECT_EQ(r["conflicts"].size(), 1u);
  EXPECT_THROW(service().check({{"scene", fixture_json("scene_b12.json")}}), RequestError);
}

TEST(ServiceRequests, DefaultRulesOption) {
  Service off(read_document(testing::fixture_path("paper_kb.vtkb")), ServiceOptions{0.5, false});
  EXPECT_GT(off.recommend(fixture_json("scene_b12.json"))["plans"].size(), 1u);
  EXPECT_FALSE(off.summary()["default_rules_enabled"].get<bool>());
}

TEST(ServiceRequests, ValidateDocumentReportsViolations) {
  json ok = validate_document(read_document(testing::fixture_path("paper_kb.vtkb")));
  EXPECT_TRUE(ok["valid"].get<bool>());
  json bad = validate_document(SourceDocument{"concept vt:A subclassof vt:Missing .\n", "<t>"});
  EXPECT_FALSE(bad["valid"].get<bool>());
  ASSERT_EQ(bad["violations"].size(), 1u);
  EXPECT_EQ(bad["violations"][0]["line"], 1);
}

}  // namespace
}  // namespace vtkb::detail
