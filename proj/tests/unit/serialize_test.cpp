#include <doctest.h>

#include "../support/algebras.hpp"
#include "qtwist/field.hpp"
#include "qtwist/serialize.hpp"

using namespace qtwist;
using Q = Rational;

TEST_CASE("McKay presentations and quotients round-trip through JSON") {
  for (auto [n, w] : {std::pair{3, std::array<int, 3>{1, 1, 1}}, {5, {1, 1, 3}}, {7, {1, 1, 5}}, {7, {1, 2, 4}}}) {
    const auto p = mckay_presentation(GroupData::make(n, w));
    const Json j = presentation_to_json(p);
    CHECK(presentation_from_json(j) == p);
    CHECK(presentation_from_json(Json::parse(j.dump())) == p);
    const std::vector<int> del{1, 2};
    const auto q = delete_vertices(p, del);
    CHECK(presentation_from_json(presentation_to_json(q)) == q);
  }
}

TEST_CASE("presentation JSON layout") {
  const Json j = presentation_to_json(mckay_presentation(GroupData::make(3, {1, 1, 1})));
  CHECK(j["version"] == 1);
  CHECK(j["n"] == 3);
  CHECK(j["arrows"].size() == 9);
  CHECK(j["relations"].size() == 9);
  CHECK(j["arrows"][0]["family"] == "x");
  // a relation is [[1,1,[a,b]],[-1,1,[c,d]]]
  const Json& r = j["relations"][0];
  CHECK(r.size() == 2);
  CHECK(r[0][0] == 1);
  CHECK(r[1][0] == -1);
  CHECK(r[1][1] == 1);
  CHECK(r[0][2].size() == 2);
  CHECK(j.dump() == presentation_to_json(mckay_presentation(GroupData::make(3, {1, 1, 1}))).dump());
}

TEST_CASE("bundled 3-cycle fixture loads to the hand-built presentation") {
  const auto p = load_presentation(std::string(QTWIST_FIXTURES_DIR) + "/three_cycle_rad3.json");
  CHECK(p == testing::three_cycle_rad3());
  CHECK_FALSE(p.group.has_value());
}

TEST_CASE("malformed presentation JSON names the offending field") {
  const Json good = presentation_to_json(testing::kronecker3());
  auto fails_with = [&](Json j, const std::string& needle) {
    try {
      presentation_from_json(j);
    } catch (const ContractError& e) {
      const std::string message = e.what();
      CAPTURE(message);
      CHECK(message.find(needle) != std::string::npos);
      return;
    }
    FAIL("no ContractError");
  };
  Json j = good;
  j.erase("vertices");
  fails_with(j, "vertices");
  j = good;
  j["version"] = 7;
  fails_with(j, "version");
  j = good;
  j["arrows"][1]["tgt"] = 9;
  fails_with(j, "arrows[1]");
  j = good;
  j["arrows"][0]["family"] = "w";
  fails_with(j, "family");
  j = good;
  j["relations"] = Json::parse("[[[1, 0, [0]]]]");
  fails_with(j, "zero denominator");
  j = good;
  j["relations"] = Json::parse("[[[1, 1, [0, 1]]]]");
  fails_with(j, "relations[0]");
  CHECK_THROWS_AS(load_presentation("/nonexistent/file.json"), ContractError);
}

TEST_CASE("rationals are written in lowest terms with positive denominators") {
  CHECK(rational_json(mpq_class(6, -4)).dump() == "[-3,2]");
  CHECK(rational_json(mpq_class(0)).dump() == "[0,1]");
  mpz_class big("123456789012345678901234567890");
  CHECK(rational_json(mpq_class(big)).dump() == "[\"123456789012345678901234567890\",1]");
}

TEST_CASE("Kronecker algebra JSON and resolution display") {
  const auto alg = structure_constants(GradedBasis<Q>::build(testing::kronecker3(), 4));
  const Json j = graded_algebra_to_json(alg);
  CHECK(j["dimension"] == 5);
  CHECK(j["degrees"] == Json::parse("[2,3,0]"));
  CHECK(j["basis"].size() == 5);
  // e_1 * arrow = arrow for the three arrows, e_i e_i = e_i, arrow * e_0 = arrow
  CHECK(j["products"].size() == 2 + 3 + 3);

  const auto res = minimal_resolution(alg, simple(alg, 1));
  CHECK(resolution_display(alg, res, "S(1)") == "0 → P(0)^{⊕3} → P(1) → S(1) → 0");
  const Json r = resolution_to_json(alg, res, "S(1)", true);
  CHECK(r["status"] == "complete");
  CHECK(r["projective_dimension"] == 1);
  CHECK(r["steps"][1]["betti"] == Json::parse("[[0,3]]"));
  CHECK(r["steps"][1]["generators"].size() == 3);

  const auto gd = global_dimension(alg);
  const Json g = global_dimension_to_json(alg, gd);
  CHECK(g["kind"] == "finite");
  CHECK(g["value"] == 1);
  CHECK(g["cartan_determinant"] == 1);
}

TEST_CASE("truncated resolutions start with an ellipsis") {
  const auto alg = structure_constants(
      GradedBasis<Q>::build(delete_vertices(mckay_presentation(GroupData::make(5, {1, 1, 3})), std::vector<int>{0, 1}), 20));
  const std::size_t v2 = *alg.quiver().vertex_of_label(2);
  const auto res = minimal_resolution(alg, simple(alg, v2), ResolutionOptions{3, false, 400});
  CHECK(resolution_display(alg, res, "S(2)") == "⋯ → P(2) → P(3)^{⊕2} → P(4) → P(2) → S(2) → 0");
}

TEST_CASE("self-injectivity JSON of the 3-cycle algebra") {
  const auto alg = structure_constants(GradedBasis<Q>::build(testing::three_cycle_rad3(), 6));
  const Json j = self_injectivity_to_json(alg, self_injectivity(alg));
  CHECK(j["verdict"] == "self_injective");
  CHECK(j["sigma"] == Json::parse("[[0,2],[1,0],[2,1]]"));
  CHECK(j["witnesses_verified"] == true);
}

TEST_CASE("report JSON schema and markdown") {
  EligibilityCaps caps;
  const auto r = check_quotient<Q>(GroupData::make(3, {1, 1, 1}), VertexSet::make(3, {2}), caps);
  const Json j = report_to_json(r);
  for (const char* key : {"group", "V", "canonical_V", "dims", "criterion", "gldim", "self_injective",
                          "kernel_idempotent", "eligible", "prediction", "version"})
    CHECK(j.contains(key));
  CHECK(j["dims"]["total"] == 5);
  CHECK(j["gldim"]["kind"] == "finite");
  CHECK(j["eligible"] == "yes");
  CHECK(j["criterion"].is_null());
  const std::string md = report_to_markdown(r);
  CHECK(md.find("| {2} | {0,1} |") != std::string::npos);
}

TEST_CASE("square report JSON keyed by degree") {
  const auto t = TruncatedAlgebra<Q>::build(GroupData::make(3, {1, 1, 1}), 3);
  const auto rep = ideal_square_test(t, {2});
  const Json j = square_report_to_json(GroupData::make(3, {1, 1, 1}), VertexSet::make(3, {2}), rep);
  CHECK(j["table"]["1"]["dimA"] == 9);
  CHECK(j["table"]["1"]["dimK"] == 6);
  CHECK(j["table"]["1"]["equal"] == true);
  CHECK(j["verdict"] == "verified at truncation");
}
