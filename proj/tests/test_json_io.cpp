#include "doctest.h"

#include "varietas/json_io.hpp"

using namespace varietas;

TEST_CASE("terms serialize as tagged objects") {
  CHECK(term_to_json(Term::var(3)) == Json{{"var", 3}});
  Json c = term_to_json(Term::constant(ConstantName::c(1, 2)));
  CHECK(c == Json{{"const", Json{{"kind", "C"}, {"m", 1}, {"n", 2}}}});
  Json d = term_to_json(Term::constant(ConstantName::d(4)));
  CHECK(d == Json{{"const", Json{{"kind", "D"}, {"m", 0}, {"n", 4}}}});

  Term app = Term::apply("f", {Term::var(0), Term::constant(ConstantName::d(0))});
  Json j = term_to_json(app);
  CHECK(j.contains("app"));
  CHECK(j["app"]["f"] == "f");
  CHECK(j["app"]["args"].size() == 2);
  CHECK(term_from_json(j) == app);

  CHECK_THROWS_AS(term_from_json(Json{{"bogus", 1}}), ParseError);
  CHECK_THROWS_AS(term_from_json(Json{{"const", Json{{"kind", "E"}, {"m", 0}, {"n", 0}}}}),
                  ParseError);
}

TEST_CASE("models carry carrier, projections, and interpreted constants") {
  ProjectionAlgebra m;
  m.carrier_size = 3;
  m.projection = {{"f", 1}};
  m.constant_interp = {{ConstantName::c(0, 0), 2}, {ConstantName::d(1), 0}};
  Json j = model_to_json(m);
  CHECK(j["carrier_size"] == 3);
  CHECK(j["projections"]["f"] == 1);
  REQUIRE(j["constants"].size() == 2);
  CHECK(j["constants"][0]["kind"] == "C");
  CHECK(j["constants"][0]["value"] == 2);
  ProjectionAlgebra back = model_from_json(j);
  CHECK(back.carrier_size == m.carrier_size);
  CHECK(back.projection == m.projection);
  CHECK(back.constant_interp == m.constant_interp);
}

TEST_CASE("plan documents round-trip byte-identically") {
  for (int n : {0, 1, 7}) {
    StagePlan plan = build_stage_plan(n);
    std::string dump = dump_canonical(plan_to_json(plan));
    StagePlan parsed = plan_from_json(Json::parse(dump));
    CHECK(dump_canonical(plan_to_json(parsed)) == dump);
  }
  CHECK_THROWS_AS(plan_from_json(Json{{"schema_version", 99}, {"stages", Json::array()}}),
                  ParseError);
  CHECK_THROWS_AS(plan_from_json(Json{{"stages", Json::array()}}), ParseError);
}

TEST_CASE("set families use stringified indices") {
  SetFamily f;
  f.universe = {1, 2, 3};
  f.sets = {{0, {1, 2}}, {4, {3}}};
  Json j = set_family_to_json(f);
  CHECK(j["universe"] == Json::array({1, 2, 3}));
  CHECK(j["sets"]["0"] == Json::array({1, 2}));
  CHECK(j["sets"]["4"] == Json::array({3}));
  SetFamily back = set_family_from_json(j);
  CHECK(back.universe == f.universe);
  CHECK(back.sets == f.sets);

  Json bad = j;
  bad["sets"]["x"] = Json::array();
  CHECK_THROWS_AS(set_family_from_json(bad), ParseError);
}

TEST_CASE("tree systems nest their node records") {
  TreeSystem t;
  t.height = 1;
  t.nodes[{}] = TreeNode{2, {0, 1}, {}};
  t.nodes[{0}] = TreeNode{0, {}, {4}};
  t.nodes[{1}] = TreeNode{0, {}, {4, 5}};
  Json j = tree_system_to_json(t);
  CHECK(j["height"] == 1);
  CHECK(j["root"]["lambda"] == 2);
  CHECK(j["root"]["children"]["0"]["b"] == Json::array({4}));
  TreeSystem back = tree_system_from_json(j);
  CHECK(back.height == t.height);
  CHECK(back.nodes.size() == 3);
  CHECK(back.nodes.at({1}).b == std::set<int>{4, 5});
  CHECK(dump_canonical(tree_system_to_json(back)) == dump_canonical(j));
}

TEST_CASE("presentations reconstruct the family and its generators") {
  ModelFamily family;
  family.vocab.add({"f", 2});
  ProjectionAlgebra m0, m1;
  m0.carrier_size = 2;
  m0.projection = {{"f", 0}};
  m1.carrier_size = 2;
  m1.projection = {{"f", 1}};
  family.models = {m0, m1};
  std::vector<TupleElement> gens = {{0, 0}, {1, 1}};

  Json j = presentation_to_json(family, gens);
  ModelFamily back;
  std::vector<TupleElement> back_gens;
  presentation_from_json(j, back, back_gens);
  CHECK(back_gens == gens);
  CHECK(back.vocab.arity_of("f") == 2);
  CHECK(subalgebra_closure(back, back_gens).size() == 4);
}

TEST_CASE("reports carry a schema version") {
  StagePlan plan = build_stage_plan(3);
  CHECK(plan_to_json(plan)["schema_version"] == kSchemaVersion);
  CPReport report = verify_K0_truncation(build_generic_model(plan), plan);
  CHECK(cp_report_to_json(report)["schema_version"] == kSchemaVersion);
  Cp1Report cp1 = cp1_finite_witness(plan, 1, 1);
  CHECK(cp1_report_to_json(cp1)["schema_version"] == kSchemaVersion);
  SetFamily f;
  f.universe = {1};
  f.sets[0] = {1};
  CHECK(set_family_to_json(f)["schema_version"] == kSchemaVersion);
  CHECK(transversal_result_to_json(find_transversal(f))["schema_version"] == kSchemaVersion);
}
