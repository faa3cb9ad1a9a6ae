#include "doctest.h"

#include "varietas/free_algebra.hpp"

using namespace varietas;

namespace {

ProjectionAlgebra model(int carrier, std::map<std::string, int> projection) {
  ProjectionAlgebra m;
  m.carrier_size = carrier;
  m.projection = std::move(projection);
  return m;
}

// two factors in which the binary symbol projects on different coordinates
ModelFamily mixing_family() {
  ModelFamily family;
  family.vocab.add({"f", 2});
  family.models.push_back(model(2, {{"f", 0}}));
  family.models.push_back(model(2, {{"f", 1}}));
  return family;
}

ModelFamily single_factor(int carrier) {
  ModelFamily family;
  family.vocab.add({"f", 2});
  family.models.push_back(model(carrier, {{"f", 0}}));
  return family;
}

} // namespace

TEST_CASE("apply_symbol acts coordinate-wise") {
  ModelFamily one = single_factor(6);
  CHECK(apply_symbol(one, "f", {{3}, {5}}) == TupleElement{3});

  ModelFamily mix = mixing_family();
  CHECK(apply_symbol(mix, "f", {{0, 0}, {1, 1}}) == TupleElement{0, 1});
  CHECK_THROWS_AS(apply_symbol(mix, "f", {{0, 0}}), ArityMismatch);

  ModelFamily unary;
  unary.vocab.add({"u", 1});
  unary.models.push_back(model(4, {{"u", 0}}));
  CHECK(apply_symbol(unary, "u", {{2}}) == TupleElement{2});
}

TEST_CASE("subalgebra closure in one factor adds nothing") {
  ModelFamily one = single_factor(5);
  CHECK(subalgebra_closure(one, {{2}}) == std::set<TupleElement>{{2}});
}

TEST_CASE("the mixing closure has exactly the four combinations") {
  ModelFamily mix = mixing_family();
  std::set<TupleElement> expect = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(subalgebra_closure(mix, {{0, 0}, {1, 1}}) == expect);
}

TEST_CASE("empty generator set closes to nothing") {
  CHECK(subalgebra_closure(mixing_family(), {}).empty());
}

TEST_CASE("word_problem compares coordinate-wise evaluations") {
  ModelFamily mix = mixing_family();
  std::vector<TupleElement> gens = {{0, 0}, {1, 1}};
  Term fxy = Term::apply("f", {Term::var(0), Term::var(1)});
  CHECK(word_problem(mix, gens, fxy, fxy));

  ModelFamily proj0;
  proj0.vocab.add({"f", 2});
  proj0.models.push_back(model(3, {{"f", 0}}));
  proj0.models.push_back(model(2, {{"f", 0}}));
  CHECK(word_problem(proj0, {{0, 0}, {1, 1}}, fxy, Term::var(0)));

  int coord = -1;
  CHECK_FALSE(word_problem(mix, gens, fxy, Term::var(0), &coord));
  CHECK(coord == 1); // the factor where f projects on its second argument
}

TEST_CASE("free generation means pairwise distinct in every coordinate") {
  CHECK(is_free_generating({{0, 0}, {1, 1}}));
  CHECK_FALSE(is_free_generating({{0, 0}, {0, 1}}));
  CHECK(is_free_generating({{0, 0}}));
}

TEST_CASE("membership through the coordinate partition") {
  ModelFamily mix = mixing_family();
  std::vector<TupleElement> gens = {{0, 0}, {1, 1}};
  CHECK(membership_closure(mix, gens, {0, 0}));
  CHECK(membership_closure(mix, gens, {0, 1}));

  ModelFamily rigid;
  rigid.vocab.add({"f", 2});
  rigid.models.push_back(model(3, {{"f", 0}}));
  rigid.models.push_back(model(3, {{"f", 0}}));
  CHECK_FALSE(membership_closure(rigid, {{0, 0}, {1, 1}}, {0, 1}));
}

TEST_CASE("the coordinate partition separates factors by projection behavior") {
  CHECK(coordinate_partition(mixing_family()) ==
        std::vector<std::vector<int>>{{0}, {1}});
  ModelFamily rigid;
  rigid.vocab.add({"f", 2});
  rigid.models.push_back(model(2, {{"f", 0}}));
  rigid.models.push_back(model(2, {{"f", 0}}));
  CHECK(coordinate_partition(rigid) == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("membership agrees with the explicit closure on the full product") {
  ModelFamily mix = mixing_family();
  std::vector<TupleElement> gens = {{0, 0}, {1, 1}};
  auto closure = subalgebra_closure(mix, gens);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK(membership_closure(mix, gens, {a, b}) == (closure.count({a, b}) == 1));
}

TEST_CASE("membership by head-symbol decomposition") {
  ModelFamily mix = mixing_family();
  std::vector<TupleElement> gens = {{0, 0}, {1, 1}};

  CHECK(membership_decomposition(mix, gens, Term::var(0), {0}));
  Term fg1g2 = Term::apply("f", {Term::var(0), Term::var(1)});
  CHECK(membership_decomposition(mix, gens, fg1g2, {0, 1}));
  CHECK_FALSE(membership_decomposition(mix, gens, fg1g2, {0}));
  CHECK_THROWS_AS(membership_decomposition(ModelFamily{}, {}, Term::var(0), {}), Error);
}

TEST_CASE("extend_with_free picks coordinate-fresh tuples") {
  ModelFamily one = single_factor(5);
  CHECK(extend_with_free(one, {{0}, {1}}, 0).empty());

  auto fresh = extend_with_free(one, {{0}, {1}}, 2);
  CHECK(fresh == std::vector<TupleElement>{{2}, {3}});
  CHECK(is_free_generating({{0}, {1}, fresh[0], fresh[1]}));

  ModelFamily tiny = single_factor(2);
  CHECK_THROWS_AS(extend_with_free(tiny, {{0}, {1}}, 1), CarrierTooSmall);
}

TEST_CASE("free_factor_search finds complements") {
  ModelFamily mix = mixing_family();
  std::vector<TupleElement> l_gens = {{0, 0}, {1, 1}};

  FactorVerdict same = free_factor_search(mix, l_gens, l_gens);
  CHECK(same.is_factor);
  CHECK(same.witness.empty());

  FactorVerdict grow = free_factor_search(mix, {{0, 0}}, l_gens);
  CHECK(grow.is_factor);
  CHECK(grow.witness == std::vector<TupleElement>{{1, 1}});

  CHECK_THROWS_AS(free_factor_search(mix, {{0, 0}, {0, 1}}, l_gens), Error);

  ModelFamily rigid;
  rigid.vocab.add({"f", 2});
  rigid.models.push_back(model(2, {{"f", 0}}));
  rigid.models.push_back(model(2, {{"f", 0}}));
  // (0,1) lies outside closure({(0,0),(1,1)}) when no symbol mixes coordinates
  CHECK_THROWS_AS(free_factor_search(rigid, {{0, 1}}, l_gens), Error);
}

TEST_CASE("factor witnesses re-validate against the definitions") {
  ModelFamily mix = mixing_family();
  std::vector<TupleElement> l_gens = {{0, 0}, {1, 1}};
  FactorVerdict verdict = free_factor_search(mix, {{0, 0}}, l_gens);
  REQUIRE(verdict.is_factor);
  std::vector<TupleElement> basis = {{0, 0}};
  basis.insert(basis.end(), verdict.witness.begin(), verdict.witness.end());
  CHECK(is_free_generating(basis));
  CHECK(subalgebra_closure(mix, basis) == subalgebra_closure(mix, l_gens));
}
