#include "doctest.h"

#include "varietas/transversal.hpp"

using namespace varietas;

namespace {

SetFamily family_of(std::vector<std::set<int>> sets) {
  SetFamily f;
  int index = 0;
  for (auto &s : sets) {
    f.universe.insert(s.begin(), s.end());
    f.sets[index++] = std::move(s);
  }
  return f;
}

bool valid_transversal(const SetFamily &f, const Transversal &t) {
  std::set<int> atoms;
  for (const auto &[index, atom] : t.assignment)
    if (!f.sets.at(index).count(atom) || !atoms.insert(atom).second)
      return false;
  return atoms.size() == f.sets.size();
}

TreeSystem valid_system() {
  TreeSystem t;
  t.height = 2;
  t.nodes[{}] = TreeNode{3, {0, 2}, {}};
  t.nodes[{0}] = TreeNode{0, {}, {1}};
  t.nodes[{2}] = TreeNode{2, {1}, {1, 2}};
  t.nodes[{2, 1}] = TreeNode{0, {}, {3}};
  return t;
}

// n singletons plus the full set: every n-subfamily is free, the whole is not
SetFamily minimal_nonfree(int n) {
  std::vector<std::set<int>> sets;
  for (int i = 1; i <= n; ++i)
    sets.push_back({i});
  std::set<int> all;
  for (int i = 1; i <= n; ++i)
    all.insert(i);
  sets.push_back(all);
  return family_of(std::move(sets));
}

} // namespace

TEST_CASE("a single singleton has the obvious transversal") {
  SetFamily f = family_of({{7}});
  TransversalResult r = find_transversal(f);
  REQUIRE(r.found());
  CHECK(r.transversal->assignment == std::map<int, int>{{0, 7}});
}

TEST_CASE("two copies of one singleton give a pigeonhole violator") {
  SetFamily f = family_of({{7}, {7}});
  TransversalResult r = find_transversal(f);
  CHECK_FALSE(r.found());
  REQUIRE(r.violator.size() == 2);
  std::set<int> un;
  for (int i : r.violator)
    un.insert(f.sets.at(i).begin(), f.sets.at(i).end());
  CHECK(un.size() < r.violator.size());
}

TEST_CASE("the triangle family is free") {
  SetFamily f = family_of({{1, 2}, {2, 3}, {1, 3}});
  TransversalResult r = find_transversal(f);
  REQUIRE(r.found());
  CHECK(valid_transversal(f, *r.transversal));
  CHECK(is_free(f));
}

TEST_CASE("is_free mirrors find_transversal") {
  CHECK(is_free(family_of({{7}})));
  CHECK_FALSE(is_free(family_of({{7}, {7}})));
}

TEST_CASE("malformed families are rejected") {
  SetFamily f;
  f.universe = {1};
  f.sets[0] = {1, 2};
  CHECK_THROWS_AS(find_transversal(f), InvariantViolation);
}

TEST_CASE("almost-freeness") {
  CHECK(is_almost_free(family_of({{1, 2}, {2, 3}, {1, 3}})));

  // n+1 copies of a singleton: already a 2-subfamily fails
  CHECK_FALSE(is_almost_free(family_of({{1}, {1}, {1}})));

  for (int n = 2; n <= 5; ++n) {
    SetFamily f = minimal_nonfree(n);
    CHECK(is_almost_free(f));
    CHECK_FALSE(is_free(f));
  }
}

TEST_CASE("a height-1 system with empty E fails the stationarity surrogate") {
  TreeSystem t;
  t.height = 1;
  t.nodes[{}] = TreeNode{5, {}, {}};
  auto bad = validate_tree_system(t);
  REQUIRE_FALSE(bad.empty());
  bool found = false;
  for (const auto &v : bad)
    if (v.clause == "stationarity")
      found = true;
  CHECK(found);
}

TEST_CASE("a broken sibling chain is reported") {
  TreeSystem t;
  t.height = 1;
  t.nodes[{}] = TreeNode{6, {2, 4, 5}, {}};
  t.nodes[{2}] = TreeNode{0, {}, {1, 9}};
  t.nodes[{4}] = TreeNode{0, {}, {1, 2}}; // does not extend B at <2>
  t.nodes[{5}] = TreeNode{0, {}, {1, 2, 9}};
  bool found = false;
  for (const auto &v : validate_tree_system(t))
    if (v.clause == "chain" && v.node == "<4>")
      found = true;
  CHECK(found);
}

TEST_CASE("a hand-built height-2 system validates cleanly") {
  CHECK(validate_tree_system(valid_system()).empty());
}

TEST_CASE("based families project to their leaf sets") {
  TreeSystem t;
  t.height = 1;
  t.nodes[{}] = TreeNode{4, {0, 1, 3}, {}};
  t.nodes[{0}] = TreeNode{0, {}, {4}};
  t.nodes[{1}] = TreeNode{0, {}, {4, 5}};
  t.nodes[{3}] = TreeNode{0, {}, {4, 5, 6}};
  REQUIRE(validate_tree_system(t).empty());

  BasedFamily disjoint{t, {{{0}, {4}}, {{1}, {5}}, {{3}, {6}}}};
  SetFamily f = based_family_to_setfamily(disjoint);
  CHECK(f.sets == std::map<int, std::set<int>>{{0, {4}}, {1, {5}}, {2, {6}}});
  CHECK(is_free(f));

  BasedFamily escaping{t, {{{0}, {9}}, {{1}, {5}}, {{3}, {6}}}};
  CHECK_THROWS_AS(based_family_to_setfamily(escaping), InvariantViolation);

  BasedFamily missing{t, {{{0}, {4}}, {{1}, {5}}}};
  CHECK_THROWS_AS(based_family_to_setfamily(missing), InvariantViolation);
}

TEST_CASE("a based family can replicate the minimal non-free pattern") {
  int n = 3;
  TreeSystem t;
  t.height = 1;
  std::set<int> e, all;
  for (int b = 0; b <= n; ++b)
    e.insert(b);
  for (int i = 1; i <= n; ++i)
    all.insert(i);
  t.nodes[{}] = TreeNode{n + 1, e, {}};
  for (int b = 0; b <= n; ++b)
    t.nodes[{b}] = TreeNode{0, {}, all};

  BasedFamily based;
  based.system = t;
  for (int b = 0; b < n; ++b)
    based.leaf_sets[{b}] = {b + 1};
  based.leaf_sets[{n}] = all;

  SetFamily f = based_family_to_setfamily(based);
  CHECK(is_almost_free(f));
  CHECK_FALSE(is_free(f));
}
