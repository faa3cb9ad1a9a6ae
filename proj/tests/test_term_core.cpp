#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "varietas/term.hpp"

using namespace varietas;

TEST_CASE("constant indices follow the closed formulas") {
  CHECK(ConstantName::d(3).index() == 3);
  CHECK(ConstantName::c(2, 5).index() == 7);
  CHECK(ConstantName::c(0, 0).index() == 0);
  for (int m = 0; m < 8; ++m)
    for (int n = 0; n < 8; ++n) {
      CHECK(ConstantName::c(m, n).index() == m + n);
      CHECK(ConstantName::d(n).index() == n);
    }
}

TEST_CASE("vocabulary rejects duplicate names") {
  Vocabulary v;
  v.add({"f", 2});
  CHECK(v.contains("f"));
  CHECK(v.arity_of("f") == 2);
  CHECK_THROWS_AS(v.add({"f", 3}), Error);
  CHECK_THROWS_AS(v.arity_of("g"), UnknownSymbol);
}

TEST_CASE("constants_of collects occurrences with multiplicity") {
  CHECK(constants_of(Term::constant(ConstantName::d(1))) ==
        std::map<ConstantName, int>{{ConstantName::d(1), 1}});
  Term twice = Term::apply("f", {Term::constant(ConstantName::c(1, 0)),
                                 Term::constant(ConstantName::c(1, 0))});
  CHECK(constants_of(twice) == std::map<ConstantName, int>{{ConstantName::c(1, 0), 2}});
  CHECK(constants_of(Term::var(0)).empty());
}

TEST_CASE("substitute replaces variables simultaneously") {
  std::map<int, Term> to_d0 = {{0, Term::constant(ConstantName::d(0))}};
  CHECK(substitute(Term::var(0), to_d0) == Term::constant(ConstantName::d(0)));

  Term a = Term::constant(ConstantName::c(0, 0));
  Term fxy = Term::apply("f", {Term::var(0), Term::var(1)});
  CHECK(substitute(fxy, {{0, a}, {1, a}}) == Term::apply("f", {a, a}));

  Term nested = Term::apply("f", {Term::apply("g", {Term::var(0)}), Term::var(1)});
  std::map<int, Term> identity = {{0, Term::var(0)}, {1, Term::var(1)}};
  CHECK(substitute(nested, identity) == nested);

  CHECK_THROWS_AS(substitute(fxy, to_d0), UnmappedVariable);
}

TEST_CASE("substitution is compositional") {
  Term t = Term::apply("f", {Term::var(0), Term::apply("g", {Term::var(1)})});
  std::map<int, Term> sigma = {{0, Term::apply("g", {Term::var(0)})},
                               {1, Term::constant(ConstantName::d(2))}};
  std::map<int, Term> rho = {{0, Term::var(1)}};
  std::map<int, Term> fused;
  for (const auto &[v, image] : sigma)
    fused[v] = substitute(image, rho);
  CHECK(substitute(substitute(t, sigma), rho) == substitute(t, fused));
}

TEST_CASE("check_arities accepts well-formed terms and rejects the rest") {
  Vocabulary v;
  v.add({"f", 2});
  Term good = Term::apply("f", {Term::var(0), Term::var(1)});
  CHECK_NOTHROW(check_arities(good, v));
  CHECK_THROWS_AS(check_arities(Term::apply("f", {Term::var(0)}), v), ArityMismatch);
  CHECK_THROWS_AS(check_arities(Term::apply("h", {Term::var(0)}), v), UnknownSymbol);
}

TEST_CASE("variables_of lists each index once") {
  Term t = Term::apply("f", {Term::var(2), Term::apply("g", {Term::var(0), Term::var(2)})});
  CHECK(variables_of(t) == std::vector<int>{0, 2});
}
