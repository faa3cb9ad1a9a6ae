#include "varietas/selftest.hpp"

#include <algorithm>
#include <functional>

namespace varietas {

bool SelftestReport::ok() const {
  for (const auto &s : suites)
    if (s.failed > 0)
      return false;
  return true;
}

int SelftestReport::total_passed() const {
  int n = 0;
  for (const auto &s : suites)
    n += s.passed;
  return n;
}

int SelftestReport::total_failed() const {
  int n = 0;
  for (const auto &s : suites)
    n += s.failed;
  return n;
}

Json selftest_report_to_json(const SelftestReport &r) {
  Json suites = Json::array();
  for (const auto &s : r.suites)
    suites.push_back(Json{{"name", s.name},
                          {"passed", s.passed},
                          {"failed", s.failed},
                          {"failures", s.failures}});
  return Json{{"schema_version", kSchemaVersion},
              {"seed", r.seed},
              {"suites", std::move(suites)},
              {"passed", r.total_passed()},
              {"failed", r.total_failed()},
              {"ok", r.ok()}};
}

namespace {

// splitmix64: portable, identical across platforms for a given seed
struct Rng {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

struct Suite {
  SuiteResult res;

  explicit Suite(std::string name) { res.name = std::move(name); }

  void check(bool ok, const std::string &label) {
    if (ok) {
      ++res.passed;
    } else {
      ++res.failed;
      if (res.failures.size() < 5)
        res.failures.push_back(label);
    }
  }
};

const std::vector<ConstantName> kConstPool = {ConstantName::c(0, 0), ConstantName::d(0),
                                              ConstantName::d(1)};

Vocabulary test_vocab() {
  Vocabulary v;
  v.add({"f", 2});
  v.add({"g", 3});
  return v;
}

Term random_term(Rng &rng, const Vocabulary &vocab, int n_vars, int depth,
                 bool with_constants = true) {
  int roll = rng.below(depth > 0 ? 4 : 2);
  if ((roll == 0 || !with_constants) && n_vars > 0 && roll <= 1)
    return Term::var(rng.below(n_vars));
  if (roll <= 1)
    return Term::constant(kConstPool[rng.below(static_cast<int>(kConstPool.size()))]);
  auto symbols = vocab.symbols();
  const FunctionSymbol &f = symbols[rng.below(static_cast<int>(symbols.size()))];
  std::vector<Term> args;
  for (int i = 0; i < f.arity; ++i)
    args.push_back(random_term(rng, vocab, n_vars, depth - 1, with_constants));
  return Term::apply(f.name, std::move(args));
}

ProjectionAlgebra random_model(Rng &rng, const Vocabulary &vocab, int max_carrier) {
  ProjectionAlgebra m;
  m.carrier_size = 1 + rng.below(max_carrier);
  for (const auto &f : vocab.symbols())
    m.projection[f.name] = rng.below(f.arity);
  for (const auto &c : kConstPool)
    m.constant_interp[c] = rng.below(m.carrier_size);
  return m;
}

// assignment-enumeration oracle for law_holds
bool law_holds_exhaustive(const Equation &e, const ProjectionAlgebra &m) {
  std::vector<int> vars = variables_of(e.lhs);
  for (int v : variables_of(e.rhs))
    vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::vector<int> choice(vars.size(), 0);
  while (true) {
    std::map<int, int> rho;
    for (size_t i = 0; i < vars.size(); ++i)
      rho[vars[i]] = choice[i];
    if (eval(e.lhs, m, rho) != eval(e.rhs, m, rho))
      return false;
    size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++choice[i] < m.carrier_size)
        break;
      choice[i] = 0;
    }
    if (i == vars.size())
      return true;
  }
}

// full-arity worklist closure, the slow reference for subalgebra_closure
std::set<TupleElement> closure_naive(const ModelFamily &family,
                                     const std::vector<TupleElement> &gens) {
  std::set<TupleElement> closure(gens.begin(), gens.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<TupleElement> all(closure.begin(), closure.end());
    for (const auto &f : family.vocab.symbols()) {
      std::vector<int> choice(f.arity, 0);
      if (all.empty())
        break;
      while (true) {
        std::vector<TupleElement> args;
        for (int i = 0; i < f.arity; ++i)
          args.push_back(all[choice[i]]);
        if (closure.insert(apply_symbol(family, f.name, args)).second)
          grew = true;
        int i = 0;
        for (; i < f.arity; ++i) {
          if (++choice[i] < static_cast<int>(all.size()))
            break;
          choice[i] = 0;
        }
        if (i == f.arity)
          break;
      }
    }
  }
  return closure;
}

ModelFamily random_family(Rng &rng, int max_factors, int max_carrier) {
  ModelFamily family;
  family.vocab = test_vocab();
  int factors = 1 + rng.below(max_factors);
  for (int i = 0; i < factors; ++i)
    family.models.push_back(random_model(rng, family.vocab, max_carrier));
  return family;
}

std::vector<TupleElement> random_tuples(Rng &rng, const ModelFamily &family, int count) {
  std::vector<TupleElement> out;
  for (int c = 0; c < count; ++c) {
    TupleElement t(family.size());
    for (int i = 0; i < family.size(); ++i)
      t[i] = rng.below(family.models[i].carrier_size);
    out.push_back(std::move(t));
  }
  return out;
}

void suite_term_core(Suite &s, Rng &rng) {
  for (int i = 0; i < 50; ++i) {
    int m = rng.below(6), n = rng.below(6);
    s.check(ConstantName::c(m, n).index() == m + n, "index of c");
    s.check(ConstantName::d(n).index() == n, "index of d");
  }
  Vocabulary vocab = test_vocab();
  for (int i = 0; i < 100; ++i) {
    Term t = random_term(rng, vocab, 3, 3);
    std::map<int, Term> sigma, rho, fused;
    for (int v = 0; v < 3; ++v)
      sigma[v] = random_term(rng, vocab, 2, 2);
    for (int v = 0; v < 2; ++v)
      rho[v] = random_term(rng, vocab, 1, 1);
    rho[2] = Term::var(0);
    for (int v = 0; v < 3; ++v)
      fused[v] = substitute(sigma[v], rho);
    bool ok = substitute(substitute(t, sigma), rho) == substitute(t, fused);
    s.check(ok, "substitution composes");
    try {
      check_arities(substitute(t, sigma), vocab);
      s.check(true, "arity preserved");
    } catch (const Error &) {
      s.check(false, "arity preserved");
    }
  }
}

void suite_projection_models(Suite &s, Rng &rng) {
  Vocabulary vocab = test_vocab();
  for (int i = 0; i < 200; ++i) {
    ProjectionAlgebra m = random_model(rng, vocab, 4);
    Equation e{random_term(rng, vocab, 3, 4), random_term(rng, vocab, 3, 4)};
    s.check(law_holds(e, m) == law_holds_exhaustive(e, m), "law_holds matches enumeration");

    // eval factors through the reduced leaf
    std::map<int, int> rho;
    for (int v = 0; v < 3; ++v)
      rho[v] = rng.below(m.carrier_size);
    Leaf leaf = reduce(e.lhs, m);
    int direct = leaf.is_var() ? rho.at(leaf.var()) : m.interp(leaf.constant());
    s.check(eval(e.lhs, m, rho) == direct, "eval respects reduce");

    // renaming variables then re-reducing lands on the renamed leaf
    std::map<int, Term> rename;
    std::vector<int> image = {rng.below(3), rng.below(3), rng.below(3)};
    for (int v = 0; v < 3; ++v)
      rename[v] = Term::var(image[v]);
    Leaf renamed = reduce(substitute(e.lhs, rename), m);
    Leaf expected = leaf.is_var() ? Leaf{image[leaf.var()]} : leaf;
    s.check(renamed == expected, "reduce commutes with renaming");
  }
}

void suite_free_algebra(Suite &s, Rng &rng) {
  for (int i = 0; i < 200; ++i) {
    ModelFamily family = random_family(rng, 3, 4);
    auto gens = random_tuples(rng, family, 1 + rng.below(4));
    Term t = random_term(rng, family.vocab, static_cast<int>(gens.size()), 4);
    if (!constants_of(t).empty())
      t = Term::apply("f", {Term::var(0), t}); // keep the value generator-definable
    std::set<int> targets;
    for (int v = 0; v < static_cast<int>(gens.size()); ++v)
      if (rng.below(2))
        targets.insert(v);
    std::vector<TupleElement> target_gens;
    for (int v : targets)
      target_gens.push_back(gens[v]);
    TupleElement value(family.size());
    for (int f = 0; f < family.size(); ++f) {
      std::map<int, int> rho;
      for (int v = 0; v < static_cast<int>(gens.size()); ++v)
        rho[v] = gens[v][f];
      value[f] = eval(t, family.models[f], rho);
    }
    bool via_decomposition = membership_decomposition(family, gens, t, targets);
    bool via_closure = membership_closure(family, target_gens, value);
    s.check(via_decomposition == via_closure, "membership routes agree");
  }

  for (int i = 0; i < 60; ++i) {
    ModelFamily family = random_family(rng, 2, 3);
    auto gens = random_tuples(rng, family, 1 + rng.below(2));
    auto closure = subalgebra_closure(family, gens);
    s.check(closure == closure_naive(family, gens), "closure matches the naive fixpoint");
    std::vector<TupleElement> all(closure.begin(), closure.end());
    bool closed = true;
    for (const auto &f : family.vocab.symbols()) {
      std::vector<TupleElement> args;
      for (int a = 0; a < f.arity; ++a)
        args.push_back(all[rng.below(static_cast<int>(all.size()))]);
      if (!closure.count(apply_symbol(family, f.name, args)))
        closed = false;
    }
    s.check(closed, "closure closed under symbols");
    for (const auto &x : all)
      s.check(membership_closure(family, gens, x), "closure members pass membership");
  }

  for (int i = 0; i < 100; ++i) {
    ModelFamily family = random_family(rng, 3, 4);
    auto gens = random_tuples(rng, family, 3);
    // constants stay out of the variety's language, so laws are over pure terms
    Term t1 = random_term(rng, family.vocab, 3, 3, false);
    Term t2 = random_term(rng, family.vocab, 3, 3, false);
    bool equal = word_problem(family, gens, t1, t2);
    bool pointwise = true;
    for (int f = 0; f < family.size(); ++f) {
      std::map<int, int> rho;
      for (int v = 0; v < 3; ++v)
        rho[v] = gens[v][f];
      if (eval(t1, family.models[f], rho) != eval(t2, family.models[f], rho))
        pointwise = false;
    }
    s.check(equal == pointwise, "word_problem matches pointwise evaluation");
    if (equal && is_free_generating(gens))
      s.check(law_holds_in_family(Equation{t1, t2}, family.models),
              "free-generator equality forces the law");
  }

  for (int i = 0; i < 30; ++i) {
    ModelFamily family = random_family(rng, 2, 5);
    int rank = 2 + rng.below(2);
    std::vector<TupleElement> l_gens;
    try {
      l_gens = extend_with_free(family, {}, rank);
    } catch (const CarrierTooSmall &) {
      continue;
    }
    std::vector<TupleElement> h_gens;
    for (int v = 0; v < rank; ++v)
      if (rng.below(2))
        h_gens.push_back(l_gens[v]);
    FactorVerdict verdict = free_factor_search(family, h_gens, l_gens);
    if (verdict.is_factor) {
      std::vector<TupleElement> basis = h_gens;
      basis.insert(basis.end(), verdict.witness.begin(), verdict.witness.end());
      s.check(is_free_generating(basis), "factor witness is free generating");
      s.check(subalgebra_closure(family, basis) == subalgebra_closure(family, l_gens),
              "factor witness spans the closure");
    } else {
      s.check(true, "factor verdict recorded");
    }
  }
}

void suite_cp_construction(Suite &s, Rng &rng) {
  for (int n_stages : {0, 1, 5, 10}) {
    StagePlan plan = build_stage_plan(n_stages);
    std::string plan_dump = dump_canonical(plan_to_json(plan));
    s.check(plan_dump == dump_canonical(plan_to_json(build_stage_plan(n_stages))),
            "plans are deterministic");

    std::vector<std::optional<int>> targets = {std::nullopt};
    for (int m = 0; m <= 3; ++m)
      targets.emplace_back(m);
    for (auto target : targets) {
      ModelBuild build = build_model_traced(plan, target);
      s.check(build.partition.violations().empty(), "partition invariants hold");
      for (size_t k = 0; k < build.budget_history.size(); ++k)
        s.check(build.budget_history[k] <= 2 * static_cast<int>(k + 1),
                "budget within 2n at every stage");
      s.check(verify_K0_truncation(build.model, plan).all_ok(), "truncation checks pass");
      std::string dump = dump_canonical(model_to_json(build.model));
      s.check(dump == dump_canonical(model_to_json(build_model_traced(plan, target).model)),
              "models are deterministic");
      for (const auto &stage : plan.stages) {
        Leaf leaf = reduce(stage.equation.rhs, build.model);
        bool certifies = !leaf.is_var() &&
                         build.model.interp(leaf.constant()) == build.model.interp(stage.t);
        s.check(certifies, "projection choice is self-certifying");
      }
    }
  }
  (void)rng;
}

SetFamily random_set_family(Rng &rng, int max_sets, int max_atoms) {
  SetFamily f;
  int atoms = 1 + rng.below(max_atoms);
  for (int a = 0; a < atoms; ++a)
    f.universe.insert(a);
  int sets = 1 + rng.below(max_sets);
  for (int i = 0; i < sets; ++i) {
    std::set<int> s;
    int size = rng.below(atoms + 1);
    for (int k = 0; k < size; ++k)
      s.insert(rng.below(atoms));
    f.sets[i] = std::move(s);
  }
  return f;
}

bool transversal_exists_brute(const SetFamily &f) {
  std::vector<const std::set<int> *> sets;
  for (const auto &[index, s] : f.sets)
    sets.push_back(&s);
  std::set<int> used;
  std::function<bool(size_t)> rec = [&](size_t i) {
    if (i == sets.size())
      return true;
    for (int atom : *sets[i]) {
      if (used.count(atom))
        continue;
      used.insert(atom);
      if (rec(i + 1))
        return true;
      used.erase(atom);
    }
    return false;
  };
  return rec(0);
}

TreeSystem valid_tree_system() {
  TreeSystem t;
  t.height = 2;
  t.nodes[{}] = TreeNode{3, {0, 2}, {}};
  t.nodes[{0}] = TreeNode{0, {}, {1}};
  t.nodes[{2}] = TreeNode{2, {1}, {1, 2}};
  t.nodes[{2, 1}] = TreeNode{0, {}, {3}};
  return t;
}

void suite_transversal(Suite &s, Rng &rng) {
  for (int i = 0; i < 300; ++i) {
    SetFamily f = random_set_family(rng, 6, 8);
    TransversalResult r = find_transversal(f);
    bool brute = transversal_exists_brute(f);
    s.check(r.found() == brute, "matching verdict matches brute force");
    if (r.found()) {
      std::set<int> atoms;
      bool valid = true;
      for (const auto &[index, atom] : r.transversal->assignment) {
        if (!f.sets.at(index).count(atom) || !atoms.insert(atom).second)
          valid = false;
      }
      s.check(valid && atoms.size() == f.sets.size(), "transversal is an injective choice");
    } else {
      std::set<int> un;
      for (int index : r.violator)
        un.insert(f.sets.at(index).begin(), f.sets.at(index).end());
      s.check(un.size() < r.violator.size(), "violator breaks the Hall condition");
    }
    s.check(is_free(f) == r.violator.empty(), "Hall duality");
    if (r.found() && f.size() > 1) {
      SetFamily sub = f;
      auto it = sub.sets.begin();
      std::advance(it, rng.below(f.size()));
      sub.sets.erase(it);
      s.check(is_free(sub), "freeness survives set removal");
    }
  }

  s.check(validate_tree_system(valid_tree_system()).empty(), "reference system is valid");
  auto mutated = [&](const std::function<void(TreeSystem &)> &mutate, const char *label) {
    TreeSystem t = valid_tree_system();
    mutate(t);
    s.check(!validate_tree_system(t).empty(), label);
  };
  mutated([](TreeSystem &t) { t.nodes[{}].b = {9}; }, "detects nonempty root base");
  mutated([](TreeSystem &t) { t.nodes[{}].lambda = 0; }, "detects final label with children");
  mutated([](TreeSystem &t) { t.nodes[{2}].e = {0}; }, "detects stationarity failure");
  mutated([](TreeSystem &t) { t.nodes[{0}].lambda = 5; }, "detects label ascent");
  mutated([](TreeSystem &t) { t.nodes[{2}].b = {1, 2, 4}; }, "detects size overflow");
  mutated([](TreeSystem &t) { t.nodes[{2, 1}].b = {3, 4}; }, "detects child size overflow");
  mutated([](TreeSystem &t) { t.nodes[{0}].b = {5}; }, "detects broken sibling chain");
  mutated([](TreeSystem &t) { t.nodes[{1, 0}] = TreeNode{0, {}, {1}}; },
          "detects missing parent");
  mutated([](TreeSystem &t) { t.nodes[{2, 1, 0}] = TreeNode{0, {}, {}}; },
          "detects node deeper than height");
  mutated([](TreeSystem &t) { t.nodes.erase({2, 1}); }, "detects missing child node");
}

void suite_json(Suite &s, Rng &rng) {
  for (int n_stages : {0, 1, 4, 9}) {
    StagePlan plan = build_stage_plan(n_stages);
    std::string dump = dump_canonical(plan_to_json(plan));
    std::string again =
        dump_canonical(plan_to_json(plan_from_json(Json::parse(dump))));
    s.check(dump == again, "plan round-trip is the identity");
  }
  Vocabulary vocab = test_vocab();
  for (int i = 0; i < 40; ++i) {
    ProjectionAlgebra m = random_model(rng, vocab, 4);
    std::string dump = dump_canonical(model_to_json(m));
    s.check(dump == dump_canonical(model_to_json(model_from_json(Json::parse(dump)))),
            "model round-trip is the identity");

    SetFamily f = random_set_family(rng, 4, 6);
    std::string fdump = dump_canonical(set_family_to_json(f));
    s.check(fdump ==
                dump_canonical(set_family_to_json(set_family_from_json(Json::parse(fdump)))),
            "family round-trip is the identity");

    Term t = random_term(rng, vocab, 3, 4);
    s.check(term_from_json(term_to_json(t)) == t, "term round-trip is the identity");
  }
  {
    TreeSystem t = valid_tree_system();
    std::string dump = dump_canonical(tree_system_to_json(t));
    s.check(dump ==
                dump_canonical(tree_system_to_json(tree_system_from_json(Json::parse(dump)))),
            "tree system round-trip is the identity");
  }
  for (int i = 0; i < 20; ++i) {
    ModelFamily family = random_family(rng, 3, 4);
    auto gens = random_tuples(rng, family, 2);
    std::string dump = dump_canonical(presentation_to_json(family, gens));
    ModelFamily parsed;
    std::vector<TupleElement> parsed_gens;
    presentation_from_json(Json::parse(dump), parsed, parsed_gens);
    s.check(dump == dump_canonical(presentation_to_json(parsed, parsed_gens)),
            "presentation round-trip is the identity");
    s.check(parsed_gens == gens, "generators survive the round-trip");
  }
}

} // namespace

SelftestReport run_selftest(std::uint64_t seed) {
  SelftestReport report;
  report.seed = seed;
  using Runner = void (*)(Suite &, Rng &);
  const std::pair<const char *, Runner> suites[] = {
      {"term_core", suite_term_core},
      {"projection_models", suite_projection_models},
      {"free_algebra_engine", suite_free_algebra},
      {"cp_construction", suite_cp_construction},
      {"transversal_systems", suite_transversal},
      {"workbench_json", suite_json},
  };
  std::uint64_t salt = 0;
  for (const auto &[name, runner] : suites) {
    Suite s(name);
    Rng rng{seed ^ (0x5851f42d4c957f2dULL * ++salt)};
    try {
      runner(s, rng);
    } catch (const std::exception &e) {
      s.check(false, std::string("unexpected exception: ") + e.what());
    }
    report.suites.push_back(std::move(s.res));
  }
  return report;
}

} // namespace varietas
