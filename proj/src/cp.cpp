#include "varietas/cp.hpp"

#include <algorithm>

namespace varietas {

Vocabulary StagePlan::vocabulary() const {
  Vocabulary v;
  for (const auto &s : stages)
    v.add(s.symbol);
  return v;
}

std::set<ConstantName> StagePlan::mentioned_constants() const {
  std::set<ConstantName> out;
  for (const auto &s : stages)
    for (const auto &[c, count] : constants_of(s.equation.rhs))
      out.insert(c);
  for (const auto &s : stages)
    out.insert(s.t);
  return out;
}

namespace {

// Constants whose every index is <= level, in the documented order:
// d_0..d_L, then c_{a,b} lexicographically.
std::vector<ConstantName> constants_up_to(int level) {
  std::vector<ConstantName> out;
  for (int n = 0; n <= level; ++n)
    out.push_back(ConstantName::d(n));
  for (int a = 0; a <= level; ++a)
    for (int b = 0; b <= level; ++b)
      out.push_back(ConstantName::c(a, b));
  return out;
}

int pair_level(const ConstantName &c, int depth) {
  int l = depth;
  l = std::max(l, c.is_d() ? c.n : std::max(c.m, c.n));
  return l;
}

} // namespace

std::pair<ConstantName, int> default_enumeration(int n) {
  for (int level = 0;; ++level) {
    for (const ConstantName &c : constants_up_to(level)) {
      for (int depth = 0; depth <= level; ++depth) {
        if (pair_level(c, depth) != level)
          continue; // enumerated at an earlier level
        if (n == 0)
          return {c, depth};
        --n;
      }
    }
  }
}

StagePlan build_stage_plan(int n_stages, const Enumeration &enumeration) {
  StagePlan plan;
  for (int n = 0; n < n_stages; ++n) {
    auto [t, m_n] = enumeration(n);
    int k_n = std::max(t.index() - m_n + 1, 3 * (n + 1));
    Stage stage;
    stage.t = t;
    stage.m_n = m_n;
    stage.k_n = k_n;
    stage.symbol = FunctionSymbol{"f" + std::to_string(n), m_n + k_n};
    std::vector<Term> args;
    for (int i = 0; i < m_n; ++i)
      args.push_back(Term::constant(ConstantName::d(i)));
    for (int j = 0; j < k_n; ++j)
      args.push_back(Term::constant(ConstantName::c(m_n, j)));
    stage.equation = Equation{Term::constant(t), Term::apply(stage.symbol.name, std::move(args))};
    plan.stages.push_back(std::move(stage));
  }
  return plan;
}

// ---------------------------------------------------------------------------
// EquivPartition
// ---------------------------------------------------------------------------

void EquivPartition::track(const ConstantName &c) {
  if (id_.count(c))
    return;
  int i = static_cast<int>(name_.size());
  id_[c] = i;
  name_.push_back(c);
  parent_.push_back(i);
  rank_.push_back(0);
}

bool EquivPartition::tracked(const ConstantName &c) const { return id_.count(c) != 0; }

int EquivPartition::find(int i) const {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

void EquivPartition::merge(const ConstantName &a, const ConstantName &b) {
  track(a);
  track(b);
  int ra = find(id_.at(a));
  int rb = find(id_.at(b));
  if (ra == rb)
    return;
  if (rank_[ra] < rank_[rb])
    std::swap(ra, rb);
  parent_[rb] = ra;
  if (rank_[ra] == rank_[rb])
    ++rank_[ra];
}

bool EquivPartition::same(const ConstantName &a, const ConstantName &b) const {
  auto ia = id_.find(a);
  auto ib = id_.find(b);
  if (ia == id_.end() || ib == id_.end())
    return a == b;
  return find(ia->second) == find(ib->second);
}

bool EquivPartition::is_singleton(const ConstantName &c) const {
  auto it = id_.find(c);
  if (it == id_.end())
    return true;
  int root = find(it->second);
  int count = 0;
  for (size_t i = 0; i < name_.size(); ++i)
    if (find(static_cast<int>(i)) == root && ++count > 1)
      return false;
  return true;
}

int EquivPartition::merge_budget_used() const {
  std::set<int> roots;
  for (size_t i = 0; i < name_.size(); ++i)
    roots.insert(find(static_cast<int>(i)));
  return static_cast<int>(name_.size() - roots.size());
}

std::vector<std::vector<ConstantName>> EquivPartition::cells() const {
  std::map<int, std::vector<ConstantName>> by_root;
  for (size_t i = 0; i < name_.size(); ++i)
    by_root[find(static_cast<int>(i))].push_back(name_[i]);
  std::vector<std::vector<ConstantName>> out;
  for (auto &[root, members] : by_root) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) { return a.front() < b.front(); });
  return out;
}

std::vector<std::string> EquivPartition::violations() const {
  std::vector<std::string> out;
  int budget = merge_budget_used();
  if (budget > 2 * stage)
    out.push_back("merge budget " + std::to_string(budget) + " exceeds 2*stage = " +
                  std::to_string(2 * stage));
  for (const auto &cell : cells()) {
    // Per level l, the set {c_{l,*}} + {d_i : i < l} must stay pairwise
    // distinct: a cell may hold at most one d, at most one c per level, and
    // a c of level l only together with d_i for i >= l.
    int d_count = 0;
    int d_index = -1;
    std::map<int, int> c_levels;
    for (const auto &c : cell) {
      if (c.is_d()) {
        ++d_count;
        d_index = c.n;
      } else {
        ++c_levels[c.m];
      }
    }
    if (d_count > 1)
      out.push_back("two d-constants share the cell rooted at " + cell.front().str());
    for (const auto &[level, count] : c_levels) {
      if (count > 1)
        out.push_back("two level-" + std::to_string(level) + " c-constants share the cell at " +
                      cell.front().str());
      if (d_count == 1 && d_index < level)
        out.push_back("cell at " + cell.front().str() + " merges d_" + std::to_string(d_index) +
                      " with a level-" + std::to_string(level) + " constant");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stage-wise model builders
// ---------------------------------------------------------------------------

namespace {

ConstantName argument_at(const Stage &stage, int position) {
  if (position < stage.m_n)
    return ConstantName::d(position);
  return ConstantName::c(stage.m_n, position - stage.m_n);
}

void assert_healthy(const EquivPartition &p, int stage_index) {
  auto bad = p.violations();
  if (!bad.empty())
    throw InvariantViolation("stage " + std::to_string(stage_index) + ": " + bad.front());
}

} // namespace

ModelBuild build_model_traced(const StagePlan &plan, std::optional<int> collapse_m,
                              const std::vector<ConstantName> &extra_constants) {
  ModelBuild out;
  EquivPartition &part = out.partition;
  for (const auto &c : plan.mentioned_constants())
    part.track(c);
  for (const auto &c : extra_constants)
    part.track(c);

  std::set<int> used_universe_markers; // second indexes of chosen c_{0,k}
  if (collapse_m) {
    part.track(ConstantName::c(0, 0));
    part.track(ConstantName::d(*collapse_m));
    part.merge(ConstantName::c(0, 0), ConstantName::d(*collapse_m));
    part.stage += 1;
    assert_healthy(part, -1);
    out.budget_history.push_back(part.merge_budget_used());
  }

  std::map<std::string, int> projections;
  for (int n = 0; n < plan.size(); ++n) {
    const Stage &stage = plan.stages[n];
    int arity = stage.symbol.arity;
    part.stage += 1;

    int chosen = -1;
    for (int p = 0; p < arity; ++p)
      if (part.same(stage.t, argument_at(stage, p))) {
        chosen = p;
        break;
      }
    if (chosen < 0) {
      // pick the least untouched c_{m_n,j} argument and merge it with t_n
      for (int p = stage.m_n; p < arity; ++p) {
        ConstantName arg = argument_at(stage, p);
        if (part.is_singleton(arg) && !(arg == stage.t)) {
          chosen = p;
          break;
        }
      }
      if (chosen < 0)
        throw InvariantViolation("stage " + std::to_string(n) +
                                 ": no untouched argument constant available");
      part.merge(argument_at(stage, chosen), stage.t);
      // keep the universe condition: the cell must name some c_{0,k}
      bool has_level0 = false;
      for (const auto &cell : part.cells()) {
        bool holds_t = false;
        bool holds_c0 = false;
        for (const auto &c : cell) {
          if (c == stage.t)
            holds_t = true;
          if (c.is_c() && c.m == 0)
            holds_c0 = true;
        }
        if (holds_t) {
          has_level0 = holds_c0;
          break;
        }
      }
      if (!has_level0) {
        int k = 0;
        while (!part.is_singleton(ConstantName::c(0, k)) || used_universe_markers.count(k))
          ++k;
        used_universe_markers.insert(k);
        part.merge(ConstantName::c(0, k), stage.t);
      }
    }
    projections[stage.symbol.name] = chosen;
    assert_healthy(part, n);
    out.budget_history.push_back(part.merge_budget_used());
  }

  // carrier = cells of everything tracked, in canonical order
  auto cells = part.cells();
  ProjectionAlgebra model;
  model.carrier_size = static_cast<int>(cells.size());
  model.projection = std::move(projections);
  for (size_t i = 0; i < cells.size(); ++i)
    for (const auto &c : cells[i])
      model.constant_interp[c] = static_cast<int>(i);

  for (const auto &stage : plan.stages)
    if (!law_holds(stage.equation, model))
      throw InvariantViolation("built model violates the equation of stage " +
                               stage.symbol.name);
  out.model = std::move(model);
  return out;
}

ProjectionAlgebra build_collapse_model(const StagePlan &plan, int m,
                                       const std::vector<ConstantName> &extra_constants) {
  return build_model_traced(plan, m, extra_constants).model;
}

ProjectionAlgebra build_generic_model(const StagePlan &plan,
                                      const std::vector<ConstantName> &extra_constants) {
  return build_model_traced(plan, std::nullopt, extra_constants).model;
}

// ---------------------------------------------------------------------------
// Verification and the CP1 witness
// ---------------------------------------------------------------------------

bool CPReport::all_ok() const {
  for (const auto &e : entries)
    if (!e.ok)
      return false;
  return true;
}

CPReport verify_K0_truncation(const ProjectionAlgebra &m, const StagePlan &plan) {
  CPReport report;
  for (int n = 0; n < plan.size(); ++n) {
    const Stage &s = plan.stages[n];
    bool ok = false;
    std::string detail;
    try {
      ok = law_holds(s.equation, m);
      if (!ok)
        detail = s.equation.lhs.str() + " = " + s.equation.rhs.str() + " fails";
    } catch (const Error &e) {
      detail = e.what();
    }
    report.entries.push_back({"equation_" + std::to_string(n), ok, detail});
  }

  {
    bool ok = true;
    std::string detail;
    for (const auto &s : plan.stages) {
      auto it = m.projection.find(s.symbol.name);
      if (it == m.projection.end() || it->second < 0 || it->second >= s.symbol.arity) {
        ok = false;
        detail = "symbol " + s.symbol.name + " lacks a valid projection";
        break;
      }
    }
    report.entries.push_back({"projection_totality", ok, detail});
  }

  {
    // per mentioned level l: interpretations of {c_{l,n}} + {d_n : n < l}
    // are pairwise distinct
    bool ok = true;
    std::string detail;
    std::set<int> levels;
    for (const auto &[c, v] : m.constant_interp)
      if (c.is_c())
        levels.insert(c.m);
    for (int level : levels) {
      std::map<int, ConstantName> seen;
      for (const auto &[c, v] : m.constant_interp) {
        bool in_set = (c.is_c() && c.m == level) || (c.is_d() && c.n < level);
        if (!in_set)
          continue;
        auto it = seen.find(v);
        if (it != seen.end()) {
          ok = false;
          detail = "level " + std::to_string(level) + ": " + it->second.str() + " and " +
                   c.str() + " coincide";
          break;
        }
        seen.emplace(v, c);
      }
      if (!ok)
        break;
    }
    report.entries.push_back({"level_distinctness", ok, detail});
  }

  {
    std::set<int> hit;
    for (const auto &[c, v] : m.constant_interp)
      hit.insert(v);
    bool ok = static_cast<int>(hit.size()) == m.carrier_size;
    report.entries.push_back(
        {"carrier_surjectivity", ok,
         ok ? "" : "carrier elements without a naming constant exist"});
  }
  return report;
}

bool Cp1Report::ok() const {
  for (const auto &c : clause1)
    if (!c.is_factor)
      return false;
  for (const auto &o : clause2)
    if (o.member || !o.witness_is_collapse_m)
      return false;
  return true;
}

namespace {

std::vector<std::vector<int>> subsets_up_to(int universe, int max_size) {
  std::vector<std::vector<int>> out;
  for (int size = 0; size <= max_size; ++size) {
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(pick.size()) == size) {
        out.push_back(pick);
        return;
      }
      for (int v = start; v < universe; ++v) {
        pick.push_back(v);
        rec(v + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

TupleElement constant_tuple(const ModelFamily &family, const ConstantName &c) {
  TupleElement t(family.size());
  for (int i = 0; i < family.size(); ++i)
    t[i] = family.models[i].interp(c);
  return t;
}

void pad_carriers(ModelFamily &family, int pad) {
  for (auto &m : family.models)
    m.carrier_size += pad;
}

} // namespace

Cp1Report cp1_finite_witness(const StagePlan &plan, int m_max, int j_size_max, int pad) {
  Cp1Report report;
  report.n_stages = plan.size();
  report.m_max = m_max;
  report.j_size_max = j_size_max;
  report.pad = pad;

  int d_range = std::max(m_max, j_size_max + 1);
  std::vector<ConstantName> extras;
  extras.push_back(ConstantName::c(0, 0));
  for (int j = 0; j <= d_range; ++j)
    extras.push_back(ConstantName::d(j));

  ModelFamily family;
  family.vocab = plan.vocabulary();
  family.models.push_back(build_generic_model(plan, extras));
  report.family.push_back("generic");
  for (int m = 0; m <= m_max; ++m) {
    family.models.push_back(build_collapse_model(plan, m, extras));
    report.family.push_back("collapse_" + std::to_string(m));
    if (m > plan.size())
      report.insufficiencies.push_back("collapse model " + std::to_string(m) +
                                       " exceeds the plan's stage coverage");
  }
  pad_carriers(family, pad);

  // clause (1): free-factor checks over a small truncation of the family
  {
    int width = std::min(family.size(), m_max >= 1 ? 3 : 2);
    ModelFamily sub;
    sub.vocab = family.vocab;
    for (int i = 0; i < width; ++i) {
      sub.models.push_back(family.models[i]);
      report.part_a_family.push_back(report.family[i]);
    }
    int rank = j_size_max + 1;
    std::vector<TupleElement> d_tuples;
    for (int j = 0; j < rank; ++j)
      d_tuples.push_back(constant_tuple(sub, ConstantName::d(j)));
    auto free_part = extend_with_free(sub, d_tuples, 2);
    std::vector<TupleElement> l_gens = d_tuples;
    l_gens.insert(l_gens.end(), free_part.begin(), free_part.end());
    for (const auto &j_set : subsets_up_to(rank, j_size_max)) {
      std::vector<TupleElement> h_gens;
      for (int j : j_set)
        h_gens.push_back(d_tuples[j]);
      FactorVerdict verdict = free_factor_search(sub, h_gens, l_gens);
      report.clause1.push_back(
          {j_set, verdict.is_factor, static_cast<int>(verdict.witness.size())});
    }
  }

  // clause (2): the membership obstruction behind "H is not a free factor"
  TupleElement c00 = constant_tuple(family, ConstantName::c(0, 0));
  for (int m = 0; m <= m_max; ++m) {
    std::vector<TupleElement> gens;
    for (int j = 0; j < m; ++j)
      gens.push_back(constant_tuple(family, ConstantName::d(j)));
    auto free_part = extend_with_free(family, gens, 2, {c00});
    gens.insert(gens.end(), free_part.begin(), free_part.end());

    Cp1Obstruction entry;
    entry.m = m;
    entry.member = membership_closure(family, gens, c00);
    // In the collapse-m factor c_{0,0} names the same element as d_m, which
    // no generator can reach; disagreement with every generator at that one
    // coordinate already rules out membership.
    int coord = m + 1;
    bool obstructs = true;
    for (const auto &g : gens)
      if (g[coord] == c00[coord]) {
        obstructs = false;
        break;
      }
    entry.witness_coordinate = coord;
    entry.witness_model = report.family[coord];
    entry.witness_is_collapse_m = obstructs && !entry.member;
    report.clause2.push_back(std::move(entry));
  }
  return report;
}

} // namespace varietas
