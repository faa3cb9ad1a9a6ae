#ifndef VARIETAS_CP_HPP
#define VARIETAS_CP_HPP

#include <functional>
#include <optional>
#include <set>

#include "varietas/free_algebra.hpp"

namespace varietas {

/// One stage of the construction: a target constant t_n, a depth m_n, the
/// fresh symbol f_n, and the committed equation
///   t_n = f_n(d_0..d_{m_n-1}, c_{m_n,0}..c_{m_n,k_n-1}).
struct Stage {
  ConstantName t;
  int m_n = 0;
  FunctionSymbol symbol;
  int k_n = 0;
  Equation equation;
};

struct StagePlan {
  std::vector<Stage> stages;

  int size() const { return static_cast<int>(stages.size()); }
  Vocabulary vocabulary() const;
  /// Constants occurring in any stage equation.
  std::set<ConstantName> mentioned_constants() const;
};

using Enumeration = std::function<std::pair<ConstantName, int>(int)>;

/// The documented dovetail over (constant, depth) pairs: pairs are grouped
/// by the maximum of all indices involved, and ordered within a group by
/// constant (d_0..d_L, then c_{a,b} lexicographically) and then by depth.
/// Hits every pair exactly once.
std::pair<ConstantName, int> default_enumeration(int n);

/// Builds the stage-N plan.  The arity of f_n is m_n + k_n with
///   k_n = max(index(t_n) - m_n + 1, 3*(n+1)),
/// which keeps arities linear in n while guaranteeing both that a same-level
/// target constant always occurs among the arguments and that the collapse
/// builder can always find an untouched argument constant.
StagePlan build_stage_plan(int n_stages, const Enumeration &enumeration = default_enumeration);

/// Union-find over constant names with the stage-wise budget and
/// level-separation bookkeeping of the collapse construction.
class EquivPartition {
public:
  /// Starts tracking a constant as a singleton cell (idempotent).
  void track(const ConstantName &c);
  bool tracked(const ConstantName &c) const;
  void merge(const ConstantName &a, const ConstantName &b);
  bool same(const ConstantName &a, const ConstantName &b) const;
  bool is_singleton(const ConstantName &c) const;

  /// Sum over cells of (size - 1).
  int merge_budget_used() const;
  /// Refinement steps taken; the initial seeding merge counts as a step.
  int stage = 0;

  /// Cells in canonical order (sorted members, ordered by least member).
  std::vector<std::vector<ConstantName>> cells() const;

  /// Violated invariants, empty when healthy: the 2*stage merge budget, and
  /// per-level separation (no cell may hold two constants of one level set
  /// {c_{l,*}} + {d_i : i < l}).
  std::vector<std::string> violations() const;

private:
  int find(int i) const;
  std::map<ConstantName, int> id_;
  std::vector<ConstantName> name_;
  mutable std::vector<int> parent_;
  std::vector<int> rank_;
};

struct ModelBuild {
  ProjectionAlgebra model;
  EquivPartition partition;
  std::vector<int> budget_history; // merge budget after each refinement step
};

/// Runs the stage-wise equivalence construction.  With a collapse target m,
/// seeds the partition with c_{0,0} = d_m; without one, builds the generic
/// member of the family.  `extra_constants` are tracked (and interpreted)
/// in addition to the plan's own constants.
ModelBuild build_model_traced(const StagePlan &plan, std::optional<int> collapse_m,
                              const std::vector<ConstantName> &extra_constants = {});

ProjectionAlgebra build_collapse_model(const StagePlan &plan, int m,
                                       const std::vector<ConstantName> &extra_constants = {});
ProjectionAlgebra build_generic_model(const StagePlan &plan,
                                      const std::vector<ConstantName> &extra_constants = {});

struct CheckEntry {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct CPReport {
  std::vector<CheckEntry> entries;
  bool all_ok() const;
};

/// Truncation-safe membership check for the model family: every plan
/// equation holds, every symbol is a projection, the mentioned level sets
/// are pairwise distinct, and every carrier element names a constant.
CPReport verify_K0_truncation(const ProjectionAlgebra &m, const StagePlan &plan);

struct Cp1FactorCheck {
  std::vector<int> j_set;
  bool is_factor = false;
  int witness_size = 0;
};

struct Cp1Obstruction {
  int m = 0;
  bool member = true;      // expected false
  int witness_coordinate = -1; // the collapse-m factor index
  std::string witness_model;
  // true iff membership fails and c_{0,0} disagrees with every generator
  // at the collapse-m coordinate (a sound per-coordinate obstruction)
  bool witness_is_collapse_m = false;
};

struct Cp1Report {
  int n_stages = 0;
  int m_max = 0;
  int j_size_max = 0;
  int pad = 0;
  std::vector<std::string> family;        // labels, clause-(2) coordinates
  std::vector<std::string> part_a_family; // labels, clause-(1) truncation
  std::vector<Cp1FactorCheck> clause1;
  std::vector<Cp1Obstruction> clause2;
  std::vector<std::string> insufficiencies;
  bool ok() const;
};

/// Finite witness report for the two clauses of the 1-construction
/// principle: (a) each small <d_j : j in J> is a free factor of a finite
/// free truncation of L; (b) c_{0,0} stays outside the subalgebra generated
/// by d_0..d_{m-1} plus a fresh free part, with the collapse-m coordinate
/// recorded as the obstruction.
Cp1Report cp1_finite_witness(const StagePlan &plan, int m_max, int j_size_max, int pad = 0);

} // namespace varietas

#endif
