#ifndef VARIETAS_FREE_ALGEBRA_HPP
#define VARIETAS_FREE_ALGEBRA_HPP

#include <optional>
#include <set>
#include <vector>

#include "varietas/projection.hpp"

namespace varietas {

/// One element of the product of a model family: one carrier element per
/// factor, in family order.
using TupleElement = std::vector<int>;

/// A family of projection algebras over a shared vocabulary, viewed as the
/// ambient product in which free algebras live.
struct ModelFamily {
  Vocabulary vocab;
  std::vector<ProjectionAlgebra> models;

  int size() const { return static_cast<int>(models.size()); }
  void check_tuple(const TupleElement &t) const;
};

/// Coordinate-wise projection action: result[i] = args[projection_i(f)][i].
TupleElement apply_symbol(const ModelFamily &family, const std::string &symbol,
                          const std::vector<TupleElement> &args);

/// Least set containing gens and closed under every symbol, by worklist
/// fixpoint.  Canonically ordered (lexicographic) by construction.
std::set<TupleElement> subalgebra_closure(const ModelFamily &family,
                                          const std::vector<TupleElement> &gens);

/// The partition of factor indices induced by the vocabulary: two factors
/// land in one block iff no symbol's projection coordinate ever separates
/// them.  The subalgebra generated by any tuple set is exactly the set of
/// tuples that agree with some generator on every block.
std::vector<std::vector<int>> coordinate_partition(const ModelFamily &family);

/// Membership in the generated subalgebra, decided through the coordinate
/// partition rather than an explicit fixpoint.  Extensionally equal to
/// `subalgebra_closure(...).count(a)`.
bool membership_closure(const ModelFamily &family,
                        const std::vector<TupleElement> &gens, const TupleElement &a);

/// True iff the generators differ pairwise in every coordinate.
bool is_free_generating(const std::vector<TupleElement> &gens);

/// Equality of two terms over the generators, decided per coordinate by
/// projection reduction.  On inequality, *witness_coord (if non-null)
/// receives the least separating factor index.
bool word_problem(const ModelFamily &family, const std::vector<TupleElement> &gens,
                  const Term &t1, const Term &t2, int *witness_coord = nullptr);

/// Membership decision by head-symbol decomposition: for a = f(t_0..t_k),
/// split the family into the sub-families where f projects on position i and
/// recurse on t_i there; a leaf is checked against the closure of the
/// restricted generators.  Agrees with membership_closure on every instance.
bool membership_decomposition(const ModelFamily &family,
                              const std::vector<TupleElement> &gens,
                              const Term &a_term, const std::set<int> &target_vars);

/// `count` fresh tuples extending gens to a larger free generating set,
/// chosen deterministically (least unused carrier element per coordinate).
/// `avoid` lists extra tuples whose coordinates the fresh ones must also
/// miss.  Throws CarrierTooSmall.
std::vector<TupleElement> extend_with_free(const ModelFamily &family,
                                           const std::vector<TupleElement> &gens,
                                           int count,
                                           const std::vector<TupleElement> &avoid = {});

struct FactorVerdict {
  bool is_factor = false;
  std::vector<TupleElement> witness; // complement generators, when is_factor
};

/// Exhaustive free-factor search: looks for G inside closure(L_gens) with
/// H_gens + G free-generating and closure(H_gens + G) = closure(L_gens).
/// Candidates are scanned by size, then lexicographically; subsets that
/// already violate free generation are pruned (they can never qualify).
/// NotFactor is reported only after the scan is exhausted, and is a statement
/// about this finite truncation only.
FactorVerdict free_factor_search(const ModelFamily &family,
                                 const std::vector<TupleElement> &h_gens,
                                 const std::vector<TupleElement> &l_gens);

} // namespace varietas

#endif
