#ifndef VARIETAS_TRANSVERSAL_HPP
#define VARIETAS_TRANSVERSAL_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "varietas/errors.hpp"

namespace varietas {

/// An indexed family of finite subsets of a finite universe of atoms.
struct SetFamily {
  std::set<int> universe;
  std::map<int, std::set<int>> sets;

  int size() const { return static_cast<int>(sets.size()); }
  /// Throws InvariantViolation unless every listed set is inside the universe.
  void check() const;
};

/// An injective choice function: one atom per set, drawn from that set.
struct Transversal {
  std::map<int, int> assignment; // set index -> atom
};

/// Either a transversal or a Hall violator: a subfamily G with |union G| < |G|.
struct TransversalResult {
  std::optional<Transversal> transversal;
  std::vector<int> violator; // set indices, nonempty iff no transversal

  bool found() const { return transversal.has_value(); }
};

/// Maximum bipartite matching (layered augmenting paths, O(E*sqrt(V)))
/// between set indices and atoms along membership edges.  When the matching
/// is not perfect on the set side, the violator is read off the final
/// alternating-path layering.
TransversalResult find_transversal(const SetFamily &f);

bool is_free(const SetFamily &f);

/// True iff every subfamily of size |f|-1 is free.  Removing sets cannot
/// destroy a transversal, so this settles all smaller subfamilies too.
bool is_almost_free(const SetFamily &f);

/// One node of a finite tree system.  Labels are surrogate cardinals under
/// plain integer order, with 0 standing for the smallest infinite one; final
/// nodes are exactly those labeled 0.
struct TreeNode {
  int lambda = 0;
  std::set<int> e; // child indices, subset of {0..lambda-1}; empty at finals
  std::set<int> b;
};

struct TreeSystem {
  int height = 0;
  std::map<std::vector<int>, TreeNode> nodes; // keyed by the node sequence

  bool is_final(const std::vector<int> &eta) const;
  /// Union of b along the path from the root to eta, inclusive.
  std::set<int> b_bar(const std::vector<int> &eta) const;
};

struct Violation {
  std::string node;
  std::string clause;
  std::string detail;
};

std::string node_name(const std::vector<int> &eta);

/// Empty iff the system is valid: the tree is well-formed (root present,
/// parents present, depth at most the height), finality matches label 0,
/// the root set is empty, child indices lie in e with strictly smaller
/// labels, sibling b-sets form an increasing chain, sizes satisfy
/// lambda_child <= |b_child| < lambda_parent, and every non-final node
/// passes the surrogate stationarity check (e nonempty and reaching
/// lambda-1).  Each violation names the node and the clause it breaks.
std::vector<Violation> validate_tree_system(const TreeSystem &t);

struct BasedFamily {
  TreeSystem system;
  std::map<std::vector<int>, std::set<int>> leaf_sets; // s_eta per final node
};

/// The family {s_eta : eta final}, indexed in node order, over the union of
/// its members.  Throws InvariantViolation when the system is invalid, a
/// final node lacks its set, a set sits at a non-final node, or some s_eta
/// is not contained in b_bar(eta).
SetFamily based_family_to_setfamily(const BasedFamily &b);

} // namespace varietas

#endif
