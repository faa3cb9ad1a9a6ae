#include "varietas/transversal.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace varietas {

void SetFamily::check() const {
  for (const auto &[index, s] : sets)
    for (int atom : s)
      if (!universe.count(atom))
        throw InvariantViolation("set " + std::to_string(index) + " mentions atom " +
                                 std::to_string(atom) + " outside the universe");
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct Matcher {
  std::vector<std::vector<int>> adj; // set slot -> atom slots
  std::vector<int> match_set;        // set slot -> atom slot or -1
  std::vector<int> match_atom;       // atom slot -> set slot or -1
  std::vector<int> dist;

  bool bfs() {
    std::queue<int> q;
    dist.assign(adj.size(), kInf);
    for (size_t u = 0; u < adj.size(); ++u)
      if (match_set[u] < 0) {
        dist[u] = 0;
        q.push(static_cast<int>(u));
      }
    bool reachable_free_atom = false;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        int w = match_atom[v];
        if (w < 0) {
          reachable_free_atom = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return reachable_free_atom;
  }

  bool dfs(int u) {
    for (int v : adj[u]) {
      int w = match_atom[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
        match_set[u] = v;
        match_atom[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  }

  void run() {
    match_set.assign(adj.size(), -1);
    int atoms = 0;
    for (const auto &edges : adj)
      for (int v : edges)
        atoms = std::max(atoms, v + 1);
    match_atom.assign(atoms, -1);
    while (bfs())
      for (size_t u = 0; u < adj.size(); ++u)
        if (match_set[u] < 0)
          dfs(static_cast<int>(u));
  }
};

} // namespace

TransversalResult find_transversal(const SetFamily &f) {
  f.check();

  std::vector<int> index_of_slot;
  std::map<int, int> atom_slot;
  Matcher m;
  for (const auto &[index, s] : f.sets) {
    index_of_slot.push_back(index);
    std::vector<int> edges;
    for (int atom : s) {
      auto it = atom_slot.emplace(atom, static_cast<int>(atom_slot.size())).first;
      edges.push_back(it->second);
    }
    m.adj.push_back(std::move(edges));
  }
  m.run();

  TransversalResult out;
  bool perfect = true;
  for (int v : m.match_set)
    if (v < 0)
      perfect = false;

  if (perfect) {
    std::vector<int> atom_of_slot(atom_slot.size());
    for (const auto &[atom, slot] : atom_slot)
      atom_of_slot[slot] = atom;
    Transversal t;
    for (size_t u = 0; u < m.adj.size(); ++u)
      t.assignment[index_of_slot[u]] = atom_of_slot[m.match_set[u]];
    out.transversal = std::move(t);
    return out;
  }

  // The sets reachable from any unmatched set by alternating paths saturate
  // all their atoms with matches back into the group, so the group itself is
  // a Hall violator.
  m.bfs();
  for (size_t u = 0; u < m.adj.size(); ++u)
    if (m.dist[u] != kInf)
      out.violator.push_back(index_of_slot[u]);
  return out;
}

bool is_free(const SetFamily &f) { return find_transversal(f).found(); }

bool is_almost_free(const SetFamily &f) {
  if (f.size() < 1)
    throw InvariantViolation("is_almost_free requires a nonempty family");
  for (const auto &[index, s] : f.sets) {
    SetFamily sub = f;
    sub.sets.erase(index);
    if (!is_free(sub))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Tree systems
// ---------------------------------------------------------------------------

bool TreeSystem::is_final(const std::vector<int> &eta) const {
  auto it = nodes.find(eta);
  return it != nodes.end() && it->second.lambda == 0;
}

std::set<int> TreeSystem::b_bar(const std::vector<int> &eta) const {
  std::set<int> out;
  std::vector<int> prefix;
  for (size_t m = 0; m <= eta.size(); ++m) {
    auto it = nodes.find(prefix);
    if (it != nodes.end())
      out.insert(it->second.b.begin(), it->second.b.end());
    if (m < eta.size())
      prefix.push_back(eta[m]);
  }
  return out;
}

std::string node_name(const std::vector<int> &eta) {
  std::string out = "<";
  for (size_t i = 0; i < eta.size(); ++i) {
    if (i)
      out += ",";
    out += std::to_string(eta[i]);
  }
  return out + ">";
}

std::vector<Violation> validate_tree_system(const TreeSystem &t) {
  std::vector<Violation> out;
  auto flag = [&](const std::vector<int> &eta, const std::string &clause,
                  const std::string &detail) {
    out.push_back({node_name(eta), clause, detail});
  };

  auto root = t.nodes.find({});
  if (root == t.nodes.end()) {
    out.push_back({"<>", "tree_shape", "root node missing"});
    return out;
  }
  if (!root->second.b.empty())
    flag({}, "root_base", "B at the root must be empty");

  std::map<std::vector<int>, std::set<int>> children;
  for (const auto &[eta, node] : t.nodes) {
    if (static_cast<int>(eta.size()) > t.height)
      flag(eta, "tree_shape", "node deeper than the height");
    if (!eta.empty()) {
      std::vector<int> parent(eta.begin(), eta.end() - 1);
      if (!t.nodes.count(parent))
        flag(eta, "tree_shape", "parent node missing");
      else
        children[parent].insert(eta.back());
    }
    if (node.lambda < 0)
      flag(eta, "labels", "negative label");
  }

  for (const auto &[eta, node] : t.nodes) {
    bool leaf = children.find(eta) == children.end();
    bool final = node.lambda == 0;

    if (final && !leaf)
      flag(eta, "finality", "label 0 at a node with children");
    if (static_cast<int>(eta.size()) == t.height && !final)
      flag(eta, "finality", "height-level node must be final");
    if (final) {
      if (!node.e.empty())
        flag(eta, "labels", "final node carries child indices");
      continue;
    }

    for (int beta : node.e)
      if (beta < 0 || beta >= node.lambda)
        flag(eta, "labels", "child index " + std::to_string(beta) + " outside the label");

    // surrogate of stationarity: nonempty and reaching the top of the label
    if (node.e.empty() || *node.e.rbegin() != node.lambda - 1)
      flag(eta, "stationarity", "E must be nonempty and contain lambda-1");

    auto kids = children.find(eta);
    if (kids != children.end())
      for (int beta : kids->second)
        if (!node.e.count(beta))
          flag(eta, "children", "child " + std::to_string(beta) + " not listed in E");

    const std::set<int> *prev = nullptr;
    int prev_beta = -1;
    for (int beta : node.e) {
      std::vector<int> child = eta;
      child.push_back(beta);
      auto it = t.nodes.find(child);
      if (it == t.nodes.end()) {
        flag(eta, "children", "node for child index " + std::to_string(beta) + " missing");
        continue;
      }
      const TreeNode &cn = it->second;
      if (cn.lambda >= node.lambda)
        flag(child, "descent", "child label must drop");
      int b_size = static_cast<int>(cn.b.size());
      if (b_size < cn.lambda || b_size >= node.lambda)
        flag(child, "sizes", "need lambda_child <= |B| < lambda_parent");
      if (prev && !std::includes(cn.b.begin(), cn.b.end(), prev->begin(), prev->end()))
        flag(child, "chain", "B does not extend B of sibling " + std::to_string(prev_beta));
      prev = &cn.b;
      prev_beta = beta;
    }
  }
  return out;
}

SetFamily based_family_to_setfamily(const BasedFamily &b) {
  auto bad = validate_tree_system(b.system);
  if (!bad.empty())
    throw InvariantViolation("based family over an invalid system: " + bad.front().node +
                             " " + bad.front().clause);

  for (const auto &[eta, s] : b.leaf_sets)
    if (!b.system.is_final(eta))
      throw InvariantViolation("set attached to non-final node " + node_name(eta));

  SetFamily out;
  int index = 0;
  for (const auto &[eta, node] : b.system.nodes) {
    if (node.lambda != 0)
      continue;
    auto it = b.leaf_sets.find(eta);
    if (it == b.leaf_sets.end())
      throw InvariantViolation("final node " + node_name(eta) + " has no set");
    std::set<int> bar = b.system.b_bar(eta);
    for (int x : it->second)
      if (!bar.count(x))
        throw InvariantViolation("set at " + node_name(eta) + " leaves its base");
    out.sets[index++] = it->second;
    out.universe.insert(it->second.begin(), it->second.end());
  }
  return out;
}

} // namespace varietas
