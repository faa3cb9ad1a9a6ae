#include "varietas/free_algebra.hpp"

#include <algorithm>
#include <map>

namespace varietas {

void ModelFamily::check_tuple(const TupleElement &t) const {
  if (static_cast<int>(t.size()) != size())
    throw Error("tuple length " + std::to_string(t.size()) + " does not match family size " +
                std::to_string(size()));
  for (int i = 0; i < size(); ++i)
    if (t[i] < 0 || t[i] >= models[i].carrier_size)
      throw Error("tuple coordinate " + std::to_string(i) + " out of carrier range");
}

TupleElement apply_symbol(const ModelFamily &family, const std::string &symbol,
                          const std::vector<TupleElement> &args) {
  int arity = family.vocab.arity_of(symbol);
  if (arity != static_cast<int>(args.size()))
    throw ArityMismatch(symbol, arity, static_cast<int>(args.size()));
  TupleElement out(family.size());
  for (int i = 0; i < family.size(); ++i) {
    int coord = family.models[i].projection_of(symbol);
    out[i] = args[coord][i];
  }
  return out;
}

namespace {

// Distinct projection positions of a symbol across the family, sorted.
std::vector<int> distinct_positions(const ModelFamily &family, const std::string &symbol) {
  std::set<int> positions;
  for (const auto &m : family.models)
    positions.insert(m.projection_of(symbol));
  return {positions.begin(), positions.end()};
}

} // namespace

std::set<TupleElement> subalgebra_closure(const ModelFamily &family,
                                          const std::vector<TupleElement> &gens) {
  for (const auto &g : gens)
    family.check_tuple(g);
  std::set<TupleElement> closure(gens.begin(), gens.end());
  if (family.size() == 0)
    return closure;

  // Only the distinct projection positions of a symbol matter: the result
  // coordinate i copies args[projection_i][i], so filling every position of
  // the argument list from a choice per distinct position covers all
  // reachable values without iterating full arity-tuples.
  struct SymbolSig {
    std::string name;
    std::vector<int> positions;          // distinct, sorted
    std::vector<int> position_of_factor; // factor i -> index into positions
  };
  std::vector<SymbolSig> sigs;
  std::set<std::vector<int>> seen_patterns;
  for (const auto &f : family.vocab.symbols()) {
    SymbolSig sig{f.name, distinct_positions(family, f.name), {}};
    sig.position_of_factor.resize(family.size());
    for (int i = 0; i < family.size(); ++i) {
      int p = family.models[i].projection_of(f.name);
      sig.position_of_factor[i] = static_cast<int>(
          std::lower_bound(sig.positions.begin(), sig.positions.end(), p) - sig.positions.begin());
    }
    if (seen_patterns.insert(sig.position_of_factor).second)
      sigs.push_back(std::move(sig));
  }

  std::vector<TupleElement> frontier(closure.begin(), closure.end());
  while (!frontier.empty()) {
    std::vector<TupleElement> next;
    std::vector<TupleElement> all(closure.begin(), closure.end());
    for (const auto &sig : sigs) {
      int k = static_cast<int>(sig.positions.size());
      // One choice of tuple per distinct position; at least one slot must
      // draw from the frontier, or the result was already produced.
      for (int fresh_slot = 0; fresh_slot < k; ++fresh_slot) {
        std::vector<int> choice(k, 0);
        std::vector<const std::vector<TupleElement> *> pools(k, &all);
        pools[fresh_slot] = &frontier;
        bool any_empty = false;
        for (int s = 0; s < k; ++s)
          if (pools[s]->empty())
            any_empty = true;
        if (any_empty)
          continue;
        while (true) {
          TupleElement out(family.size());
          for (int i = 0; i < family.size(); ++i) {
            int slot = sig.position_of_factor[i];
            out[i] = (*pools[slot])[choice[slot]][i];
          }
          if (closure.insert(out).second)
            next.push_back(std::move(out));
          int s = k - 1;
          for (; s >= 0; --s) {
            if (++choice[s] < static_cast<int>(pools[s]->size()))
              break;
            choice[s] = 0;
          }
          if (s < 0)
            break;
        }
      }
    }
    frontier = std::move(next);
  }
  return closure;
}

std::vector<std::vector<int>> coordinate_partition(const ModelFamily &family) {
  int n = family.size();
  std::vector<int> block_of(n, 0);
  int nblocks = 1;
  for (const auto &f : family.vocab.symbols()) {
    // refine each block by the symbol's projection coordinate
    std::map<std::pair<int, int>, int> relabel;
    std::vector<int> next(n);
    int count = 0;
    for (int i = 0; i < n; ++i) {
      auto key = std::make_pair(block_of[i], family.models[i].projection_of(f.name));
      auto it = relabel.find(key);
      if (it == relabel.end())
        it = relabel.emplace(key, count++).first;
      next[i] = it->second;
    }
    block_of = std::move(next);
    nblocks = count;
  }
  std::vector<std::vector<int>> blocks(std::max(nblocks, n == 0 ? 0 : 1));
  for (int i = 0; i < n; ++i)
    blocks[block_of[i]].push_back(i);
  // drop possible empties, keep first-coordinate order
  std::vector<std::vector<int>> out;
  for (auto &b : blocks)
    if (!b.empty())
      out.push_back(std::move(b));
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) { return a.front() < b.front(); });
  return out;
}

bool membership_closure(const ModelFamily &family, const std::vector<TupleElement> &gens,
                        const TupleElement &a) {
  family.check_tuple(a);
  if (gens.empty())
    return false;
  if (family.size() == 0)
    return true; // all tuples are the empty tuple
  for (const auto &blocks = coordinate_partition(family); const auto &block : blocks) {
    bool matched = false;
    for (const auto &g : gens) {
      bool agree = true;
      for (int i : block)
        if (g[i] != a[i]) {
          agree = false;
          break;
        }
      if (agree) {
        matched = true;
        break;
      }
    }
    if (!matched)
      return false;
  }
  return true;
}

bool is_free_generating(const std::vector<TupleElement> &gens) {
  for (size_t a = 0; a < gens.size(); ++a)
    for (size_t b = a + 1; b < gens.size(); ++b)
      for (size_t i = 0; i < gens[a].size(); ++i)
        if (gens[a][i] == gens[b][i])
          return false;
  return true;
}

namespace {

int eval_over_gens(const Term &t, const ProjectionAlgebra &m, int factor,
                   const std::vector<TupleElement> &gens) {
  Leaf leaf = reduce(t, m);
  if (leaf.is_var()) {
    int v = leaf.var();
    if (v < 0 || v >= static_cast<int>(gens.size()))
      throw Error("variable x" + std::to_string(v) + " has no generator");
    return gens[v][factor];
  }
  return m.interp(leaf.constant());
}

TupleElement eval_tuple(const ModelFamily &family, const Term &t,
                        const std::vector<TupleElement> &gens) {
  TupleElement out(family.size());
  for (int i = 0; i < family.size(); ++i)
    out[i] = eval_over_gens(t, family.models[i], i, gens);
  return out;
}

} // namespace

bool word_problem(const ModelFamily &family, const std::vector<TupleElement> &gens,
                  const Term &t1, const Term &t2, int *witness_coord) {
  TupleElement v1 = eval_tuple(family, t1, gens);
  TupleElement v2 = eval_tuple(family, t2, gens);
  for (int i = 0; i < family.size(); ++i)
    if (v1[i] != v2[i]) {
      if (witness_coord)
        *witness_coord = i;
      return false;
    }
  return true;
}

namespace {

ModelFamily restrict_family(const ModelFamily &family, const std::vector<int> &factors) {
  ModelFamily out;
  out.vocab = family.vocab;
  for (int i : factors)
    out.models.push_back(family.models[i]);
  return out;
}

std::vector<TupleElement> restrict_tuples(const std::vector<TupleElement> &tuples,
                                          const std::vector<int> &factors) {
  std::vector<TupleElement> out;
  out.reserve(tuples.size());
  for (const auto &t : tuples) {
    TupleElement r;
    r.reserve(factors.size());
    for (int i : factors)
      r.push_back(t[i]);
    out.push_back(std::move(r));
  }
  return out;
}

} // namespace

bool membership_decomposition(const ModelFamily &family, const std::vector<TupleElement> &gens,
                              const Term &a_term, const std::set<int> &target_vars) {
  if (family.models.empty())
    throw Error("membership_decomposition: empty model family (vacuous variety)");
  if (a_term.is_app()) {
    const auto &app = a_term.as_app();
    // The sub-family where f projects on position p realizes the quotient
    // variety obtained by adding the law f(z_0..z_k) = z_p.
    std::map<int, std::vector<int>> by_position;
    for (int i = 0; i < family.size(); ++i)
      by_position[family.models[i].projection_of(app.symbol)].push_back(i);
    for (const auto &[pos, factors] : by_position) {
      ModelFamily sub = restrict_family(family, factors);
      if (!membership_decomposition(sub, restrict_tuples(gens, factors), app.args[pos],
                                    target_vars))
        return false;
    }
    return true;
  }
  std::vector<TupleElement> targets;
  for (int v : target_vars) {
    if (v < 0 || v >= static_cast<int>(gens.size()))
      throw Error("target variable out of range");
    targets.push_back(gens[v]);
  }
  return membership_closure(family, targets, eval_tuple(family, a_term, gens));
}

std::vector<TupleElement> extend_with_free(const ModelFamily &family,
                                           const std::vector<TupleElement> &gens, int count,
                                           const std::vector<TupleElement> &avoid) {
  for (const auto &m : family.models)
    if (m.carrier_size <= static_cast<int>(gens.size()) + count)
      throw CarrierTooSmall("carrier of size " + std::to_string(m.carrier_size) +
                            " cannot hold " + std::to_string(gens.size()) + "+" +
                            std::to_string(count) + " coordinate-distinct elements; " +
                            "rebuild the truncation with larger carriers");
  std::vector<TupleElement> fresh;
  std::vector<std::set<int>> used(family.size());
  for (int i = 0; i < family.size(); ++i) {
    for (const auto &g : gens)
      used[i].insert(g[i]);
    for (const auto &g : avoid)
      used[i].insert(g[i]);
  }
  for (int c = 0; c < count; ++c) {
    TupleElement t(family.size());
    for (int i = 0; i < family.size(); ++i) {
      int v = 0;
      while (used[i].count(v))
        ++v;
      if (v >= family.models[i].carrier_size)
        throw CarrierTooSmall("factor " + std::to_string(i) + " exhausted while extending");
      t[i] = v;
      used[i].insert(v);
    }
    fresh.push_back(std::move(t));
  }
  return fresh;
}

namespace {

struct FactorSearch {
  const ModelFamily &family;
  const std::vector<TupleElement> &h_gens;
  const std::vector<TupleElement> candidates; // closure(L), lex order
  const std::vector<std::vector<int>> blocks;
  std::vector<std::set<std::vector<int>>> l_restrictions; // per block

  bool collides(const TupleElement &a, const TupleElement &b) const {
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] == b[i])
        return true;
    return false;
  }

  bool closure_matches(const std::vector<TupleElement> &basis) const {
    // closure equality via per-block restriction sets
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
      std::set<std::vector<int>> got;
      for (const auto &g : basis) {
        std::vector<int> r;
        for (int i : blocks[bi])
          r.push_back(g[i]);
        got.insert(std::move(r));
      }
      if (got != l_restrictions[bi])
        return false;
    }
    return true;
  }

  bool found_free_of_size = false;

  bool dfs(std::vector<TupleElement> &chosen, size_t start, int remaining,
           std::vector<TupleElement> &basis) {
    if (remaining == 0) {
      found_free_of_size = true;
      return closure_matches(basis);
    }
    for (size_t c = start; c < candidates.size(); ++c) {
      bool ok = true;
      for (const auto &b : basis)
        if (collides(candidates[c], b)) {
          ok = false;
          break;
        }
      if (!ok)
        continue;
      chosen.push_back(candidates[c]);
      basis.push_back(candidates[c]);
      if (dfs(chosen, c + 1, remaining - 1, basis))
        return true;
      chosen.pop_back();
      basis.pop_back();
    }
    return false;
  }
};

} // namespace

FactorVerdict free_factor_search(const ModelFamily &family,
                                 const std::vector<TupleElement> &h_gens,
                                 const std::vector<TupleElement> &l_gens) {
  if (!is_free_generating(h_gens))
    throw Error("free_factor_search: H generators are not free generating");
  if (!is_free_generating(l_gens))
    throw Error("free_factor_search: L generators are not free generating");
  for (const auto &h : h_gens)
    if (!membership_closure(family, l_gens, h))
      throw Error("free_factor_search: closure(H) is not contained in closure(L)");

  auto closure_l = subalgebra_closure(family, l_gens);
  std::vector<TupleElement> candidates(closure_l.begin(), closure_l.end());

  FactorSearch search{family, h_gens, std::move(candidates), coordinate_partition(family), {}};
  search.l_restrictions.resize(search.blocks.size());
  for (size_t bi = 0; bi < search.blocks.size(); ++bi)
    for (const auto &g : l_gens) {
      std::vector<int> r;
      for (int i : search.blocks[bi])
        r.push_back(g[i]);
      search.l_restrictions[bi].insert(std::move(r));
    }

  for (int size = 0; size <= static_cast<int>(search.candidates.size()); ++size) {
    search.found_free_of_size = false;
    std::vector<TupleElement> chosen;
    std::vector<TupleElement> basis = h_gens;
    if (search.dfs(chosen, 0, size, basis))
      return FactorVerdict{true, chosen};
    if (size > 0 && !search.found_free_of_size)
      break; // every larger subset contains a colliding pair as well
  }
  return FactorVerdict{false, {}};
}

} // namespace varietas
