#include "varietas/projection.hpp"

namespace varietas {

int ProjectionAlgebra::projection_of(const std::string &symbol) const {
  auto it = projection.find(symbol);
  if (it == projection.end())
    throw UnknownSymbol(symbol);
  return it->second;
}

int ProjectionAlgebra::interp(const ConstantName &c) const {
  auto it = constant_interp.find(c);
  if (it == constant_interp.end())
    throw MissingInterpretation(c.str());
  return it->second;
}

Leaf reduce(const Term &t, const ProjectionAlgebra &m) {
  const Term *cur = &t;
  while (cur->is_app()) {
    const auto &a = cur->as_app();
    int coord = m.projection_of(a.symbol);
    if (coord < 0 || coord >= static_cast<int>(a.args.size()))
      throw InvariantViolation("projection coordinate out of range for " + a.symbol);
    cur = &a.args[coord];
  }
  if (cur->is_var())
    return Leaf{cur->as_var().index};
  return Leaf{cur->as_const().name};
}

int eval(const Term &t, const ProjectionAlgebra &m, const std::map<int, int> &rho) {
  Leaf leaf = reduce(t, m);
  if (leaf.is_var()) {
    auto it = rho.find(leaf.var());
    if (it == rho.end())
      throw UnmappedVariable(leaf.var());
    return it->second;
  }
  return m.interp(leaf.constant());
}

bool law_holds(const Equation &e, const ProjectionAlgebra &m) {
  Leaf l = reduce(e.lhs, m);
  Leaf r = reduce(e.rhs, m);
  if (l.is_var() && r.is_var() && l.var() == r.var())
    return true;
  if (!l.is_var() && !r.is_var())
    return m.interp(l.constant()) == m.interp(r.constant());
  // distinct variables, or variable against constant
  return m.carrier_size <= 1;
}

bool law_holds_in_family(const Equation &e, std::span<const ProjectionAlgebra> family) {
  for (const auto &m : family)
    if (!law_holds(e, m))
      return false;
  return true;
}

} // namespace varietas
