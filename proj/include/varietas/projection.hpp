#ifndef VARIETAS_PROJECTION_HPP
#define VARIETAS_PROJECTION_HPP

#include <map>
#include <span>
#include <string>
#include <variant>

#include "varietas/term.hpp"

namespace varietas {

/// A finite algebra in which every function symbol acts as projection on a
/// fixed coordinate.  Carrier elements are 0..carrier_size-1; constants are
/// interpreted by an explicit partial map.
struct ProjectionAlgebra {
  int carrier_size = 1;
  std::map<std::string, int> projection;       // symbol name -> argument coordinate
  std::map<ConstantName, int> constant_interp; // partial

  int projection_of(const std::string &symbol) const;
  int interp(const ConstantName &c) const;
};

/// Normal form of a term under projection semantics: the surviving leaf.
struct Leaf {
  std::variant<int, ConstantName> v; // variable index or constant

  bool is_var() const { return std::holds_alternative<int>(v); }
  int var() const { return std::get<int>(v); }
  const ConstantName &constant() const { return std::get<ConstantName>(v); }

  friend bool operator==(const Leaf &, const Leaf &) = default;
};

/// Repeatedly replaces f(args...) by args[projection(f)].  Linear in |t|.
Leaf reduce(const Term &t, const ProjectionAlgebra &m);

/// Value of t under variable assignment rho and the model's constants.
int eval(const Term &t, const ProjectionAlgebra &m, const std::map<int, int> &rho);

/// Decides whether lhs = rhs holds under every assignment, by reducing both
/// sides instead of enumerating.  Two identical leaves always agree; two
/// constants agree iff their interpretations do; anything else holds only on
/// a trivial (<= 1 element) carrier.
bool law_holds(const Equation &e, const ProjectionAlgebra &m);

bool law_holds_in_family(const Equation &e, std::span<const ProjectionAlgebra> family);

} // namespace varietas

#endif
