#ifndef VARIETAS_TERM_HPP
#define VARIETAS_TERM_HPP

#include <compare>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "varietas/errors.hpp"

namespace varietas {

struct FunctionSymbol {
  std::string name;
  int arity = 0;

  friend auto operator<=>(const FunctionSymbol &, const FunctionSymbol &) = default;
};

/// Ordered list of function symbols with unique names.
class Vocabulary {
public:
  Vocabulary() = default;

  void add(FunctionSymbol f);
  bool contains(const std::string &name) const;
  /// Arity of a named symbol; throws UnknownSymbol.
  int arity_of(const std::string &name) const;

  const std::vector<FunctionSymbol> &symbols() const { return symbols_; }
  bool empty() const { return symbols_.empty(); }

private:
  std::vector<FunctionSymbol> symbols_;
  std::map<std::string, int> arity_by_name_;
};

/// A constant c_{m,n} or d_n.  Constants are a syntactic sort of their own,
/// not arity-0 symbols: the laws of the variety quantify only over the
/// function symbols, while constants name fixed carrier elements.
struct ConstantName {
  enum class Kind { C, D };

  Kind kind = Kind::D;
  int m = 0; // first index; unused (0) for D
  int n = 0;

  static ConstantName c(int m, int n) { return {Kind::C, m, n}; }
  static ConstantName d(int n) { return {Kind::D, 0, n}; }

  bool is_c() const { return kind == Kind::C; }
  bool is_d() const { return kind == Kind::D; }

  /// d_n has index n, c_{m,n} has index m+n.
  int index() const { return is_d() ? n : m + n; }

  std::string str() const;

  friend auto operator<=>(const ConstantName &, const ConstantName &) = default;
};

/// Finite syntax tree: variable, constant, or symbol application.
class Term {
public:
  struct Var {
    int index;
    friend auto operator<=>(const Var &, const Var &) = default;
  };
  struct Const {
    ConstantName name;
    friend auto operator<=>(const Const &, const Const &) = default;
  };
  struct App {
    std::string symbol;
    std::vector<Term> args;
    friend bool operator==(const App &, const App &) = default;
  };

  using Node = std::variant<Var, Const, App>;

  Term() : node_(Var{0}) {}

  static Term var(int index) { return Term(Var{index}); }
  static Term constant(ConstantName c) { return Term(Const{c}); }
  static Term apply(std::string symbol, std::vector<Term> args) {
    return Term(App{std::move(symbol), std::move(args)});
  }

  const Node &node() const { return node_; }

  bool is_var() const { return std::holds_alternative<Var>(node_); }
  bool is_const() const { return std::holds_alternative<Const>(node_); }
  bool is_app() const { return std::holds_alternative<App>(node_); }

  const Var &as_var() const { return std::get<Var>(node_); }
  const Const &as_const() const { return std::get<Const>(node_); }
  const App &as_app() const { return std::get<App>(node_); }

  std::string str() const;

  friend bool operator==(const Term &, const Term &) = default;

private:
  explicit Term(Node n) : node_(std::move(n)) {}
  Node node_;
};

struct Equation {
  Term lhs;
  Term rhs;
  friend bool operator==(const Equation &, const Equation &) = default;
};

/// Checks that every application matches its symbol's arity; throws
/// UnknownSymbol or ArityMismatch.
void check_arities(const Term &t, const Vocabulary &vocab);

/// All constant occurrences of t, with multiplicity.
std::map<ConstantName, int> constants_of(const Term &t);

/// Variable indices occurring in t.
std::vector<int> variables_of(const Term &t);

/// Simultaneous substitution.  Every variable of t must be mapped;
/// throws UnmappedVariable otherwise.
Term substitute(const Term &t, const std::map<int, Term> &assignment);

} // namespace varietas

#endif
