#include "varietas/term.hpp"

#include <set>

namespace varietas {

void Vocabulary::add(FunctionSymbol f) {
  if (arity_by_name_.count(f.name))
    throw Error("duplicate symbol name: " + f.name);
  arity_by_name_[f.name] = f.arity;
  symbols_.push_back(std::move(f));
}

bool Vocabulary::contains(const std::string &name) const {
  return arity_by_name_.count(name) != 0;
}

int Vocabulary::arity_of(const std::string &name) const {
  auto it = arity_by_name_.find(name);
  if (it == arity_by_name_.end())
    throw UnknownSymbol(name);
  return it->second;
}

std::string ConstantName::str() const {
  if (is_d())
    return "d_" + std::to_string(n);
  return "c_" + std::to_string(m) + "," + std::to_string(n);
}

std::string Term::str() const {
  if (is_var())
    return "x" + std::to_string(as_var().index);
  if (is_const())
    return as_const().name.str();
  const App &a = as_app();
  std::string out = a.symbol + "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i)
      out += ",";
    out += a.args[i].str();
  }
  return out + ")";
}

void check_arities(const Term &t, const Vocabulary &vocab) {
  if (!t.is_app())
    return;
  const auto &a = t.as_app();
  int expected = vocab.arity_of(a.symbol);
  if (expected != static_cast<int>(a.args.size()))
    throw ArityMismatch(a.symbol, expected, static_cast<int>(a.args.size()));
  for (const Term &arg : a.args)
    check_arities(arg, vocab);
}

namespace {

void collect_constants(const Term &t, std::map<ConstantName, int> &out) {
  if (t.is_const()) {
    out[t.as_const().name] += 1;
  } else if (t.is_app()) {
    for (const Term &arg : t.as_app().args)
      collect_constants(arg, out);
  }
}

void collect_variables(const Term &t, std::set<int> &out) {
  if (t.is_var()) {
    out.insert(t.as_var().index);
  } else if (t.is_app()) {
    for (const Term &arg : t.as_app().args)
      collect_variables(arg, out);
  }
}

} // namespace

std::map<ConstantName, int> constants_of(const Term &t) {
  std::map<ConstantName, int> out;
  collect_constants(t, out);
  return out;
}

std::vector<int> variables_of(const Term &t) {
  std::set<int> vars;
  collect_variables(t, vars);
  return {vars.begin(), vars.end()};
}

Term substitute(const Term &t, const std::map<int, Term> &assignment) {
  if (t.is_var()) {
    auto it = assignment.find(t.as_var().index);
    if (it == assignment.end())
      throw UnmappedVariable(t.as_var().index);
    return it->second;
  }
  if (t.is_const())
    return t;
  const auto &a = t.as_app();
  std::vector<Term> args;
  args.reserve(a.args.size());
  for (const Term &arg : a.args)
    args.push_back(substitute(arg, assignment));
  return Term::apply(a.symbol, std::move(args));
}

} // namespace varietas
