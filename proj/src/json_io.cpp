#include "varietas/json_io.hpp"

#include <algorithm>

namespace varietas {

namespace {

[[noreturn]] void fail(const std::string &what) { throw ParseError(what); }

const Json &field(const Json &j, const char *name) {
  if (!j.is_object() || !j.contains(name))
    fail(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int int_field(const Json &j, const char *name) {
  const Json &v = field(j, name);
  if (!v.is_number_integer())
    fail(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

std::string string_field(const Json &j, const char *name) {
  const Json &v = field(j, name);
  if (!v.is_string())
    fail(std::string("field \"") + name + "\" must be a string");
  return v.get<std::string>();
}

void check_schema(const Json &j) {
  if (int_field(j, "schema_version") != kSchemaVersion)
    fail("unsupported schema_version");
}

std::set<int> int_set(const Json &j, const char *what) {
  if (!j.is_array())
    fail(std::string(what) + " must be an array");
  std::set<int> out;
  for (const auto &v : j)
    out.insert(v.get<int>());
  return out;
}

Json int_array(const std::set<int> &s) {
  Json out = Json::array();
  for (int v : s)
    out.push_back(v);
  return out;
}

} // namespace

std::string dump_canonical(const Json &j) { return j.dump(2) + "\n"; }

Json symbol_to_json(const FunctionSymbol &f) {
  return Json{{"name", f.name}, {"arity", f.arity}};
}

FunctionSymbol symbol_from_json(const Json &j) {
  return {string_field(j, "name"), int_field(j, "arity")};
}

Json constant_to_json(const ConstantName &c) {
  return Json{{"kind", c.is_c() ? "C" : "D"}, {"m", c.is_c() ? c.m : 0}, {"n", c.n}};
}

ConstantName constant_from_json(const Json &j) {
  std::string kind = string_field(j, "kind");
  if (kind == "C")
    return ConstantName::c(int_field(j, "m"), int_field(j, "n"));
  if (kind == "D")
    return ConstantName::d(int_field(j, "n"));
  fail("constant kind must be \"C\" or \"D\"");
}

Json term_to_json(const Term &t) {
  if (t.is_var())
    return Json{{"var", t.as_var().index}};
  if (t.is_const())
    return Json{{"const", constant_to_json(t.as_const().name)}};
  const auto &app = t.as_app();
  Json args = Json::array();
  for (const auto &a : app.args)
    args.push_back(term_to_json(a));
  return Json{{"app", Json{{"f", app.symbol}, {"args", std::move(args)}}}};
}

Term term_from_json(const Json &j) {
  if (!j.is_object() || j.size() != 1)
    fail("a term is an object with exactly one of \"var\", \"const\", \"app\"");
  if (j.contains("var"))
    return Term::var(j.at("var").get<int>());
  if (j.contains("const"))
    return Term::constant(constant_from_json(j.at("const")));
  if (j.contains("app")) {
    const Json &app = j.at("app");
    std::vector<Term> args;
    for (const auto &a : field(app, "args"))
      args.push_back(term_from_json(a));
    return Term::apply(string_field(app, "f"), std::move(args));
  }
  fail("unknown term tag");
}

Json equation_to_json(const Equation &e) {
  return Json{{"lhs", term_to_json(e.lhs)}, {"rhs", term_to_json(e.rhs)}};
}

Equation equation_from_json(const Json &j) {
  return {term_from_json(field(j, "lhs")), term_from_json(field(j, "rhs"))};
}

Json model_to_json(const ProjectionAlgebra &m) {
  Json projections = Json::object();
  for (const auto &[name, coord] : m.projection)
    projections[name] = coord;
  Json constants = Json::array();
  for (const auto &[c, value] : m.constant_interp) {
    Json entry = constant_to_json(c);
    entry["value"] = value;
    constants.push_back(std::move(entry));
  }
  return Json{{"carrier_size", m.carrier_size},
              {"projections", std::move(projections)},
              {"constants", std::move(constants)}};
}

ProjectionAlgebra model_from_json(const Json &j) {
  ProjectionAlgebra m;
  m.carrier_size = int_field(j, "carrier_size");
  for (const auto &[name, coord] : field(j, "projections").items())
    m.projection[name] = coord.get<int>();
  for (const auto &entry : field(j, "constants"))
    m.constant_interp[constant_from_json(entry)] = int_field(entry, "value");
  return m;
}

Json plan_to_json(const StagePlan &p) {
  Json stages = Json::array();
  for (const auto &s : p.stages)
    stages.push_back(Json{{"t", constant_to_json(s.t)},
                          {"m_n", s.m_n},
                          {"k_n", s.k_n},
                          {"symbol", symbol_to_json(s.symbol)},
                          {"equation", equation_to_json(s.equation)}});
  return Json{{"schema_version", kSchemaVersion}, {"stages", std::move(stages)}};
}

StagePlan plan_from_json(const Json &j) {
  check_schema(j);
  StagePlan p;
  for (const auto &entry : field(j, "stages")) {
    Stage s;
    s.t = constant_from_json(field(entry, "t"));
    s.m_n = int_field(entry, "m_n");
    s.k_n = int_field(entry, "k_n");
    s.symbol = symbol_from_json(field(entry, "symbol"));
    s.equation = equation_from_json(field(entry, "equation"));
    p.stages.push_back(std::move(s));
  }
  return p;
}

Json presentation_to_json(const ModelFamily &family, const std::vector<TupleElement> &gens) {
  Json models = Json::array();
  for (const auto &m : family.models)
    models.push_back(model_to_json(m));
  Json generators = Json::array();
  for (const auto &g : gens)
    generators.push_back(g);
  return Json{{"schema_version", kSchemaVersion},
              {"models", std::move(models)},
              {"generators", std::move(generators)}};
}

void presentation_from_json(const Json &j, ModelFamily &family,
                            std::vector<TupleElement> &gens) {
  check_schema(j);
  family = ModelFamily{};
  gens.clear();
  std::map<std::string, int> max_coord;
  for (const auto &entry : field(j, "models")) {
    ProjectionAlgebra m = model_from_json(entry);
    for (const auto &[name, coord] : m.projection)
      max_coord[name] = std::max(max_coord[name], coord);
    family.models.push_back(std::move(m));
  }
  for (const auto &[name, coord] : max_coord)
    family.vocab.add({name, coord + 1});
  for (const auto &g : field(j, "generators"))
    gens.push_back(g.get<TupleElement>());
  for (const auto &g : gens)
    family.check_tuple(g);
}

Json set_family_to_json(const SetFamily &f) {
  Json sets = Json::object();
  for (const auto &[index, s] : f.sets)
    sets[std::to_string(index)] = int_array(s);
  return Json{{"schema_version", kSchemaVersion},
              {"universe", int_array(f.universe)},
              {"sets", std::move(sets)}};
}

SetFamily set_family_from_json(const Json &j) {
  check_schema(j);
  SetFamily f;
  f.universe = int_set(field(j, "universe"), "universe");
  for (const auto &[key, value] : field(j, "sets").items()) {
    int index = 0;
    try {
      index = std::stoi(key);
    } catch (const std::exception &) {
      fail("set index \"" + key + "\" is not an integer");
    }
    if (f.sets.count(index))
      fail("duplicate set index " + key);
    f.sets[index] = int_set(value, "set");
  }
  f.check();
  return f;
}

namespace {

Json tree_node_to_json(const TreeSystem &t, const std::vector<int> &eta) {
  const TreeNode &node = t.nodes.at(eta);
  Json children = Json::object();
  for (int beta : node.e) {
    std::vector<int> child = eta;
    child.push_back(beta);
    if (t.nodes.count(child))
      children[std::to_string(beta)] = tree_node_to_json(t, child);
  }
  return Json{{"lambda", node.lambda},
              {"e", int_array(node.e)},
              {"b", int_array(node.b)},
              {"children", std::move(children)}};
}

void tree_node_from_json(const Json &j, TreeSystem &t, std::vector<int> &eta) {
  TreeNode node;
  node.lambda = int_field(j, "lambda");
  node.e = int_set(field(j, "e"), "e");
  node.b = int_set(field(j, "b"), "b");
  t.nodes[eta] = std::move(node);
  for (const auto &[key, value] : field(j, "children").items()) {
    int beta = 0;
    try {
      beta = std::stoi(key);
    } catch (const std::exception &) {
      fail("child index \"" + key + "\" is not an integer");
    }
    eta.push_back(beta);
    tree_node_from_json(value, t, eta);
    eta.pop_back();
  }
}

} // namespace

Json tree_system_to_json(const TreeSystem &t) {
  Json out{{"schema_version", kSchemaVersion}, {"height", t.height}};
  if (t.nodes.count({}))
    out["root"] = tree_node_to_json(t, {});
  else
    out["root"] = nullptr;
  return out;
}

TreeSystem tree_system_from_json(const Json &j) {
  check_schema(j);
  TreeSystem t;
  t.height = int_field(j, "height");
  const Json &root = field(j, "root");
  if (!root.is_null()) {
    std::vector<int> eta;
    tree_node_from_json(root, t, eta);
  }
  return t;
}

Json violations_to_json(const std::vector<Violation> &v) {
  Json out = Json::array();
  for (const auto &entry : v)
    out.push_back(
        Json{{"node", entry.node}, {"clause", entry.clause}, {"detail", entry.detail}});
  return out;
}

Json transversal_result_to_json(const TransversalResult &r) {
  Json out{{"schema_version", kSchemaVersion}, {"free", r.found()}};
  if (r.found()) {
    Json assignment = Json::object();
    for (const auto &[index, atom] : r.transversal->assignment)
      assignment[std::to_string(index)] = atom;
    out["transversal"] = std::move(assignment);
    out["violator"] = nullptr;
  } else {
    out["transversal"] = nullptr;
    out["violator"] = r.violator;
  }
  return out;
}

Json cp_report_to_json(const CPReport &r) {
  Json checks = Json::array();
  for (const auto &e : r.entries)
    checks.push_back(Json{{"name", e.name}, {"ok", e.ok}, {"detail", e.detail}});
  return Json{{"schema_version", kSchemaVersion},
              {"checks", std::move(checks)},
              {"ok", r.all_ok()}};
}

Json cp1_report_to_json(const Cp1Report &r) {
  Json clause1 = Json::array();
  for (const auto &c : r.clause1)
    clause1.push_back(Json{{"J", c.j_set},
                           {"verdict", c.is_factor ? "IsFactor" : "NotFactor"},
                           {"witness_size", c.witness_size}});
  Json clause2 = Json::array();
  for (const auto &o : r.clause2)
    clause2.push_back(Json{{"m", o.m},
                           {"member", o.member},
                           {"witness_coordinate", o.witness_coordinate},
                           {"witness_model", o.witness_model},
                           {"confirmed", o.witness_is_collapse_m}});
  return Json{{"schema_version", kSchemaVersion},
              {"n_stages", r.n_stages},
              {"m_max", r.m_max},
              {"j_size_max", r.j_size_max},
              {"pad", r.pad},
              {"family", r.family},
              {"part_a_family", r.part_a_family},
              {"clause1", std::move(clause1)},
              {"clause2", std::move(clause2)},
              {"insufficiencies", r.insufficiencies},
              {"ok", r.ok()}};
}

} // namespace varietas
