#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "varietas/selftest.hpp"

using namespace varietas;

namespace {

int log_level() {
  const char *env = std::getenv("VARIETAS_LOG");
  return env ? std::atoi(env) : 0;
}

void log_line(const std::string &msg) {
  if (log_level() > 0)
    std::cerr << "[varietas] " << msg << "\n";
}

struct Output {
  std::string path;   // empty = stdout
  std::string format; // "json" or "text"

  void emit(const Json &doc, const std::string &text) const {
    const std::string &payload = format == "text" ? text : dump_canonical(doc);
    if (path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(path, std::ios::binary);
      if (!out)
        throw Error("cannot open output file " + path);
      out << payload;
    }
  }
};

Json read_json(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open input file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

std::string render_checks(const CPReport &r) {
  std::ostringstream out;
  for (const auto &e : r.entries) {
    out << (e.ok ? "PASS" : "FAIL") << " " << e.name;
    if (!e.detail.empty())
      out << " (" << e.detail << ")";
    out << "\n";
  }
  return out.str();
}

int cmd_plan(int stages, const Output &out) {
  StagePlan plan = build_stage_plan(stages);
  std::ostringstream text;
  for (const auto &s : plan.stages)
    text << s.equation.lhs.str() << " = " << s.equation.rhs.str() << "\n";
  out.emit(plan_to_json(plan), text.str());
  return 0;
}

StagePlan load_plan(const std::string &in_path, int stages) {
  if (!in_path.empty())
    return plan_from_json(read_json(in_path));
  log_line("building stage plan, N=" + std::to_string(stages));
  return build_stage_plan(stages);
}

int cmd_model(const StagePlan &plan, bool generic, int m, const Output &out) {
  ProjectionAlgebra model =
      generic ? build_generic_model(plan) : build_collapse_model(plan, m);
  CPReport report = verify_K0_truncation(model, plan);
  Json doc{{"schema_version", kSchemaVersion},
           {"model", model_to_json(model)},
           {"report", cp_report_to_json(report)}};
  std::ostringstream text;
  text << "carrier_size " << model.carrier_size << "\n" << render_checks(report);
  out.emit(doc, text.str());
  return report.all_ok() ? 0 : 1;
}

int cmd_cp1_report(const StagePlan &plan, int m_max, int j_max, int pad, const Output &out) {
  Cp1Report report = cp1_finite_witness(plan, m_max, j_max, pad);
  std::ostringstream text;
  for (const auto &c : report.clause1) {
    text << "clause1 J={";
    for (size_t i = 0; i < c.j_set.size(); ++i)
      text << (i ? "," : "") << c.j_set[i];
    text << "} " << (c.is_factor ? "IsFactor" : "NotFactor") << "\n";
  }
  for (const auto &o : report.clause2)
    text << "clause2 m=" << o.m << " member=" << (o.member ? "true" : "false")
         << " witness=" << o.witness_model << (o.witness_is_collapse_m ? " confirmed" : "")
         << "\n";
  text << (report.ok() ? "OK" : "FAILED") << "\n";
  out.emit(cp1_report_to_json(report), text.str());
  return report.ok() ? 0 : 1;
}

int cmd_closure(const std::string &in_path, const Output &out) {
  ModelFamily family;
  std::vector<TupleElement> gens;
  presentation_from_json(read_json(in_path), family, gens);
  auto closure = subalgebra_closure(family, gens);
  Json elements = Json::array();
  for (const auto &t : closure)
    elements.push_back(t);
  Json doc{{"schema_version", kSchemaVersion},
           {"count", closure.size()},
           {"elements", std::move(elements)}};
  std::ostringstream text;
  text << closure.size() << " elements\n";
  out.emit(doc, text.str());
  return 0;
}

int cmd_membership(const std::string &in_path, const std::string &tuple_csv,
                   const Output &out) {
  ModelFamily family;
  std::vector<TupleElement> gens;
  presentation_from_json(read_json(in_path), family, gens);
  TupleElement a;
  std::stringstream csv(tuple_csv);
  for (std::string part; std::getline(csv, part, ',');)
    a.push_back(std::stoi(part));
  family.check_tuple(a);
  bool member = membership_closure(family, gens, a);
  Json doc{{"schema_version", kSchemaVersion}, {"tuple", a}, {"member", member}};
  out.emit(doc, std::string(member ? "member" : "not a member") + "\n");
  return 0;
}

int cmd_free_factor(const std::string &in_path, int h_count, const Output &out) {
  ModelFamily family;
  std::vector<TupleElement> gens;
  presentation_from_json(read_json(in_path), family, gens);
  if (h_count < 0 || h_count > static_cast<int>(gens.size()))
    throw Error("--h-count must select a prefix of the generators");
  std::vector<TupleElement> h_gens(gens.begin(), gens.begin() + h_count);
  FactorVerdict verdict = free_factor_search(family, h_gens, gens);
  Json witness = Json::array();
  for (const auto &t : verdict.witness)
    witness.push_back(t);
  Json doc{{"schema_version", kSchemaVersion},
           {"verdict", verdict.is_factor ? "IsFactor" : "NotFactor"},
           {"witness", std::move(witness)},
           {"truncation", Json{{"factors", family.size()}, {"h_count", h_count},
                               {"l_count", gens.size()}}}};
  out.emit(doc, std::string(verdict.is_factor ? "IsFactor" : "NotFactor") + "\n");
  return 0;
}

int cmd_transversal(const std::string &in_path, bool almost_free, const Output &out) {
  SetFamily family = set_family_from_json(read_json(in_path));
  TransversalResult r = find_transversal(family);
  Json doc = transversal_result_to_json(r);
  std::ostringstream text;
  text << (r.found() ? "free" : "not free") << "\n";
  if (almost_free) {
    bool almost = is_almost_free(family);
    doc["almost_free"] = almost;
    text << (almost ? "almost free" : "not almost free") << "\n";
  }
  out.emit(doc, text.str());
  return r.found() ? 0 : 1;
}

int cmd_tree_validate(const std::string &in_path, const Output &out) {
  TreeSystem system = tree_system_from_json(read_json(in_path));
  auto violations = validate_tree_system(system);
  Json doc{{"schema_version", kSchemaVersion},
           {"violations", violations_to_json(violations)},
           {"ok", violations.empty()}};
  std::ostringstream text;
  for (const auto &v : violations)
    text << v.node << " " << v.clause << ": " << v.detail << "\n";
  text << (violations.empty() ? "OK" : "FAILED") << "\n";
  out.emit(doc, text.str());
  return violations.empty() ? 0 : 1;
}

int cmd_selftest(std::uint64_t seed, const Output &out) {
  log_line("running selftest, seed=" + std::to_string(seed));
  SelftestReport report = run_selftest(seed);
  std::ostringstream text;
  for (const auto &s : report.suites) {
    text << s.name << ": " << s.passed << " passed, " << s.failed << " failed\n";
    for (const auto &f : s.failures)
      text << "  - " << f << "\n";
  }
  text << (report.ok() ? "OK" : "FAILED") << "\n";
  out.emit(selftest_report_to_json(report), text.str());
  return report.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"workbench for projection-algebra varieties and set transversals"};
  app.require_subcommand(1);

  int stages = 20;
  int m = 0;
  bool generic = false;
  int m_max = 5;
  int j_max = 2;
  int pad = 0;
  std::uint64_t seed = 0;
  int h_count = 0;
  bool almost_free = false;
  std::string in_path;
  std::string tuple_csv;
  Output out{"", "json"};

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--format", out.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", out.path, "output file (default stdout)");
  };

  auto *plan_cmd = app.add_subcommand("plan", "emit a stage plan");
  plan_cmd->add_option("--stages", stages, "number of stages");
  add_common(plan_cmd);

  auto *model_cmd = app.add_subcommand("model", "build and verify a family member");
  model_cmd->add_option("--stages", stages, "number of stages");
  model_cmd->add_option("--in", in_path, "plan file (overrides --stages)");
  auto *m_opt = model_cmd->add_option("--m", m, "collapse target");
  model_cmd->add_flag("--generic", generic, "build the generic member");
  m_opt->excludes("--generic");
  add_common(model_cmd);

  auto *cp1_cmd = app.add_subcommand("cp1-report", "finite witness report");
  cp1_cmd->add_option("--stages", stages, "number of stages");
  cp1_cmd->add_option("--in", in_path, "plan file (overrides --stages)");
  cp1_cmd->add_option("--m", m_max, "largest collapse target");
  cp1_cmd->add_option("--j-max", j_max, "largest |J| for clause (1)");
  cp1_cmd->add_option("--pad", pad, "extra carrier padding");
  add_common(cp1_cmd);

  auto *closure_cmd = app.add_subcommand("closure", "subalgebra closure of a presentation");
  closure_cmd->add_option("--in", in_path, "presentation file")->required();
  add_common(closure_cmd);

  auto *member_cmd = app.add_subcommand("membership", "closure membership of a tuple");
  member_cmd->add_option("--in", in_path, "presentation file")->required();
  member_cmd->add_option("--tuple", tuple_csv, "comma-separated tuple")->required();
  add_common(member_cmd);

  auto *factor_cmd = app.add_subcommand("free-factor", "free-factor search");
  factor_cmd->add_option("--in", in_path, "presentation file")->required();
  factor_cmd->add_option("--h-count", h_count, "prefix length generating H")->required();
  add_common(factor_cmd);

  auto *trans_cmd = app.add_subcommand("transversal", "freeness of a set family");
  trans_cmd->add_option("--in", in_path, "family file")->required();
  trans_cmd->add_flag("--almost-free", almost_free, "also decide almost-freeness");
  add_common(trans_cmd);

  auto *tree_cmd = app.add_subcommand("tree-validate", "validate a tree system");
  tree_cmd->add_option("--in", in_path, "tree system file")->required();
  add_common(tree_cmd);

  auto *selftest_cmd = app.add_subcommand("selftest", "run the property suites");
  selftest_cmd->add_option("--seed", seed, "suite seed");
  add_common(selftest_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan_cmd->parsed())
      return cmd_plan(stages, out);
    if (model_cmd->parsed())
      return cmd_model(load_plan(in_path, stages), generic, m, out);
    if (cp1_cmd->parsed())
      return cmd_cp1_report(load_plan(in_path, stages), m_max, j_max, pad, out);
    if (closure_cmd->parsed())
      return cmd_closure(in_path, out);
    if (member_cmd->parsed())
      return cmd_membership(in_path, tuple_csv, out);
    if (factor_cmd->parsed())
      return cmd_free_factor(in_path, h_count, out);
    if (trans_cmd->parsed())
      return cmd_transversal(in_path, almost_free, out);
    if (tree_cmd->parsed())
      return cmd_tree_validate(in_path, out);
    if (selftest_cmd->parsed())
      return cmd_selftest(seed, out);
  } catch (const std::exception &e) {
    // machine-parseable output even on failure
    Json doc{{"schema_version", kSchemaVersion}, {"error", e.what()}};
    out.emit(doc, std::string("error: ") + e.what() + "\n");
    return 2;
  }
  return 2;
}
