#ifndef VARIETAS_JSON_IO_HPP
#define VARIETAS_JSON_IO_HPP

#include "json.hpp"
#include "varietas/cp.hpp"
#include "varietas/transversal.hpp"

namespace varietas {

/// Ordered so that emission order is fixed and documents round-trip
/// byte-identically.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::string dump_canonical(const Json &j);

Json symbol_to_json(const FunctionSymbol &f);
FunctionSymbol symbol_from_json(const Json &j);

Json constant_to_json(const ConstantName &c);
ConstantName constant_from_json(const Json &j);

Json term_to_json(const Term &t);
Term term_from_json(const Json &j);

Json equation_to_json(const Equation &e);
Equation equation_from_json(const Json &j);

Json model_to_json(const ProjectionAlgebra &m);
ProjectionAlgebra model_from_json(const Json &j);

Json plan_to_json(const StagePlan &p);
StagePlan plan_from_json(const Json &j);

/// presentation = a model family plus generator tuples; the vocabulary is
/// recovered from the projection tables (arity = largest coordinate + 1).
Json presentation_to_json(const ModelFamily &family, const std::vector<TupleElement> &gens);
void presentation_from_json(const Json &j, ModelFamily &family, std::vector<TupleElement> &gens);

Json set_family_to_json(const SetFamily &f);
SetFamily set_family_from_json(const Json &j);

Json tree_system_to_json(const TreeSystem &t);
TreeSystem tree_system_from_json(const Json &j);

Json violations_to_json(const std::vector<Violation> &v);
Json transversal_result_to_json(const TransversalResult &r);
Json cp_report_to_json(const CPReport &r);
Json cp1_report_to_json(const Cp1Report &r);

} // namespace varietas

#endif
