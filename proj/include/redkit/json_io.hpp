#pragma once

#include <json.hpp>

#include "redkit/agree.hpp"
#include "redkit/csp.hpp"
#include "redkit/dsn.hpp"
#include "redkit/formula.hpp"
#include "redkit/reduction.hpp"
#include "redkit/redblue.hpp"
#include "redkit/setsys.hpp"

// Versioned JSON serialization with stable field order (ordered_json, no
// floating point fields); re-serializing a loaded object is bit-identical.
namespace redkit {

using Json = nlohmann::ordered_json;

Json to_json(const CnfFormula& f);
CnfFormula formula_from_json(const Json& j);

Json to_json(const Assignment& a);
Assignment assignment_from_json(const Json& j);

Json to_json(const SetSystem& s);
SetSystem setsystem_from_json(const Json& j);

Json to_json(const WellBehavedCert& c);

Json to_json(const Csp2Instance& inst);
Csp2Instance csp_from_json(const Json& j);

Json labeling_to_json(const Labeling& lab);
Labeling labeling_from_json(const Json& j);

Json to_json(const RedBlueGraph& g);
RedBlueGraph redblue_from_json(const Json& j);

Json to_json(const FunctionFamily& f);
FunctionFamily family_from_json(const Json& j);

Json to_json(const DsnInstance& d);
DsnInstance dsn_from_json(const Json& j);

Json to_json(const DsnSolution& s);

Json to_json(const ReductionParams& p);
ReductionParams params_from_json(const Json& j);

Json to_json(const ReductionArtifact& a);
ReductionArtifact artifact_from_json(const Json& j);

Json to_json(const DecodeAssignmentReport& r);
Json to_json(const DecodeResult& r);
Json to_json(const TranslationReport& r);

std::string bits_to_string(const Bitset& b);
Bitset bits_from_string(const std::string& s);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace redkit
