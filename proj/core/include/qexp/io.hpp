#pragma once

// JSON and CSV forms of functions, certificates and reports.
//
// Rationals travel as "num/den" strings (integers are also accepted on
// input). Subsets travel as 1-based variable index lists, so the term
// x1 (1 - x3) is {"S": [1, 3], "b": [0, 1], "alpha": "1"}.

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

#include "qexp/func_core.hpp"
#include "qexp/grover_search.hpp"
#include "qexp/nnl_degree.hpp"
#include "qexp/polytope_factors.hpp"
#include "qexp/sim_expect.hpp"
#include "qexp/solver_core.hpp"
#include "qexp/sos_degree.hpp"

namespace qexp {

using Json = nlohmann::json;

/// Malformed input text; the CLI maps this to its input-error exit code.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// {"n", "repr": "truth_table" | "symmetric" | "monomials", "data"}.
PointFunction function_from_json(const Json& j);
PointFunction load_function(const std::string& path);
Json function_to_json(const PointFunction& f);

Json subset_to_json(Subset s, int n);
Subset subset_from_json(const Json& j, int n);

Json to_json(const NonnegLiteralRep& rep);
NonnegLiteralRep literal_rep_from_json(const Json& j);
Json to_json(const FarkasCertificate& cert);
FarkasCertificate farkas_from_json(const Json& j);
Json to_json(const NnlDegreeResult& r);

Json to_json(const SosDecomposition& dec);
SosDecomposition decomposition_from_json(const Json& j);
Json to_json(const SosWitness& w);
SosWitness sos_witness_from_json(const Json& j);
Json to_json(const Undetermined& u);
Json to_json(const SosDegreeResult& r);
Json to_json(const LasserreValue& v);
Json to_json(const LowerBoundReport& r);

Json to_json(const SamplerAlgorithm& s);
Json to_json(const QuantumExpAlgorithm& alg);
Json to_json(const ExpectationReport& r, std::uint64_t seed);
Json to_json(const MonteCarloResult& r);

Json to_json(const TailoredSearchPlan& plan);
Json to_json(const BudgetReport& r);

Json to_json(const PsdFactorization& fac);
Json to_json(const NonnegFactorization& fac);
Json to_json(const SlackMatrixDescriptor& d, bool with_entries);
Json to_json(const MatchingApproxReport& r);

/// First line "# " + {"rows": [...], "cols": [...]}, then one CSV row per matrix row.
std::string matrix_to_csv(const NonnegMatrix& m);
NonnegMatrix matrix_from_csv(const std::string& text);

}  // namespace qexp
