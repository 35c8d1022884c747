#pragma once

// JSON and CSV encodings of the library's value types.
//
//   PL function   {"knots": [...], "re": [...], "im": [...], "periodic": true}
//   spectrum      {"kmax": K, "re": [...], "im": [...]}   (index k + K)
//   system        {"a": [...], "delta": [...], "w": [...]}
//   homeomorphism {"t": [...], "s": [...]}
//
// "im" may be omitted for real functions; "periodic" defaults to true.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sobolab/construction.hpp"
#include "sobolab/experiments.hpp"
#include "sobolab/fourier.hpp"
#include "sobolab/homeo.hpp"
#include "sobolab/seminorm.hpp"
#include "sobolab/stieltjes.hpp"

namespace sobolab {

using nlohmann::json;

json to_json(const PiecewiseLinear& f);
PiecewiseLinear pl_from_json(const json& j);

json to_json(const SpectrumCoeffs& c);
SpectrumCoeffs spectrum_from_json(const json& j);

json to_json(const TriangleSystem& sys);
TriangleSystem system_from_json(const json& j);

json to_json(const Homeomorphism& h);
Homeomorphism homeo_from_json(const json& j);

json to_json(const DeltaSequence& d);
json to_json(const SeminormReport& r);
json to_json(const StieltjesReport& r);
json to_json(const DualityReport& r);
json to_json(const LacunaryReport& r);
json to_json(const SuiteResult& r);
json to_json(const VerifyReport& r);
json to_json(const ObstructionRecord& r);

/// k, w_k, contribution, bound_term; k is 1-based.
std::string stieltjes_csv(const StieltjesReport& r);
/// J, K, sup_lower_bound, certified_bound, min_product, evals, violations.
std::string obstruction_csv(const std::vector<ObstructionRecord>& records);

/// Reads a whole file; throws std::runtime_error naming the path on failure.
std::string read_text_file(const std::string& path);
json read_json_file(const std::string& path);
/// Writes (truncating); throws std::runtime_error naming the path on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sobolab
