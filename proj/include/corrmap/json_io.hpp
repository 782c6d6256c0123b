#pragma once

#include <string>

#include <json.hpp>

#include "corrmap/analysis.hpp"
#include "corrmap/channels.hpp"
#include "corrmap/complex_matrix.hpp"
#include "corrmap/states.hpp"

namespace corrmap::io {

using nlohmann::json;

// Matrix encoding used repo-wide:
//   {"rows": n, "cols": m, "data": [[re, im], ...]} row-major doubles.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

// Column vectors are matrices with cols == 1.
json vector_to_json(const ComplexMatrix& v);

// Scenario document:
//   {"n":..., "d":..., "p":[...], "phi":[vector...], "w_block":{...},
//    "psi_block":{...}|null, "rho_env":[matrix...], "varrho_env":[matrix...],
//    "unitary": matrix (optional)}
json spec_to_json(const states::CorrelatedClassSpec& spec);
states::CorrelatedClassSpec spec_from_json(const json& j);

json kraus_to_json(const channels::KrausSet& ks);
json cp_report_to_json(const analysis::CpReport& report);

// Deterministic decimal form with up to 17 significant digits, lowercase
// exponent.
std::string format_double(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace corrmap::io
