#include "corrmap/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace corrmap::io {

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw std::invalid_argument("matrix JSON needs rows, cols and data");
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("matrix JSON dimensions must be >= 1");
  const auto& data = j.at("data");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("matrix JSON data length mismatch");
  ComplexMatrix m(rows, cols);
  std::size_t idx = 0;
  for (int i = 0; i < rows; ++i)
    for (int jj = 0; jj < cols; ++jj, ++idx) {
      const auto& entry = data.at(idx);
      if (!entry.is_array() || entry.size() != 2)
        throw std::invalid_argument("matrix JSON entries must be [re, im] pairs");
      m(i, jj) = cplx(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  if (!m.all_finite()) throw std::invalid_argument("matrix JSON has non-finite entries");
  return m;
}

json vector_to_json(const ComplexMatrix& v) { return matrix_to_json(v); }

namespace {

json ortho_to_json(const states::OrthogonalDecomposition& d) {
  json vectors = json::array();
  for (const auto& v : d.vectors) vectors.push_back(vector_to_json(v));
  return json{{"weights", d.weights}, {"vectors", std::move(vectors)}};
}

states::OrthogonalDecomposition ortho_from_json(const json& j) {
  states::OrthogonalDecomposition d;
  d.weights = j.at("weights").get<std::vector<double>>();
  for (const auto& v : j.at("vectors")) d.vectors.push_back(matrix_from_json(v));
  return d;
}

json nonortho_to_json(const states::NonOrthogonalDecomposition& d) {
  json vectors = json::array();
  for (const auto& v : d.vectors) vectors.push_back(vector_to_json(v));
  return json{{"weights", d.weights}, {"vectors", std::move(vectors)}};
}

states::NonOrthogonalDecomposition nonortho_from_json(const json& j) {
  states::NonOrthogonalDecomposition d;
  d.weights = j.at("weights").get<std::vector<double>>();
  for (const auto& v : j.at("vectors")) d.vectors.push_back(matrix_from_json(v));
  return d;
}

}  // namespace

json spec_to_json(const states::CorrelatedClassSpec& spec) {
  json phi = json::array();
  for (const auto& v : spec.phi) phi.push_back(vector_to_json(v));
  json rho = json::array();
  for (const auto& e : spec.rho_env) rho.push_back(matrix_to_json(e.mat()));
  json varrho = json::array();
  for (const auto& e : spec.varrho_env) varrho.push_back(matrix_to_json(e.mat()));
  json out{{"n", spec.n},
           {"d", spec.d},
           {"p", spec.p},
           {"phi", std::move(phi)},
           {"w_block", ortho_to_json(spec.w_block)},
           {"rho_env", std::move(rho)},
           {"varrho_env", std::move(varrho)}};
  if (spec.psi_block)
    out["psi_block"] = nonortho_to_json(*spec.psi_block);
  else
    out["psi_block"] = nullptr;
  return out;
}

states::CorrelatedClassSpec spec_from_json(const json& j) {
  states::CorrelatedClassSpec spec;
  try {
    spec.n = j.at("n").get<int>();
    spec.d = j.at("d").get<int>();
    spec.p = j.at("p").get<std::vector<double>>();
    for (const auto& v : j.at("phi")) spec.phi.push_back(matrix_from_json(v));
    spec.w_block = ortho_from_json(j.at("w_block"));
    if (j.contains("psi_block") && !j.at("psi_block").is_null())
      spec.psi_block = nonortho_from_json(j.at("psi_block"));
    for (const auto& v : j.at("rho_env"))
      spec.rho_env.emplace_back(matrix_from_json(v));
    if (j.contains("varrho_env"))
      for (const auto& v : j.at("varrho_env"))
        spec.varrho_env.emplace_back(matrix_from_json(v));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed scenario JSON: ") + e.what());
  }
  spec.validate();
  return spec;
}

json kraus_to_json(const channels::KrausSet& ks) {
  json ops = json::array();
  for (const auto& op : ks.operators) ops.push_back(matrix_to_json(op));
  return json{{"label", channels::to_string(ks.label)},
              {"time_tag", ks.time_tag},
              {"operators", std::move(ops)}};
}

json cp_report_to_json(const analysis::CpReport& report) {
  return json{{"min_choi_eig", report.min_choi_eig},
              {"tp_defect", report.tp_defect},
              {"is_cp", report.is_cp},
              {"tol", report.tol}};
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace corrmap::io
