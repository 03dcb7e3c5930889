#pragma once

// JSON serialization for states, channels, and result records, plus file
// loading with validation errors that name the offending field.
//
// Schemas (entries and amplitudes are [re, im] pairs, matrices row-major):
//   matrix   {"dim": n, "entries": [[re, im], ...]}        square
//            {"rows": r, "cols": c, "entries": [...]}      rectangular
//   vector   {"dim": n, "amplitudes": [[re, im], ...]}
//   channel  {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]}
//
// Serialization uses the shortest round-trip representation for doubles, so
// dump -> parse -> dump is byte-stable.

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "channels.hpp"
#include "extremal.hpp"
#include "fidelity.hpp"
#include "numerics.hpp"
#include "states.hpp"

namespace entfid {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& require_field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw ValidationError(name, std::string("missing field '") + name + "'");
  return j.at(name);
}

inline int require_int(const Json& j, const char* name) {
  const Json& f = require_field(j, name);
  if (!f.is_number_integer() || f.get<long long>() < 0)
    throw ValidationError(name, std::string("field '") + name + "' must be a nonnegative integer");
  return f.get<int>();
}

inline Complex complex_from_json(const Json& j, const char* field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(field, std::string("field '") + field +
                                     "' must hold [re, im] pairs of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

}  // namespace detail

inline Json matrix_to_json(const Matrix& m) {
  Json j;
  if (m.rows() == m.cols()) {
    j["dim"] = m.rows();
  } else {
    j["rows"] = m.rows();
    j["cols"] = m.cols();
  }
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(detail::complex_to_json(m(r, c)));
  j["entries"] = std::move(entries);
  return j;
}

inline Matrix matrix_from_json(const Json& j) {
  Eigen::Index rows = 0, cols = 0;
  if (j.is_object() && j.contains("dim")) {
    rows = cols = detail::require_int(j, "dim");
  } else {
    rows = detail::require_int(j, "rows");
    cols = detail::require_int(j, "cols");
  }
  if (rows < 1 || cols < 1) throw ValidationError("dim", "matrix dimensions must be positive");
  const Json& entries = detail::require_field(j, "entries");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols)
    throw ValidationError("entries", "expected " + std::to_string(rows * cols) +
                                         " entries, got " + std::to_string(entries.size()));
  Matrix m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = detail::complex_from_json(entries[k++], "entries");
  return m;
}

inline Json pure_state_to_json(const PureState& psi) {
  Json j;
  j["dim"] = psi.dim();
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i)
    amps.push_back(detail::complex_to_json(psi.amplitudes()(i)));
  j["amplitudes"] = std::move(amps);
  return j;
}

inline PureState pure_state_from_json(const Json& j) {
  const int dim = detail::require_int(j, "dim");
  const Json& amps = detail::require_field(j, "amplitudes");
  if (!amps.is_array() || static_cast<int>(amps.size()) != dim)
    throw ValidationError("amplitudes", "expected " + std::to_string(dim) +
                                            " amplitudes, got " + std::to_string(amps.size()));
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = detail::complex_from_json(amps[i], "amplitudes");
  return PureState(std::move(v));
}

inline Json density_to_json(const DensityOperator& rho) { return matrix_to_json(rho.matrix()); }

inline DensityOperator density_from_json(const Json& j) {
  return DensityOperator(matrix_from_json(j));
}

inline Json channel_to_json(const QuantumChannel& e) {
  Json j;
  j["dim_in"] = e.dim_in();
  j["dim_out"] = e.dim_out();
  Json kraus = Json::array();
  for (const Matrix& a : e.kraus()) kraus.push_back(matrix_to_json(a));
  j["kraus"] = std::move(kraus);
  return j;
}

inline QuantumChannel channel_from_json(const Json& j) {
  const int dim_in = detail::require_int(j, "dim_in");
  const int dim_out = detail::require_int(j, "dim_out");
  const Json& kraus_json = detail::require_field(j, "kraus");
  if (!kraus_json.is_array() || kraus_json.empty())
    throw ValidationError("kraus", "field 'kraus' must be a nonempty array of matrices");
  std::vector<Matrix> kraus;
  kraus.reserve(kraus_json.size());
  for (const Json& jk : kraus_json) {
    Matrix a = matrix_from_json(jk);
    if (a.rows() != dim_out || a.cols() != dim_in)
      throw ValidationError("kraus", "Kraus operator shape " + std::to_string(a.rows()) + "x" +
                                         std::to_string(a.cols()) + " does not match dim_out=" +
                                         std::to_string(dim_out) + ", dim_in=" +
                                         std::to_string(dim_in));
    kraus.push_back(std::move(a));
  }
  return QuantumChannel(std::move(kraus));
}

inline Json report_to_json(const FidelityReport& report) {
  Json j;
  j["fidelity"] = report.fidelity;
  j["fe_purification"] = report.fe_purification;
  j["fe_kraus"] = report.fe_kraus;
  j["fe_delta"] = report.fe_delta;
  Json rows = Json::array();
  for (const InequalityCheck& c : report.inequalities) {
    Json row;
    row["name"] = c.name;
    row["lhs"] = c.lhs;
    row["rhs"] = c.rhs;
    row["pass"] = c.pass;
    rows.push_back(std::move(row));
  }
  j["inequalities"] = std::move(rows);
  return j;
}

inline Json search_result_to_json(const SearchResult& result) {
  Json j;
  j["min_value"] = result.min_value;
  j["evaluations"] = result.evaluations;
  j["converged"] = result.converged;
  j["restart_values"] = result.restart_values;
  if (result.extension) {
    Json ext;
    ext["joint"] = matrix_to_json(result.extension->joint.matrix());
    ext["dims"] = result.extension->shape.dims;
    j["extension"] = std::move(ext);
  }
  if (result.aux_channel) j["aux_channel"] = channel_to_json(*result.aux_channel);
  if (result.argmin_state) j["argmin_state"] = pure_state_to_json(*result.argmin_state);
  return j;
}

inline Json overlap_report_to_json(const OverlapReport& report) {
  Json j;
  j["closed_form"] = report.closed_form;
  j["best_sampled"] = report.best_sampled;
  j["best_refined"] = report.best_refined;
  j["max_excess"] = report.max_excess;
  j["gap"] = report.gap;
  j["samples"] = report.samples;
  j["pass"] = report.pass;
  return j;
}

inline Json kl_report_to_json(const KnillLaflammeReport& report) {
  Json j;
  j["epsilon_hat"] = report.epsilon_hat;
  j["bound"] = report.bound;
  j["slack"] = report.slack;
  j["min_fe"] = report.min_fe;
  j["refinement_gap"] = report.refinement_gap;
  j["states"] = report.states;
  j["violations"] = report.violations;
  j["pass"] = report.pass;
  return j;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("file", "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("file", "cannot parse '" + path + "': " + e.what());
  }
}

// A state file holds either a pure state ("amplitudes") or a density
// operator ("entries"); both load as a density operator.
inline DensityOperator load_density(const std::string& path) {
  const Json j = load_json_file(path);
  if (j.is_object() && j.contains("amplitudes")) return density_from_pure(pure_state_from_json(j));
  return density_from_json(j);
}

inline QuantumChannel load_channel(const std::string& path) {
  return channel_from_json(load_json_file(path));
}

// Fixed-width significand used by every CSV surface: 12 significant digits.
inline std::string num12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace entfid
