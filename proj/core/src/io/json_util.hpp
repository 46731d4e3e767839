#pragma once

#include "cvxset/io/json_format.hpp"
#include "cvxset/linalg.hpp"

#include <json.hpp>

#include <cmath>
#include <string>

namespace cvxset::io::detail {

using nlohmann::json;

inline json to_json(const VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline json to_json(const MatrixXd& M) {
  json a = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    a.push_back(std::move(row));
  }
  return a;
}

inline double to_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw FormatError(what + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw FormatError(what + ": non-finite number");
  return x;
}

inline VectorXd to_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw FormatError(what + ": expected an array of numbers");
  VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = to_number(j[i], what);
  return v;
}

/// `cols` fixes the column count of an empty matrix ([]).
inline MatrixXd to_matrix(const json& j, const std::string& what, int cols = 0) {
  if (!j.is_array()) throw FormatError(what + ": expected a 2-D array");
  if (j.empty()) return MatrixXd(0, cols);
  if (!j[0].is_array()) throw FormatError(what + ": expected a 2-D array");
  const std::size_t n = j[0].size();
  MatrixXd M(j.size(), n);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw FormatError(what + ": rows differ in length");
    for (std::size_t k = 0; k < n; ++k) M(i, k) = to_number(j[i][k], what);
  }
  return M;
}

inline const json& field(const json& j, const char* key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(ctx + ": missing field '" + key + "'");
  return *it;
}

json set_to_json(const AnySet& set, const std::string& name = "");
AnySet set_from_json(const json& j, const Tolerance& tol);

/// Indented text with arrays of scalars kept on one line and the header keys
/// (format_version, type, name, dim) first. Ends with a newline.
std::string pretty(const json& j);

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace cvxset::io::detail
