// Copyright 2026 The robust_fluid Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small helpers shared by the JSON readers. Internal to the library.

#ifndef ROBUST_FLUID_SRC_JSON_UTIL_H_
#define ROBUST_FLUID_SRC_JSON_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "robust_fluid/errors.h"
#include "io_util.h"

namespace robust_fluid::internal {

using Json = nlohmann::json;

inline Json ParseJsonText(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string(what) + ": malformed JSON: " + e.what());
  }
}

inline const Json& RequireField(const Json& obj, const char* field,
                                std::string_view what) {
  if (!obj.is_object()) {
    throw ValidationError(std::string(what) + ": expected a JSON object");
  }
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw ValidationError(std::string(what) + ": missing field '" + field + "'");
  }
  return *it;
}

inline double AsNumber(const Json& v, const std::string& field,
                       std::string_view what) {
  if (!v.is_number()) {
    throw ValidationError(std::string(what) + ": field '" + field +
                          "' must be a number");
  }
  return v.get<double>();
}

inline long long AsInteger(const Json& v, const std::string& field,
                           std::string_view what) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw ValidationError(std::string(what) + ": field '" + field +
                          "' must be an integer");
  }
  return v.get<long long>();
}

inline std::vector<double> AsNumberArray(const Json& v, const std::string& field,
                                         std::string_view what) {
  if (!v.is_array()) {
    throw ValidationError(std::string(what) + ": field '" + field +
                          "' must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& e : v) out.push_back(AsNumber(e, field, what));
  return out;
}

inline Eigen::MatrixXd AsMatrix(const Json& v, const std::string& field,
                                std::string_view what) {
  if (!v.is_array()) {
    throw ValidationError(std::string(what) + ": field '" + field +
                          "' must be an array of rows");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(v.size());
  Eigen::Index cols = 0;
  if (rows > 0) {
    if (!v[0].is_array()) {
      throw ValidationError(std::string(what) + ": field '" + field +
                            "' must be an array of rows");
    }
    cols = static_cast<Eigen::Index>(v[0].size());
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = v[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError(std::string(what) + ": field '" + field +
                            "' has ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = AsNumber(row[static_cast<std::size_t>(c)], field, what);
    }
  }
  return m;
}

inline Json MatrixToJson(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace robust_fluid::internal

#endif  // ROBUST_FLUID_SRC_JSON_UTIL_H_
