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

#include "io_util.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "robust_fluid/errors.h"

namespace robust_fluid::internal {

std::string ReadTextFile(const std::string& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError(std::string(what) + ": cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, const std::string& content,
                   std::string_view what) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ValidationError(std::string(what) + ": cannot write '" + path + "'");
  }
  out << content;
  out.flush();
  if (!out) {
    throw ValidationError(std::string(what) + ": write failed for '" + path +
                          "'");
  }
}

namespace {

std::string Format(double v, const char* fmt) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

std::string FormatExact(double v) {
  // Try shorter precisions first so simple values stay readable.
  for (int prec : {15, 16, 17}) {
    char fmt[8];
    std::snprintf(fmt, sizeof(fmt), "%%.%dg", prec);
    std::string s = Format(v, fmt);
    if (std::isfinite(v) && std::strtod(s.c_str(), nullptr) != v) continue;
    return s;
  }
  return Format(v, "%.17g");
}

std::string FormatReport(double v) { return Format(v, "%.12g"); }

}  // namespace robust_fluid::internal
