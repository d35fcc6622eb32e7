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

#ifndef ROBUST_FLUID_LP_FORMAT_H_
#define ROBUST_FLUID_LP_FORMAT_H_

#include <string>
#include <string_view>

#include "robust_fluid/lp.h"

namespace robust_fluid {

// Plain-text LP format.
//
//   file    := objective row* "bounds:" bound*
//   objective := "min:" expr ";"
//   row     := [comment] name ":" expr rel number ";"
//   bound   := name "free" ";"
//            | name "=" number ";"
//            | name ">=" number ";"
//            | number "<=" name "<=" number ";"
//   expr    := "0" | term (("+" | "-") term)*
//   term    := ["-"] number name
//   rel     := "<=" | ">=" | "="
//   comment := "/*" text "*/"
//   number  := decimal or exponent literal, "inf", with optional sign
//   name    := [A-Za-z_][A-Za-z0-9_.]*
//
// The bounds section lists every column once, in column order. A comment
// directly preceding a row becomes its annotation; other comments are
// ignored. Numbers are written with enough digits to parse back exactly.
std::string LpToText(const LpProblem& problem);
LpProblem LpFromText(std::string_view text);

void ExportLp(const LpProblem& problem, const std::string& path);
LpProblem ImportLp(const std::string& path);

}  // namespace robust_fluid

#endif  // ROBUST_FLUID_LP_FORMAT_H_
