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

#ifndef ROBUST_FLUID_SRC_IO_UTIL_H_
#define ROBUST_FLUID_SRC_IO_UTIL_H_

#include <string>
#include <string_view>

namespace robust_fluid::internal {

std::string ReadTextFile(const std::string& path, std::string_view what);
void WriteTextFile(const std::string& path, const std::string& content,
                   std::string_view what);

// Shortest "%.17g" rendering; parses back to the identical double.
std::string FormatExact(double v);
// "%.12g", for CSV reports meant to be read by people and plotting scripts.
std::string FormatReport(double v);

}  // namespace robust_fluid::internal

#endif  // ROBUST_FLUID_SRC_IO_UTIL_H_
