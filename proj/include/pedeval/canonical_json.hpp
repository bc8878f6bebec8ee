// Copyright 2026 The PedEval Authors. All Rights Reserved.
//
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

#ifndef PEDEVAL_CANONICAL_JSON_HPP_
#define PEDEVAL_CANONICAL_JSON_HPP_

#include <string>

#include <json.hpp>

namespace pedeval {

// Serializes JSON with sorted keys, two-space indent, and every
// floating-point number formatted with exactly six decimals. Every file
// this tool writes goes through here so outputs are byte-stable.
std::string dump_canonical(const nlohmann::json& value);

// Single-line form of the same encoding (no trailing newline), for JSONL
// records.
std::string dump_canonical_line(const nlohmann::json& value);

// Writer-side rounding: value as it will be read back from a canonical
// file (six decimals, half away from zero like printf).
double round6(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pedeval

#endif  // PEDEVAL_CANONICAL_JSON_HPP_
