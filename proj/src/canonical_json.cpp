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

#include "pedeval/canonical_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pedeval/errors.hpp"

namespace pedeval {
namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw IoFailure("cannot serialize non-finite number");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") {
    s = "0.000000";
  }
  return s;
}

bool is_scalar_array(const nlohmann::json& a) {
  for (const auto& e : a) {
    if (e.is_object() || e.is_array()) {
      return false;
    }
  }
  return true;
}

void dump_impl(const nlohmann::json& v, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        dump_impl(it.value(), depth + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars render inline; anything nested gets one
      // element per line.
      if (is_scalar_array(v)) {
        out += "[";
        bool first = true;
        for (const auto& e : v) {
          if (!first) out += ", ";
          first = false;
          dump_impl(e, depth, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_impl(e, depth + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

void dump_line_impl(const nlohmann::json& v, std::string& out) {
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      out += "{";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ", ";
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        dump_line_impl(it.value(), out);
      }
      out += "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      out += "[";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ", ";
        first = false;
        dump_line_impl(e, out);
      }
      out += "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_canonical(const nlohmann::json& value) {
  std::string out;
  dump_impl(value, 0, out);
  out += "\n";
  return out;
}

std::string dump_canonical_line(const nlohmann::json& value) {
  std::string out;
  dump_line_impl(value, out);
  return out;
}

double round6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return std::strtod(buf, nullptr);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoFailure("cannot open file for reading: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoFailure("read failed: " + path);
  }
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoFailure("cannot open file for writing: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoFailure("write failed: " + path);
  }
}

}  // namespace pedeval
