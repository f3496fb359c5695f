// Copyright 2026 The th-rebase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "threbase/core/circuit.hpp"
#include "threbase/core/errors.hpp"
#include "threbase/core/gates.hpp"

namespace threbase::io {

inline constexpr int kCircuitFileVersion = 1;

/// Shortest text that still carries 17 significant digits.
inline std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

struct TextPosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

/**
 * Position of the start of element `index` of the top-level "gates" array in
 * an already well-formed JSON document. Used only to decorate error messages.
 */
inline std::optional<TextPosition> locate_gate(std::string_view text, std::size_t index) {
  TextPosition pos;
  int depth = 0;
  bool in_gates = false;
  int gates_depth = -1;
  std::size_t element = 0;
  bool expect_element = false;
  std::string last_key;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '"') {
      std::string s;
      std::size_t j = i + 1;
      for (; j < text.size() && text[j] != '"'; ++j) {
        if (text[j] == '\\') ++j;
        else s.push_back(text[j]);
      }
      pos.column += j - i + 1;
      i = j;
      last_key = std::move(s);
      continue;
    }
    if (ch == '\n') {
      ++pos.line;
      pos.column = 1;
      continue;
    }
    if (in_gates && expect_element && depth == gates_depth && ch != ' ' && ch != '\t' && ch != '\r' && ch != ']') {
      if (element == index) return pos;
      expect_element = false;
    }
    if (ch == '[' || ch == '{') {
      ++depth;
      if (ch == '[' && depth == 2 && last_key == "gates" && !in_gates) {
        in_gates = true;
        gates_depth = depth;
        expect_element = true;
      }
    } else if (ch == ']' || ch == '}') {
      if (in_gates && depth == gates_depth) return std::nullopt;
      --depth;
    } else if (ch == ',' && in_gates && depth == gates_depth) {
      ++element;
      expect_element = true;
    }
    ++pos.column;
  }
  return std::nullopt;
}

inline std::string gate_where(std::string_view text, std::size_t index) {
  std::string where = "gates[" + std::to_string(index) + "]";
  if (auto p = locate_gate(text, index)) {
    where += " (line " + std::to_string(p->line) + ", column " + std::to_string(p->column) + ")";
  }
  return where;
}

inline std::size_t as_index(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw FormatError(what + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

inline double as_number(const nlohmann::json& v, const std::string& what) {
  if (!v.is_number()) throw FormatError(what + ": expected a number");
  return v.get<double>();
}

}  // namespace detail

/**
 * Parses a circuit document:
 *
 *   {"version": 1, "qubits": n, "gates": [{"name": "CS", "qubits": [0, 1]}, ...]}
 *
 * GENERIC gates additionally carry "matrix", a row-major list of [re, im]
 * pairs. Errors name the offending gate with its line and column.
 */
inline Circuit parse_circuit(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed circuit document: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("circuit document must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "version" && key != "qubits" && key != "gates") throw FormatError("unknown top-level field '" + key + "'");
  if (!doc.contains("version") || !doc.contains("qubits") || !doc.contains("gates")) {
    throw FormatError("circuit document needs version, qubits and gates");
  }
  if (!doc["version"].is_number_integer() || doc["version"].get<long long>() != kCircuitFileVersion) {
    throw FormatError("unsupported circuit file version (expected 1)");
  }
  const std::size_t n = detail::as_index(doc["qubits"], "qubits");
  const auto& gates = doc["gates"];
  if (!gates.is_array()) throw FormatError("gates: expected an array");

  Circuit c(n);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    const auto where = [&] { return detail::gate_where(text, i); };
    try {
      if (!g.is_object()) throw FormatError("expected an object");
      for (const auto& [key, _] : g.items())
        if (key != "name" && key != "qubits" && key != "matrix") throw FormatError("unknown field '" + key + "'");
      if (!g.contains("name") || !g["name"].is_string()) throw FormatError("missing string field 'name'");
      if (!g.contains("qubits") || !g["qubits"].is_array()) throw FormatError("missing array field 'qubits'");
      const std::string name = g["name"].get<std::string>();
      const auto kind = gate_kind_from_name(name);
      if (!kind) throw FormatError("unknown gate name '" + name + "'");
      std::vector<std::size_t> qubits;
      for (const auto& q : g["qubits"]) qubits.push_back(detail::as_index(q, "qubit operand"));

      if (*kind == GateKind::Generic) {
        if (!g.contains("matrix") || !g["matrix"].is_array()) throw FormatError("GENERIC gate needs a 'matrix'");
        const auto& m = g["matrix"];
        const std::size_t dim = std::size_t{1} << qubits.size();
        if (qubits.empty() || qubits.size() > kMaxGenericQubits || m.size() != dim * dim) {
          throw FormatError("matrix must hold 4^k [re, im] pairs for k = operand count in 1..3");
        }
        std::vector<cplx> entries;
        entries.reserve(m.size());
        for (const auto& z : m) {
          if (!z.is_array() || z.size() != 2) throw FormatError("matrix entries must be [re, im] pairs");
          entries.emplace_back(detail::as_number(z[0], "matrix entry"), detail::as_number(z[1], "matrix entry"));
        }
        c.append(Gate::generic(CMatrix(dim, std::move(entries)), std::move(qubits)));
      } else {
        if (g.contains("matrix")) throw FormatError("only GENERIC gates take a matrix");
        c.append(Gate(*kind, std::move(qubits)));
      }
    } catch (const FormatError& e) {
      throw FormatError(where() + ": " + e.what());
    } catch (const ValidationError& e) {
      throw FormatError(where() + ": " + e.what());
    }
  }
  return c;
}

/// Canonical text: fixed field order, one gate per line, 17-digit floats.
inline std::string emit_circuit(const Circuit& c) {
  std::string out = "{\n  \"version\": 1,\n  \"qubits\": " + std::to_string(c.n_qubits()) + ",\n  \"gates\": [";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gates()[i];
    out += i == 0 ? "\n    " : ",\n    ";
    out += "{\"name\": \"" + std::string(g.name()) + "\", \"qubits\": [";
    for (std::size_t j = 0; j < g.qubits().size(); ++j) {
      if (j) out += ", ";
      out += std::to_string(g.qubits()[j]);
    }
    out += "]";
    if (g.is_generic()) {
      out += ", \"matrix\": [";
      const CMatrix m = g.matrix();
      bool first = true;
      for (cplx z : m.entries()) {
        if (!first) out += ", ";
        first = false;
        out += "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
      }
      out += "]";
    }
    out += "}";
  }
  out += c.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace threbase::io
