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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "threbase/core/errors.hpp"
#include "threbase/sk/gateset.hpp"
#include "threbase/sk/net.hpp"

namespace threbase::io {

inline constexpr int kNetCacheVersion = 1;

/**
 * Serializes a net as
 * {version, gateset, fingerprint, max_len, dedupe_tol, entries[{seq[], matrix}]}
 * with matrices as row-major [re, im] pairs. Output is deterministic.
 */
inline std::string emit_net(const sk::Net& net) {
  nlohmann::ordered_json doc;
  doc["version"] = kNetCacheVersion;
  doc["gateset"] = net.gateset().name();
  doc["fingerprint"] = net.gateset().fingerprint();
  doc["max_len"] = net.max_length();
  doc["dedupe_tol"] = net.dedupe_tol();
  auto& entries = doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : net.entries()) {
    nlohmann::ordered_json m = nlohmann::ordered_json::array();
    for (cplx z : e.matrix.entries()) m.push_back({z.real() + 0.0, z.imag() + 0.0});
    entries.push_back({{"seq", net.gateset().labels(e.seq)}, {"matrix", std::move(m)}});
  }
  return doc.dump() + "\n";
}

/// Loads a cached net, rejecting unknown gate sets, stale fingerprints and
/// entry lists that break the net invariants.
inline sk::Net parse_net(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed net cache: ") + e.what());
  }
  try {
    if (doc.at("version").get<int>() != kNetCacheVersion) throw FormatError("unsupported net cache version");
    sk::GateSet gs = sk::builtin_gateset(doc.at("gateset").get<std::string>());
    if (doc.at("fingerprint").get<std::string>() != gs.fingerprint()) {
      throw FormatError("net cache fingerprint mismatch for gate set '" + gs.name() + "'");
    }
    const auto max_len = doc.at("max_len").get<std::size_t>();
    const auto tol = doc.at("dedupe_tol").get<double>();
    std::vector<sk::NetEntry> entries;
    const auto& arr = doc.at("entries");
    entries.reserve(arr.size());
    for (const auto& e : arr) {
      sk::NetEntry entry;
      for (const auto& label : e.at("seq")) {
        const auto idx = gs.index_of(label.get<std::string>());
        if (!idx) throw FormatError("net cache: unknown generator label '" + label.get<std::string>() + "'");
        entry.seq.push_back(*idx);
      }
      const auto& m = e.at("matrix");
      std::vector<cplx> values;
      values.reserve(m.size());
      for (const auto& z : m) values.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
      if (values.size() != gs.dim() * gs.dim()) throw FormatError("net cache: matrix has the wrong size");
      entry.matrix = CMatrix(gs.dim(), std::move(values));
      entries.push_back(std::move(entry));
    }
    return sk::Net::from_entries(std::move(gs), max_len, tol, std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("net cache: ") + e.what());
  } catch (const ValidationError& e) {
    throw FormatError(std::string("net cache: ") + e.what());
  }
}

}  // namespace threbase::io
