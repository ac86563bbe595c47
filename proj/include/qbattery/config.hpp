// Copyright 2026 The qbattery Authors
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

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qbattery/bath.hpp"
#include "qbattery/dynamics.hpp"
#include "qbattery/model.hpp"

namespace qbat {

/// eV fs and eV / K; used when `[run] units = physical`.
inline constexpr double kHbarEvFs = 0.6582119569;
inline constexpr double kBoltzmannEvPerK = 8.617333262e-5;

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One `key = value` line, addressed as "section.key".
struct ConfigEntry {
    std::string value;
    int line = 0;
};

/// Raw key-value document. Keys are stored as "section.key", e.g.
/// "system.delta_e" or "drive.3.kind".
struct ConfigDocument {
    std::map<std::string, ConfigEntry> entries;

    bool contains(const std::string& key) const { return entries.contains(key); }
    void set(const std::string& key, std::string value) { entries[key] = {std::move(value), 0}; }
};

/// Line-oriented INI-like text: `[section]` headers, `key = value` pairs,
/// `#` comments. Duplicate keys are rejected.
ConfigDocument parse_document(std::string_view text);

struct RunConfig {
    SystemSpec system;
    BathSpec bath;
    /// Table-column frequency with no place in the Hamiltonian; the bath is
    /// evaluated there for sweep summaries and it centres the default
    /// spectrum grid.
    double omega_eval = 0.085;
    IntegratorConfig integrator;
    InitialStateSpec initial;
    std::string units = "internal";

    /// One line per default that was filled in.
    std::vector<std::string> provenance;
    /// Unknown keys seen in non-strict mode.
    std::vector<std::string> warnings;
};

struct ParseOptions {
    bool strict = true;
};

RunConfig build_config(const ConfigDocument& doc, const ParseOptions& opts = {});

inline RunConfig parse_config(std::string_view text, const ParseOptions& opts = {}) {
    return build_config(parse_document(text), opts);
}

/// Numeric value grammar: decimal numbers, optionally suffixed with `pi`
/// (`1.0pi`, `0.7pi`, `pi`).
double parse_number(std::string_view text);

/// Keys that accept a single scalar and can therefore be swept.
bool is_scalar_key(std::string_view key);

/// Keys that must appear in every config.
const std::vector<std::string>& required_keys();

}  // namespace qbat
