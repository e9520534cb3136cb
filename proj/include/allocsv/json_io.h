// Copyright 2026 The allocsv Authors
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

#ifndef ALLOCSV_JSON_IO_H_
#define ALLOCSV_JSON_IO_H_

#include <string>
#include <string_view>

#include "allocsv/report.h"
#include "allocsv/scenario.h"
#include "json.hpp"

namespace allocsv {

// Scenario format:
//   {"k": 2,
//    "goods": [{"id": "g1", "value": 0.7}, ...],
//    "agents": [{"id": "a1", "interest": ["g1", ...]}, ...]}
// Agent order in the file is the canonical index order. Duplicate
// interest entries are merged.
//
// Syntax errors are reported with line and column; semantic errors with
// the offending JSON path. `source` names the input in messages.
Scenario ScenarioFromJsonText(std::string_view text,
                              std::string_view source = "<input>");
Scenario ScenarioFromJson(const nlohmann::json& j);
nlohmann::json ScenarioToJson(const Scenario& scenario);

Scenario LoadScenario(const std::string& path);
void SaveScenario(const Scenario& scenario, const std::string& path);

ShapleyReport LoadReport(const std::string& path);
void SaveReport(const ShapleyReport& report, const std::string& path);

// Reads a whole file; throws Error when it cannot be opened.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace allocsv

#endif  // ALLOCSV_JSON_IO_H_
