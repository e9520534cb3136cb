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

#ifndef ALLOCSV_REPORT_H_
#define ALLOCSV_REPORT_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace allocsv {

enum class RecordKind { kExact, kInterval, kEstimate };

std::string_view RecordKindName(RecordKind kind);
RecordKind ParseRecordKind(std::string_view name);

struct AgentRecord {
  std::string agent;
  RecordKind kind = RecordKind::kExact;
  // Free-form tag: "exact", "separable", "empty-interest", "bounds",
  // "bounds-fallback", "fpras", "range", ...
  std::string method;
  // Exact value or estimate; unset for pure intervals.
  std::optional<double> value;
  std::optional<double> lb;
  std::optional<double> ub;
  // Interval is the trivial [marg(i,N), opt(i)] fallback.
  bool fallback = false;
  std::optional<double> epsilon;
  std::optional<double> delta;
  uint64_t samples = 0;
  double wall_seconds = 0.0;

  // value when present, else the interval midpoint.
  double Point() const;
};

struct ShapleyReport {
  std::vector<AgentRecord> records;
  nlohmann::json meta = nlohmann::json::object();

  const AgentRecord* Find(std::string_view agent) const;
  // Sum of Point() over all records.
  double Sum() const;
};

nlohmann::json ReportToJson(const ShapleyReport& report);
ShapleyReport ReportFromJson(const nlohmann::json& j);

// Relative error of each agent of `candidate` against `reference`, as
// |a - b| / |b|; absolute when the reference is 0.
struct AgentError {
  std::string agent;
  double reference = 0.0;
  double candidate = 0.0;
  double relative_error = 0.0;
};

struct Comparison {
  std::vector<AgentError> agents;
  double max_error = 0.0;
  double mean_error = 0.0;
};

// Throws Error when the agent sets differ.
Comparison CompareReports(const ShapleyReport& candidate,
                          const ShapleyReport& reference);

// CSV rows: agent,kind,method,value,lb,ub.
std::string ReportToCsv(const ShapleyReport& report);

}  // namespace allocsv

#endif  // ALLOCSV_REPORT_H_
