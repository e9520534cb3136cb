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

#include "allocsv/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "allocsv/scenario.h"

namespace allocsv {

using nlohmann::json;

std::string_view RecordKindName(RecordKind kind) {
  switch (kind) {
    case RecordKind::kExact:
      return "exact";
    case RecordKind::kInterval:
      return "interval";
    case RecordKind::kEstimate:
      return "estimate";
  }
  return "exact";
}

RecordKind ParseRecordKind(std::string_view name) {
  if (name == "exact") return RecordKind::kExact;
  if (name == "interval") return RecordKind::kInterval;
  if (name == "estimate") return RecordKind::kEstimate;
  throw Error("unknown record kind '" + std::string(name) + "'");
}

double AgentRecord::Point() const {
  if (value) return *value;
  if (lb && ub) return 0.5 * (*lb + *ub);
  if (lb) return *lb;
  if (ub) return *ub;
  return 0.0;
}

const AgentRecord* ShapleyReport::Find(std::string_view agent) const {
  for (const AgentRecord& r : records) {
    if (r.agent == agent) return &r;
  }
  return nullptr;
}

double ShapleyReport::Sum() const {
  double total = 0.0;
  for (const AgentRecord& r : records) total += r.Point();
  return total;
}

json ReportToJson(const ShapleyReport& report) {
  json agents = json::array();
  for (const AgentRecord& r : report.records) {
    json a = {{"id", r.agent},
              {"kind", RecordKindName(r.kind)},
              {"method", r.method}};
    if (r.value) a["value"] = *r.value;
    if (r.lb) a["lb"] = *r.lb;
    if (r.ub) a["ub"] = *r.ub;
    if (r.fallback) a["fallback"] = true;
    if (r.epsilon) a["epsilon"] = *r.epsilon;
    if (r.delta) a["delta"] = *r.delta;
    a["samples"] = r.samples;
    a["wall_seconds"] = r.wall_seconds;
    agents.push_back(std::move(a));
  }
  return json{{"meta", report.meta}, {"agents", std::move(agents)}};
}

ShapleyReport ReportFromJson(const json& j) {
  if (!j.is_object() || !j.contains("agents") || !j["agents"].is_array()) {
    throw Error("report: expected an object with an \"agents\" array");
  }
  ShapleyReport report;
  if (j.contains("meta")) report.meta = j["meta"];
  for (size_t k = 0; k < j["agents"].size(); ++k) {
    const json& a = j["agents"][k];
    try {
      AgentRecord r;
      r.agent = a.at("id").get<std::string>();
      r.kind = ParseRecordKind(a.value("kind", "exact"));
      r.method = a.value("method", "");
      if (a.contains("value")) r.value = a["value"].get<double>();
      if (a.contains("lb")) r.lb = a["lb"].get<double>();
      if (a.contains("ub")) r.ub = a["ub"].get<double>();
      r.fallback = a.value("fallback", false);
      if (a.contains("epsilon")) r.epsilon = a["epsilon"].get<double>();
      if (a.contains("delta")) r.delta = a["delta"].get<double>();
      r.samples = a.value("samples", uint64_t{0});
      r.wall_seconds = a.value("wall_seconds", 0.0);
      report.records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw Error("report: agents[" + std::to_string(k) + "]: " + e.what());
    }
  }
  return report;
}

Comparison CompareReports(const ShapleyReport& candidate,
                          const ShapleyReport& reference) {
  std::unordered_map<std::string, const AgentRecord*> ref;
  for (const AgentRecord& r : reference.records) ref[r.agent] = &r;
  if (ref.size() != candidate.records.size()) {
    throw Error("compare: reports cover different agent sets (" +
                std::to_string(candidate.records.size()) + " vs " +
                std::to_string(ref.size()) + " agents)");
  }
  Comparison out;
  double total = 0.0;
  for (const AgentRecord& c : candidate.records) {
    auto it = ref.find(c.agent);
    if (it == ref.end()) {
      throw Error("compare: agent '" + c.agent +
                  "' missing from the reference report");
    }
    AgentError e;
    e.agent = c.agent;
    e.reference = it->second->Point();
    e.candidate = c.Point();
    const double diff = std::abs(e.candidate - e.reference);
    e.relative_error = e.reference == 0.0 ? diff : diff / std::abs(e.reference);
    out.max_error = std::max(out.max_error, e.relative_error);
    total += e.relative_error;
    out.agents.push_back(std::move(e));
  }
  if (!out.agents.empty()) out.mean_error = total / out.agents.size();
  return out;
}

namespace {

std::string Num(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", *v);
  return buf;
}

}  // namespace

std::string ReportToCsv(const ShapleyReport& report) {
  std::ostringstream out;
  out << "agent,kind,method,value,lb,ub\n";
  for (const AgentRecord& r : report.records) {
    out << r.agent << ',' << RecordKindName(r.kind) << ',' << r.method << ','
        << Num(r.value) << ',' << Num(r.lb) << ',' << Num(r.ub) << '\n';
  }
  return out.str();
}

}  // namespace allocsv
