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

#include "allocsv/json_io.h"

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace allocsv {

using nlohmann::json;

namespace {

// 1-based line and column of byte offset `pos`.
std::string Position(std::string_view text, size_t pos) {
  int line = 1;
  size_t line_start = 0;
  for (size_t k = 0; k < pos && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      line_start = k + 1;
    }
  }
  return "line " + std::to_string(line) + ", column " +
         std::to_string(pos - line_start + 1);
}

const json& Field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw Error(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(path + ": missing field \"" + key + "\"");
  }
  return *it;
}

std::string String(const json& v, const std::string& path) {
  if (!v.is_string()) throw Error(path + ": expected a string");
  return v.get<std::string>();
}

}  // namespace

Scenario ScenarioFromJson(const json& j) {
  Scenario s;
  const json& k = Field(j, "k", "$");
  if (!k.is_number_integer() || k.get<int64_t>() < 1) {
    throw Error("$.k: capacity must be a positive integer");
  }
  s.capacity = k.get<int>();

  const json& goods = Field(j, "goods", "$");
  if (!goods.is_array()) throw Error("$.goods: expected an array");
  std::unordered_map<std::string, int> good_index;
  for (size_t g = 0; g < goods.size(); ++g) {
    const std::string path = "$.goods[" + std::to_string(g) + "]";
    Good good;
    good.id = String(Field(goods[g], "id", path), path + ".id");
    const json& value = Field(goods[g], "value", path);
    if (!value.is_number()) throw Error(path + ".value: expected a number");
    good.value = value.get<double>();
    if (!(good.value >= 0.0)) {
      throw Error(path + ".value: must be non-negative");
    }
    if (!good_index.emplace(good.id, static_cast<int>(g)).second) {
      throw Error(path + ".id: duplicate good id '" + good.id + "'");
    }
    s.goods.push_back(std::move(good));
  }

  const json& agents = Field(j, "agents", "$");
  if (!agents.is_array()) throw Error("$.agents: expected an array");
  std::unordered_map<std::string, int> agent_index;
  for (size_t a = 0; a < agents.size(); ++a) {
    const std::string path = "$.agents[" + std::to_string(a) + "]";
    Agent agent;
    agent.id = String(Field(agents[a], "id", path), path + ".id");
    if (!agent_index.emplace(agent.id, static_cast<int>(a)).second) {
      throw Error(path + ".id: duplicate agent id '" + agent.id + "'");
    }
    const json& interest = Field(agents[a], "interest", path);
    if (!interest.is_array()) {
      throw Error(path + ".interest: expected an array");
    }
    for (size_t q = 0; q < interest.size(); ++q) {
      const std::string ipath =
          path + ".interest[" + std::to_string(q) + "]";
      const std::string id = String(interest[q], ipath);
      auto it = good_index.find(id);
      if (it == good_index.end()) {
        throw Error(ipath + ": unknown good '" + id + "'");
      }
      agent.interest.push_back(it->second);
    }
    s.agents.push_back(std::move(agent));
  }
  NormalizeInterest(s);
  s.Validate();
  return s;
}

Scenario ScenarioFromJsonText(std::string_view text, std::string_view source) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(std::string(source) + ": " + Position(text, e.byte > 0 ? e.byte - 1 : 0) +
                ": " + e.what());
  }
  try {
    return ScenarioFromJson(j);
  } catch (const Error& e) {
    throw Error(std::string(source) + ": " + e.what());
  }
}

json ScenarioToJson(const Scenario& s) {
  json goods = json::array();
  for (const Good& g : s.goods) {
    goods.push_back({{"id", g.id}, {"value", g.value}});
  }
  json agents = json::array();
  for (const Agent& a : s.agents) {
    json interest = json::array();
    for (int g : a.interest) interest.push_back(s.goods[g].id);
    agents.push_back({{"id", a.id}, {"interest", std::move(interest)}});
  }
  return json{{"k", s.capacity},
              {"goods", std::move(goods)},
              {"agents", std::move(agents)}};
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error("failed writing '" + path + "'");
}

Scenario LoadScenario(const std::string& path) {
  return ScenarioFromJsonText(ReadFile(path), path);
}

void SaveScenario(const Scenario& scenario, const std::string& path) {
  WriteFile(path, ScenarioToJson(scenario).dump(1) + "\n");
}

ShapleyReport LoadReport(const std::string& path) {
  const std::string text = ReadFile(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(path + ": " + Position(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  try {
    return ReportFromJson(j);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

void SaveReport(const ShapleyReport& report, const std::string& path) {
  WriteFile(path, ReportToJson(report).dump(1) + "\n");
}

}  // namespace allocsv
