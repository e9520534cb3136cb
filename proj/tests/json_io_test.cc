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

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing.h"

namespace allocsv {
namespace {

using ::testing::HasSubstr;

std::string ErrorOf(const std::string& text) {
  try {
    ScenarioFromJsonText(text, "test.json");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(ScenarioJsonTest, LoadsFixture) {
  const Scenario s = testing::Fixture("example1.json");
  EXPECT_EQ(s.capacity, 1);
  ASSERT_EQ(s.num_agents(), 3);
  ASSERT_EQ(s.num_goods(), 4);
  EXPECT_EQ(s.agents[0].id, "a1");
  EXPECT_EQ(s.agents[0].interest, (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(s.goods[3].value, 0.5);
}

TEST(ScenarioJsonTest, RoundTrip) {
  const Scenario s = testing::Fixture("example2.json");
  const Scenario t = ScenarioFromJson(ScenarioToJson(s));
  EXPECT_EQ(ScenarioToJson(s), ScenarioToJson(t));
}

TEST(ScenarioJsonTest, DuplicateInterestIsMerged) {
  const Scenario s = ScenarioFromJsonText(
      R"({"k":1,"goods":[{"id":"g","value":1}],
          "agents":[{"id":"a","interest":["g","g"]}]})");
  EXPECT_EQ(s.agents[0].interest, std::vector<int>{0});
}

TEST(ScenarioJsonTest, SyntaxErrorsCarryLineAndColumn) {
  const std::string msg = ErrorOf("{\n \"k\": 1,\n \"goods\": [,]\n}");
  EXPECT_THAT(msg, HasSubstr("test.json"));
  EXPECT_THAT(msg, HasSubstr("line 3"));
}

TEST(ScenarioJsonTest, SemanticErrorsNameThePath) {
  EXPECT_THAT(ErrorOf(R"({"k":0,"goods":[],"agents":[]})"), HasSubstr("$.k"));
  EXPECT_THAT(ErrorOf(R"({"k":1,"goods":[{"id":"g","value":-1}],"agents":[]})"),
              HasSubstr("$.goods[0].value"));
  EXPECT_THAT(
      ErrorOf(R"({"k":1,"goods":[],"agents":[{"id":"a","interest":["x"]}]})"),
      HasSubstr("unknown good 'x'"));
  EXPECT_THAT(ErrorOf(R"({"k":1,"goods":[{"id":"g","value":1},{"id":"g","value":2}],"agents":[]})"),
              HasSubstr("duplicate good id"));
  EXPECT_THAT(ErrorOf(R"({"k":1,"goods":[],"agents":[{"id":"a","interest":[]},{"id":"a","interest":[]}]})"),
              HasSubstr("duplicate agent id"));
  EXPECT_THAT(ErrorOf(R"({"goods":[],"agents":[]})"), HasSubstr("\"k\""));
}

TEST(ScenarioJsonTest, MissingFile) {
  EXPECT_THROW(LoadScenario("/nonexistent/scenario.json"), Error);
}

}  // namespace
}  // namespace allocsv
