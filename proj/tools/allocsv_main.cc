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

// Command-line front end. Every subcommand reads and writes the canonical
// JSON formats; see `allocsv --help`.

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "allocsv/agents_graph.h"
#include "allocsv/bounds.h"
#include "allocsv/exact.h"
#include "allocsv/game.h"
#include "allocsv/generator.h"
#include "allocsv/json_io.h"
#include "allocsv/matching.h"
#include "allocsv/parallel.h"
#include "allocsv/preprocess.h"
#include "allocsv/report.h"
#include "allocsv/sampling.h"
#include "allocsv/solve.h"

namespace allocsv {
namespace {

using nlohmann::json;

void Emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    WriteFile(out, text);
  }
}

void EmitJson(const std::string& out, const json& j) {
  Emit(out, j.dump(1) + "\n");
}

std::shared_ptr<Game> MakeGame(const Scenario& scenario) {
  GameOptions opts;
  opts.cache = std::make_shared<CharacteristicCache>();
  return std::make_shared<Game>(scenario, opts);
}

// Agent ids (comma separated or repeated) to indices.
std::vector<int> AgentIndices(const Scenario& s,
                              const std::vector<std::string>& ids) {
  std::map<std::string, int> index;
  for (int i = 0; i < s.num_agents(); ++i) index[s.agents[i].id] = i;
  std::vector<int> out;
  for (const std::string& id : ids) {
    auto it = index.find(id);
    if (it == index.end()) throw Error("unknown agent '" + id + "'");
    out.push_back(it->second);
  }
  return out;
}

struct Common {
  std::string scenario;
  std::string out;
  int threads = 0;
};

void AddCommon(CLI::App* cmd, Common& c, bool with_threads = true) {
  cmd->add_option("scenario", c.scenario, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", c.out, "Output file (default stdout)");
  if (with_threads) {
    cmd->add_option("-t,--threads", c.threads,
                    "Worker threads (default: ALLOCSV_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);
  }
}

int Run(int argc, char** argv) {
  CLI::App app{"Shapley values for allocation games"};
  app.require_subcommand(1);

  // preprocess
  Common pre;
  bool no_prune = false;
  auto* cmd_pre = app.add_subcommand(
      "preprocess", "Simplify a scenario and report the resulting funnel");
  AddCommon(cmd_pre, pre);
  cmd_pre->add_flag("--no-prune", no_prune, "Skip useless-good pruning");

  // components
  Common comp;
  auto* cmd_comp = app.add_subcommand(
      "components", "Connected components of the agents graph");
  AddCommon(cmd_comp, comp, false);

  // opt
  Common opt;
  std::vector<std::string> opt_agents;
  auto* cmd_opt = app.add_subcommand(
      "opt", "Optimal allocation of a coalition (default: all agents)");
  AddCommon(cmd_opt, opt, false);
  cmd_opt->add_option("-a,--agents", opt_agents, "Coalition members")
      ->delimiter(',');

  // exact
  Common ex;
  int ex_limit = 26;
  bool ex_kahan = false;
  auto* cmd_ex = app.add_subcommand("exact", "Exact Shapley values");
  AddCommon(cmd_ex, ex);
  cmd_ex->add_option("--limit", ex_limit, "Largest accepted agent count")
      ->capture_default_str();
  cmd_ex->add_flag("--kahan", ex_kahan, "Compensated merge of partial sums");

  // bounds
  Common bd;
  std::vector<std::string> bd_agents;
  int bd_max_neigh = 19;
  std::string bd_side = "both";
  auto* cmd_bd = app.add_subcommand("bounds", "Lower and upper bounds");
  AddCommon(cmd_bd, bd);
  cmd_bd->add_option("-a,--agents", bd_agents, "Agents to bound")
      ->delimiter(',');
  cmd_bd->add_option("--max-neigh", bd_max_neigh,
                     "Neighbor count above which the trivial interval is used")
      ->capture_default_str();
  cmd_bd->add_option("--side", bd_side, "Which bound to compute")
      ->check(CLI::IsMember({"lower", "upper", "both"}))
      ->capture_default_str();

  // fpras
  Common fp;
  FprasOptions fo;
  bool fp_no_shortcut = false;
  auto* cmd_fp = app.add_subcommand("fpras", "Permutation sampler");
  AddCommon(cmd_fp, fp);
  cmd_fp->add_option("-e,--epsilon", fo.epsilon)->capture_default_str();
  cmd_fp->add_option("-d,--delta", fo.delta)->capture_default_str();
  cmd_fp->add_option("--runs", fo.runs)->capture_default_str();
  cmd_fp->add_option("--seed", fo.seed)->capture_default_str();
  cmd_fp->add_flag("--no-shortcut", fp_no_shortcut,
                   "Always solve the matching, even for isolated steps");

  // range-sample
  Common rs;
  RangeOptions ro;
  std::string rs_mode = "abs";
  std::string rs_lb_file;
  auto* cmd_rs = app.add_subcommand("range-sample", "Per-agent range sampler");
  AddCommon(cmd_rs, rs);
  cmd_rs->add_option("-e,--epsilon", ro.epsilon)->capture_default_str();
  cmd_rs->add_option("-d,--delta", ro.delta)->capture_default_str();
  cmd_rs->add_option("--mode", rs_mode, "Absolute or relative error")
      ->check(CLI::IsMember({"abs", "rel"}))
      ->capture_default_str();
  cmd_rs->add_option("--lb-file", rs_lb_file,
                     "Report whose lb (or value) fields give lower bounds")
      ->check(CLI::ExistingFile);
  cmd_rs->add_option("--batch", ro.batch, "Samples per job")
      ->capture_default_str();
  cmd_rs->add_option("--seed", ro.seed)->capture_default_str();

  // solve
  Common sv;
  SolvePolicy policy;
  std::string sv_sampler = "range";
  std::string sv_mode = "abs";
  std::string sv_csv;
  bool sv_no_prune = false;
  auto* cmd_sv = app.add_subcommand(
      "solve", "Preprocess and route each component to a solver");
  AddCommon(cmd_sv, sv);
  cmd_sv->add_option("--exact-limit", policy.exact_limit)
      ->capture_default_str();
  cmd_sv->add_option("--max-neigh", policy.bounds_max_neigh)
      ->capture_default_str();
  cmd_sv->add_option("--sampler", sv_sampler)
      ->check(CLI::IsMember({"fpras", "range"}))
      ->capture_default_str();
  cmd_sv->add_option("--mode", sv_mode, "Range sampler error mode")
      ->check(CLI::IsMember({"abs", "rel"}))
      ->capture_default_str();
  cmd_sv->add_option("-e,--epsilon", policy.epsilon)->capture_default_str();
  cmd_sv->add_option("-d,--delta", policy.delta)->capture_default_str();
  cmd_sv->add_option("--runs", policy.runs)->capture_default_str();
  cmd_sv->add_option("--seed", policy.seed)->capture_default_str();
  cmd_sv->add_option("--csv", sv_csv, "Also write plot data as CSV");
  cmd_sv->add_flag("--no-prune", sv_no_prune, "Skip useless-good pruning");

  // compare
  std::string cmp_a, cmp_b, cmp_out;
  double cmp_threshold = -1.0;
  auto* cmd_cmp = app.add_subcommand(
      "compare", "Relative errors of a report against a reference report");
  cmd_cmp->add_option("candidate", cmp_a)->required()->check(CLI::ExistingFile);
  cmd_cmp->add_option("reference", cmp_b)->required()->check(CLI::ExistingFile);
  cmd_cmp->add_option("--threshold", cmp_threshold,
                      "Exit with status 1 when the max error exceeds this");
  cmd_cmp->add_option("-o,--out", cmp_out, "Output file (default stdout)");

  // generate
  GeneratorParams gp;
  std::string gen_out;
  auto* cmd_gen = app.add_subcommand("generate", "Synthetic scenario");
  cmd_gen->add_option("-n,--agents", gp.agents)->capture_default_str();
  cmd_gen->add_option("--goods-per-agent", gp.goods_per_agent)
      ->capture_default_str();
  cmd_gen->add_option("--coauthor-prob", gp.coauthor_prob)
      ->capture_default_str();
  cmd_gen->add_option("--max-authors", gp.max_authors)->capture_default_str();
  cmd_gen->add_option("--group-size", gp.group_size)->capture_default_str();
  cmd_gen->add_option("--locality", gp.locality)->capture_default_str();
  cmd_gen->add_option("--activity-skew", gp.activity_skew)
      ->capture_default_str();
  cmd_gen->add_option("--values", gp.values)->delimiter(',');
  cmd_gen->add_option("--value-weights", gp.value_weights)->delimiter(',');
  cmd_gen->add_option("-k,--capacity", gp.capacity)->capture_default_str();
  cmd_gen->add_option("--seed", gp.seed)->capture_default_str();
  cmd_gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // extract
  Common exr;
  int exr_size = 0;
  uint64_t exr_seed = 0;
  std::string exr_mode = "uniform";
  auto* cmd_exr = app.add_subcommand("extract", "Random agent subsample");
  AddCommon(cmd_exr, exr, false);
  cmd_exr->add_option("--size", exr_size)->required();
  cmd_exr->add_option("--seed", exr_seed)->capture_default_str();
  cmd_exr->add_option("--mode", exr_mode)
      ->check(CLI::IsMember({"uniform", "connected"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; usage errors exit 2.
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*cmd_pre) {
    const Scenario s = LoadScenario(pre.scenario);
    PreprocessOptions po;
    po.prune = !no_prune;
    po.workers = pre.threads;
    EmitJson(pre.out, PreprocessReportToJson(s, RunPipeline(s, po)));
  } else if (*cmd_comp) {
    const Scenario s = LoadScenario(comp.scenario);
    const AgentsGraph graph(s);
    json list = json::array();
    for (const std::vector<int>& members : graph.ComponentLists()) {
      json ids = json::array();
      for (int i : members) ids.push_back(s.agents[i].id);
      list.push_back(std::move(ids));
    }
    EmitJson(comp.out, {{"agents", s.num_agents()},
                        {"edges", graph.NumEdges()},
                        {"components", std::move(list)}});
  } else if (*cmd_opt) {
    const Scenario s = LoadScenario(opt.scenario);
    Coalition c = s.GrandCoalition();
    if (!opt_agents.empty()) {
      c = Coalition::Of(s.num_agents(), AgentIndices(s, opt_agents));
    }
    const MatchingResult r = OptimalAllocation(s, c);
    json alloc = json::object();
    for (int i = 0; i < s.num_agents(); ++i) {
      if (!c.Contains(i)) continue;
      json held = json::array();
      for (int g : r.allocation.assignment[i]) held.push_back(s.goods[g].id);
      alloc[s.agents[i].id] = std::move(held);
    }
    EmitJson(opt.out, {{"value", r.value}, {"allocation", std::move(alloc)}});
  } else if (*cmd_ex) {
    const Scenario s = LoadScenario(ex.scenario);
    auto game = MakeGame(s);
    ExactOptions eo;
    eo.workers = ex.threads;
    eo.limit = ex_limit;
    eo.kahan = ex_kahan;
    EmitJson(ex.out, ReportToJson(ExactShapleyReport(*game, eo)));
  } else if (*cmd_bd) {
    const Scenario s = LoadScenario(bd.scenario);
    auto game = MakeGame(s);
    BoundsOptions bo;
    bo.agents = AgentIndices(s, bd_agents);
    bo.max_neigh = bd_max_neigh;
    bo.side = bd_side == "lower"   ? BoundSide::kLower
              : bd_side == "upper" ? BoundSide::kUpper
                                   : BoundSide::kBoth;
    bo.workers = bd.threads;
    ShapleyReport report = BoundsReport(*game, ComputeBounds(*game, bo));
    report.meta["side"] = bd_side;
    report.meta["max_neigh"] = bd_max_neigh;
    EmitJson(bd.out, ReportToJson(report));
  } else if (*cmd_fp) {
    const Scenario s = LoadScenario(fp.scenario);
    auto game = MakeGame(s);
    fo.workers = fp.threads;
    fo.shortcut = !fp_no_shortcut;
    const SamplingResult r = FprasShapley(*game, fo);
    ShapleyReport report =
        SamplingReport(*game, r, "fpras", fo.epsilon, fo.delta);
    report.meta["seed"] = fo.seed;
    report.meta["runs"] = fo.runs;
    report.meta["m"] = FprasSampleCount(s.num_agents(), fo.epsilon, fo.delta);
    EmitJson(fp.out, ReportToJson(report));
  } else if (*cmd_rs) {
    const Scenario s = LoadScenario(rs.scenario);
    auto game = MakeGame(s);
    ro.workers = rs.threads;
    ro.mode = rs_mode == "rel" ? ErrorMode::kRelative : ErrorMode::kAbsolute;
    if (!rs_lb_file.empty()) {
      const ShapleyReport lbs = LoadReport(rs_lb_file);
      for (const Agent& a : s.agents) {
        const AgentRecord* rec = lbs.Find(a.id);
        if (rec == nullptr || !(rec->lb || rec->value)) {
          throw Error(rs_lb_file + ": no lower bound for agent '" + a.id +
                      "'");
        }
        ro.lower_bounds.push_back(rec->lb ? *rec->lb : *rec->value);
      }
    }
    const SamplingResult r = RangeSamplerShapley(*game, ro);
    ShapleyReport report =
        SamplingReport(*game, r, "range", ro.epsilon, ro.delta);
    report.meta["seed"] = ro.seed;
    report.meta["mode"] = rs_mode;
    EmitJson(rs.out, ReportToJson(report));
  } else if (*cmd_sv) {
    const Scenario s = LoadScenario(sv.scenario);
    policy.sampler =
        sv_sampler == "fpras" ? SamplerKind::kFpras : SamplerKind::kRange;
    policy.range_mode =
        sv_mode == "rel" ? ErrorMode::kRelative : ErrorMode::kAbsolute;
    policy.threads = sv.threads;
    policy.prune = !sv_no_prune;
    const ShapleyReport report = Solve(s, policy);
    EmitJson(sv.out, ReportToJson(report));
    if (!sv_csv.empty()) WriteFile(sv_csv, ReportToCsv(report));
  } else if (*cmd_cmp) {
    const Comparison c = CompareReports(LoadReport(cmp_a), LoadReport(cmp_b));
    json agents = json::array();
    for (const AgentError& e : c.agents) {
      agents.push_back({{"id", e.agent},
                        {"reference", e.reference},
                        {"candidate", e.candidate},
                        {"relative_error", e.relative_error}});
    }
    EmitJson(cmp_out, {{"max_error", c.max_error},
                       {"mean_error", c.mean_error},
                       {"agents", std::move(agents)}});
    if (cmp_threshold >= 0.0 && c.max_error > cmp_threshold) return 1;
  } else if (*cmd_gen) {
    Emit(gen_out, ScenarioToJson(Generate(gp)).dump(1) + "\n");
  } else if (*cmd_exr) {
    const Scenario s = LoadScenario(exr.scenario);
    const ExtractMode mode = exr_mode == "connected" ? ExtractMode::kConnected
                                                     : ExtractMode::kUniform;
    Emit(exr.out,
         ScenarioToJson(ExtractSubgraph(s, exr_size, exr_seed, mode)).dump(1) +
             "\n");
  }
  return 0;
}

}  // namespace
}  // namespace allocsv

int main(int argc, char** argv) {
  try {
    return allocsv::Run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "allocsv: error: %s\n", e.what());
    return 2;
  }
}
