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

#include "allocsv/matching.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace allocsv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Instances at or below this many cost-matrix cells go to the dense
// Hungarian method under kAuto.
constexpr size_t kDenseCellLimit = 4096;

// Distinct good values handled by the bucket ordering of the greedy solver.
constexpr size_t kMaxBuckets = 16;

// The bipartite instance for one coalition. Rows are agent slots, columns
// are the positive goods wanted by the coalition (local indices).
struct Instance {
  std::vector<int> row_agent;
  std::vector<int> col_good;
  std::vector<double> col_value;
  // Row r may take columns edges[edge_begin[r] .. edge_end[r]).
  std::vector<int> edge_begin;
  std::vector<int> edge_end;
  std::vector<int> edges;
};

struct Workspace {
  Instance inst;
  std::vector<int> good_to_col;
  // Dense Hungarian.
  std::vector<double> cost, row_pot, col_pot, min_slack;
  std::vector<int32_t> owner, way;
  std::vector<uint64_t> used;
  std::vector<int32_t> used_list;
  // Shortest paths.
  std::vector<double> dist;
  std::vector<int> pred, match_col, match_row, finalized_list;
  std::vector<char> finalized;
  std::vector<int> col_match_row;
  // Greedy augmentation.
  std::vector<int> order, queue, via_row, parent;
  std::vector<double> sorted_values;
};

Workspace& LocalWorkspace() {
  thread_local Workspace ws;
  return ws;
}

void BuildInstance(const Scenario& scenario, const Coalition& c,
                   Workspace& ws) {
  Instance& inst = ws.inst;
  inst.row_agent.clear();
  inst.col_good.clear();
  inst.col_value.clear();
  inst.edge_begin.clear();
  inst.edge_end.clear();
  inst.edges.clear();
  if (ws.good_to_col.size() < size_t(scenario.num_goods())) {
    ws.good_to_col.assign(scenario.num_goods(), -1);
  }
  // Columns in ascending good order.
  c.ForEach([&](int i) {
    for (int g : scenario.agents[i].interest) {
      if (scenario.goods[g].value > 0.0) ws.good_to_col[g] = -2;
    }
  });
  c.ForEach([&](int i) {
    for (int g : scenario.agents[i].interest) {
      if (ws.good_to_col[g] == -2) {
        ws.good_to_col[g] = -3;
        inst.col_good.push_back(g);
      }
    }
  });
  const size_t found = inst.col_good.size();
  if (found * 16 > size_t(scenario.num_goods())) {
    // A linear scan beats sorting for large coalitions.
    inst.col_good.clear();
    for (int g = 0; g < scenario.num_goods(); ++g) {
      if (ws.good_to_col[g] == -3) inst.col_good.push_back(g);
    }
  } else {
    std::sort(inst.col_good.begin(), inst.col_good.end());
  }
  for (size_t k = 0; k < inst.col_good.size(); ++k) {
    ws.good_to_col[inst.col_good[k]] = static_cast<int>(k);
    inst.col_value.push_back(scenario.goods[inst.col_good[k]].value);
  }
  c.ForEach([&](int i) {
    const size_t first_edge = inst.edges.size();
    for (int g : scenario.agents[i].interest) {
      if (ws.good_to_col[g] >= 0) inst.edges.push_back(ws.good_to_col[g]);
    }
    const int wanted = static_cast<int>(inst.edges.size() - first_edge);
    const int slots = std::min(scenario.capacity, wanted);
    if (slots == 0) return;
    // Every slot of an agent shares the same edge list.
    for (int s = 0; s < slots; ++s) {
      inst.row_agent.push_back(i);
      inst.edge_begin.push_back(static_cast<int>(first_edge));
      inst.edge_end.push_back(static_cast<int>(inst.edges.size()));
    }
  });
  for (int g : inst.col_good) ws.good_to_col[g] = -1;
}

std::pair<int, int> RowEdges(const Instance& inst, size_t r) {
  return {inst.edge_begin[r], inst.edge_end[r]};
}

// Fills match_col (row matched to each column, -1 if none).
void SolveDense(const Instance& inst, const kernels::KernelTable& kt,
                Workspace& ws, std::vector<int>& col_match_row) {
  const size_t rows = inst.row_agent.size();
  const size_t cols = inst.col_good.size();
  // Orient so the Hungarian rows are the smaller side.
  const bool transposed = rows > cols;
  const size_t n = transposed ? cols : rows;
  const size_t m = transposed ? rows : cols;

  ws.cost.assign(n * m, 0.0);
  for (size_t r = 0; r < rows; ++r) {
    const auto [b, e] = RowEdges(inst, r);
    for (int k = b; k < e; ++k) {
      const size_t col = inst.edges[k];
      const double w = -inst.col_value[col];
      if (transposed) {
        ws.cost[col * m + r] = w;
      } else {
        ws.cost[r * m + col] = w;
      }
    }
  }

  ws.row_pot.assign(n, 0.0);
  ws.col_pot.assign(m + 1, 0.0);
  ws.owner.assign(m + 1, -1);
  ws.way.assign(m + 1, 0);
  ws.min_slack.resize(m + 1);
  ws.used.resize(m + 1);
  const int32_t virt = static_cast<int32_t>(m);

  for (size_t i = 0; i < n; ++i) {
    ws.owner[virt] = static_cast<int32_t>(i);
    int32_t j0 = virt;
    std::fill(ws.min_slack.begin(), ws.min_slack.end(), kInf);
    std::fill(ws.used.begin(), ws.used.end(), 0);
    ws.used_list.clear();
    while (true) {
      ws.used[j0] = ~uint64_t{0};
      ws.used_list.push_back(j0);
      const int32_t i0 = ws.owner[j0];
      const kernels::ArgMin best =
          kt.relax_row(&ws.cost[size_t(i0) * m], ws.row_pot[i0],
                       ws.col_pot.data(), ws.min_slack.data(), ws.way.data(),
                       ws.used.data(), j0, m);
      const double delta = best.value;
      for (int32_t j : ws.used_list) ws.row_pot[ws.owner[j]] += delta;
      kt.shift(delta, ws.used.data(), ws.col_pot.data(), ws.min_slack.data(),
               m);
      j0 = best.index;
      if (ws.owner[j0] == -1) break;
    }
    while (j0 != virt) {
      const int32_t j1 = ws.way[j0];
      ws.owner[j0] = ws.owner[j1];
      j0 = j1;
    }
  }

  col_match_row.assign(cols, -1);
  for (size_t j = 0; j < m; ++j) {
    const int32_t i = ws.owner[j];
    if (i < 0) continue;
    const size_t row = transposed ? j : size_t(i);
    const size_t col = transposed ? size_t(i) : j;
    // Zero-cost cells are non-edges standing in for "left unassigned".
    if (transposed ? ws.cost[col * m + row] < 0.0
                   : ws.cost[row * m + col] < 0.0) {
      col_match_row[col] = static_cast<int>(row);
    }
  }
}

void SolveShortestPath(const Instance& inst, Workspace& ws,
                       std::vector<int>& col_match_row) {
  const int rows = static_cast<int>(inst.row_agent.size());
  const int goods = static_cast<int>(inst.col_good.size());
  // Column `goods + r` is row r's private "stay unassigned" column.
  const int cols = goods + rows;
  auto col_cost = [&](int c) { return c < goods ? -inst.col_value[c] : 0.0; };

  ws.row_pot.assign(rows, 0.0);
  ws.col_pot.assign(cols, 0.0);
  ws.match_col.assign(cols, -1);
  ws.match_row.assign(rows, -1);
  ws.dist.assign(cols, kInf);
  ws.pred.assign(cols, -1);
  ws.finalized.assign(cols, 0);

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  std::vector<int> touched;

  auto relax_row_edges = [&](int r, double base, bool clamp) {
    const auto [b, e] = RowEdges(inst, r);
    auto relax = [&](int c) {
      if (ws.finalized[c]) return;
      double rc = col_cost(c) - ws.row_pot[r] - ws.col_pot[c];
      if (clamp && rc < 0.0) rc = 0.0;
      const double nd = base + rc;
      if (nd < ws.dist[c]) {
        if (ws.dist[c] == kInf) touched.push_back(c);
        ws.dist[c] = nd;
        ws.pred[c] = r;
        heap.emplace(nd, c);
      }
    };
    for (int k = b; k < e; ++k) relax(inst.edges[k]);
    relax(goods + r);
  };

  for (int s = 0; s < rows; ++s) {
    touched.clear();
    ws.finalized_list.clear();
    relax_row_edges(s, 0.0, false);
    int target = -1;
    double target_dist = 0.0;
    while (!heap.empty()) {
      const auto [d, c] = heap.top();
      heap.pop();
      if (ws.finalized[c] || d > ws.dist[c]) continue;
      ws.finalized[c] = 1;
      ws.finalized_list.push_back(c);
      if (ws.match_col[c] == -1) {
        target = c;
        target_dist = d;
        break;
      }
      relax_row_edges(ws.match_col[c], d, true);
    }
    while (!heap.empty()) heap.pop();

    for (int c : ws.finalized_list) {
      ws.col_pot[c] -= target_dist - ws.dist[c];
    }
    for (int c = target;;) {
      const int r = ws.pred[c];
      const int prev = ws.match_row[r];
      ws.match_row[r] = c;
      ws.match_col[c] = r;
      if (r == s) break;
      c = prev;
    }
    for (int c : ws.finalized_list) {
      const int r = ws.match_col[c];
      if (r >= 0) ws.row_pot[r] = col_cost(c) - ws.col_pot[c];
    }
    for (int c : touched) {
      ws.dist[c] = kInf;
      ws.pred[c] = -1;
      ws.finalized[c] = 0;
    }
  }

  col_match_row.assign(goods, -1);
  for (int c = 0; c < goods; ++c) col_match_row[c] = ws.match_col[c];
}

// Feasible good sets form a transversal matroid, so adding goods in
// descending value order whenever an augmenting path exists is optimal.
// Each insertion is an unweighted search over alternating paths. A failed
// search leaves a tight set of columns that no later path can enter, so
// those columns are marked dead.
void SolveGreedy(const Instance& inst, Workspace& ws,
                 std::vector<int>& col_match_row) {
  const int rows = static_cast<int>(inst.row_agent.size());
  const int cols = static_cast<int>(inst.col_good.size());
  // Column -> adjacent rows, CSR.
  std::vector<int>& start = ws.pred;
  start.assign(cols + 1, 0);
  for (int r = 0; r < rows; ++r) {
    const auto [b, e] = RowEdges(inst, r);
    for (int k = b; k < e; ++k) ++start[inst.edges[k] + 1];
  }
  for (int c = 0; c < cols; ++c) start[c + 1] += start[c];
  std::vector<int>& adj = ws.finalized_list;
  adj.resize(start[cols]);
  std::vector<int>& fill = ws.match_row;
  fill.assign(start.begin(), start.end() - 1);
  for (int r = 0; r < rows; ++r) {
    const auto [b, e] = RowEdges(inst, r);
    for (int k = b; k < e; ++k) adj[fill[inst.edges[k]]++] = r;
  }

  // Columns by descending value, ties by index. Values usually come from
  // a short list, so a bucket pass replaces the comparison sort.
  std::vector<int>& order = ws.order;
  order.resize(cols);
  std::vector<double>& distinct = ws.sorted_values;
  distinct.clear();
  for (int c = 0; c < cols && distinct.size() <= kMaxBuckets; ++c) {
    if (std::find(distinct.begin(), distinct.end(), inst.col_value[c]) ==
        distinct.end()) {
      distinct.push_back(inst.col_value[c]);
    }
  }
  if (distinct.size() <= kMaxBuckets) {
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    int bucket_start[kMaxBuckets + 1] = {};
    auto bucket = [&](int c) {
      return static_cast<int>(
          std::find(distinct.begin(), distinct.end(), inst.col_value[c]) -
          distinct.begin());
    };
    std::vector<int>& col_bucket = ws.queue;
    col_bucket.resize(cols);
    for (int c = 0; c < cols; ++c) {
      col_bucket[c] = bucket(c);
      ++bucket_start[col_bucket[c] + 1];
    }
    for (size_t b = 0; b < distinct.size(); ++b) {
      bucket_start[b + 1] += bucket_start[b];
    }
    for (int c = 0; c < cols; ++c) order[bucket_start[col_bucket[c]]++] = c;
  } else {
    for (int c = 0; c < cols; ++c) order[c] = c;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double va = inst.col_value[a], vb = inst.col_value[b];
      return va > vb || (va == vb && a < b);
    });
  }

  std::vector<int>& row_col = ws.match_col;  // column held by each row
  row_col.assign(rows, -1);
  col_match_row.assign(cols, -1);
  // 0 = unseen, 1 = seen in the current search, 2 = dead.
  std::vector<char>& mark = ws.finalized;
  mark.assign(cols, 0);
  std::vector<int>& queue = ws.queue;
  std::vector<int>& via_row = ws.via_row;
  std::vector<int>& parent = ws.parent;
  via_row.resize(cols);
  parent.resize(cols);
  ws.sorted_values.clear();
  int matched = 0;
  for (int g : order) {
    if (matched == rows) break;
    queue.assign(1, g);
    mark[g] = 1;
    int free_row = -1, end_col = -1;
    for (size_t q = 0; q < queue.size() && free_row < 0; ++q) {
      const int c = queue[q];
      for (int k = start[c]; k < start[c + 1]; ++k) {
        const int r = adj[k];
        const int held = row_col[r];
        if (held < 0) {
          free_row = r;
          end_col = c;
          break;
        }
        if (mark[held] != 0) continue;
        mark[held] = 1;
        via_row[held] = r;
        parent[held] = c;
        queue.push_back(held);
      }
    }
    if (free_row < 0) {
      for (int c : queue) mark[c] = 2;
      continue;
    }
    for (int c : queue) mark[c] = 0;
    // Shift along the path back to g: each row on it takes the column it
    // was reached from.
    for (int r = free_row, c = end_col;;) {
      const int old = via_row[c];
      row_col[r] = c;
      col_match_row[c] = r;
      if (c == g) break;
      r = old;
      c = parent[c];
    }
    ++matched;
    ws.sorted_values.push_back(inst.col_value[g]);
  }
}

double SumDescending(std::vector<double>& values) {
  std::sort(values.begin(), values.end(), std::greater<>());
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

// Best `capacity` goods of a single agent; ties keep the lower good index.
std::vector<int> SoloChoice(const Scenario& scenario, int agent) {
  std::vector<int> goods;
  for (int g : scenario.agents[agent].interest) {
    if (scenario.goods[g].value > 0.0) goods.push_back(g);
  }
  std::stable_sort(goods.begin(), goods.end(), [&](int a, int b) {
    return scenario.goods[a].value > scenario.goods[b].value;
  });
  if (static_cast<int>(goods.size()) > scenario.capacity) {
    goods.resize(scenario.capacity);
  }
  std::sort(goods.begin(), goods.end());
  return goods;
}

MatchingAlgorithm Resolve(MatchingAlgorithm algorithm, const Instance& inst) {
  if (algorithm != MatchingAlgorithm::kAuto) return algorithm;
  const size_t cells = inst.row_agent.size() * inst.col_good.size();
  return cells <= kDenseCellLimit ? MatchingAlgorithm::kDenseHungarian
                                  : MatchingAlgorithm::kGreedyAugment;
}

// Solves the coalition and fills, per local column, the matched row.
// Returns true when ws.sorted_values already holds the assigned values in
// descending order.
bool Solve(const Scenario& scenario, const Coalition& c,
           const MatchingOptions& options, Workspace& ws,
           std::vector<int>& col_match_row) {
  BuildInstance(scenario, c, ws);
  if (ws.inst.row_agent.empty() || ws.inst.col_good.empty()) {
    col_match_row.assign(ws.inst.col_good.size(), -1);
    ws.sorted_values.clear();
    return true;
  }
  const kernels::KernelTable& kt =
      options.kernels != nullptr ? *options.kernels : kernels::ActiveKernels();
  switch (Resolve(options.algorithm, ws.inst)) {
    case MatchingAlgorithm::kDenseHungarian:
      SolveDense(ws.inst, kt, ws, col_match_row);
      return false;
    case MatchingAlgorithm::kShortestPath:
      SolveShortestPath(ws.inst, ws, col_match_row);
      return false;
    default:
      SolveGreedy(ws.inst, ws, col_match_row);
      return true;
  }
}

}  // namespace

double OptimalValue(const Scenario& scenario, const Coalition& c,
                    const MatchingOptions& options) {
  const int size = c.Size();
  std::vector<double> values;
  if (size == 0) return 0.0;
  if (size == 1) {
    for (int g : SoloChoice(scenario, c.First())) {
      values.push_back(scenario.goods[g].value);
    }
    return SumDescending(values);
  }
  Workspace& ws = LocalWorkspace();
  if (Solve(scenario, c, options, ws, ws.col_match_row)) {
    double total = 0.0;
    for (double v : ws.sorted_values) total += v;
    return total;
  }
  for (size_t k = 0; k < ws.col_match_row.size(); ++k) {
    if (ws.col_match_row[k] >= 0) values.push_back(ws.inst.col_value[k]);
  }
  return SumDescending(values);
}

MatchingResult OptimalAllocation(const Scenario& scenario, const Coalition& c,
                                 const MatchingOptions& options) {
  MatchingResult result;
  result.allocation.assignment.assign(scenario.num_agents(), {});
  const int size = c.Size();
  if (size == 0) return result;
  if (size == 1) {
    const int agent = c.First();
    result.allocation.assignment[agent] = SoloChoice(scenario, agent);
  } else {
    Workspace& ws = LocalWorkspace();
    Solve(scenario, c, options, ws, ws.col_match_row);
    for (size_t k = 0; k < ws.col_match_row.size(); ++k) {
      const int row = ws.col_match_row[k];
      if (row < 0) continue;
      result.allocation.assignment[ws.inst.row_agent[row]].push_back(
          ws.inst.col_good[k]);
    }
    for (auto& held : result.allocation.assignment) {
      std::sort(held.begin(), held.end());
    }
  }
  result.value = AllocationValue(scenario, result.allocation);
  return result;
}

}  // namespace allocsv
