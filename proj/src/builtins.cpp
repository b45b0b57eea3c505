#include <algorithm>
#include <tuple>

#include "plantflow/datasets.hpp"
#include "plantflow/errors.hpp"

namespace plantflow {

namespace {

struct EdgeRow {
  NodeIndex tail;
  NodeIndex head;
  int stage;
  double capacity;
};

struct StationRow {
  int stage;
  double capacity;
  std::vector<NodeIndex> nodes;
};

PlantNetwork assemble(int node_count, int stage_count, const std::vector<StationRow>& stations,
                      const std::vector<EdgeRow>& edges) {
  PlantNetwork net;
  net.node_count = node_count;
  net.stage_count = stage_count;
  net.stations.assign(stage_count, {});
  for (const StationRow& row : stations) {
    for (NodeIndex k : row.nodes) {
      net.stations[row.stage - 1].push_back(k);
      net.node_capacity[k] = row.capacity;
    }
  }
  for (auto& stage : net.stations) std::sort(stage.begin(), stage.end());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeRow& r = edges[i];
    net.edges.push_back({"e" + std::to_string(i + 1), r.tail, r.head, r.stage, r.capacity});
  }
  return net;
}

RandomVariable node_rv(std::string id, NodeIndex k, double p) {
  return {std::move(id), p, {NodeAsset{k}}};
}

RandomVariable edge_rv(std::string id, std::initializer_list<int> edge_numbers, double p) {
  RandomVariable rv{std::move(id), p, {}};
  for (int e : edge_numbers) rv.assets.emplace_back(EdgeAsset{"e" + std::to_string(e)});
  return rv;
}

constexpr double kP = 0.03;

NetworkDocument didactic() {
  const std::vector<EdgeRow> rows = {
      {1, 3, 1, 1.0},  {2, 3, 1, 1.0},  {3, 4, 1, 1.0},   {4, 5, 1, 1.0},   {5, 4, 2, 1.0},
      {4, 6, 1, 1.0},  {4, 6, 2, 1.0},  {6, 4, 2, 1.0},   {4, 10, 2, 1.0},  {6, 7, 1, 1.0},
      {7, 6, 2, 1.0},  {6, 8, 1, 1.0},  {6, 8, 2, 1.0},   {8, 6, 2, 1.0},   {8, 9, 1, 1.0},
      {9, 8, 2, 1.0},  {8, 12, 2, 1.0}, {10, 11, 3, 1.0}, {11, 12, 3, 1.0}, {12, 13, 3, 1.0},
      {13, 14, 3, 1.0},
  };
  NetworkDocument doc;
  doc.name = "didactic";
  doc.notes = {
      "Four-stage didactic plant: unloading (n1, n2), storage (n5, n7, n9), vaporisation (n10, n12), supply (n14).",
      "Edge e18 (10,11) carries stage label 3. Under label 2 the stage-3 station n10 has no stage-3 outlet and the "
      "all-functional flow of 1.0 cannot be reached in any semantics mode.",
      "Pipe variables p<i>-<j> cover every stage-labelled edge between nodes i and j in either direction.",
  };
  doc.network = assemble(14, 4,
                         {{1, 0.5, {1, 2}}, {2, 0.5, {5, 7, 9}}, {3, 0.5, {10, 12}}, {4, 1.0, {14}}}, rows);
  for (NodeIndex k : {1, 2, 5, 7, 9, 10, 12, 14}) doc.model.rvs.push_back(node_rv("n" + std::to_string(k), k, kP));

  // One variable per physical pipe, in order of first appearance.
  std::vector<std::pair<NodeIndex, NodeIndex>> pipes;
  std::vector<std::vector<int>> members;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto key = std::minmax(rows[i].tail, rows[i].head);
    auto it = std::find(pipes.begin(), pipes.end(), std::pair<NodeIndex, NodeIndex>(key.first, key.second));
    if (it == pipes.end()) {
      pipes.emplace_back(key.first, key.second);
      members.emplace_back();
      it = pipes.end() - 1;
    }
    members[static_cast<std::size_t>(it - pipes.begin())].push_back(static_cast<int>(i) + 1);
  }
  for (std::size_t p = 0; p < pipes.size(); ++p) {
    RandomVariable rv{"p" + std::to_string(pipes[p].first) + "-" + std::to_string(pipes[p].second), kP, {}};
    for (int e : members[p]) rv.assets.emplace_back(EdgeAsset{"e" + std::to_string(e)});
    doc.model.rvs.push_back(std::move(rv));
  }
  doc.analysis = {1.0, SemanticsMode::station_throughput};
  return doc;
}

const std::vector<EdgeRow>& pressure_edges() {
  static const std::vector<EdgeRow> rows = {
      {1, 3, 1, 595},    {2, 3, 1, 595},    {3, 4, 1, 595},    {4, 5, 1, 595},    {5, 6, 1, 595},
      {6, 7, 1, 90},     {6, 8, 1, 90},     {6, 9, 1, 90},     {7, 10, 2, 90},    {8, 11, 2, 90},
      {9, 12, 2, 90},    {10, 13, 2, 180},  {11, 10, 2, 90},   {11, 12, 2, 90},   {12, 14, 2, 180},
      {13, 15, 2, 90},   {13, 16, 2, 90},   {14, 17, 2, 90},   {14, 18, 2, 90},   {15, 19, 3, 90},
      {16, 19, 3, 90},   {17, 21, 3, 55},   {18, 21, 3, 55},   {19, 20, 3, 90},   {20, 22, 4, 90},
      {20, 24, 4, 90},   {21, 22, 3, 90},   {22, 23, 4, 55},   {23, 25, 4, 55},   {26, 28, 1, 595},
      {27, 28, 1, 595},  {28, 5, 1, 595},   {6, 29, 1, 210},   {6, 30, 1, 210},   {6, 31, 1, 90},
      {29, 32, 2, 210},  {30, 32, 2, 210},  {31, 32, 2, 90},   {32, 33, 2, 420},  {33, 34, 2, 30},
      {33, 35, 2, 30},   {33, 36, 2, 420},  {33, 37, 2, 420},  {33, 38, 2, 420},  {34, 39, 3, 30},
      {35, 39, 3, 30},   {36, 40, 3, 420},  {37, 40, 3, 420},  {38, 40, 3, 420},  {39, 41, 3, 30},
      {40, 42, 3, 420},  {41, 43, 4, 30},   {42, 44, 4, 420},  {43, 23, 4, 420},  {44, 43, 4, 420},
  };
  return rows;
}

NetworkDocument pressure(bool expanded) {
  std::vector<StationRow> stations = {
      {1, 595, {1, 2}}, {2, 90, {7, 8, 9}}, {3, 90, {15, 16, 17, 18}}, {4, 110, {20, 22}}, {5, 90, {24}}, {5, 55, {25}},
  };
  // Station rv order: original stations, then expansion stations.
  std::vector<NodeIndex> rv_nodes = {1, 2, 7, 8, 9, 15, 16, 17, 18, 20, 22, 24, 25};
  if (expanded) {
    const std::vector<StationRow> extra = {
        {1, 595, {26, 27}}, {2, 210, {29, 30}}, {2, 90, {31}}, {3, 30, {34, 35}},
        {3, 420, {36, 37, 38}}, {4, 30, {41}}, {4, 420, {42}},
    };
    stations.insert(stations.end(), extra.begin(), extra.end());
  }
  const auto& all = pressure_edges();
  const std::size_t edge_count = expanded ? all.size() : 29;
  const std::vector<EdgeRow> rows(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(edge_count));

  NetworkDocument doc;
  doc.name = expanded ? "pressure-expanded" : "pressure-original";
  doc.notes = {
      "Five-stage pressure regularisation plant: source terminal, gas heater, pressure control valves, ultrasonic "
      "flow meters, export terminal. Capacities in t/hr.",
      expanded ? "Original layout plus the planned expansion (nodes n26-n44, edges e30-e55, variables X43-X80)."
               : "Original layout only; the planned expansion is the pressure-expanded builtin.",
  };
  doc.network = assemble(expanded ? 44 : 25, 5, stations, rows);

  int x = 1;
  for (NodeIndex k : rv_nodes) doc.model.rvs.push_back(node_rv("X" + std::to_string(x++), k, kP));
  for (int e = 1; e <= 29; ++e) doc.model.rvs.push_back(edge_rv("X" + std::to_string(x++), {e}, kP));
  if (expanded) {
    for (NodeIndex k : {26, 27, 29, 30, 31, 34, 35, 36, 37, 38, 41, 42}) {
      doc.model.rvs.push_back(node_rv("X" + std::to_string(x++), k, kP));
    }
    for (int e = 30; e <= 55; ++e) doc.model.rvs.push_back(edge_rv("X" + std::to_string(x++), {e}, kP));
  }
  doc.analysis = {90.0, SemanticsMode::station_throughput};
  return doc;
}

NetworkDocument gas() {
  const std::vector<std::tuple<NodeIndex, NodeIndex, int>> triples = {
      {1, 3, 1},   {2, 3, 1},   {3, 4, 1},   {4, 5, 1},   {5, 4, 2},   {4, 6, 1},   {6, 7, 1},   {7, 6, 2},
      {7, 8, 1},   {8, 7, 2},   {7, 9, 1},   {9, 7, 2},   {9, 10, 1},  {10, 9, 2},  {9, 11, 1},  {11, 9, 2},
      {11, 12, 1}, {12, 11, 2}, {11, 13, 1}, {13, 11, 2}, {13, 14, 1}, {14, 13, 2}, {13, 15, 1}, {15, 13, 2},
      {15, 16, 1}, {16, 15, 2}, {6, 17, 1},  {17, 18, 1}, {18, 17, 2}, {18, 19, 1}, {19, 18, 2}, {18, 20, 1},
      {20, 18, 2}, {20, 21, 1}, {21, 20, 2}, {17, 22, 1}, {22, 17, 2}, {22, 23, 1}, {23, 22, 2}, {22, 24, 1},
      {24, 22, 2}, {24, 25, 1}, {25, 24, 2}, {24, 26, 1}, {26, 24, 2}, {26, 27, 1}, {27, 26, 2}, {26, 28, 1},
      {28, 26, 2}, {28, 29, 1}, {29, 28, 2}, {28, 30, 1}, {30, 28, 2}, {30, 31, 1}, {31, 30, 2}, {17, 32, 1},
      {32, 33, 1}, {33, 32, 2}, {33, 34, 1}, {34, 33, 2}, {33, 35, 1}, {35, 33, 2}, {35, 36, 1}, {36, 35, 2},
      {35, 37, 1}, {37, 35, 2}, {37, 38, 1}, {38, 37, 2}, {32, 39, 1}, {39, 32, 2}, {39, 40, 1}, {40, 39, 2},
      {39, 41, 1}, {41, 39, 2}, {41, 42, 1}, {42, 41, 2}, {41, 43, 1}, {43, 41, 2}, {41, 44, 1}, {44, 41, 2},
      {44, 45, 1}, {45, 44, 2}, {44, 46, 1}, {46, 44, 2}, {44, 47, 1}, {47, 44, 2}, {47, 48, 1}, {48, 47, 2},
      {47, 49, 1}, {49, 47, 2}, {47, 50, 1}, {50, 47, 2}, {50, 51, 1}, {51, 50, 2}, {50, 52, 1}, {52, 50, 2},
      {37, 53, 2}, {32, 55, 2}, {53, 54, 3}, {54, 56, 3}, {55, 56, 3}, {56, 57, 3},
  };
  std::vector<EdgeRow> rows;
  for (const auto& [i, j, m] : triples) rows.push_back({i, j, m, 1.0});

  const std::vector<NodeIndex> storage = {5,  8,  10, 12, 14, 16, 19, 21, 23, 25, 27, 29, 31,
                                          34, 36, 38, 40, 42, 43, 45, 46, 48, 49, 51, 52};
  NetworkDocument doc;
  doc.name = "gas";
  doc.notes = {
      "Four-stage gas supply plant: unloading, storage, vaporisation, supply.",
      "Edges sharing end nodes but differing in stage label share one variable (e.g. X34 covers e4 and e5).",
  };
  doc.network = assemble(57, 4, {{1, 0.5, {1, 2}}, {2, 0.25, storage}, {3, 0.5, {53, 55}}, {4, 1.0, {57}}}, rows);

  int x = 1;
  for (const auto& stage : doc.network.stations) {
    for (NodeIndex k : stage) doc.model.rvs.push_back(node_rv("X" + std::to_string(x++), k, kP));
  }
  // Consecutive edges over the same node pair form one physical pipe.
  for (std::size_t e = 0; e < rows.size();) {
    RandomVariable rv{"X" + std::to_string(x++), kP, {EdgeAsset{"e" + std::to_string(e + 1)}}};
    if (e + 1 < rows.size() && rows[e + 1].tail == rows[e].head && rows[e + 1].head == rows[e].tail) {
      rv.assets.emplace_back(EdgeAsset{"e" + std::to_string(e + 2)});
      e += 2;
    } else {
      e += 1;
    }
    doc.model.rvs.push_back(std::move(rv));
  }
  doc.analysis = {0.5, SemanticsMode::station_throughput};
  return doc;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"didactic", "pressure-original", "pressure-expanded", "gas"};
  return names;
}

NetworkDocument builtin(std::string_view name) {
  if (name == "didactic") return didactic();
  if (name == "pressure-original") return pressure(false);
  if (name == "pressure-expanded") return pressure(true);
  if (name == "gas") return gas();
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error("unknown builtin '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace plantflow
