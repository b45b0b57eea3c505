#include "plantflow/plant_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "plantflow/errors.hpp"

namespace plantflow {

std::string_view to_string(SemanticsMode mode) {
  switch (mode) {
    case SemanticsMode::station_throughput:
      return "station-throughput";
    case SemanticsMode::edge_min:
      return "edge-min";
    case SemanticsMode::edge_max:
      return "edge-max";
  }
  return "?";
}

SemanticsMode parse_semantics(std::string_view text) {
  if (text == "station-throughput") return SemanticsMode::station_throughput;
  if (text == "edge-min") return SemanticsMode::edge_min;
  if (text == "edge-max") return SemanticsMode::edge_max;
  throw Error("unknown semantics mode '" + std::string(text) +
              "' (expected station-throughput, edge-min or edge-max)");
}

std::optional<std::size_t> PlantNetwork::find_edge(std::string_view id) const {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].id == id) return e;
  }
  return std::nullopt;
}

std::vector<int> PlantNetwork::station_stages() const {
  std::vector<int> stage(static_cast<std::size_t>(std::max(node_count, 0)) + 1, 0);
  for (std::size_t m = 0; m < stations.size(); ++m) {
    for (NodeIndex k : stations[m]) {
      if (k >= 1 && k <= node_count && stage[k] == 0) stage[k] = static_cast<int>(m) + 1;
    }
  }
  return stage;
}

std::vector<double> PlantNetwork::resolved_node_capacities() const {
  std::vector<double> cap(static_cast<std::size_t>(std::max(node_count, 0)) + 1, 0.0);
  std::vector<bool> explicit_cap(cap.size(), false);
  for (const auto& [k, c] : node_capacity) {
    if (k >= 1 && k <= node_count) {
      cap[k] = c;
      explicit_cap[k] = true;
    }
  }
  for (const Edge& e : edges) {
    for (NodeIndex k : {e.tail, e.head}) {
      if (k >= 1 && k <= node_count && !explicit_cap[k]) cap[k] = std::max(cap[k], e.capacity);
    }
  }
  return cap;
}

std::size_t PlantNetwork::station_count() const {
  std::size_t n = 0;
  for (const auto& s : stations) n += s.size();
  return n;
}

std::string describe(const Asset& asset) {
  if (const auto* node = std::get_if<NodeAsset>(&asset)) return "n" + std::to_string(node->node);
  return std::get<EdgeAsset>(asset).edge_id;
}

std::optional<std::size_t> ComponentModel::find(std::string_view rv_id) const {
  for (std::size_t n = 0; n < rvs.size(); ++n) {
    if (rvs[n].id == rv_id) return n;
  }
  return std::nullopt;
}

ComponentAssignment ComponentAssignment::all_functional(const ComponentModel& model) {
  return ComponentAssignment(std::vector<std::uint8_t>(model.size(), 1));
}

ComponentAssignment ComponentAssignment::with_failed(const ComponentModel& model,
                                                     std::span<const std::string> failed_ids) {
  ComponentAssignment a = all_functional(model);
  for (const std::string& id : failed_ids) {
    auto n = model.find(id);
    if (!n) throw MappingError("unknown random variable '" + id + "'");
    a.set(*n, false);
  }
  return a;
}

std::string ValidationReport::summary() const {
  if (ok()) return "valid";
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i].entity << ": " << violations[i].message;
  }
  return out.str();
}

namespace {

std::string node_name(NodeIndex k) { return "n" + std::to_string(k); }

bool valid_capacity(double c) { return std::isfinite(c) && c >= 0.0; }

}  // namespace

ValidationReport validate_network(const PlantNetwork& net) {
  ValidationReport report;
  auto flag = [&](std::string code, std::string entity, std::string message) {
    report.violations.push_back({std::move(code), std::move(entity), std::move(message)});
  };

  if (net.node_count < 1) flag("node-count", "network", "node count must be positive");
  if (net.stage_count < 1) flag("stage-count", "network", "stage count must be positive");
  if (static_cast<int>(net.stations.size()) != net.stage_count) {
    flag("stage-count", "network",
         "station sets given for " + std::to_string(net.stations.size()) + " stages, expected " +
             std::to_string(net.stage_count));
  }

  auto in_range = [&](NodeIndex k) { return k >= 1 && k <= net.node_count; };

  std::map<NodeIndex, int> first_stage;
  for (std::size_t m = 0; m < net.stations.size(); ++m) {
    const int stage = static_cast<int>(m) + 1;
    if (net.stations[m].empty()) {
      flag("empty-stage", "stage " + std::to_string(stage), "stage has no station node");
    }
    for (NodeIndex k : net.stations[m]) {
      if (!in_range(k)) {
        flag("node-range", node_name(k),
             "station of stage " + std::to_string(stage) + " lies outside 1.." +
                 std::to_string(net.node_count));
        continue;
      }
      auto [it, inserted] = first_stage.emplace(k, stage);
      if (!inserted) {
        flag("station-multi-stage", node_name(k),
             it->second == stage ? "listed twice in stage " + std::to_string(stage)
                                 : "station of both stage " + std::to_string(it->second) +
                                       " and stage " + std::to_string(stage));
      }
    }
  }

  for (const auto& [k, c] : net.node_capacity) {
    if (!in_range(k)) flag("node-range", node_name(k), "capacity given for unknown node");
    if (!valid_capacity(c)) flag("capacity", node_name(k), "capacity must be finite and >= 0");
  }

  std::set<std::string> ids;
  std::set<std::tuple<NodeIndex, NodeIndex, int>> triples;
  for (const Edge& e : net.edges) {
    const std::string& name = e.id;
    if (e.id.empty()) flag("edge-id", "edge", "edge without identifier");
    if (!ids.insert(e.id).second) flag("edge-id", name, "duplicate edge identifier");
    if (!in_range(e.tail)) flag("node-range", name, "tail " + node_name(e.tail) + " does not exist");
    if (!in_range(e.head)) flag("node-range", name, "head " + node_name(e.head) + " does not exist");
    if (e.stage < 1 || e.stage > net.stage_count - 1) {
      flag("stage-label", name,
           "stage label " + std::to_string(e.stage) + " outside 1.." +
               std::to_string(net.stage_count - 1));
    }
    if (!valid_capacity(e.capacity)) flag("capacity", name, "capacity must be finite and >= 0");
    if (!triples.emplace(e.tail, e.head, e.stage).second) {
      flag("duplicate-edge", name,
           "(" + std::to_string(e.tail) + "," + std::to_string(e.head) + "," +
               std::to_string(e.stage) + ") appears more than once");
    }
  }
  return report;
}

ValidationReport validate_model(const PlantNetwork& net, const ComponentModel& model) {
  ValidationReport report;
  auto flag = [&](std::string code, std::string entity, std::string message) {
    report.violations.push_back({std::move(code), std::move(entity), std::move(message)});
  };
  std::set<std::string> rv_ids;
  std::map<std::string, std::string> owner;  // asset name -> rv id
  std::set<std::string> edge_ids;
  for (const Edge& e : net.edges) edge_ids.insert(e.id);

  for (const RandomVariable& rv : model.rvs) {
    if (!rv_ids.insert(rv.id).second) flag("rv-id", rv.id, "duplicate random variable id");
    if (!(rv.p_fail >= 0.0 && rv.p_fail <= 1.0)) {
      flag("probability", rv.id, "failure probability must lie in [0,1]");
    }
    for (const Asset& asset : rv.assets) {
      const std::string name = describe(asset);
      if (const auto* node = std::get_if<NodeAsset>(&asset)) {
        if (node->node < 1 || node->node > net.node_count) {
          flag("dangling-asset", rv.id, "references unknown node " + name);
          continue;
        }
      } else if (!edge_ids.count(name)) {
        flag("dangling-asset", rv.id, "references unknown edge " + name);
        continue;
      }
      auto [it, inserted] = owner.emplace(name, rv.id);
      if (!inserted) {
        flag("shared-asset", rv.id, name + " already belongs to " + it->second);
      }
    }
  }
  return report;
}

ScenarioMap::ScenarioMap(const PlantNetwork& net, const ComponentModel& model)
    : node_count_(net.node_count),
      stage_of_(net.station_stages()),
      node_cap_(net.resolved_node_capacities()) {
  edge_raw_.reserve(net.edges.size());
  std::unordered_map<std::string, std::size_t> edge_index;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Edge& edge = net.edges[e];
    edge_raw_.push_back(edge.capacity);
    tail_.push_back(edge.tail);
    head_.push_back(edge.head);
    edge_index.emplace(edge.id, e);
    if (edge.tail < 1 || edge.tail > node_count_ || edge.head < 1 || edge.head > node_count_) {
      throw MappingError("edge " + edge.id + " references a node outside the network");
    }
  }
  rv_nodes_.resize(model.size());
  rv_edges_.resize(model.size());
  for (std::size_t n = 0; n < model.size(); ++n) {
    for (const Asset& asset : model.rvs[n].assets) {
      if (const auto* node = std::get_if<NodeAsset>(&asset)) {
        if (node->node < 1 || node->node > node_count_) {
          throw MappingError(model.rvs[n].id + " references unknown node " + describe(asset));
        }
        rv_nodes_[n].push_back(node->node);
      } else {
        auto it = edge_index.find(std::get<EdgeAsset>(asset).edge_id);
        if (it == edge_index.end()) {
          throw MappingError(model.rvs[n].id + " references unknown edge " + describe(asset));
        }
        rv_edges_[n].push_back(it->second);
      }
    }
  }
}

void ScenarioMap::apply(std::span<const std::uint8_t> states, SemanticsMode mode,
                        EffectiveCapacities& out) const {
  if (states.size() != rv_nodes_.size()) {
    throw MappingError("assignment covers " + std::to_string(states.size()) +
                       " random variables, model defines " + std::to_string(rv_nodes_.size()));
  }
  out.mode = mode;
  // station_cap doubles as the per-node capacity buffer until the end.
  std::vector<double>& node = out.station_cap;
  node.assign(node_cap_.begin(), node_cap_.end());
  out.edge_cap.assign(edge_raw_.begin(), edge_raw_.end());
  for (std::size_t n = 0; n < states.size(); ++n) {
    if (states[n]) continue;
    for (NodeIndex k : rv_nodes_[n]) node[k] = 0.0;
    for (std::size_t e : rv_edges_[n]) out.edge_cap[e] = 0.0;
  }

  for (std::size_t e = 0; e < out.edge_cap.size(); ++e) {
    double& cap = out.edge_cap[e];
    const double ct = node[tail_[e]];
    const double ch = node[head_[e]];
    switch (mode) {
      case SemanticsMode::station_throughput:
        // Non-station capacities never bind here, except that a zeroed
        // non-station node blocks everything through it.
        if ((stage_of_[tail_[e]] == 0 && ct == 0.0) || (stage_of_[head_[e]] == 0 && ch == 0.0)) {
          cap = 0.0;
        }
        break;
      case SemanticsMode::edge_min:
        cap = std::min({cap, ct, ch});
        break;
      case SemanticsMode::edge_max:
        if (cap > 0.0) cap = std::max({cap, ct, ch});
        break;
    }
  }
  for (std::size_t k = 0; k < node.size(); ++k) {
    if (stage_of_[k] == 0) node[k] = 0.0;
  }
}

EffectiveCapacities apply_scenario(const PlantNetwork& net, const ComponentModel& model,
                                   const ComponentAssignment& assignment, SemanticsMode mode) {
  EffectiveCapacities caps;
  ScenarioMap(net, model).apply(assignment.states(), mode, caps);
  return caps;
}

}  // namespace plantflow
