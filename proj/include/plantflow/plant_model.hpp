#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace plantflow {

/// 1-based node index, as in the plant tables.
using NodeIndex = int;

/// Which capacities bind the flow on an edge.
///
/// station_throughput: edges are bounded by their own capacity; a station
/// bounds the amount of flow it bridges from one stage to the next.
/// edge_min / edge_max: endpoint node capacities are folded into every
/// edge bound by minimum / maximum and stations add no bound of their own.
enum class SemanticsMode { station_throughput, edge_min, edge_max };

std::string_view to_string(SemanticsMode mode);
/// Accepts "station-throughput", "edge-min", "edge-max". Throws Error.
SemanticsMode parse_semantics(std::string_view text);

struct Edge {
  std::string id;
  NodeIndex tail = 0;
  NodeIndex head = 0;
  int stage = 0;  // carries flow from stage `stage` to stage `stage + 1`
  double capacity = 0.0;

  bool operator==(const Edge&) const = default;
};

struct PlantNetwork {
  int node_count = 0;
  int stage_count = 0;
  /// stations[m - 1] lists the station nodes of stage m.
  std::vector<std::vector<NodeIndex>> stations;
  /// Explicit node capacities. Nodes without an entry fall back to the
  /// largest capacity among their incident edges.
  std::map<NodeIndex, double> node_capacity;
  std::vector<Edge> edges;

  bool operator==(const PlantNetwork&) const = default;

  std::optional<std::size_t> find_edge(std::string_view id) const;
  /// Stage of every node, indexed by NodeIndex (entry 0 unused); 0 marks a
  /// non-station node. Nodes listed in several stages report the first.
  std::vector<int> station_stages() const;
  /// Capacity of every node with the incident-edge default applied,
  /// indexed by NodeIndex (entry 0 unused).
  std::vector<double> resolved_node_capacities() const;
  std::size_t station_count() const;
};

struct NodeAsset {
  NodeIndex node = 0;
  bool operator==(const NodeAsset&) const = default;
};
struct EdgeAsset {
  std::string edge_id;
  bool operator==(const EdgeAsset&) const = default;
};
using Asset = std::variant<NodeAsset, EdgeAsset>;

std::string describe(const Asset& asset);

struct RandomVariable {
  std::string id;
  double p_fail = 0.0;
  std::vector<Asset> assets;

  bool operator==(const RandomVariable&) const = default;
};

/// Independent binary component variables; rvs order is the canonical
/// index used by ComponentAssignment.
struct ComponentModel {
  std::vector<RandomVariable> rvs;

  bool operator==(const ComponentModel&) const = default;

  std::optional<std::size_t> find(std::string_view rv_id) const;
  std::size_t size() const { return rvs.size(); }
};

/// One realisation of every component state, aligned with
/// ComponentModel::rvs (1 = functional, 0 = failed).
class ComponentAssignment {
 public:
  ComponentAssignment() = default;
  explicit ComponentAssignment(std::vector<std::uint8_t> states) : states_(std::move(states)) {}

  static ComponentAssignment all_functional(const ComponentModel& model);
  /// Throws MappingError for an id the model does not define.
  static ComponentAssignment with_failed(const ComponentModel& model,
                                         std::span<const std::string> failed_ids);

  std::size_t size() const { return states_.size(); }
  bool functional(std::size_t rv) const { return states_[rv] != 0; }
  void set(std::size_t rv, bool functional) { states_[rv] = functional ? 1 : 0; }
  std::span<const std::uint8_t> states() const { return states_; }

  bool operator==(const ComponentAssignment&) const = default;

 private:
  std::vector<std::uint8_t> states_;
};

struct Violation {
  std::string code;    // short machine-readable tag, e.g. "station-multi-stage"
  std::string entity;  // offending node / edge / rv, e.g. "n5", "e3", "X12"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_network(const PlantNetwork& net);
/// Checks the model against the network: unique rv ids, p in [0,1],
/// assets that exist and belong to at most one rv.
ValidationReport validate_model(const PlantNetwork& net, const ComponentModel& model);

/// Capacities after failure zeroing and the semantics fold.
struct EffectiveCapacities {
  SemanticsMode mode = SemanticsMode::station_throughput;
  /// Aligned with PlantNetwork::edges.
  std::vector<double> edge_cap;
  /// Indexed by NodeIndex; only station entries are meaningful, others stay 0.
  std::vector<double> station_cap;

  bool operator==(const EffectiveCapacities&) const = default;
};

/// Resolves every rv asset against a network once, so repeated scenario
/// evaluation does no string lookups.
class ScenarioMap {
 public:
  /// Throws MappingError when an asset does not exist in `net`.
  ScenarioMap(const PlantNetwork& net, const ComponentModel& model);

  /// Writes capacities for `states` (aligned with the model) into `out`,
  /// reusing its storage.
  void apply(std::span<const std::uint8_t> states, SemanticsMode mode,
             EffectiveCapacities& out) const;

  std::size_t rv_count() const { return rv_nodes_.size(); }

 private:
  int node_count_ = 0;
  std::vector<int> stage_of_;
  std::vector<double> node_cap_;
  std::vector<double> edge_raw_;
  std::vector<NodeIndex> tail_;
  std::vector<NodeIndex> head_;
  std::vector<std::vector<NodeIndex>> rv_nodes_;
  std::vector<std::vector<std::size_t>> rv_edges_;
};

/// Throws MappingError on an incomplete assignment or an unresolved asset.
EffectiveCapacities apply_scenario(const PlantNetwork& net, const ComponentModel& model,
                                   const ComponentAssignment& assignment, SemanticsMode mode);

}  // namespace plantflow
