#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "plantflow/lp.hpp"
#include "plantflow/plant_model.hpp"

namespace plantflow {

enum class Backend { lp, maxflow };

std::string_view to_string(Backend backend);
/// Accepts "lp" or "maxflow". Throws Error.
Backend parse_backend(std::string_view text);

struct FlowSolution {
  double max_flow = 0.0;
  /// Aligned with PlantNetwork::edges.
  std::vector<double> edge_flows;
  /// Bridged amount per station, indexed by NodeIndex (non-stations 0).
  std::vector<double> station_throughput;
  Backend backend = Backend::maxflow;
  SemanticsMode mode = SemanticsMode::station_throughput;
  /// Simplex iterations (lp) or augmenting phases (maxflow).
  std::size_t iterations = 0;
};

/// The flow LP together with the meaning of its columns.
///
/// Columns: one per edge (same order as the network), then one throughput
/// column per station (order in `stations`), then u. Rows: conservation at
/// every (node, stage-label) pair that carries flow, plus
/// sum(stage-1 throughput) = u. A station of stage m feeds layer m and
/// drains layer m - 1, so its throughput column is the bridged amount.
struct FlowLp {
  lp::LinearProgram program;
  std::vector<NodeIndex> stations;
  std::size_t first_station_column = 0;
  std::size_t u_column = 0;
};

FlowLp build_lp(const PlantNetwork& net, const EffectiveCapacities& caps);

enum class ArcKind { edge, source, bridge, sink };

struct LayeredArc {
  int from = 0;
  int to = 0;
  double capacity = 0.0;
  ArcKind kind = ArcKind::edge;
  /// Edge position for ArcKind::edge, station node otherwise.
  std::size_t ref = 0;
};

/// Vertex (node, layer) for every pair that carries an arc, plus S and T.
/// Node 0 marks the two terminals.
struct LayeredVertex {
  NodeIndex node = 0;
  int layer = 0;
};

struct LayeredGraph {
  std::vector<LayeredVertex> vertices;
  std::vector<LayeredArc> arcs;
  int source = 0;
  int sink = 1;
};

/// Throws UnsupportedCombination unless caps.mode is station_throughput.
LayeredGraph build_layered_graph(const PlantNetwork& net, const EffectiveCapacities& caps);

struct MaxFlowOptions {
  bool prune_zero_arcs = true;
  /// Residual capacity at or below this is treated as saturated.
  double residual_epsilon = 1e-12;
};

struct MaxFlowResult {
  double value = 0.0;
  /// Flow on each arc of the input graph.
  std::vector<double> arc_flows;
  std::size_t phases = 0;
};

/// Dinic's algorithm on real capacities.
MaxFlowResult max_flow(const LayeredGraph& graph, const MaxFlowOptions& options = {});

/// Solves for capacities that are already effective.
FlowSolution solve_flow(const PlantNetwork& net, const EffectiveCapacities& caps, Backend backend);

/// apply_scenario followed by solve_flow. Throws UnsupportedCombination for
/// the max-flow backend outside station-throughput semantics.
FlowSolution max_processable_flow(const PlantNetwork& net, const ComponentModel& model,
                                  const ComponentAssignment& assignment, SemanticsMode mode,
                                  Backend backend);

/// Largest violation of the flow LP rows or bounds by `solution`; 0 for an
/// exactly feasible flow.
double flow_residual(const PlantNetwork& net, const EffectiveCapacities& caps,
                     const FlowSolution& solution);

/// u* as a function of component states, prepared once for repeated calls.
/// evaluate() is const and safe to call concurrently with distinct
/// workspaces.
class SystemFunction {
 public:
  struct Workspace;
  struct WorkspaceDeleter {
    void operator()(Workspace* ws) const;
  };
  using WorkspacePtr = std::unique_ptr<Workspace, WorkspaceDeleter>;

  SystemFunction(const PlantNetwork& net, const ComponentModel& model, SemanticsMode mode,
                 Backend backend);
  ~SystemFunction();
  SystemFunction(SystemFunction&&) noexcept;
  SystemFunction& operator=(SystemFunction&&) noexcept;

  WorkspacePtr make_workspace() const;
  double evaluate(std::span<const std::uint8_t> states, Workspace& workspace) const;

  std::size_t rv_count() const;
  SemanticsMode mode() const;
  Backend backend() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace plantflow
