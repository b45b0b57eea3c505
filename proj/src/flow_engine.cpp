#include <algorithm>
#include <cmath>
#include <string>

#include "dinic.hpp"
#include "plantflow/errors.hpp"
#include "plantflow/flow.hpp"

namespace plantflow {

std::string_view to_string(Backend backend) {
  return backend == Backend::lp ? "lp" : "maxflow";
}

Backend parse_backend(std::string_view text) {
  if (text == "lp") return Backend::lp;
  if (text == "maxflow") return Backend::maxflow;
  throw Error("unknown backend '" + std::string(text) + "' (expected lp or maxflow)");
}

namespace {

void require_aligned(const PlantNetwork& net, const EffectiveCapacities& caps) {
  if (caps.edge_cap.size() != net.edges.size() ||
      caps.station_cap.size() != static_cast<std::size_t>(net.node_count) + 1) {
    throw MappingError("effective capacities do not belong to this network");
  }
}

// Row index per (node, layer), created on first use.
class RowIndex {
 public:
  RowIndex(int node_count, int stage_count)
      : layers_(std::max(stage_count - 1, 0)),
        index_(static_cast<std::size_t>(node_count + 1) * std::max(layers_, 1), -1) {}

  std::size_t get(NodeIndex node, int layer, std::vector<lp::Constraint>& rows) {
    int& slot = index_[static_cast<std::size_t>(node) * std::max(layers_, 1) + (layer - 1)];
    if (slot < 0) {
      slot = static_cast<int>(rows.size());
      rows.emplace_back();
    }
    return static_cast<std::size_t>(slot);
  }

 private:
  int layers_;
  std::vector<int> index_;
};

}  // namespace

FlowLp build_lp(const PlantNetwork& net, const EffectiveCapacities& caps) {
  require_aligned(net, caps);
  const int M = net.stage_count;
  FlowLp out;
  for (const auto& stage : net.stations) {
    out.stations.insert(out.stations.end(), stage.begin(), stage.end());
  }
  const std::size_t E = net.edges.size();
  const std::size_t S = out.stations.size();
  out.first_station_column = E;
  out.u_column = E + S;

  lp::LinearProgram& prog = out.program;
  prog.num_vars = E + S + 1;
  prog.objective.assign(prog.num_vars, 0.0);
  prog.objective[out.u_column] = 1.0;
  prog.bounds.assign(prog.num_vars, lp::Bounds{});

  RowIndex rows(net.node_count, M);
  auto& eq = prog.equalities;
  for (std::size_t e = 0; e < E; ++e) {
    const Edge& edge = net.edges[e];
    prog.bounds[e].upper = caps.edge_cap[e];
    eq[rows.get(edge.tail, edge.stage, eq)].terms.push_back({e, -1.0});
    eq[rows.get(edge.head, edge.stage, eq)].terms.push_back({e, 1.0});
  }

  lp::Constraint origin;
  const auto stages = net.station_stages();
  for (std::size_t s = 0; s < S; ++s) {
    const NodeIndex node = out.stations[s];
    const int stage = stages[node];
    const std::size_t col = E + s;
    prog.bounds[col].upper = caps.mode == SemanticsMode::station_throughput
                                 ? caps.station_cap[node]
                                 : lp::kInfinity;
    if (stage <= M - 1) eq[rows.get(node, stage, eq)].terms.push_back({col, 1.0});
    if (stage >= 2) eq[rows.get(node, stage - 1, eq)].terms.push_back({col, -1.0});
    if (stage == 1) origin.terms.push_back({col, 1.0});
  }
  origin.terms.push_back({out.u_column, -1.0});
  eq.push_back(std::move(origin));
  return out;
}

LayeredGraph build_layered_graph(const PlantNetwork& net, const EffectiveCapacities& caps) {
  require_aligned(net, caps);
  if (caps.mode != SemanticsMode::station_throughput) {
    throw UnsupportedCombination("the layered graph realises station-throughput semantics only, got " +
                                 std::string(to_string(caps.mode)));
  }
  const int M = net.stage_count;
  const int layers = std::max(M - 1, 1);
  LayeredGraph g;
  g.vertices = {{0, 0}, {0, 0}};
  g.source = 0;
  g.sink = 1;
  std::vector<int> id(static_cast<std::size_t>(net.node_count + 1) * layers, -1);
  auto vertex = [&](NodeIndex node, int layer) {
    int& slot = id[static_cast<std::size_t>(node) * layers + (layer - 1)];
    if (slot < 0) {
      slot = static_cast<int>(g.vertices.size());
      g.vertices.push_back({node, layer});
    }
    return slot;
  };

  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const Edge& edge = net.edges[e];
    g.arcs.push_back({vertex(edge.tail, edge.stage), vertex(edge.head, edge.stage),
                      caps.edge_cap[e], ArcKind::edge, e});
  }
  for (std::size_t m = 0; m < net.stations.size(); ++m) {
    const int stage = static_cast<int>(m) + 1;
    for (NodeIndex s : net.stations[m]) {
      const double cap = caps.station_cap[s];
      const auto ref = static_cast<std::size_t>(s);
      if (M == 1) {
        g.arcs.push_back({g.source, g.sink, cap, ArcKind::source, ref});
      } else if (stage == 1) {
        g.arcs.push_back({g.source, vertex(s, 1), cap, ArcKind::source, ref});
      } else if (stage == M) {
        g.arcs.push_back({vertex(s, M - 1), g.sink, cap, ArcKind::sink, ref});
      } else {
        g.arcs.push_back({vertex(s, stage - 1), vertex(s, stage), cap, ArcKind::bridge, ref});
      }
    }
  }
  return g;
}

MaxFlowResult max_flow(const LayeredGraph& graph, const MaxFlowOptions& options) {
  detail::Dinic dinic;
  dinic.reset(static_cast<int>(graph.vertices.size()));
  std::vector<int> handle(graph.arcs.size(), -1);
  for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
    const LayeredArc& arc = graph.arcs[a];
    if (options.prune_zero_arcs && !(arc.capacity > 0.0)) continue;
    handle[a] = dinic.add_arc(arc.from, arc.to, arc.capacity);
  }
  MaxFlowResult result;
  result.value = dinic.run(graph.source, graph.sink, options.residual_epsilon);
  result.phases = dinic.phases();
  result.arc_flows.assign(graph.arcs.size(), 0.0);
  for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
    if (handle[a] >= 0) result.arc_flows[a] = dinic.flow(handle[a]);
  }
  return result;
}

FlowSolution solve_flow(const PlantNetwork& net, const EffectiveCapacities& caps, Backend backend) {
  FlowSolution sol;
  sol.backend = backend;
  sol.mode = caps.mode;
  sol.edge_flows.assign(net.edges.size(), 0.0);
  sol.station_throughput.assign(static_cast<std::size_t>(net.node_count) + 1, 0.0);

  if (backend == Backend::maxflow) {
    const LayeredGraph graph = build_layered_graph(net, caps);
    const MaxFlowResult flow = max_flow(graph);
    sol.max_flow = flow.value;
    sol.iterations = flow.phases;
    for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
      const LayeredArc& arc = graph.arcs[a];
      if (arc.kind == ArcKind::edge) {
        sol.edge_flows[arc.ref] = flow.arc_flows[a];
      } else {
        sol.station_throughput[arc.ref] = flow.arc_flows[a];
      }
    }
    return sol;
  }

  const FlowLp model = build_lp(net, caps);
  const lp::LpSolution lp_sol = lp::solve_lp(model.program);
  if (lp_sol.status != lp::LpStatus::optimal) {
    // x = 0 is always feasible and every column is bounded except u, which
    // the origin row ties to bounded columns.
    throw Error("flow LP finished with status " + std::string(lp::to_string(lp_sol.status)));
  }
  sol.max_flow = lp_sol.objective_value;
  sol.iterations = lp_sol.iterations;
  std::copy_n(lp_sol.primal.begin(), net.edges.size(), sol.edge_flows.begin());
  for (std::size_t s = 0; s < model.stations.size(); ++s) {
    sol.station_throughput[model.stations[s]] = lp_sol.primal[model.first_station_column + s];
  }
  return sol;
}

FlowSolution max_processable_flow(const PlantNetwork& net, const ComponentModel& model,
                                  const ComponentAssignment& assignment, SemanticsMode mode,
                                  Backend backend) {
  if (backend == Backend::maxflow && mode != SemanticsMode::station_throughput) {
    throw UnsupportedCombination("the maxflow backend supports station-throughput semantics only; use --backend lp for " +
                                 std::string(to_string(mode)));
  }
  return solve_flow(net, apply_scenario(net, model, assignment, mode), backend);
}

double flow_residual(const PlantNetwork& net, const EffectiveCapacities& caps,
                     const FlowSolution& solution) {
  const FlowLp model = build_lp(net, caps);
  std::vector<double> x(model.program.num_vars, 0.0);
  std::copy(solution.edge_flows.begin(), solution.edge_flows.end(), x.begin());
  for (std::size_t s = 0; s < model.stations.size(); ++s) {
    x[model.first_station_column + s] = solution.station_throughput.at(model.stations[s]);
  }
  x[model.u_column] = solution.max_flow;
  return std::max(lp::max_equality_residual(model.program, x),
                  lp::max_bound_violation(model.program, x));
}

struct SystemFunction::Workspace {
  EffectiveCapacities caps;
  detail::Dinic dinic;
};

struct SystemFunction::Impl {
  Impl(const PlantNetwork& n, const ComponentModel& model, SemanticsMode m, Backend b)
      : net(n), scenarios(n, model), mode(m), backend(b) {
    if (backend == Backend::maxflow) {
      if (mode != SemanticsMode::station_throughput) {
        throw UnsupportedCombination("the maxflow backend supports station-throughput semantics only");
      }
      EffectiveCapacities caps;
      scenarios.apply(ComponentAssignment::all_functional(model).states(), mode, caps);
      topology = build_layered_graph(net, caps);
    }
  }

  PlantNetwork net;
  ScenarioMap scenarios;
  SemanticsMode mode;
  Backend backend;
  LayeredGraph topology;
};

SystemFunction::SystemFunction(const PlantNetwork& net, const ComponentModel& model,
                               SemanticsMode mode, Backend backend)
    : impl_(std::make_unique<Impl>(net, model, mode, backend)) {}

SystemFunction::~SystemFunction() = default;
SystemFunction::SystemFunction(SystemFunction&&) noexcept = default;
SystemFunction& SystemFunction::operator=(SystemFunction&&) noexcept = default;

void SystemFunction::WorkspaceDeleter::operator()(Workspace* ws) const { delete ws; }

SystemFunction::WorkspacePtr SystemFunction::make_workspace() const {
  return WorkspacePtr(new Workspace());
}

double SystemFunction::evaluate(std::span<const std::uint8_t> states, Workspace& ws) const {
  const Impl& s = *impl_;
  s.scenarios.apply(states, s.mode, ws.caps);
  if (s.backend == Backend::lp) return solve_flow(s.net, ws.caps, Backend::lp).max_flow;

  const LayeredGraph& g = s.topology;
  ws.dinic.reset(static_cast<int>(g.vertices.size()));
  for (const LayeredArc& arc : g.arcs) {
    const double cap = arc.kind == ArcKind::edge ? ws.caps.edge_cap[arc.ref] : ws.caps.station_cap[arc.ref];
    if (cap > 0.0) ws.dinic.add_arc(arc.from, arc.to, cap);
  }
  return ws.dinic.run(g.source, g.sink, MaxFlowOptions{}.residual_epsilon);
}

std::size_t SystemFunction::rv_count() const { return impl_->scenarios.rv_count(); }
SemanticsMode SystemFunction::mode() const { return impl_->mode; }
Backend SystemFunction::backend() const { return impl_->backend; }

}  // namespace plantflow
