#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "plantflow/datasets.hpp"
#include "plantflow/errors.hpp"
#include "plantflow/flow.hpp"

using namespace plantflow;

namespace {

constexpr SemanticsMode kModes[] = {SemanticsMode::station_throughput, SemanticsMode::edge_min,
                                    SemanticsMode::edge_max};

struct Scenario {
  const char* label;
  std::vector<std::string> failed;
};

const std::vector<Scenario>& didactic_scenarios() {
  static const std::vector<Scenario> s = {
      {"all functional", {}},
      {"n9 and pipe (8,9)", {"n9", "p8-9"}},
      {"n9 and pipe (4,5)", {"n9", "p4-5"}},
  };
  return s;
}

double solve(const NetworkDocument& doc, const std::vector<std::string>& failed, SemanticsMode mode,
             Backend backend) {
  return max_processable_flow(doc.network, doc.model, ComponentAssignment::with_failed(doc.model, failed), mode,
                              backend)
      .max_flow;
}

std::vector<std::uint8_t> random_states(std::mt19937_64& rng, std::size_t n, double p_down) {
  std::bernoulli_distribution down(p_down);
  std::vector<std::uint8_t> x(n);
  for (auto& v : x) v = down(rng) ? 0 : 1;
  return x;
}

}  // namespace

TEST_CASE("didactic scenarios in every mode") {
  const auto doc = builtin("didactic");
  // Frozen from hand calculation; the oracle recomputes them independently.
  const double expected[3][3] = {
      {1.0, 1.0, 0.5},  // station-throughput
      {0.5, 0.5, 0.5},  // edge-min
      {1.0, 1.0, 1.0},  // edge-max
  };
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& sc = didactic_scenarios()[s];
      INFO(to_string(kModes[m]) << " / " << sc.label);
      const double lp = solve(doc, sc.failed, kModes[m], Backend::lp);
      CHECK(std::abs(lp - expected[m][s]) <= 1e-9);
      CHECK(std::abs(lp - oracle::max_flow(doc.network, oracle::failures_from_ids(doc.model, sc.failed), kModes[m])) <=
            1e-9);
      if (kModes[m] == SemanticsMode::station_throughput) {
        CHECK(std::abs(solve(doc, sc.failed, kModes[m], Backend::maxflow) - expected[m][s]) <= 1e-9);
      }
    }
  }
}

TEST_CASE("didactic LP shape") {
  const auto doc = builtin("didactic");
  const auto caps = apply_scenario(doc.network, doc.model, ComponentAssignment::all_functional(doc.model),
                                   SemanticsMode::station_throughput);
  const auto flp = build_lp(doc.network, caps);
  CHECK(flp.program.num_vars == 21 + 8 + 1);
  CHECK(flp.first_station_column == 21);
  CHECK(flp.u_column == 29);
  CHECK(flp.stations.size() == 8);
  CHECK_NOTHROW(lp::check_structure(flp.program));
}

TEST_CASE("two-stage example is bounded by the pipe") {
  PlantNetwork net;
  net.node_count = 2;
  net.stage_count = 2;
  net.stations = {{1}, {2}};
  net.node_capacity = {{1, 1.0}, {2, 1.0}};
  net.edges = {{"e1", 1, 2, 1, 0.7}};
  const ComponentModel model{{{"pipe", 0.1, {EdgeAsset{"e1"}}}}};
  const auto ok = ComponentAssignment::all_functional(model);
  for (auto backend : {Backend::lp, Backend::maxflow}) {
    const auto sol = max_processable_flow(net, model, ok, SemanticsMode::station_throughput, backend);
    CHECK(sol.max_flow == doctest::Approx(0.7).epsilon(1e-12));
    REQUIRE(sol.edge_flows.size() == 1);
    CHECK(sol.edge_flows[0] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(sol.station_throughput[1] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(sol.station_throughput[2] == doctest::Approx(0.7).epsilon(1e-12));
  }
}

TEST_CASE("single-stage network flows straight through its stations") {
  PlantNetwork net;
  net.node_count = 2;
  net.stage_count = 1;
  net.stations = {{1, 2}};
  net.node_capacity = {{1, 0.3}, {2, 0.4}};
  const ComponentModel model{{{"a", 0.1, {NodeAsset{1}}}}};
  for (auto backend : {Backend::lp, Backend::maxflow}) {
    CHECK(max_processable_flow(net, model, ComponentAssignment::all_functional(model),
                               SemanticsMode::station_throughput, backend)
              .max_flow == doctest::Approx(0.7));
  }
}

TEST_CASE("layered graph of the didactic network") {
  const auto doc = builtin("didactic");
  const auto caps = apply_scenario(doc.network, doc.model, ComponentAssignment::all_functional(doc.model),
                                   SemanticsMode::station_throughput);
  const auto g = build_layered_graph(doc.network, caps);
  int edges = 0;
  int sources = 0;
  int bridges = 0;
  int sinks = 0;
  for (const auto& a : g.arcs) {
    switch (a.kind) {
      case ArcKind::edge: ++edges; break;
      case ArcKind::source: ++sources; CHECK(a.capacity == 0.5); break;
      case ArcKind::bridge: ++bridges; CHECK(a.capacity == 0.5); break;
      case ArcKind::sink: ++sinks; CHECK(a.capacity == 1.0); break;
    }
  }
  CHECK(edges == 21);
  CHECK(sources == 2);
  CHECK(bridges == 5);
  CHECK(sinks == 1);
  CHECK(max_flow(g).value == doctest::Approx(1.0));

  auto edge_caps = caps;
  edge_caps.mode = SemanticsMode::edge_min;
  CHECK_THROWS_AS(build_layered_graph(doc.network, edge_caps), UnsupportedCombination);
}

TEST_CASE("losing a whole stage stops the plant") {
  const auto doc = builtin("didactic");
  for (const auto& failed : {std::vector<std::string>{"n1", "n2"}, std::vector<std::string>{"n5", "n7", "n9"},
                             std::vector<std::string>{"n14"}}) {
    for (auto backend : {Backend::lp, Backend::maxflow}) {
      CHECK(solve(doc, failed, SemanticsMode::station_throughput, backend) == 0.0);
    }
  }
}

TEST_CASE("maxflow backend refuses edge semantics") {
  const auto doc = builtin("didactic");
  const auto ok = ComponentAssignment::all_functional(doc.model);
  CHECK_THROWS_AS(max_processable_flow(doc.network, doc.model, ok, SemanticsMode::edge_min, Backend::maxflow),
                  UnsupportedCombination);
  CHECK_THROWS_AS(SystemFunction(doc.network, doc.model, SemanticsMode::edge_max, Backend::maxflow),
                  UnsupportedCombination);
}

TEST_CASE("all-functional throughput of the case studies") {
  for (const char* name : {"pressure-original", "pressure-expanded"}) {
    const auto doc = builtin(name);
    for (auto backend : {Backend::lp, Backend::maxflow}) {
      CHECK(std::abs(solve(doc, {}, SemanticsMode::station_throughput, backend) - 145.0) <= 1e-6);
    }
  }
  const auto gas = builtin("gas");
  // Node 53 enters layer 2 only through the 0.25 pipe from node 38.
  CHECK(std::abs(solve(gas, {}, SemanticsMode::station_throughput, Backend::maxflow) - 0.75) <= 1e-9);
  CHECK(std::abs(solve(gas, {}, SemanticsMode::edge_min, Backend::lp) - 0.75) <= 1e-9);
  CHECK(std::abs(solve(gas, {}, SemanticsMode::edge_max, Backend::lp) - 1.0) <= 1e-9);
  CHECK(std::abs(oracle::max_flow(gas.network, {}, SemanticsMode::station_throughput) - 0.75) <= 1e-9);
}

TEST_CASE("backends agree and match the oracle on random scenarios") {
  std::mt19937_64 rng(11);
  for (const auto& name : builtin_names()) {
    const auto doc = builtin(name);
    const SystemFunction lp_fn(doc.network, doc.model, SemanticsMode::station_throughput, Backend::lp);
    const SystemFunction mf_fn(doc.network, doc.model, SemanticsMode::station_throughput, Backend::maxflow);
    auto lp_ws = lp_fn.make_workspace();
    auto mf_ws = mf_fn.make_workspace();
    for (int trial = 0; trial < 200; ++trial) {
      const auto x = random_states(rng, doc.model.size(), trial % 2 ? 0.05 : 0.3);
      const double a = lp_fn.evaluate(x, *lp_ws);
      const double b = mf_fn.evaluate(x, *mf_ws);
      INFO(name << " trial " << trial);
      CHECK(std::abs(a - b) <= 1e-9);
      if (trial % 10 == 0) {
        CHECK(std::abs(b - oracle::max_flow(doc.network, oracle::failures_of(doc.model, x),
                                            SemanticsMode::station_throughput)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("edge modes match the oracle") {
  std::mt19937_64 rng(12);
  for (const char* name : {"didactic", "pressure-original", "gas"}) {
    const auto doc = builtin(name);
    for (auto mode : {SemanticsMode::edge_min, SemanticsMode::edge_max}) {
      const SystemFunction fn(doc.network, doc.model, mode, Backend::lp);
      auto ws = fn.make_workspace();
      for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_states(rng, doc.model.size(), 0.1);
        CHECK(std::abs(fn.evaluate(x, *ws) - oracle::max_flow(doc.network, oracle::failures_of(doc.model, x), mode)) <=
              1e-9);
      }
    }
  }
}

TEST_CASE("pruning zero arcs does not change the value") {
  std::mt19937_64 rng(13);
  const auto doc = builtin("pressure-expanded");
  const ScenarioMap map(doc.network, doc.model);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_states(rng, doc.model.size(), 0.2);
    EffectiveCapacities caps;
    map.apply(x, SemanticsMode::station_throughput, caps);
    const auto g = build_layered_graph(doc.network, caps);
    MaxFlowOptions keep;
    keep.prune_zero_arcs = false;
    const auto pruned = max_flow(g);
    const auto full = max_flow(g, keep);
    CHECK(std::abs(pruned.value - full.value) <= 1e-9);
    // Arc flows respect capacity and conserve at every inner vertex.
    std::vector<double> balance(g.vertices.size(), 0.0);
    for (std::size_t i = 0; i < g.arcs.size(); ++i) {
      CHECK(pruned.arc_flows[i] >= -1e-12);
      CHECK(pruned.arc_flows[i] <= g.arcs[i].capacity + 1e-12);
      balance[g.arcs[i].from] -= pruned.arc_flows[i];
      balance[g.arcs[i].to] += pruned.arc_flows[i];
    }
    for (std::size_t v = 0; v < balance.size(); ++v) {
      if (static_cast<int>(v) == g.source || static_cast<int>(v) == g.sink) continue;
      CHECK(std::abs(balance[v]) <= 1e-9);
    }
    CHECK(std::abs(balance[g.sink] - pruned.value) <= 1e-9);
  }
}

TEST_CASE("flow is bounded by every stage cut") {
  std::mt19937_64 rng(14);
  for (const auto& name : builtin_names()) {
    const auto doc = builtin(name);
    const ScenarioMap map(doc.network, doc.model);
    for (int trial = 0; trial < 30; ++trial) {
      const auto x = random_states(rng, doc.model.size(), 0.1);
      EffectiveCapacities caps;
      map.apply(x, SemanticsMode::station_throughput, caps);
      const auto sol = solve_flow(doc.network, caps, Backend::maxflow);
      for (const auto& stage : doc.network.stations) {
        double total = 0.0;
        for (NodeIndex k : stage) total += caps.station_cap[k];
        CHECK(sol.max_flow <= total + 1e-9);
      }
      for (int m = 1; m < doc.network.stage_count; ++m) {
        double total = 0.0;
        for (std::size_t e = 0; e < doc.network.edges.size(); ++e) {
          if (doc.network.edges[e].stage == m) total += caps.edge_cap[e];
        }
        CHECK(sol.max_flow <= total + 1e-9);
      }
      CHECK(flow_residual(doc.network, caps, sol) <= 1e-9);
      CHECK(flow_residual(doc.network, caps, solve_flow(doc.network, caps, Backend::lp)) <= 1e-9);
    }
  }
}

TEST_CASE("repairing a component never lowers the flow") {
  std::mt19937_64 rng(15);
  for (const auto& name : builtin_names()) {
    const auto doc = builtin(name);
    for (auto mode : kModes) {
      const Backend backend = mode == SemanticsMode::station_throughput ? Backend::maxflow : Backend::lp;
      const SystemFunction fn(doc.network, doc.model, mode, backend);
      auto ws = fn.make_workspace();
      for (int trial = 0; trial < 25; ++trial) {
        auto x = random_states(rng, doc.model.size(), 0.2);
        const double before = fn.evaluate(x, *ws);
        x[rng() % x.size()] = 1;
        CHECK(fn.evaluate(x, *ws) >= before - 1e-9);
      }
    }
  }
}

TEST_CASE("system function evaluation matches the one-shot solve") {
  const auto doc = builtin("didactic");
  const SystemFunction fn(doc.network, doc.model, SemanticsMode::station_throughput, Backend::maxflow);
  auto ws = fn.make_workspace();
  for (const auto& sc : didactic_scenarios()) {
    const auto a = ComponentAssignment::with_failed(doc.model, sc.failed);
    CHECK(fn.evaluate(a.states(), *ws) == solve(doc, sc.failed, SemanticsMode::station_throughput, Backend::maxflow));
  }
  CHECK(fn.rv_count() == doc.model.size());
  CHECK(parse_backend(to_string(Backend::lp)) == Backend::lp);
  CHECK_THROWS_AS(parse_backend("simplex"), Error);
}
