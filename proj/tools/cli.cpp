#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <json.hpp>

#include "plantflow/datasets.hpp"
#include "plantflow/errors.hpp"
#include "plantflow/fault_tree.hpp"
#include "plantflow/flow.hpp"
#include "plantflow/reliability.hpp"

namespace plantflow::cli {

namespace {

using Json = nlohmann::ordered_json;

// Raised when a computed result breaks an invariant the library promises.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv, table };

struct Options {
  std::string builtin;
  std::string network_path;
  std::optional<double> target;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  std::string semantics;
  std::string backend;
  unsigned workers = 1;
  std::string format = "json";
  std::string output;
  std::vector<std::string> failed;
  std::size_t top = 6;
  std::size_t bottom = 6;
  bool full = false;
  std::optional<double> p_fail;
  std::string pairing = "common";
  bool timing = false;
};

struct Context {
  NetworkDocument doc;
  SemanticsMode mode = SemanticsMode::station_throughput;
  Backend backend = Backend::maxflow;
  double target = 0.0;
  Format format = Format::json;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

// Left-aligned text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::string line;
      for (std::size_t c = 0; c < rows_[r].size(); ++c) {
        line += rows_[r][c];
        if (c + 1 < rows_[r].size()) line += std::string(width[c] - rows_[r][c].size() + 2, ' ');
      }
      os << line << "\n";
      if (r == 0) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
        os << std::string(total, '-') << "\n";
      }
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "table") return Format::table;
  throw Error("unknown format '" + s + "' (expected json, csv or table)");
}

Context load_context(const Options& o) {
  if (o.builtin.empty() == o.network_path.empty()) {
    throw Error("exactly one of --builtin or --network is required");
  }
  Context ctx;
  ctx.doc = o.builtin.empty() ? load_network_file(o.network_path) : builtin(o.builtin);
  if (o.p_fail) {
    if (!(*o.p_fail >= 0.0 && *o.p_fail <= 1.0)) throw Error("--p-fail must lie in [0,1]");
    for (auto& rv : ctx.doc.model.rvs) rv.p_fail = *o.p_fail;
  }
  ctx.mode = o.semantics.empty() ? ctx.doc.analysis.mode : parse_semantics(o.semantics);
  if (!o.backend.empty()) {
    ctx.backend = parse_backend(o.backend);
  } else {
    // The layered graph only realises station-throughput semantics.
    ctx.backend = ctx.mode == SemanticsMode::station_throughput ? Backend::maxflow : Backend::lp;
  }
  if (ctx.backend == Backend::maxflow && ctx.mode != SemanticsMode::station_throughput) {
    throw UnsupportedCombination("--backend maxflow supports station-throughput semantics only; use --backend lp");
  }
  ctx.target = o.target.value_or(ctx.doc.analysis.target_flow);
  ctx.format = parse_format(o.format);
  return ctx;
}

std::string source_name(const Context& ctx, const Options& o) {
  return o.builtin.empty() ? (ctx.doc.name.empty() ? o.network_path : ctx.doc.name) : o.builtin;
}

std::vector<std::string> sample_warnings(std::uint64_t failures, std::uint64_t n) {
  if (std::min(failures, n - failures) < 5) {
    return {"fewer than 5 failures or survivals among " + std::to_string(n) +
            " samples; the normal-approximation standard error is unreliable"};
  }
  return {};
}

void emit_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

std::string render_maxflow(const Context& ctx, const Options& o) {
  const PlantNetwork& net = ctx.doc.network;
  const auto assignment = ComponentAssignment::with_failed(ctx.doc.model, o.failed);
  const auto caps = apply_scenario(net, ctx.doc.model, assignment, ctx.mode);
  const FlowSolution sol = solve_flow(net, caps, ctx.backend);
  const double residual = flow_residual(net, caps, sol);
  double scale = 1.0;
  for (double c : caps.edge_cap) scale = std::max(scale, c);
  if (residual > 1e-9 * scale) {
    throw InvariantViolation("flow violates conservation or bounds by " + num(residual));
  }
  const auto stages = net.station_stages();

  std::ostringstream os;
  if (ctx.format == Format::json) {
    Json j;
    j["command"] = "maxflow";
    j["network"] = source_name(ctx, o);
    j["semantics"] = std::string(to_string(ctx.mode));
    j["backend"] = std::string(to_string(ctx.backend));
    j["failed"] = o.failed;
    j["max_flow"] = sol.max_flow;
    j["iterations"] = sol.iterations;
    Json edges = Json::array();
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      const Edge& edge = net.edges[e];
      edges.push_back({{"id", edge.id}, {"tail", edge.tail}, {"head", edge.head}, {"stage", edge.stage},
                       {"capacity", caps.edge_cap[e]}, {"flow", sol.edge_flows[e]}});
    }
    j["edges"] = std::move(edges);
    Json stations = Json::array();
    for (const auto& stage : net.stations) {
      for (NodeIndex s : stage) {
        Json row = {{"node", s}, {"stage", stages[s]}, {"throughput", sol.station_throughput[s]}};
        if (ctx.mode == SemanticsMode::station_throughput) row["capacity"] = caps.station_cap[s];
        stations.push_back(std::move(row));
      }
    }
    j["stations"] = std::move(stations);
    os << j.dump(2) << "\n";
  } else if (ctx.format == Format::csv) {
    os << "kind,id,tail,head,stage,capacity,flow\n";
    os << "total,u,,,,," << num(sol.max_flow) << "\n";
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      const Edge& edge = net.edges[e];
      os << "edge," << csv_field(edge.id) << "," << edge.tail << "," << edge.head << "," << edge.stage << ","
         << num(caps.edge_cap[e]) << "," << num(sol.edge_flows[e]) << "\n";
    }
    for (const auto& stage : net.stations) {
      for (NodeIndex s : stage) {
        os << "station,n" << s << ",,," << stages[s] << ","
           << (ctx.mode == SemanticsMode::station_throughput ? num(caps.station_cap[s]) : "") << ","
           << num(sol.station_throughput[s]) << "\n";
      }
    }
  } else {
    os << "network    " << source_name(ctx, o) << "\n";
    os << "semantics  " << to_string(ctx.mode) << "\n";
    os << "backend    " << to_string(ctx.backend) << "\n";
    os << "failed     " << (o.failed.empty() ? "(none)" : join(o.failed, ", ")) << "\n";
    os << "max flow   " << num(sol.max_flow) << "\n\n";
    Table t({"edge", "(i,j,m)", "capacity", "flow"});
    const std::size_t limit = o.full ? net.edges.size() : std::min<std::size_t>(net.edges.size(), 50);
    for (std::size_t e = 0; e < limit; ++e) {
      const Edge& edge = net.edges[e];
      t.add({edge.id,
             "(" + std::to_string(edge.tail) + "," + std::to_string(edge.head) + "," + std::to_string(edge.stage) + ")",
             num(caps.edge_cap[e]), num(sol.edge_flows[e])});
    }
    t.print(os);
    if (limit < net.edges.size()) {
      os << "... " << net.edges.size() - limit << " more edges (use --full)\n";
    }
  }
  return os.str();
}

ReliabilityQuery make_query(const Context& ctx, const Options& o) {
  ReliabilityQuery q;
  q.target_flow = ctx.target;
  q.n_samples = o.samples;
  q.seed = o.seed;
  q.mode = ctx.mode;
  q.backend = ctx.backend;
  q.workers = o.workers;
  return q;
}

Json report_json(const ReliabilityReport& r) {
  return {{"target_flow", r.target_flow}, {"samples", r.n_samples}, {"seed", r.seed},
          {"semantics", std::string(to_string(r.mode))}, {"backend", std::string(to_string(r.backend))},
          {"failures", r.failures}, {"p_fail_hat", r.p_fail_hat}, {"std_error", r.std_error}};
}

std::string render_reliability(const Context& ctx, const Options& o, std::ostream& err) {
  const ReliabilityReport r = estimate_failure_probability(ctx.doc.network, ctx.doc.model, make_query(ctx, o));
  if (!(r.p_fail_hat >= 0.0 && r.p_fail_hat <= 1.0) || r.std_error < 0.0) {
    throw InvariantViolation("failure probability estimate out of range");
  }
  const auto warnings = sample_warnings(r.failures, r.n_samples);
  emit_warnings(warnings, err);
  std::ostringstream os;
  if (ctx.format == Format::json) {
    Json j;
    j["command"] = "reliability";
    j["network"] = source_name(ctx, o);
    const Json body = report_json(r);
    for (const auto& item : body.items()) j[item.key()] = item.value();
    j["warnings"] = warnings;
    if (o.timing) j["timing"] = {{"elapsed_seconds", r.elapsed_seconds}};
    os << j.dump(2) << "\n";
  } else if (ctx.format == Format::csv) {
    os << "network,target_flow,samples,seed,semantics,backend,failures,p_fail_hat,std_error"
       << (o.timing ? ",elapsed_seconds" : "") << "\n";
    os << csv_field(source_name(ctx, o)) << "," << num(r.target_flow) << "," << r.n_samples << "," << r.seed << ","
       << to_string(r.mode) << "," << to_string(r.backend) << "," << r.failures << "," << num(r.p_fail_hat) << ","
       << num(r.std_error);
    if (o.timing) os << "," << num(r.elapsed_seconds);
    os << "\n";
  } else {
    os << "network      " << source_name(ctx, o) << "\n";
    os << "target flow  " << num(r.target_flow) << "\n";
    os << "semantics    " << to_string(r.mode) << "\n";
    os << "backend      " << to_string(r.backend) << "\n";
    os << "samples      " << r.n_samples << " (seed " << r.seed << ")\n";
    os << "failures     " << r.failures << "\n";
    os << "P(failure)   " << num(r.p_fail_hat) << " +- " << num(r.std_error) << "\n";
    if (o.timing) os << "elapsed      " << num(r.elapsed_seconds) << " s\n";
  }
  return os.str();
}

std::string render_importance(const Context& ctx, const Options& o, std::ostream& err) {
  const ImportanceReport rep =
      birnbaum_importance(ctx.doc.network, ctx.doc.model, make_query(ctx, o), parse_pairing(o.pairing));
  const RankedComponents ranked = rank_components(rep, o.top, o.bottom);
  auto warnings = sample_warnings(rep.system.failures, rep.system.n_samples);
  if (ranked.truncated) warnings.push_back("requested more components than the model defines; lists truncated");
  emit_warnings(warnings, err);

  auto ids = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    for (std::size_t i : idx) out.push_back(rep.components[i].rv_id);
    return out;
  };
  std::ostringstream os;
  if (ctx.format == Format::json) {
    Json j;
    j["command"] = "importance";
    j["network"] = source_name(ctx, o);
    j["pairing"] = std::string(to_string(rep.pairing));
    j["system"] = report_json(rep.system);
    Json comps = Json::array();
    for (std::size_t r = 0; r < rep.ranking.size(); ++r) {
      const auto& c = rep.components[rep.ranking[r]];
      comps.push_back({{"rank", r + 1}, {"id", c.rv_id}, {"birnbaum", c.birnbaum}, {"std_error", c.std_error},
                       {"p_survive_up", c.p_survive_up}, {"p_survive_down", c.p_survive_down}});
    }
    j["components"] = std::move(comps);
    j["top"] = ids(ranked.top);
    j["bottom"] = ids(ranked.bottom);
    j["truncated"] = ranked.truncated;
    j["warnings"] = warnings;
    if (o.timing) j["timing"] = {{"elapsed_seconds", rep.system.elapsed_seconds}};
    os << j.dump(2) << "\n";
  } else if (ctx.format == Format::csv) {
    os << "rank,id,birnbaum,std_error,p_survive_up,p_survive_down\n";
    for (std::size_t r = 0; r < rep.ranking.size(); ++r) {
      const auto& c = rep.components[rep.ranking[r]];
      os << r + 1 << "," << csv_field(c.rv_id) << "," << num(c.birnbaum) << "," << num(c.std_error) << ","
         << num(c.p_survive_up) << "," << num(c.p_survive_down) << "\n";
    }
  } else {
    os << "network      " << source_name(ctx, o) << "\n";
    os << "P(failure)   " << num(rep.system.p_fail_hat) << " +- " << num(rep.system.std_error) << " ("
       << rep.system.n_samples << " samples, seed " << rep.system.seed << ", " << to_string(rep.pairing)
       << " pairing)\n";
    if (!ranked.top.empty()) os << "top " << ranked.top.size() << "        " << join(ids(ranked.top), ", ") << "\n";
    if (!ranked.bottom.empty()) {
      os << "bottom " << ranked.bottom.size() << "     " << join(ids(ranked.bottom), ", ") << "\n";
    }
    os << "\n";
    Table t({"rank", "rv", "birnbaum", "std error", "P(S=1|up)", "P(S=1|down)"});
    for (std::size_t r = 0; r < rep.ranking.size(); ++r) {
      const auto& c = rep.components[rep.ranking[r]];
      t.add({std::to_string(r + 1), c.rv_id, num(c.birnbaum), num(c.std_error), num(c.p_survive_up),
             num(c.p_survive_down)});
    }
    t.print(os);
    if (o.timing) os << "elapsed      " << num(rep.system.elapsed_seconds) << " s\n";
  }
  return os.str();
}

struct ContrastRow {
  std::string label;
  std::vector<std::string> failed;
  TreeOutcome tree;
  double max_flow;
  bool flow_fails;
};

std::string render_faulttree(const Context& ctx, const Options& o) {
  const FaultTree tree = didactic_fault_tree();
  const auto probs = gate_probabilities(tree, ctx.doc.model);
  const std::vector<std::pair<std::string, std::vector<std::string>>> scenarios = {
      {"all functional", {}},
      {"n9 and pipe (8,9) failed", {"n9", "p8-9"}},
      {"n9 and pipe (4,5) failed", {"n9", "p4-5"}},
  };
  std::vector<ContrastRow> rows;
  for (const auto& [label, failed] : scenarios) {
    const auto a = ComponentAssignment::with_failed(ctx.doc.model, failed);
    const double u = max_processable_flow(ctx.doc.network, ctx.doc.model, a, ctx.mode, ctx.backend).max_flow;
    rows.push_back({label, failed, evaluate_state(tree, ctx.doc.model, a), u, system_fails(u, ctx.target)});
  }
  std::ostringstream os;
  if (ctx.format == Format::json) {
    Json j;
    j["command"] = "faulttree";
    j["network"] = source_name(ctx, o);
    j["failure_probability"] = probs[tree.root()];
    Json gates = Json::array();
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
      const auto& n = tree.nodes()[i];
      if (n.is_event) continue;
      Json g = {{"name", n.name}, {"kind", std::string(to_string(n.kind))}, {"inputs", n.inputs.size()}};
      if (n.kind == GateKind::k_of_n) g["k"] = n.k;
      g["failure_probability"] = probs[i];
      gates.push_back(std::move(g));
    }
    j["gates"] = std::move(gates);
    j["target_flow"] = ctx.target;
    j["semantics"] = std::string(to_string(ctx.mode));
    j["backend"] = std::string(to_string(ctx.backend));
    Json contrast = Json::array();
    for (const auto& r : rows) {
      contrast.push_back({{"scenario", r.label}, {"failed", r.failed},
                          {"fault_tree", std::string(to_string(r.tree))}, {"max_flow", r.max_flow},
                          {"flow_function", r.flow_fails ? "fail" : "survive"}});
    }
    j["contrast"] = std::move(contrast);
    os << j.dump(2) << "\n";
  } else if (ctx.format == Format::csv) {
    os << "kind,name,detail,failure_probability,max_flow,fault_tree,flow_function\n";
    os << "tree,system,,"
       << num(probs[tree.root()]) << ",,,\n";
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
      const auto& n = tree.nodes()[i];
      if (n.is_event) continue;
      const std::string detail = n.kind == GateKind::k_of_n
                                     ? std::to_string(n.k) + "-of-" + std::to_string(n.inputs.size())
                                     : std::string(to_string(n.kind));
      os << "gate," << n.name << "," << detail << "," << num(probs[i]) << ",,,\n";
    }
    for (const auto& r : rows) {
      os << "scenario," << csv_field(r.label) << "," << csv_field(join(r.failed, " ")) << ",," << num(r.max_flow)
         << "," << to_string(r.tree) << "," << (r.flow_fails ? "fail" : "survive") << "\n";
    }
  } else {
    os << "fault tree failure probability  " << num(probs[tree.root()]) << "\n\n";
    Table gates({"gate", "kind", "P(fail)"});
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
      const auto& n = tree.nodes()[i];
      if (n.is_event) continue;
      gates.add({n.name,
                 n.kind == GateKind::k_of_n ? std::to_string(n.k) + "-of-" + std::to_string(n.inputs.size())
                                            : std::string(to_string(n.kind)),
                 num(probs[i])});
    }
    gates.print(os);
    os << "\n";
    Table t({"scenario", "fault tree", "u*", "flow function (target " + num(ctx.target) + ")"});
    for (const auto& r : rows) {
      t.add({r.label, std::string(to_string(r.tree)), num(r.max_flow), r.flow_fails ? "fail" : "survive"});
    }
    t.print(os);
  }
  return os.str();
}

std::string render_validate(const Context& ctx, const Options& o) {
  // Loading already validated; report the counts.
  const auto& net = ctx.doc.network;
  std::ostringstream os;
  if (ctx.format == Format::json) {
    Json j = {{"command", "validate"}, {"network", source_name(ctx, o)}, {"valid", true},
              {"nodes", net.node_count}, {"stages", net.stage_count}, {"stations", net.station_count()},
              {"edges", net.edges.size()}, {"components", ctx.doc.model.size()}};
    os << j.dump(2) << "\n";
  } else if (ctx.format == Format::csv) {
    os << "network,valid,nodes,stages,stations,edges,components\n"
       << csv_field(source_name(ctx, o)) << ",true," << net.node_count << "," << net.stage_count << ","
       << net.station_count() << "," << net.edges.size() << "," << ctx.doc.model.size() << "\n";
  } else {
    os << source_name(ctx, o) << ": valid (" << net.node_count << " nodes, " << net.stage_count << " stages, "
       << net.station_count() << " stations, " << net.edges.size() << " edges, " << ctx.doc.model.size()
       << " components)\n";
  }
  return os.str();
}

void write_output(const std::string& text, const Options& o, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw Error("cannot write " + o.output);
  f << text;
}

void add_source(CLI::App* cmd, Options& o) {
  auto* b = cmd->add_option("--builtin", o.builtin, "Embedded network: " + join(builtin_names(), ", "));
  auto* n = cmd->add_option("--network", o.network_path, "Network document (JSON)");
  b->excludes(n);
  cmd->add_option("--semantics", o.semantics, "station-throughput (default), edge-min or edge-max");
  cmd->add_option("--backend", o.backend, "maxflow (default) or lp");
  cmd->add_option("--p-fail", o.p_fail, "Override every component's failure probability");
  cmd->add_option("--format", o.format, "json (default), csv or table");
  cmd->add_option("--output,-o", o.output, "Write the result here instead of standard output");
}

void add_sampling(CLI::App* cmd, Options& o) {
  cmd->add_option("--target", o.target, "Target flow; the system fails below it");
  cmd->add_option("--samples", o.samples, "Monte-Carlo samples")->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--workers", o.workers, "Sampling threads")->check(CLI::Range(1u, 1024u));
  cmd->add_flag("--timing", o.timing, "Include elapsed time in the report");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Maximum processable flow and reliability of multi-stage process plants", "plantflow");
  app.require_subcommand(1);

  auto* maxflow = app.add_subcommand("maxflow", "Maximum processable flow for one scenario");
  add_source(maxflow, o);
  maxflow->add_option("--fail", o.failed, "Failed component id (repeatable)");
  maxflow->add_flag("--full", o.full, "List every edge in table output");

  auto* reliability = app.add_subcommand("reliability", "Monte-Carlo failure probability");
  add_source(reliability, o);
  add_sampling(reliability, o);

  auto* importance = app.add_subcommand("importance", "Birnbaum importance of every component");
  add_source(importance, o);
  add_sampling(importance, o);
  importance->add_option("--top", o.top, "Number of highest-ranked components to list");
  importance->add_option("--bottom", o.bottom, "Number of lowest-ranked components to list");
  importance->add_option("--pairing", o.pairing, "common (default) or independent random streams");

  auto* faulttree = app.add_subcommand("faulttree", "Didactic fault-tree baseline and contrast table");
  add_source(faulttree, o);
  faulttree->add_option("--target", o.target, "Target flow for the flow-function column");

  auto* exporter = app.add_subcommand("export", "Write a network document in canonical form");
  auto* eb = exporter->add_option("--builtin", o.builtin, "Embedded network");
  auto* en = exporter->add_option("--network", o.network_path, "Network document to canonicalise");
  eb->excludes(en);
  exporter->add_option("--output,-o", o.output, "Destination file");

  auto* validate = app.add_subcommand("validate", "Check a network document");
  add_source(validate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      for (auto* sub : app.get_subcommands()) out << sub->help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (exporter->parsed()) {
      if (o.builtin.empty() == o.network_path.empty()) throw Error("exactly one of --builtin or --network is required");
      const NetworkDocument doc = o.builtin.empty() ? load_network_file(o.network_path) : builtin(o.builtin);
      write_output(save_network(doc), o, out);
      return kExitOk;
    }
    const Context ctx = load_context(o);
    std::string text;
    if (maxflow->parsed()) {
      text = render_maxflow(ctx, o);
    } else if (reliability->parsed()) {
      text = render_reliability(ctx, o, err);
    } else if (importance->parsed()) {
      text = render_importance(ctx, o, err);
    } else if (faulttree->parsed()) {
      text = render_faulttree(ctx, o);
    } else {
      text = render_validate(ctx, o);
    }
    write_output(text, o, out);
    return kExitOk;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace plantflow::cli
