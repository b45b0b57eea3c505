#include <algorithm>

#include "plantflow/errors.hpp"
#include "plantflow/fault_tree.hpp"

namespace plantflow {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::or_gate: return "or";
    case GateKind::and_gate: return "and";
    case GateKind::k_of_n: return "k-of-n";
  }
  return "?";
}

std::string_view to_string(TreeOutcome outcome) {
  return outcome == TreeOutcome::fail ? "fail" : "survive";
}

std::size_t FaultTree::add_event(std::string name, std::string rv_id) {
  for (const auto& n : nodes_) {
    if (n.is_event && n.rv_id == rv_id) {
      throw StructuralError("rv '" + rv_id + "' already has a basic event");
    }
  }
  FaultTreeNode node;
  node.name = std::move(name);
  node.is_event = true;
  node.rv_id = std::move(rv_id);
  nodes_.push_back(std::move(node));
  used_.push_back(false);
  return nodes_.size() - 1;
}

std::size_t FaultTree::add_gate(std::string name, GateKind kind, std::vector<std::size_t> inputs,
                                std::size_t k) {
  if (inputs.empty()) throw StructuralError("gate '" + name + "' has no inputs");
  for (std::size_t in : inputs) {
    if (in >= nodes_.size()) throw StructuralError("gate '" + name + "' references an unknown node");
    if (used_[in]) {
      throw StructuralError("node '" + nodes_[in].name + "' already feeds another gate");
    }
  }
  if (kind == GateKind::k_of_n && (k < 1 || k > inputs.size())) {
    throw StructuralError("gate '" + name + "' needs 1 <= k <= " + std::to_string(inputs.size()));
  }
  for (std::size_t in : inputs) used_[in] = true;
  FaultTreeNode node;
  node.name = std::move(name);
  node.kind = kind;
  node.k = k;
  node.inputs = std::move(inputs);
  nodes_.push_back(std::move(node));
  used_.push_back(false);
  return nodes_.size() - 1;
}

void FaultTree::set_root(std::size_t node) {
  if (node >= nodes_.size() || used_[node]) throw StructuralError("root must be a top-level node");
  root_ = node;
}

std::size_t FaultTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const FaultTreeNode& n) { return n.is_event; }));
}

std::size_t FaultTree::find(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return i;
  }
  throw StructuralError("no fault-tree node named '" + std::string(name) + "'");
}

FaultTree didactic_fault_tree() {
  FaultTree ft;
  auto events = [&](std::initializer_list<const char*> ids) {
    std::vector<std::size_t> out;
    for (const char* id : ids) out.push_back(ft.add_event(id, id));
    return out;
  };
  const auto unloading = ft.add_gate("unloading", GateKind::or_gate, events({"n1", "n2"}));
  const auto storage = ft.add_gate("storage", GateKind::k_of_n, events({"n5", "n7", "n9"}), 2);
  const auto vaporisation = ft.add_gate("vaporisation", GateKind::or_gate, events({"n10", "n12"}));
  const auto supply = ft.add_event("n14", "n14");
  const auto pipes = ft.add_gate(
      "pipes", GateKind::k_of_n,
      events({"p1-3", "p2-3", "p3-4", "p4-5", "p4-6", "p4-10", "p6-7", "p6-8", "p8-9", "p8-12",
              "p10-11", "p11-12", "p12-13", "p13-14"}),
      7);
  ft.set_root(ft.add_gate("system", GateKind::or_gate, {unloading, storage, vaporisation, supply, pipes}));
  return ft;
}

namespace {

std::vector<std::size_t> resolve_leaves(const FaultTree& tree, const ComponentModel& model) {
  std::vector<std::size_t> rv(tree.nodes().size(), 0);
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    const auto& node = tree.nodes()[i];
    if (!node.is_event) continue;
    const auto found = model.find(node.rv_id);
    if (!found) throw MappingError("fault-tree event '" + node.name + "' refers to unknown rv '" + node.rv_id + "'");
    rv[i] = *found;
  }
  return rv;
}

}  // namespace

TreeOutcome evaluate_state(const FaultTree& tree, const ComponentModel& model,
                           const ComponentAssignment& assignment) {
  if (assignment.size() != model.size()) {
    throw MappingError("assignment covers " + std::to_string(assignment.size()) + " rvs, model has " +
                       std::to_string(model.size()));
  }
  const auto rv = resolve_leaves(tree, model);
  std::vector<bool> failed(tree.nodes().size(), false);
  // Inputs always precede their gate, so index order is bottom-up.
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    const auto& node = tree.nodes()[i];
    if (node.is_event) {
      failed[i] = !assignment.functional(rv[i]);
      continue;
    }
    const auto down = static_cast<std::size_t>(
        std::count_if(node.inputs.begin(), node.inputs.end(), [&](std::size_t in) { return failed[in]; }));
    switch (node.kind) {
      case GateKind::or_gate: failed[i] = down >= 1; break;
      case GateKind::and_gate: failed[i] = down == node.inputs.size(); break;
      case GateKind::k_of_n: failed[i] = down >= node.k; break;
    }
  }
  return failed[tree.root()] ? TreeOutcome::fail : TreeOutcome::survive;
}

std::vector<double> gate_probabilities(const FaultTree& tree, const ComponentModel& model) {
  const auto rv = resolve_leaves(tree, model);
  std::vector<double> p(tree.nodes().size(), 0.0);
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    const auto& node = tree.nodes()[i];
    if (node.is_event) {
      p[i] = model.rvs[rv[i]].p_fail;
      continue;
    }
    switch (node.kind) {
      case GateKind::or_gate: {
        double survive = 1.0;
        for (std::size_t in : node.inputs) survive *= 1.0 - p[in];
        p[i] = 1.0 - survive;
        break;
      }
      case GateKind::and_gate: {
        double all = 1.0;
        for (std::size_t in : node.inputs) all *= p[in];
        p[i] = all;
        break;
      }
      case GateKind::k_of_n: {
        // dist[c] = P(exactly c failed so far), with counts >= k lumped at k.
        std::vector<double> dist(node.k + 1, 0.0);
        dist[0] = 1.0;
        for (std::size_t in : node.inputs) {
          const double f = p[in];
          dist[node.k] += dist[node.k - 1] * f;
          for (std::size_t c = node.k - 1; c > 0; --c) dist[c] = dist[c] * (1.0 - f) + dist[c - 1] * f;
          dist[0] *= 1.0 - f;
        }
        p[i] = dist[node.k];
        break;
      }
    }
  }
  return p;
}

double failure_probability(const FaultTree& tree, const ComponentModel& model) {
  return gate_probabilities(tree, model)[tree.root()];
}

}  // namespace plantflow
