#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "plantflow/plant_model.hpp"

namespace plantflow {

enum class GateKind {
  or_gate,
  and_gate,
  /// Fails when at least k of its inputs have failed.
  k_of_n,
};

std::string_view to_string(GateKind kind);

struct FaultTreeNode {
  std::string name;
  bool is_event = false;
  /// Basic events only.
  std::string rv_id;
  /// Gates only.
  GateKind kind = GateKind::or_gate;
  std::size_t k = 0;
  std::vector<std::size_t> inputs;
};

/// A tree of gates over basic events. Inputs must exist before the gate
/// that uses them, every node feeds at most one gate and every rv appears
/// in at most one event, which keeps gate inputs independent.
class FaultTree {
 public:
  std::size_t add_event(std::string name, std::string rv_id);
  /// Throws StructuralError for unknown or reused inputs and for k outside
  /// 1..inputs.size() on a k_of_n gate.
  std::size_t add_gate(std::string name, GateKind kind, std::vector<std::size_t> inputs,
                       std::size_t k = 0);
  /// Throws StructuralError unless `node` exists and feeds no gate.
  void set_root(std::size_t node);

  const std::vector<FaultTreeNode>& nodes() const { return nodes_; }
  std::size_t root() const { return root_; }
  std::size_t leaf_count() const;
  /// Node index by name; StructuralError when absent.
  std::size_t find(std::string_view name) const;

 private:
  std::vector<FaultTreeNode> nodes_;
  std::vector<bool> used_;
  std::size_t root_ = 0;
};

/// OR of unloading OR(n1, n2), storage 2-of-3 (n5, n7, n9), vaporisation
/// OR(n10, n12), the supply event n14, and 7-of-14 over the physical pipes.
/// Event rv ids match the didactic builtin.
FaultTree didactic_fault_tree();

enum class TreeOutcome { survive, fail };
std::string_view to_string(TreeOutcome outcome);

/// Throws MappingError when a leaf rv is missing from the model or the
/// assignment does not cover the model.
TreeOutcome evaluate_state(const FaultTree& tree, const ComponentModel& model,
                           const ComponentAssignment& assignment);

/// Exact failure probability of every node, bottom-up.
std::vector<double> gate_probabilities(const FaultTree& tree, const ComponentModel& model);
double failure_probability(const FaultTree& tree, const ComponentModel& model);

}  // namespace plantflow
