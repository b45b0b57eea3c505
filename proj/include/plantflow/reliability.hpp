#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plantflow/flow.hpp"
#include "plantflow/plant_model.hpp"
#include "plantflow/random.hpp"

namespace plantflow {

struct ReliabilityQuery {
  double target_flow = 0.0;
  std::uint64_t n_samples = 100000;
  std::uint64_t seed = 42;
  SemanticsMode mode = SemanticsMode::station_throughput;
  Backend backend = Backend::maxflow;
  /// Threads used for sampling; results do not depend on it.
  unsigned workers = 1;
};

/// Throws Error for a negative or non-finite target, zero samples or
/// zero workers.
void check_query(const ReliabilityQuery& query);

/// The system is failed when u* falls below the target. The comparison
/// allows 1e-9 relative slack so that a flow equal to the target up to
/// rounding counts as survival.
bool system_fails(double max_flow, double target_flow);

struct ReliabilityReport {
  double p_fail_hat = 0.0;
  /// Binomial standard error sqrt(p(1-p)/n).
  double std_error = 0.0;
  std::uint64_t failures = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  double target_flow = 0.0;
  SemanticsMode mode = SemanticsMode::station_throughput;
  Backend backend = Backend::maxflow;
  double elapsed_seconds = 0.0;
};

/// Fills `states` (resized to the model) with one independent draw per rv:
/// rv i fails when draw i of the stream is below its failure probability.
void sample_assignment(const ComponentModel& model, const SampleStream& stream,
                       std::vector<std::uint8_t>& states);
ComponentAssignment sample_assignment(const ComponentModel& model, const SampleStream& stream);

ReliabilityReport estimate_failure_probability(const PlantNetwork& net, const ComponentModel& model,
                                               const ReliabilityQuery& query);

enum class StreamPairing {
  /// Both conditional runs of an rv reuse the same draws for every other rv.
  common,
  /// The two conditional runs use unrelated streams.
  independent,
};

std::string_view to_string(StreamPairing pairing);
StreamPairing parse_pairing(std::string_view text);

struct ComponentImportance {
  std::string rv_id;
  /// P(S=1 | X=1) - P(S=1 | X=0)
  double birnbaum = 0.0;
  double std_error = 0.0;
  double p_survive_up = 0.0;
  double p_survive_down = 0.0;
};

struct ImportanceReport {
  /// Failure probability of the unconditioned system. Under common pairing
  /// it comes from the same samples; under independent pairing from a
  /// separate run with the query seed.
  ReliabilityReport system;
  /// One entry per rv, in model order.
  std::vector<ComponentImportance> components;
  /// Indices into `components`, highest Birnbaum value first, ties in model
  /// order.
  std::vector<std::size_t> ranking;
  StreamPairing pairing = StreamPairing::common;
};

ImportanceReport birnbaum_importance(const PlantNetwork& net, const ComponentModel& model,
                                     const ReliabilityQuery& query,
                                     StreamPairing pairing = StreamPairing::common);

struct RankedComponents {
  /// Highest first.
  std::vector<std::size_t> top;
  /// Lowest first.
  std::vector<std::size_t> bottom;
  /// Set when a requested count exceeded the number of components.
  bool truncated = false;
};

RankedComponents rank_components(const ImportanceReport& report, std::size_t top_k,
                                 std::size_t bottom_k);

}  // namespace plantflow
