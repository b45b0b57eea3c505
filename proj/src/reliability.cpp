#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <thread>

#include "plantflow/errors.hpp"
#include "plantflow/reliability.hpp"

namespace plantflow {

namespace {

constexpr std::uint32_t kSystemTag = 0;
constexpr std::uint32_t kUpTag = 1;
constexpr std::uint32_t kDownTag = 2;

// Runs body(begin, end, worker) over contiguous slices of [0, n).
void parallel_slices(std::uint64_t n, unsigned workers,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body) {
  workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, n)));
  if (workers == 1) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = n * w / workers;
    const std::uint64_t end = n * (w + 1) / workers;
    threads.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double binomial_se(std::uint64_t hits, std::uint64_t n) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ReliabilityReport make_report(const ReliabilityQuery& query, std::uint64_t failures) {
  ReliabilityReport r;
  r.failures = failures;
  r.n_samples = query.n_samples;
  r.seed = query.seed;
  r.target_flow = query.target_flow;
  r.mode = query.mode;
  r.backend = query.backend;
  r.p_fail_hat = static_cast<double>(failures) / static_cast<double>(query.n_samples);
  r.std_error = binomial_se(failures, query.n_samples);
  return r;
}

}  // namespace

void check_query(const ReliabilityQuery& query) {
  if (!std::isfinite(query.target_flow) || query.target_flow < 0.0) {
    throw Error("target flow must be a finite nonnegative number");
  }
  if (query.n_samples == 0) throw Error("sample count must be at least 1");
  if (query.workers == 0) throw Error("worker count must be at least 1");
}

bool system_fails(double max_flow, double target_flow) {
  return max_flow < target_flow - 1e-9 * std::max(1.0, std::abs(target_flow));
}

void sample_assignment(const ComponentModel& model, const SampleStream& stream,
                       std::vector<std::uint8_t>& states) {
  states.resize(model.rvs.size());
  for (std::size_t i = 0; i < model.rvs.size(); ++i) {
    states[i] = stream.uniform(static_cast<std::uint32_t>(i)) < model.rvs[i].p_fail ? 0 : 1;
  }
}

ComponentAssignment sample_assignment(const ComponentModel& model, const SampleStream& stream) {
  std::vector<std::uint8_t> states;
  sample_assignment(model, stream, states);
  return ComponentAssignment(std::move(states));
}

ReliabilityReport estimate_failure_probability(const PlantNetwork& net, const ComponentModel& model,
                                               const ReliabilityQuery& query) {
  check_query(query);
  const auto start = std::chrono::steady_clock::now();
  const SystemFunction system(net, model, query.mode, query.backend);
  std::vector<std::uint64_t> failures(std::max(1u, query.workers), 0);

  parallel_slices(query.n_samples, query.workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    auto ws = system.make_workspace();
    std::vector<std::uint8_t> states;
    std::uint64_t local = 0;
    for (std::uint64_t j = begin; j < end; ++j) {
      sample_assignment(model, SampleStream(query.seed, j, kSystemTag), states);
      if (system_fails(system.evaluate(states, *ws), query.target_flow)) ++local;
    }
    failures[w] = local;
  });

  ReliabilityReport report =
      make_report(query, std::accumulate(failures.begin(), failures.end(), std::uint64_t{0}));
  report.elapsed_seconds = seconds_since(start);
  return report;
}

std::string_view to_string(StreamPairing pairing) {
  return pairing == StreamPairing::common ? "common" : "independent";
}

StreamPairing parse_pairing(std::string_view text) {
  if (text == "common") return StreamPairing::common;
  if (text == "independent") return StreamPairing::independent;
  throw Error("unknown pairing '" + std::string(text) + "' (expected common or independent)");
}

namespace {

struct ImportanceCounts {
  std::uint64_t system_failures = 0;
  std::vector<std::uint64_t> up_survivals;
  std::vector<std::uint64_t> down_survivals;
  // Samples where only the up run survives / only the down run survives.
  std::vector<std::uint64_t> gains;
  std::vector<std::uint64_t> losses;

  explicit ImportanceCounts(std::size_t n)
      : up_survivals(n, 0), down_survivals(n, 0), gains(n, 0), losses(n, 0) {}

  void add(const ImportanceCounts& o) {
    system_failures += o.system_failures;
    for (std::size_t i = 0; i < up_survivals.size(); ++i) {
      up_survivals[i] += o.up_survivals[i];
      down_survivals[i] += o.down_survivals[i];
      gains[i] += o.gains[i];
      losses[i] += o.losses[i];
    }
  }
};

void accumulate_common(const SystemFunction& system, const ComponentModel& model,
                       const ReliabilityQuery& q, std::uint64_t begin, std::uint64_t end,
                       ImportanceCounts& c) {
  auto ws = system.make_workspace();
  std::vector<std::uint8_t> x;
  const std::size_t n_rv = model.rvs.size();
  for (std::uint64_t j = begin; j < end; ++j) {
    sample_assignment(model, SampleStream(q.seed, j, kSystemTag), x);
    const bool base_survives = !system_fails(system.evaluate(x, *ws), q.target_flow);
    if (!base_survives) ++c.system_failures;
    for (std::size_t i = 0; i < n_rv; ++i) {
      const std::uint8_t original = x[i];
      x[i] = original ? 0 : 1;
      const bool flipped_survives = !system_fails(system.evaluate(x, *ws), q.target_flow);
      x[i] = original;
      const bool up = original ? base_survives : flipped_survives;
      const bool down = original ? flipped_survives : base_survives;
      c.up_survivals[i] += up;
      c.down_survivals[i] += down;
      c.gains[i] += up && !down;
      c.losses[i] += down && !up;
    }
  }
}

void accumulate_independent(const SystemFunction& system, const ComponentModel& model,
                            const ReliabilityQuery& q, std::uint64_t begin, std::uint64_t end,
                            ImportanceCounts& c) {
  auto ws = system.make_workspace();
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> up_draw;
  std::vector<std::uint8_t> down_draw;
  const std::size_t n_rv = model.rvs.size();
  for (std::uint64_t j = begin; j < end; ++j) {
    sample_assignment(model, SampleStream(q.seed, j, kSystemTag), x);
    if (system_fails(system.evaluate(x, *ws), q.target_flow)) ++c.system_failures;
    sample_assignment(model, SampleStream(q.seed, j, kUpTag), up_draw);
    sample_assignment(model, SampleStream(q.seed, j, kDownTag), down_draw);
    for (std::size_t i = 0; i < n_rv; ++i) {
      const std::uint8_t keep_up = up_draw[i];
      up_draw[i] = 1;
      const bool up = !system_fails(system.evaluate(up_draw, *ws), q.target_flow);
      up_draw[i] = keep_up;
      const std::uint8_t keep_down = down_draw[i];
      down_draw[i] = 0;
      const bool down = !system_fails(system.evaluate(down_draw, *ws), q.target_flow);
      down_draw[i] = keep_down;
      c.up_survivals[i] += up;
      c.down_survivals[i] += down;
    }
  }
}

}  // namespace

ImportanceReport birnbaum_importance(const PlantNetwork& net, const ComponentModel& model,
                                     const ReliabilityQuery& query, StreamPairing pairing) {
  check_query(query);
  const auto start = std::chrono::steady_clock::now();
  const SystemFunction system(net, model, query.mode, query.backend);
  const std::size_t n_rv = model.rvs.size();
  std::vector<ImportanceCounts> partial(std::max(1u, query.workers), ImportanceCounts(n_rv));

  parallel_slices(query.n_samples, query.workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    if (pairing == StreamPairing::common) {
      accumulate_common(system, model, query, begin, end, partial[w]);
    } else {
      accumulate_independent(system, model, query, begin, end, partial[w]);
    }
  });
  ImportanceCounts total(n_rv);
  for (const auto& p : partial) total.add(p);

  ImportanceReport report;
  report.pairing = pairing;
  report.system = make_report(query, total.system_failures);
  const auto n = static_cast<double>(query.n_samples);
  for (std::size_t i = 0; i < n_rv; ++i) {
    ComponentImportance ci;
    ci.rv_id = model.rvs[i].id;
    ci.p_survive_up = static_cast<double>(total.up_survivals[i]) / n;
    ci.p_survive_down = static_cast<double>(total.down_survivals[i]) / n;
    ci.birnbaum = ci.p_survive_up - ci.p_survive_down;
    if (pairing == StreamPairing::common) {
      // Paired differences take values in {-1, 0, 1}.
      const double mean = ci.birnbaum;
      const double second = static_cast<double>(total.gains[i] + total.losses[i]) / n;
      const double var = query.n_samples > 1 ? std::max(0.0, second - mean * mean) * n / (n - 1.0) : 0.0;
      ci.std_error = std::sqrt(var / n);
    } else {
      const double a = binomial_se(total.up_survivals[i], query.n_samples);
      const double b = binomial_se(total.down_survivals[i], query.n_samples);
      ci.std_error = std::sqrt(a * a + b * b);
    }
    report.components.push_back(std::move(ci));
  }

  report.ranking.resize(n_rv);
  std::iota(report.ranking.begin(), report.ranking.end(), std::size_t{0});
  std::stable_sort(report.ranking.begin(), report.ranking.end(), [&](std::size_t a, std::size_t b) {
    return report.components[a].birnbaum > report.components[b].birnbaum;
  });
  report.system.elapsed_seconds = seconds_since(start);
  return report;
}

RankedComponents rank_components(const ImportanceReport& report, std::size_t top_k,
                                 std::size_t bottom_k) {
  RankedComponents out;
  const std::size_t n = report.ranking.size();
  out.truncated = top_k > n || bottom_k > n;
  const std::size_t t = std::min(top_k, n);
  const std::size_t b = std::min(bottom_k, n);
  out.top.assign(report.ranking.begin(), report.ranking.begin() + static_cast<std::ptrdiff_t>(t));
  // Lowest first; among equal values the later rv in model order is lower.
  out.bottom.assign(report.ranking.rbegin(), report.ranking.rbegin() + static_cast<std::ptrdiff_t>(b));
  return out;
}

}  // namespace plantflow
