#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

namespace plantflow::detail {

// Dinic's blocking-flow algorithm over real capacities. Storage is kept
// between runs so a single instance can be refilled cheaply.
class Dinic {
 public:
  void reset(int vertex_count) {
    n_ = vertex_count;
    to_.clear();
    from_.clear();
    residual_.clear();
    original_.clear();
    phases_ = 0;
  }

  // Returns the id of the forward arc; its reverse is id ^ 1.
  int add_arc(int from, int to, double capacity) {
    const int id = static_cast<int>(to_.size());
    from_.push_back(from);
    to_.push_back(to);
    residual_.push_back(capacity);
    original_.push_back(capacity);
    from_.push_back(to);
    to_.push_back(from);
    residual_.push_back(0.0);
    original_.push_back(0.0);
    return id;
  }

  double run(int source, int sink, double epsilon) {
    eps_ = epsilon;
    build_adjacency();
    double total = 0.0;
    if (source == sink) return total;
    while (bfs(source, sink)) {
      ++phases_;
      std::copy(first_.begin(), first_.end() - 1, cursor_.begin());
      for (;;) {
        const double pushed = dfs(source, sink, std::numeric_limits<double>::infinity());
        if (pushed <= eps_) break;
        total += pushed;
      }
    }
    return total;
  }

  double flow(int arc) const { return original_[arc] - residual_[arc]; }
  std::size_t phases() const { return phases_; }

 private:
  void build_adjacency() {
    first_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int v : from_) ++first_[v + 1];
    for (int v = 0; v < n_; ++v) first_[v + 1] += first_[v];
    adjacency_.resize(from_.size());
    cursor_.assign(first_.begin(), first_.end() - 1);
    for (int a = 0; a < static_cast<int>(from_.size()); ++a) adjacency_[cursor_[from_[a]]++] = a;
    level_.resize(n_);
    queue_.resize(n_);
  }

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    level_[source] = 0;
    int head = 0;
    int tail = 0;
    queue_[tail++] = source;
    while (head < tail) {
      const int v = queue_[head++];
      for (int i = first_[v]; i < first_[v + 1]; ++i) {
        const int a = adjacency_[i];
        const int w = to_[a];
        if (level_[w] < 0 && residual_[a] > eps_) {
          level_[w] = level_[v] + 1;
          queue_[tail++] = w;
        }
      }
    }
    return level_[sink] >= 0;
  }

  double dfs(int v, int sink, double limit) {
    if (v == sink) return limit;
    for (int& i = cursor_[v]; i < first_[v + 1]; ++i) {
      const int a = adjacency_[i];
      const int w = to_[a];
      if (level_[w] != level_[v] + 1 || residual_[a] <= eps_) continue;
      const double pushed = dfs(w, sink, std::min(limit, residual_[a]));
      if (pushed > eps_) {
        residual_[a] -= pushed;
        residual_[a ^ 1] += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  int n_ = 0;
  double eps_ = 0.0;
  std::size_t phases_ = 0;
  std::vector<int> from_;
  std::vector<int> to_;
  std::vector<double> residual_;
  std::vector<double> original_;
  std::vector<int> first_;
  std::vector<int> adjacency_;
  std::vector<int> cursor_;
  std::vector<int> level_;
  std::vector<int> queue_;
};

}  // namespace plantflow::detail
