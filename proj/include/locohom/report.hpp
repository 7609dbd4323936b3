#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "locohom/graph.hpp"
#include "locohom/hom.hpp"

namespace locohom {

struct SolveStats {
  long long subsets_tried = 0;
  long long partial_homs_tried = 0;
  long long ilp_solves = 0;
  long long dp_calls = 0;
  long long branches = 0;  // solver-specific outer branches (base graphs, type sets, pre-image guesses)

  SolveStats& operator+=(const SolveStats& o) {
    subsets_tried += o.subsets_tried;
    partial_homs_tried += o.partial_homs_tried;
    ilp_solves += o.ilp_solves;
    dp_calls += o.dp_calls;
    branches += o.branches;
    return *this;
  }
  friend bool operator==(const SolveStats&, const SolveStats&) = default;
};

struct SolveReport {
  bool answer = false;
  Mapping witness;           // present iff answer
  std::optional<Graph> host;  // role assignment: the role graph
  SolveStats stats;
  std::string route;  // which algorithm produced the answer
  int k = -1;
  int c = -1;
};

/// Runs task(i) for i in [0, count) and returns the lowest index whose
/// result is present, with stats summed over all indices up to it (all
/// indices when none succeeds). With threads > 1 the tasks run
/// concurrently; tasks above an already successful index are skipped, so
/// the outcome does not depend on the thread count.
template <class R>
std::pair<std::optional<R>, SolveStats> first_success(std::size_t count, int threads,
                                                     const std::function<std::optional<R>(std::size_t, SolveStats&)>& task) {
  std::vector<std::optional<R>> results(count);
  std::vector<SolveStats> stats(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> best{count};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      if (i > best.load()) continue;
      try {
        results[i] = task(i, stats[i]);
      } catch (...) {
        errors[i] = std::current_exception();
        results[i].reset();
      }
      if (results[i] || errors[i]) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  if (threads <= 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(threads, static_cast<int>(count)); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  const std::size_t stop = best.load();
  SolveStats total;
  for (std::size_t i = 0; i < count && i <= stop; ++i) total += stats[i];
  if (stop < count) {
    if (errors[stop]) std::rethrow_exception(errors[stop]);
    return {std::move(results[stop]), total};
  }
  return {std::nullopt, total};
}

}  // namespace locohom
