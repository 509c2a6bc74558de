#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace skapid {

/// Knobs shared by the non-convex searches (one-way rate, intrinsic mutual
/// information) and the convex marginal solvers.
struct OptimizerConfig {
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  std::size_t max_iters = 2000;
  std::string step_rule = "armijo-backtracking";
  double convergence_tol = 1e-9;
  double result_tol = 1e-3;
  /// Output cardinality of the eavesdropper channel in the intrinsic mutual
  /// information; unset means |supp(E)|.
  std::optional<std::size_t> ebar_size;
  /// Worker threads for restarts; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  /// Throws InvalidArgument when restarts == 0 or a tolerance is not positive.
  void validate() const;
};

/// Euclidean projection of `v` onto the probability simplex, in place.
void project_to_simplex(std::span<double> v);

/// All set partitions of {0..n-1} as restricted-growth strings: block[i] is
/// the block of element i and blocks appear in increasing order.
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);

/// Runs `task(i)` for i in [0, count) across worker threads. Each index is
/// executed exactly once; results must be written to per-index storage.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& task);

}  // namespace skapid
