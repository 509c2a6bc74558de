#include "skapid/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "skapid/error.hpp"

namespace skapid {

void OptimizerConfig::validate() const {
  if (restarts == 0) throw Error(ErrorKind::InvalidArgument, "restarts must be at least 1");
  if (!(convergence_tol > 0.0) || !(result_tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
  if (max_iters == 0) throw Error(ErrorKind::InvalidArgument, "max_iters must be at least 1");
  if (ebar_size && *ebar_size == 0) {
    throw Error(ErrorKind::InvalidArgument, "ebar size must be at least 1");
  }
}

void project_to_simplex(std::span<double> v) {
  // Sort-based projection (Held, Wolfe, Crowder).
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
}

std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return {{}};
  std::vector<std::size_t> rgs(n, 0);
  // Restricted growth strings: rgs[i] <= 1 + max(rgs[0..i-1]).
  auto recurse = [&](auto&& self, std::size_t i, std::size_t max_block) -> void {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= max_block + 1; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(max_block, b));
    }
  };
  rgs[0] = 0;
  recurse(recurse, 1, 0);
  return out;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace skapid
