#pragma once

#include <cstdint>
#include <vector>

namespace mtsfuse::num {

/// Counter-based random stream. Every draw is a pure function of
/// (root seed, task id, counter), so streams for distinct task ids can run on
/// different threads and still produce results identical to a serial run.
class RngStream {
 public:
  RngStream(std::uint64_t root, std::uint64_t task);

  std::uint64_t root() const { return root_; }
  std::uint64_t task() const { return task_; }

  /// Derives an independent stream for a sub-task.
  RngStream child(std::uint64_t salt) const;

  std::uint64_t next_u64();
  /// Uniform in [0, 1), 53-bit resolution.
  double next_uniform();
  /// Standard normal via Box-Muller; consumes two uniform draws.
  double next_normal();
  /// Uniform integer in [0, n); n must be > 0.
  std::uint64_t next_below(std::uint64_t n);
  /// Bernoulli draw.
  bool next_bool(double p);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  static std::uint64_t mix64(std::uint64_t x);

 private:
  std::uint64_t root_;
  std::uint64_t task_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace mtsfuse::num
