#pragma once

#include <cstddef>
#include <vector>

namespace mtsfuse::models {

struct HyperParams {
  double learning_rate = 0.001;
  double dropout = 0.0;
  std::size_t width = 10;  // hidden width H / neurons per hidden layer
  std::size_t max_epochs = 300;
  std::size_t patience = 10;
  std::size_t batch_size = 64;
};

/// Search grids; defaults are the full grids explored by the training
/// protocol. Callers may override with any subset.
struct HyperGrids {
  std::vector<double> learning_rates{0.0001, 0.001, 0.01, 0.1};
  std::vector<double> dropouts{0.0, 0.1, 0.2, 0.3};
  std::vector<std::size_t> widths{3, 5, 8, 10, 15, 20, 25, 30, 35, 40, 50};

  void validate() const;
  std::size_t point_count() const {
    return learning_rates.size() * dropouts.size() * widths.size();
  }
};

/// Minimum decrease of the validation cost that counts as an improvement for
/// early stopping.
inline constexpr double kEarlyStopMinDelta = 1e-5;

}  // namespace mtsfuse::models
