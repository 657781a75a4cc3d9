#include "mtsfuse/models/hyperparams.hpp"

#include "mtsfuse/error.hpp"

namespace mtsfuse::models {

void HyperGrids::validate() const {
  require(!learning_rates.empty() && !dropouts.empty() && !widths.empty(),
          "hyperparameter grids must be non-empty");
  for (double lr : learning_rates) require(lr > 0.0, "learning rate must be positive");
  for (double d : dropouts) require(d >= 0.0 && d < 1.0, "dropout must lie in [0, 1)");
  for (std::size_t w : widths) require(w >= 1, "width must be >= 1");
}

}  // namespace mtsfuse::models
