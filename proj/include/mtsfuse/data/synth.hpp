#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtsfuse/data/dataset.hpp"

namespace mtsfuse::data {

struct PlantedFeature {
  std::string name;
  double effect = 0.0;  // log-odds per standard deviation of the feature statistic
};

/// Configuration for the planted-signal generator that stands in for the
/// confidential clinical data. Static features cycle kinds numeric, binary,
/// categorical and are named s<i>_<kind>; time-series features cycle binary,
/// count and are named m<i>_<kind>.
struct SynthConfig {
  std::size_t i_count = 3158;
  std::size_t d_count = 6;
  std::size_t g_count = 4;
  std::size_t t_min = 3;
  std::size_t t_max = 20;
  double positive_ratio = 0.19;
  std::vector<PlantedFeature> planted;
  std::uint64_t seed = 0;

  void validate() const;
};

FeatureSchema synth_schema(std::size_t d_count, std::size_t g_count);

struct SynthResult {
  Dataset dataset;
  std::vector<std::string> relevant_features;  // the planted names
};

/// Draws covariates, plants the configured label signal through a logistic
/// model (calibrated by intercept search to the target positive rate) and
/// returns the dataset together with the planted feature names.
SynthResult synth_generate(const SynthConfig& cfg);

}  // namespace mtsfuse::data
