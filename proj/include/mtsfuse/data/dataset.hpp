#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtsfuse/data/schema.hpp"
#include "mtsfuse/numerics/tensor.hpp"

namespace mtsfuse::data {

/// One ICU stay: typed static values, a D x T_i time-series block and a
/// binary label. Categorical statics are stored as vocabulary indices.
struct PatientSample {
  std::string id;
  std::vector<double> statics;  // numeric value, binary 0/1, categorical index
  num::Tensor2 mts;             // D rows, T_i >= 1 columns
  int label = 0;

  std::size_t t_len() const { return mts.cols(); }
};

struct FeatureStat {
  double mean = 0.0;
  double std = 1.0;
};

/// Per-feature normalization statistics fitted on training data. Only numeric
/// static features and numeric/count time-series features carry stats.
struct NormStats {
  std::vector<std::optional<FeatureStat>> statics;  // size G
  std::vector<std::optional<FeatureStat>> mts;      // size D
  bool empty() const { return statics.empty() && mts.empty(); }
};

struct Dataset {
  FeatureSchema schema;
  std::vector<PatientSample> samples;
  std::optional<NormStats> stats;  // present once a normalizer has been applied

  std::size_t size() const { return samples.size(); }

  std::vector<int> labels() const;
  /// Throws unless every sample conforms to the schema.
  void validate() const;
};

/// Truncates the time-series block to its first `window` columns; samples
/// shorter than the window are returned unchanged.
PatientSample window(const PatientSample& sample, std::size_t window = 14);
Dataset window_all(const Dataset& ds, std::size_t window = 14);

NormStats fit_normalizer(const Dataset& train);
Dataset apply_normalizer(const NormStats& stats, const Dataset& ds);

/// Stratified train/test split; deterministic for a fixed seed.
std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction, std::uint64_t seed);

/// Stratified k folds as (train, validation) pairs.
std::vector<std::pair<Dataset, Dataset>> kfold(const Dataset& ds, std::size_t k,
                                               std::uint64_t seed);

}  // namespace mtsfuse::data
