#include "mtsfuse/data/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "mtsfuse/error.hpp"
#include "mtsfuse/numerics/rng.hpp"

namespace mtsfuse::data {

std::vector<int> Dataset::labels() const {
  std::vector<int> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.label);
  return out;
}

void Dataset::validate() const {
  schema.validate();
  for (const auto& s : samples) {
    require(s.statics.size() == schema.g(), "dataset: sample '", s.id, "' has ", s.statics.size(),
            " static values, schema declares ", schema.g());
    require(s.mts.rows() == schema.d(), "dataset: sample '", s.id, "' has ", s.mts.rows(),
            " mts rows, schema declares ", schema.d());
    require(s.t_len() >= 1, "dataset: sample '", s.id, "' has empty time series");
    require(s.label == 0 || s.label == 1, "dataset: sample '", s.id, "' label must be 0/1");
    for (std::size_t g = 0; g < schema.g(); ++g) {
      if (schema.statics[g].kind == StaticKind::kCategorical) {
        const double v = s.statics[g];
        const auto idx = static_cast<long long>(v);
        require(v == static_cast<double>(idx) && idx >= 0 &&
                    idx < static_cast<long long>(schema.statics[g].vocab.size()),
                "dataset: sample '", s.id, "' categorical value ", v, " outside vocabulary of '",
                schema.statics[g].name, "'");
      }
    }
  }
}

PatientSample window(const PatientSample& sample, std::size_t window) {
  require(window >= 1, "window: length must be >= 1");
  if (sample.t_len() <= window) return sample;
  PatientSample out = sample;
  out.mts = num::Tensor2(sample.mts.rows(), window);
  for (std::size_t d = 0; d < sample.mts.rows(); ++d)
    for (std::size_t t = 0; t < window; ++t) out.mts(d, t) = sample.mts(d, t);
  return out;
}

Dataset window_all(const Dataset& ds, std::size_t w) {
  Dataset out;
  out.schema = ds.schema;
  out.stats = ds.stats;
  out.samples.reserve(ds.samples.size());
  for (const auto& s : ds.samples) out.samples.push_back(window(s, w));
  return out;
}

NormStats fit_normalizer(const Dataset& train) {
  require(!train.samples.empty(), "fit_normalizer: empty training set");
  NormStats stats;
  stats.statics.resize(train.schema.g());
  stats.mts.resize(train.schema.d());

  // Population (1/N) convention; zero-variance features keep std = 1 so the
  // transform maps constants to zero.
  auto finish = [](double sum, double sumsq, double n) {
    FeatureStat fs;
    fs.mean = sum / n;
    const double var = std::max(0.0, sumsq / n - fs.mean * fs.mean);
    const double sd = std::sqrt(var);
    fs.std = sd > 0.0 ? sd : 1.0;
    return fs;
  };

  for (std::size_t g = 0; g < train.schema.g(); ++g) {
    if (train.schema.statics[g].kind != StaticKind::kNumeric) continue;
    double sum = 0.0, sumsq = 0.0;
    for (const auto& s : train.samples) {
      sum += s.statics[g];
      sumsq += s.statics[g] * s.statics[g];
    }
    stats.statics[g] = finish(sum, sumsq, static_cast<double>(train.samples.size()));
  }

  for (std::size_t d = 0; d < train.schema.d(); ++d) {
    if (train.schema.mts[d].kind == MtsKind::kBinary) continue;
    double sum = 0.0, sumsq = 0.0, n = 0.0;
    for (const auto& s : train.samples) {
      for (std::size_t t = 0; t < s.t_len(); ++t) {
        const double v = s.mts(d, t);
        sum += v;
        sumsq += v * v;
        n += 1.0;
      }
    }
    stats.mts[d] = finish(sum, sumsq, n);
  }
  return stats;
}

Dataset apply_normalizer(const NormStats& stats, const Dataset& ds) {
  require(stats.statics.size() == ds.schema.g() && stats.mts.size() == ds.schema.d(),
          "apply_normalizer: stats do not cover the schema");
  Dataset out = ds;
  for (auto& s : out.samples) {
    for (std::size_t g = 0; g < out.schema.g(); ++g)
      if (stats.statics[g])
        s.statics[g] = (s.statics[g] - stats.statics[g]->mean) / stats.statics[g]->std;
    for (std::size_t d = 0; d < out.schema.d(); ++d) {
      if (!stats.mts[d]) continue;
      for (std::size_t t = 0; t < s.t_len(); ++t)
        s.mts(d, t) = (s.mts(d, t) - stats.mts[d]->mean) / stats.mts[d]->std;
    }
  }
  out.stats = stats;
  return out;
}

namespace {

// Shuffled per-class index lists; class 0 first, then class 1.
std::array<std::vector<std::size_t>, 2> class_indices(const Dataset& ds, std::uint64_t seed,
                                                      std::uint64_t task) {
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < ds.samples.size(); ++i)
    by_class[static_cast<std::size_t>(ds.samples[i].label)].push_back(i);
  num::RngStream rng0(seed, task);
  num::RngStream rng1(seed, task + 1);
  rng0.shuffle(by_class[0]);
  rng1.shuffle(by_class[1]);
  return by_class;
}

Dataset subset(const Dataset& ds, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  Dataset out;
  out.schema = ds.schema;
  out.stats = ds.stats;
  out.samples.reserve(idx.size());
  for (std::size_t i : idx) out.samples.push_back(ds.samples[i]);
  return out;
}

}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
  require(test_fraction > 0.0 && test_fraction < 1.0, "split: fraction must lie in (0, 1)");
  require(ds.size() >= 2, "split: need at least two samples");
  auto by_class = class_indices(ds, seed, 11u);

  std::vector<std::size_t> train_idx, test_idx;
  for (const auto& cls : by_class) {
    const auto n_test = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(cls.size())));
    for (std::size_t i = 0; i < cls.size(); ++i)
      (i < n_test ? test_idx : train_idx).push_back(cls[i]);
  }
  return {subset(ds, train_idx), subset(ds, test_idx)};
}

std::vector<std::pair<Dataset, Dataset>> kfold(const Dataset& ds, std::size_t k,
                                               std::uint64_t seed) {
  require(k >= 2, "kfold: k must be >= 2");
  require(k <= ds.size(), "kfold: k=", k, " exceeds dataset size ", ds.size());
  auto by_class = class_indices(ds, seed, 21u);

  std::vector<std::vector<std::size_t>> fold_idx(k);
  for (const auto& cls : by_class)
    for (std::size_t i = 0; i < cls.size(); ++i) fold_idx[i % k].push_back(cls[i]);

  std::vector<std::pair<Dataset, Dataset>> folds;
  folds.reserve(k);
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t other = 0; other < k; ++other)
      if (other != f) train_idx.insert(train_idx.end(), fold_idx[other].begin(),
                                       fold_idx[other].end());
    folds.emplace_back(subset(ds, train_idx), subset(ds, fold_idx[f]));
  }
  return folds;
}

}  // namespace mtsfuse::data
