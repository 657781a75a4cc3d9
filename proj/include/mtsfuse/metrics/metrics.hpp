#pragma once

#include <cstdint>
#include <vector>

namespace mtsfuse::metrics {

/// Classification figures of merit for one evaluation set. Ratios are kept in
/// [0, 1]; presentation layers multiply by 100.
struct EvalResult {
  double accuracy = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double roc_auc = 0.0;
  double threshold = 0.5;
  std::int64_t tp = 0;
  std::int64_t tn = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
};

/// Thresholded confusion metrics plus ROC AUC. Predicted positive iff
/// score >= threshold. Requires both classes present.
EvalResult confusion_metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                             double threshold = 0.5);

/// Mann-Whitney ROC AUC with ties counted 1/2 (equals trapezoidal ROC
/// integration). Requires both classes present.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n-1); 0 when n == 1
};

MeanStd mean_std(const std::vector<double>& values);

struct AggregateResult {
  MeanStd accuracy;
  MeanStd sensitivity;
  MeanStd specificity;
  MeanStd roc_auc;
  std::size_t count = 0;
};

AggregateResult aggregate(const std::vector<EvalResult>& results);

}  // namespace mtsfuse::metrics
