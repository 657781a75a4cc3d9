#include "mtsfuse/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mtsfuse/error.hpp"

namespace mtsfuse::metrics {

namespace {
void check_inputs(const std::vector<double>& scores, const std::vector<int>& labels) {
  require(scores.size() == labels.size(), "metrics: scores/labels length mismatch (",
          scores.size(), " vs ", labels.size(), ")");
  require(!scores.empty(), "metrics: empty input");
  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    require(y == 0 || y == 1, "metrics: labels must be 0/1");
    (y == 1 ? has_pos : has_neg) = true;
  }
  require(has_pos && has_neg, "metrics: both classes must be present");
}
}  // namespace

EvalResult confusion_metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                             double threshold) {
  check_inputs(scores, labels);
  EvalResult r;
  r.threshold = threshold;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (labels[i] == 1)
      (predicted ? r.tp : r.fn) += 1;
    else
      (predicted ? r.fp : r.tn) += 1;
  }
  const double total = static_cast<double>(r.tp + r.tn + r.fp + r.fn);
  r.accuracy = static_cast<double>(r.tp + r.tn) / total;
  r.sensitivity = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
  r.specificity = static_cast<double>(r.tn) / static_cast<double>(r.tn + r.fp);
  r.roc_auc = roc_auc(scores, labels);
  return r;
}

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  check_inputs(scores, labels);
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Average ranks over tie groups, then the Mann-Whitney U statistic.
  std::vector<double> rank(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // ranks are 1-based
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }

  double rank_sum_pos = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (labels[k] == 1) {
      rank_sum_pos += rank[k];
      ++n_pos;
    }
  }
  const std::size_t n_neg = n - n_pos;
  const double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

MeanStd mean_std(const std::vector<double>& values) {
  require(!values.empty(), "mean_std: empty input");
  MeanStd out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

AggregateResult aggregate(const std::vector<EvalResult>& results) {
  require(!results.empty(), "aggregate: needs at least one result");
  auto collect = [&](double EvalResult::*field) {
    std::vector<double> v;
    v.reserve(results.size());
    for (const auto& r : results) v.push_back(r.*field);
    return mean_std(v);
  };
  AggregateResult agg;
  agg.accuracy = collect(&EvalResult::accuracy);
  agg.sensitivity = collect(&EvalResult::sensitivity);
  agg.specificity = collect(&EvalResult::specificity);
  agg.roc_auc = collect(&EvalResult::roc_auc);
  agg.count = results.size();
  return agg;
}

}  // namespace mtsfuse::metrics
