#pragma once

#include <vector>

#include "mtsfuse/numerics/tape.hpp"

namespace mtsfuse::models {

/// Class-weighted binary cross-entropy weight; beta is the weight on the
/// positive (minority-failure-penalizing) term.
struct BbceConfig {
  double beta = 0.5;
};

/// Probabilities are clipped to this range before any logarithm.
inline constexpr double kProbClipLo = 1e-7;
inline constexpr double kProbClipHi = 1.0 - 1e-7;

/// -(1/n) sum_i [beta y_i log p_i + (1-beta)(1-y_i) log(1-p_i)].
double bbce(const std::vector<double>& predictions, const std::vector<int>& labels,
            const BbceConfig& cfg);

/// beta = majority class count / total; requires both classes present.
BbceConfig beta_from_labels(const std::vector<int>& labels);

/// Per-sample BBCE term as a 1x1 tape node (clipped inside).
num::Var bbce_term(num::Tape& tape, num::Var probability, int label, double beta);

}  // namespace mtsfuse::models
