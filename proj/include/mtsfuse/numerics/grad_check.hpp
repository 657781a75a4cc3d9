#pragma once

#include <functional>
#include <string>

#include "mtsfuse/numerics/tape.hpp"

namespace mtsfuse::num {

/// Builds a scalar (1x1) loss graph from bound parameters.
using LossBuilder = std::function<Var(Tape&, const ParamBinding&)>;

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::string worst_param;
  std::size_t entries_checked = 0;
};

/// Compares tape gradients against central finite differences, entry by
/// entry. Relative error uses |analytic - fd| / max(1, |fd|). Throws if the
/// loss evaluates to a non-finite value.
GradCheckReport grad_check_report(const LossBuilder& build, const ParamSet& params, double h);

double grad_check(const LossBuilder& build, const ParamSet& params, double h);

}  // namespace mtsfuse::num
