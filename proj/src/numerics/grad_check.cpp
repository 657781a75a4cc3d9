#include "mtsfuse/numerics/grad_check.hpp"

#include <cmath>

#include "mtsfuse/error.hpp"

namespace mtsfuse::num {

namespace {
double eval_loss(const LossBuilder& build, const ParamSet& params) {
  Tape tape;
  ParamBinding binding(tape, params, /*requires_grad=*/false);
  const Var loss = build(tape, binding);
  const Tensor2& v = tape.value(loss);
  require(v.rows() == 1 && v.cols() == 1, "grad_check: loss must be scalar");
  require(std::isfinite(v(0, 0)), "grad_check: non-finite loss value");
  return v(0, 0);
}
}  // namespace

GradCheckReport grad_check_report(const LossBuilder& build, const ParamSet& params, double h) {
  require(h > 0.0, "grad_check: step h must be positive");

  Tape tape;
  ParamBinding binding(tape, params, /*requires_grad=*/true);
  const Var loss = build(tape, binding);
  {
    const Tensor2& v = tape.value(loss);
    require(v.rows() == 1 && v.cols() == 1, "grad_check: loss must be scalar");
    require(std::isfinite(v(0, 0)), "grad_check: non-finite loss value");
  }
  tape.backward(loss);
  const std::map<std::string, Tensor2> analytic = binding.gradients();

  GradCheckReport report;
  ParamSet probe;
  for (const auto& [name, value] : params.values()) probe.insert(name, value);

  for (const auto& [name, grad] : analytic) {
    Tensor2& target = probe.at(name);
    for (std::size_t i = 0; i < target.size(); ++i) {
      const double saved = target.data()[i];
      target.data()[i] = saved + h;
      const double up = eval_loss(build, probe);
      target.data()[i] = saved - h;
      const double down = eval_loss(build, probe);
      target.data()[i] = saved;
      const double fd = (up - down) / (2.0 * h);
      const double rel = std::abs(grad.data()[i] - fd) / std::max(1.0, std::abs(fd));
      if (rel > report.max_rel_err) {
        report.max_rel_err = rel;
        report.worst_param = name;
      }
      ++report.entries_checked;
    }
  }
  return report;
}

double grad_check(const LossBuilder& build, const ParamSet& params, double h) {
  return grad_check_report(build, params, h).max_rel_err;
}

}  // namespace mtsfuse::num
