#include "mtsfuse/numerics/paramset.hpp"

#include <cmath>

#include "mtsfuse/error.hpp"

namespace mtsfuse::num {

void ParamSet::insert(const std::string& name, Tensor2 value) {
  require(!contains(name), "ParamSet: duplicate parameter '", name, "'");
  values_.emplace(name, std::move(value));
}

Tensor2& ParamSet::at(const std::string& name) {
  auto it = values_.find(name);
  require(it != values_.end(), "ParamSet: unknown parameter '", name, "'");
  return it->second;
}

const Tensor2& ParamSet::at(const std::string& name) const {
  auto it = values_.find(name);
  require(it != values_.end(), "ParamSet: unknown parameter '", name, "'");
  return it->second;
}

AdamSlot& ParamSet::adam_slot(const std::string& name) {
  const Tensor2& value = at(name);
  auto it = adam_.find(name);
  if (it == adam_.end()) {
    AdamSlot slot;
    slot.m = Tensor2(value.rows(), value.cols(), 0.0);
    slot.v = Tensor2(value.rows(), value.cols(), 0.0);
    it = adam_.emplace(name, std::move(slot)).first;
  }
  return it->second;
}

std::size_t ParamSet::entry_count() const {
  std::size_t n = 0;
  for (const auto& [name, value] : values_) n += value.size();
  return n;
}

void adam_step(ParamSet& params, const std::map<std::string, Tensor2>& grads,
               const AdamConfig& cfg) {
  require(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0 && cfg.beta2 >= 0.0 && cfg.beta2 < 1.0,
          "adam_step: betas must lie in [0, 1)");
  require(cfg.eps > 0.0, "adam_step: eps must be positive");
  for (const auto& [name, grad] : grads) {
    Tensor2& value = params.at(name);
    require(grad.same_shape(value), "adam_step: gradient shape ", grad.rows(), "x", grad.cols(),
            " does not match parameter '", name, "' (", value.rows(), "x", value.cols(), ")");
    AdamSlot& slot = params.adam_slot(name);
    slot.step += 1;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(slot.step));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(slot.step));
    double* m = slot.m.data();
    double* v = slot.v.data();
    double* w = value.data();
    const double* g = grad.data();
    for (std::size_t i = 0; i < value.size(); ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      w[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
  }
}

}  // namespace mtsfuse::num
