#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mtsfuse/numerics/tensor.hpp"

namespace mtsfuse::num {

/// Per-parameter Adam state: first/second moment estimates and step counter.
struct AdamSlot {
  Tensor2 m;
  Tensor2 v;
  std::int64_t step = 0;
};

/// Named parameter tensors with lazily created optimizer state. Iteration is
/// always in name order, which keeps training bit-reproducible.
class ParamSet {
 public:
  void insert(const std::string& name, Tensor2 value);
  bool contains(const std::string& name) const { return values_.count(name) != 0; }
  Tensor2& at(const std::string& name);
  const Tensor2& at(const std::string& name) const;

  const std::map<std::string, Tensor2>& values() const { return values_; }
  std::map<std::string, Tensor2>& values() { return values_; }

  /// Adam state for `name`, created zero-filled and shape-matched on first use.
  AdamSlot& adam_slot(const std::string& name);
  const std::map<std::string, AdamSlot>& adam_state() const { return adam_; }

  std::size_t entry_count() const;

 private:
  std::map<std::string, Tensor2> values_;
  std::map<std::string, AdamSlot> adam_;
};

struct AdamConfig {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// One Adam update with bias correction, applied in place. Gradients must
/// shape-match their parameters; a mismatch names the offending parameter.
void adam_step(ParamSet& params, const std::map<std::string, Tensor2>& grads,
               const AdamConfig& cfg);

}  // namespace mtsfuse::num
