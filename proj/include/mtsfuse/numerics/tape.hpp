#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mtsfuse/numerics/paramset.hpp"
#include "mtsfuse/numerics/tensor.hpp"

namespace mtsfuse::num {

/// Handle to a node on a Tape. Only meaningful for the tape that created it.
struct Var {
  std::int32_t idx = -1;
  bool valid() const { return idx >= 0; }
};

/// Reverse-mode autodiff over Tensor2 values. Operations evaluate eagerly;
/// `backward` sweeps the tape in reverse creation order, which is a valid
/// topological order for a dynamically built graph.
class Tape {
 public:
  Var leaf(Tensor2 value, bool requires_grad = false);

  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);  // elementwise
  Var matmul(Var a, Var b);
  /// k * a + c, elementwise with scalar constants.
  Var affine(Var a, double k, double c);
  /// Broadcast multiply by a 1x1 variable.
  Var smul(Var scalar, Var a);

  Var sigmoid(Var a);
  Var tanh(Var a);
  Var elu(Var a);
  Var leaky_relu(Var a, double slope);
  Var log(Var a);
  Var clip(Var a, double lo, double hi);
  /// Column-vector softmax; input must be n x 1.
  Var softmax(Var a);
  /// LayerNorm over an n x 1 vector with learned scale/shift.
  Var layer_norm(Var x, Var gamma, Var beta, double eps = 1e-5);

  /// Row `row` of a table, returned as a column vector (for embeddings).
  Var embed_row(Var table, std::size_t row);
  /// Column `t` of a matrix as an r x 1 vector.
  Var col(Var m, std::size_t t);
  /// Stacks column vectors into one tall column vector.
  Var vconcat(const std::vector<Var>& parts);
  Var sum_all(Var a);
  Var mean_all(Var a);
  /// Entry (r, c) as a 1x1 variable.
  Var elem(Var a, std::size_t r, std::size_t c);

  /// Seeds d(root)/d(root) = 1 and accumulates gradients; root must be 1x1.
  void backward(Var root);

  const Tensor2& value(Var v) const;
  /// Gradient of the last backward root w.r.t. `v`; zero tensor if untouched.
  Tensor2 grad(Var v) const;

  void reset();
  std::size_t node_count() const { return nodes_.size(); }

 private:
  enum class Op : std::uint8_t {
    kLeaf,
    kAdd,
    kSub,
    kMul,
    kMatMul,
    kAffine,
    kSmul,
    kSigmoid,
    kTanh,
    kElu,
    kLeakyRelu,
    kLog,
    kClip,
    kSoftmax,
    kLayerNorm,
    kEmbedRow,
    kCol,
    kVconcat,
    kSumAll,
    kMeanAll,
    kElem,
  };

  struct Node {
    Tensor2 value;
    Tensor2 grad;  // allocated lazily during backward
    Op op = Op::kLeaf;
    std::int32_t a = -1;
    std::int32_t b = -1;
    std::int32_t c = -1;
    std::int32_t i0 = 0;
    std::int32_t i1 = 0;
    double d0 = 0.0;
    double d1 = 0.0;
    Tensor2 aux;  // op-specific cache (e.g. LayerNorm normalized input)
    std::vector<std::int32_t> list;
    bool requires_grad = false;
  };

  Var push(Node node);
  Node& node(Var v);
  const Node& node(Var v) const;
  Tensor2& ensure_grad(std::int32_t idx);
  void backprop_node(std::int32_t idx);

  std::vector<Node> nodes_;
};

/// Creates one requires-grad leaf per parameter so model code can look
/// parameters up by name while building a graph.
class ParamBinding {
 public:
  ParamBinding(Tape& tape, const ParamSet& params, bool requires_grad = true);

  Var operator[](const std::string& name) const;
  bool contains(const std::string& name) const { return vars_.count(name) != 0; }

  /// Gradients for every bound parameter after Tape::backward.
  std::map<std::string, Tensor2> gradients() const;

 private:
  Tape* tape_;
  std::map<std::string, Var> vars_;
};

}  // namespace mtsfuse::num
