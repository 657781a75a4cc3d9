#include "mtsfuse/numerics/tape.hpp"

#include <cmath>

#include "mtsfuse/error.hpp"

namespace mtsfuse::num {

namespace {
double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}
}  // namespace

Var Tape::push(Node n) {
  nodes_.push_back(std::move(n));
  return Var{static_cast<std::int32_t>(nodes_.size() - 1)};
}

Tape::Node& Tape::node(Var v) {
  require(v.valid() && static_cast<std::size_t>(v.idx) < nodes_.size(), "Tape: invalid Var");
  return nodes_[static_cast<std::size_t>(v.idx)];
}

const Tape::Node& Tape::node(Var v) const {
  require(v.valid() && static_cast<std::size_t>(v.idx) < nodes_.size(), "Tape: invalid Var");
  return nodes_[static_cast<std::size_t>(v.idx)];
}

const Tensor2& Tape::value(Var v) const { return node(v).value; }

Tensor2 Tape::grad(Var v) const {
  const Node& n = node(v);
  if (n.grad.empty()) return Tensor2(n.value.rows(), n.value.cols(), 0.0);
  return n.grad;
}

void Tape::reset() { nodes_.clear(); }

Var Tape::leaf(Tensor2 value, bool requires_grad) {
  Node n;
  n.value = std::move(value);
  n.op = Op::kLeaf;
  n.requires_grad = requires_grad;
  return push(std::move(n));
}

Var Tape::add(Var a, Var b) {
  const Node& na = node(a);
  const Node& nb = node(b);
  require(na.value.same_shape(nb.value), "Tape::add: shape mismatch");
  Node n;
  n.value = na.value;
  n.value += nb.value;
  n.op = Op::kAdd;
  n.a = a.idx;
  n.b = b.idx;
  n.requires_grad = na.requires_grad || nb.requires_grad;
  return push(std::move(n));
}

Var Tape::sub(Var a, Var b) {
  const Node& na = node(a);
  const Node& nb = node(b);
  require(na.value.same_shape(nb.value), "Tape::sub: shape mismatch");
  Node n;
  n.value = na.value;
  n.value -= nb.value;
  n.op = Op::kSub;
  n.a = a.idx;
  n.b = b.idx;
  n.requires_grad = na.requires_grad || nb.requires_grad;
  return push(std::move(n));
}

Var Tape::mul(Var a, Var b) {
  const Node& na = node(a);
  const Node& nb = node(b);
  require(na.value.same_shape(nb.value), "Tape::mul: shape mismatch");
  Node n;
  n.value = na.value;
  for (std::size_t i = 0; i < n.value.size(); ++i) n.value.data()[i] *= nb.value.data()[i];
  n.op = Op::kMul;
  n.a = a.idx;
  n.b = b.idx;
  n.requires_grad = na.requires_grad || nb.requires_grad;
  return push(std::move(n));
}

Var Tape::matmul(Var a, Var b) {
  const Node& na = node(a);
  const Node& nb = node(b);
  Node n;
  n.value = num::matmul(na.value, nb.value);
  n.op = Op::kMatMul;
  n.a = a.idx;
  n.b = b.idx;
  n.requires_grad = na.requires_grad || nb.requires_grad;
  return push(std::move(n));
}

Var Tape::affine(Var a, double k, double c) {
  const Node& na = node(a);
  Node n;
  n.value = na.value;
  for (double& x : n.value.values()) x = k * x + c;
  n.op = Op::kAffine;
  n.a = a.idx;
  n.d0 = k;
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Var Tape::smul(Var scalar, Var a) {
  const Node& ns = node(scalar);
  const Node& na = node(a);
  require(ns.value.rows() == 1 && ns.value.cols() == 1, "Tape::smul: scalar must be 1x1");
  Node n;
  n.value = na.value;
  n.value *= ns.value(0, 0);
  n.op = Op::kSmul;
  n.a = scalar.idx;
  n.b = a.idx;
  n.requires_grad = ns.requires_grad || na.requires_grad;
  return push(std::move(n));
}

Var Tape::sigmoid(Var a) {
  const Node& na = node(a);
  Node n;
  n.value = na.value;
  for (double& x : n.value.values()) x = stable_sigmoid(x);
  n.op = Op::kSigmoid;
  n.a = a.idx;
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Var Tape::tanh(Var a) {
  const Node& na = node(a);
  Node n;
  n.value = na.value;
  for (double& x : n.value.values()) x = std::tanh(x);
  n.op = Op::kTanh;
  n.a = a.idx;
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Var Tape::elu(Var a) {
  const Node& na = node(a);
  Node n;
  n.value = na.value;
  for (double& x : n.value.values()) x = x > 0.0 ? x : std::expm1(x);
  n.op = Op::kElu;
  n.a = a.idx;
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Var Tape::leaky_relu(Var a, double slope) {
  const Node& na = node(a);
  Node n;
  n.value = na.value;
  for (double& x : n.value.values()) x = x > 0.0 ? x : slope * x;
  n.op = Op::kLeakyRelu;
  n.a = a.idx;
  n.d0 = slope;
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Var Tape::log(Var a) {
  const Node& na = node(a);
  Node n;
  n.value = na.value;
  for (double& x : n.value.values()) x = std::log(x);
  n.op = Op::kLog;
  n.a = a.idx;
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Var Tape::clip(Var a, double lo, double hi) {
  require(lo < hi, "Tape::clip: lo must be < hi");
  const Node& na = node(a);
  Node n;
  n.value = na.value;
  for (double& x : n.value.values()) x = x < lo ? lo : (x > hi ? hi : x);
  n.op = Op::kClip;
  n.a = a.idx;
  n.d0 = lo;
  n.d1 = hi;
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Var Tape::softmax(Var a) {
  const Node& na = node(a);
  require(na.value.cols() == 1, "Tape::softmax: expects a column vector");
  Node n;
  n.value = na.value;
  double mx = n.value.data()[0];
  for (double x : n.value.values()) mx = std::max(mx, x);
  double sum = 0.0;
  for (double& x : n.value.values()) {
    x = std::exp(x - mx);
    sum += x;
  }
  for (double& x : n.value.values()) x /= sum;
  n.op = Op::kSoftmax;
  n.a = a.idx;
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Var Tape::layer_norm(Var x, Var gamma, Var beta, double eps) {
  const Node& nx = node(x);
  const Node& ng = node(gamma);
  const Node& nb = node(beta);
  require(nx.value.cols() == 1, "Tape::layer_norm: expects a column vector");
  require(ng.value.same_shape(nx.value) && nb.value.same_shape(nx.value),
          "Tape::layer_norm: scale/shift shape mismatch");
  const std::size_t m = nx.value.rows();
  double mean = 0.0;
  for (double v : nx.value.values()) mean += v;
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (double v : nx.value.values()) var += (v - mean) * (v - mean);
  var /= static_cast<double>(m);
  const double sigma = std::sqrt(var + eps);

  Node n;
  n.aux = Tensor2(m, 1);
  n.value = Tensor2(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double xhat = (nx.value(i, 0) - mean) / sigma;
    n.aux(i, 0) = xhat;
    n.value(i, 0) = ng.value(i, 0) * xhat + nb.value(i, 0);
  }
  n.op = Op::kLayerNorm;
  n.a = x.idx;
  n.b = gamma.idx;
  n.c = beta.idx;
  n.d0 = sigma;
  n.requires_grad = nx.requires_grad || ng.requires_grad || nb.requires_grad;
  return push(std::move(n));
}

Var Tape::embed_row(Var table, std::size_t row) {
  const Node& nt = node(table);
  require(row < nt.value.rows(), "Tape::embed_row: row ", row, " out of range");
  const std::size_t dim = nt.value.cols();
  Node n;
  n.value = Tensor2(dim, 1);
  for (std::size_t j = 0; j < dim; ++j) n.value(j, 0) = nt.value(row, j);
  n.op = Op::kEmbedRow;
  n.a = table.idx;
  n.i0 = static_cast<std::int32_t>(row);
  n.requires_grad = nt.requires_grad;
  return push(std::move(n));
}

Var Tape::col(Var m, std::size_t t) {
  const Node& nm = node(m);
  require(t < nm.value.cols(), "Tape::col: column ", t, " out of range");
  Node n;
  n.value = Tensor2(nm.value.rows(), 1);
  for (std::size_t i = 0; i < nm.value.rows(); ++i) n.value(i, 0) = nm.value(i, t);
  n.op = Op::kCol;
  n.a = m.idx;
  n.i0 = static_cast<std::int32_t>(t);
  n.requires_grad = nm.requires_grad;
  return push(std::move(n));
}

Var Tape::vconcat(const std::vector<Var>& parts) {
  require(!parts.empty(), "Tape::vconcat: no parts");
  std::size_t total = 0;
  bool rg = false;
  for (Var p : parts) {
    const Node& np = node(p);
    require(np.value.cols() == 1, "Tape::vconcat: expects column vectors");
    total += np.value.rows();
    rg = rg || np.requires_grad;
  }
  Node n;
  n.value = Tensor2(total, 1);
  std::size_t off = 0;
  for (Var p : parts) {
    const Node& np = node(p);
    for (std::size_t i = 0; i < np.value.rows(); ++i) n.value(off + i, 0) = np.value(i, 0);
    off += np.value.rows();
    n.list.push_back(p.idx);
  }
  n.op = Op::kVconcat;
  n.requires_grad = rg;
  return push(std::move(n));
}

Var Tape::sum_all(Var a) {
  const Node& na = node(a);
  Node n;
  n.value = Tensor2(1, 1, num::sum_all(na.value));
  n.op = Op::kSumAll;
  n.a = a.idx;
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Var Tape::mean_all(Var a) {
  const Node& na = node(a);
  Node n;
  n.value = Tensor2(1, 1, num::sum_all(na.value) / static_cast<double>(na.value.size()));
  n.op = Op::kMeanAll;
  n.a = a.idx;
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Var Tape::elem(Var a, std::size_t r, std::size_t c) {
  const Node& na = node(a);
  Node n;
  n.value = Tensor2(1, 1, na.value.at(r, c));
  n.op = Op::kElem;
  n.a = a.idx;
  n.i0 = static_cast<std::int32_t>(r);
  n.i1 = static_cast<std::int32_t>(c);
  n.requires_grad = na.requires_grad;
  return push(std::move(n));
}

Tensor2& Tape::ensure_grad(std::int32_t idx) {
  Node& n = nodes_[static_cast<std::size_t>(idx)];
  if (n.grad.empty()) n.grad = Tensor2(n.value.rows(), n.value.cols(), 0.0);
  return n.grad;
}

void Tape::backward(Var root) {
  Node& r = node(root);
  require(r.value.rows() == 1 && r.value.cols() == 1, "Tape::backward: root must be 1x1");
  require(r.requires_grad, "Tape::backward: root does not depend on any gradient leaf");
  ensure_grad(root.idx)(0, 0) += 1.0;
  for (std::int32_t i = root.idx; i >= 0; --i) {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (!n.requires_grad || n.grad.empty()) continue;
    backprop_node(i);
  }
}

void Tape::backprop_node(std::int32_t idx) {
  Node& n = nodes_[static_cast<std::size_t>(idx)];
  const Tensor2& g = n.grad;
  auto rg = [&](std::int32_t p) { return nodes_[static_cast<std::size_t>(p)].requires_grad; };

  switch (n.op) {
    case Op::kLeaf:
      break;
    case Op::kAdd: {
      if (rg(n.a)) ensure_grad(n.a) += g;
      if (rg(n.b)) ensure_grad(n.b) += g;
      break;
    }
    case Op::kSub: {
      if (rg(n.a)) ensure_grad(n.a) += g;
      if (rg(n.b)) ensure_grad(n.b) -= g;
      break;
    }
    case Op::kMul: {
      const Tensor2& va = nodes_[static_cast<std::size_t>(n.a)].value;
      const Tensor2& vb = nodes_[static_cast<std::size_t>(n.b)].value;
      if (rg(n.a)) {
        Tensor2& da = ensure_grad(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) da.data()[i] += g.data()[i] * vb.data()[i];
      }
      if (rg(n.b)) {
        Tensor2& db = ensure_grad(n.b);
        for (std::size_t i = 0; i < g.size(); ++i) db.data()[i] += g.data()[i] * va.data()[i];
      }
      break;
    }
    case Op::kMatMul: {
      const Tensor2& va = nodes_[static_cast<std::size_t>(n.a)].value;
      const Tensor2& vb = nodes_[static_cast<std::size_t>(n.b)].value;
      if (rg(n.a)) {
        // dA += g * B^T
        Tensor2& da = ensure_grad(n.a);
        for (std::size_t i = 0; i < va.rows(); ++i)
          for (std::size_t j = 0; j < vb.cols(); ++j) {
            const double gij = g(i, j);
            for (std::size_t k = 0; k < va.cols(); ++k) da(i, k) += gij * vb(k, j);
          }
      }
      if (rg(n.b)) {
        // dB += A^T * g
        Tensor2& db = ensure_grad(n.b);
        for (std::size_t i = 0; i < va.rows(); ++i)
          for (std::size_t k = 0; k < va.cols(); ++k) {
            const double aik = va(i, k);
            for (std::size_t j = 0; j < vb.cols(); ++j) db(k, j) += aik * g(i, j);
          }
      }
      break;
    }
    case Op::kAffine: {
      if (rg(n.a)) {
        Tensor2& da = ensure_grad(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) da.data()[i] += n.d0 * g.data()[i];
      }
      break;
    }
    case Op::kSmul: {
      const double s = nodes_[static_cast<std::size_t>(n.a)].value(0, 0);
      const Tensor2& va = nodes_[static_cast<std::size_t>(n.b)].value;
      if (rg(n.b)) {
        Tensor2& db = ensure_grad(n.b);
        for (std::size_t i = 0; i < g.size(); ++i) db.data()[i] += s * g.data()[i];
      }
      if (rg(n.a)) ensure_grad(n.a)(0, 0) += dot_all(g, va);
      break;
    }
    case Op::kSigmoid: {
      if (rg(n.a)) {
        Tensor2& da = ensure_grad(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double y = n.value.data()[i];
          da.data()[i] += g.data()[i] * y * (1.0 - y);
        }
      }
      break;
    }
    case Op::kTanh: {
      if (rg(n.a)) {
        Tensor2& da = ensure_grad(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double y = n.value.data()[i];
          da.data()[i] += g.data()[i] * (1.0 - y * y);
        }
      }
      break;
    }
    case Op::kElu: {
      if (rg(n.a)) {
        const Tensor2& vx = nodes_[static_cast<std::size_t>(n.a)].value;
        Tensor2& da = ensure_grad(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double d = vx.data()[i] > 0.0 ? 1.0 : n.value.data()[i] + 1.0;
          da.data()[i] += g.data()[i] * d;
        }
      }
      break;
    }
    case Op::kLeakyRelu: {
      if (rg(n.a)) {
        const Tensor2& vx = nodes_[static_cast<std::size_t>(n.a)].value;
        Tensor2& da = ensure_grad(n.a);
        for (std::size_t i = 0; i < g.size(); ++i)
          da.data()[i] += g.data()[i] * (vx.data()[i] > 0.0 ? 1.0 : n.d0);
      }
      break;
    }
    case Op::kLog: {
      if (rg(n.a)) {
        const Tensor2& vx = nodes_[static_cast<std::size_t>(n.a)].value;
        Tensor2& da = ensure_grad(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) da.data()[i] += g.data()[i] / vx.data()[i];
      }
      break;
    }
    case Op::kClip: {
      if (rg(n.a)) {
        const Tensor2& vx = nodes_[static_cast<std::size_t>(n.a)].value;
        Tensor2& da = ensure_grad(n.a);
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double x = vx.data()[i];
          if (x >= n.d0 && x <= n.d1) da.data()[i] += g.data()[i];
        }
      }
      break;
    }
    case Op::kSoftmax: {
      if (rg(n.a)) {
        double inner = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) inner += g.data()[i] * n.value.data()[i];
        Tensor2& da = ensure_grad(n.a);
        for (std::size_t i = 0; i < g.size(); ++i)
          da.data()[i] += n.value.data()[i] * (g.data()[i] - inner);
      }
      break;
    }
    case Op::kLayerNorm: {
      const Tensor2& gamma = nodes_[static_cast<std::size_t>(n.b)].value;
      const std::size_t m = n.value.rows();
      const double inv_m = 1.0 / static_cast<double>(m);
      if (rg(n.b)) {
        Tensor2& dg = ensure_grad(n.b);
        for (std::size_t i = 0; i < m; ++i) dg(i, 0) += g(i, 0) * n.aux(i, 0);
      }
      if (rg(n.c)) ensure_grad(n.c) += g;
      if (rg(n.a)) {
        double mean_dxhat = 0.0;
        double mean_dxhat_xhat = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double dxhat = g(i, 0) * gamma(i, 0);
          mean_dxhat += dxhat;
          mean_dxhat_xhat += dxhat * n.aux(i, 0);
        }
        mean_dxhat *= inv_m;
        mean_dxhat_xhat *= inv_m;
        Tensor2& dx = ensure_grad(n.a);
        for (std::size_t i = 0; i < m; ++i) {
          const double dxhat = g(i, 0) * gamma(i, 0);
          dx(i, 0) += (dxhat - mean_dxhat - n.aux(i, 0) * mean_dxhat_xhat) / n.d0;
        }
      }
      break;
    }
    case Op::kEmbedRow: {
      if (rg(n.a)) {
        Tensor2& dt = ensure_grad(n.a);
        for (std::size_t j = 0; j < n.value.rows(); ++j)
          dt(static_cast<std::size_t>(n.i0), j) += g(j, 0);
      }
      break;
    }
    case Op::kCol: {
      if (rg(n.a)) {
        Tensor2& dm = ensure_grad(n.a);
        for (std::size_t i = 0; i < n.value.rows(); ++i)
          dm(i, static_cast<std::size_t>(n.i0)) += g(i, 0);
      }
      break;
    }
    case Op::kVconcat: {
      std::size_t off = 0;
      for (std::int32_t p : n.list) {
        const std::size_t pr = nodes_[static_cast<std::size_t>(p)].value.rows();
        if (rg(p)) {
          Tensor2& dp = ensure_grad(p);
          for (std::size_t i = 0; i < pr; ++i) dp(i, 0) += g(off + i, 0);
        }
        off += pr;
      }
      break;
    }
    case Op::kSumAll: {
      if (rg(n.a)) {
        Tensor2& da = ensure_grad(n.a);
        const double gs = g(0, 0);
        for (double& x : da.values()) x += gs;
      }
      break;
    }
    case Op::kMeanAll: {
      if (rg(n.a)) {
        Tensor2& da = ensure_grad(n.a);
        const double gs = g(0, 0) / static_cast<double>(da.size());
        for (double& x : da.values()) x += gs;
      }
      break;
    }
    case Op::kElem: {
      if (rg(n.a))
        ensure_grad(n.a)(static_cast<std::size_t>(n.i0), static_cast<std::size_t>(n.i1)) +=
            g(0, 0);
      break;
    }
  }
}

ParamBinding::ParamBinding(Tape& tape, const ParamSet& params, bool requires_grad)
    : tape_(&tape) {
  for (const auto& [name, value] : params.values())
    vars_.emplace(name, tape.leaf(value, requires_grad));
}

Var ParamBinding::operator[](const std::string& name) const {
  auto it = vars_.find(name);
  require(it != vars_.end(), "ParamBinding: unknown parameter '", name, "'");
  return it->second;
}

std::map<std::string, Tensor2> ParamBinding::gradients() const {
  std::map<std::string, Tensor2> out;
  for (const auto& [name, var] : vars_) out.emplace(name, tape_->grad(var));
  return out;
}

}  // namespace mtsfuse::num
