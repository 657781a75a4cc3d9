#include "mtsfuse/data/synth.hpp"

#include <algorithm>
#include <cmath>

#include "mtsfuse/error.hpp"
#include "mtsfuse/numerics/rng.hpp"

namespace mtsfuse::data {

namespace {

constexpr std::size_t kLabelWindow = 14;  // exposure statistics use the model window

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

void SynthConfig::validate() const {
  require(i_count >= 2, "synth: need at least two samples");
  require(positive_ratio > 0.0 && positive_ratio < 1.0, "synth: ratio must lie in (0, 1)");
  require(t_min >= 1 && t_min <= t_max, "synth: length range requires 1 <= t_min <= t_max");
  const FeatureSchema schema = synth_schema(d_count, g_count);
  for (const auto& p : planted) {
    require(schema.has_feature(p.name), "synth: planted feature '", p.name,
            "' does not exist in the generated schema");
    const int g = schema.static_index(p.name);
    if (g >= 0)
      require(schema.statics[static_cast<std::size_t>(g)].kind != StaticKind::kCategorical,
              "synth: planted static feature '", p.name, "' must be numeric or binary");
  }
}

FeatureSchema synth_schema(std::size_t d_count, std::size_t g_count) {
  FeatureSchema schema;
  for (std::size_t g = 0; g < g_count; ++g) {
    StaticFeature f;
    switch (g % 3) {
      case 0:
        f.kind = StaticKind::kNumeric;
        f.name = "s" + std::to_string(g) + "_num";
        break;
      case 1:
        f.kind = StaticKind::kBinary;
        f.name = "s" + std::to_string(g) + "_bin";
        break;
      default:
        f.kind = StaticKind::kCategorical;
        f.name = "s" + std::to_string(g) + "_cat";
        f.vocab = {"a", "b", "c"};
        break;
    }
    schema.statics.push_back(std::move(f));
  }
  for (std::size_t d = 0; d < d_count; ++d) {
    MtsFeature f;
    if (d % 2 == 0) {
      f.kind = MtsKind::kBinary;
      f.name = "m" + std::to_string(d) + "_bin";
    } else {
      f.kind = MtsKind::kCount;
      f.name = "m" + std::to_string(d) + "_cnt";
    }
    schema.mts.push_back(std::move(f));
  }
  return schema;
}

SynthResult synth_generate(const SynthConfig& cfg) {
  cfg.validate();
  SynthResult result;
  result.dataset.schema = synth_schema(cfg.d_count, cfg.g_count);
  const FeatureSchema& schema = result.dataset.schema;

  // Covariates; one child stream per sample keeps generation order-free.
  num::RngStream root(cfg.seed, 0x5D47);
  std::vector<PatientSample>& samples = result.dataset.samples;
  samples.resize(cfg.i_count);
  for (std::size_t i = 0; i < cfg.i_count; ++i) {
    num::RngStream rng = root.child(i);
    PatientSample& s = samples[i];
    s.id = "p" + std::to_string(i);
    const std::size_t t_len = cfg.t_min + rng.next_below(cfg.t_max - cfg.t_min + 1);
    s.mts = num::Tensor2(schema.d(), t_len, 0.0);
    for (std::size_t g = 0; g < schema.g(); ++g) {
      switch (schema.statics[g].kind) {
        case StaticKind::kNumeric: s.statics.push_back(rng.next_normal()); break;
        case StaticKind::kBinary: s.statics.push_back(rng.next_bool(0.5) ? 1.0 : 0.0); break;
        case StaticKind::kCategorical:
          s.statics.push_back(
              static_cast<double>(rng.next_below(schema.statics[g].vocab.size())));
          break;
      }
    }
    for (std::size_t d = 0; d < schema.d(); ++d) {
      if (schema.mts[d].kind == MtsKind::kBinary) {
        // Persistent two-state Markov chain (treatment on/off).
        int state = rng.next_bool(0.4) ? 1 : 0;
        for (std::size_t t = 0; t < t_len; ++t) {
          s.mts(d, t) = state;
          const double flip = state == 0 ? 0.20 : 0.30;
          if (rng.next_bool(flip)) state = 1 - state;
        }
      } else {
        // Bounded integer random walk (neighbour-style count).
        double x = static_cast<double>(rng.next_below(4));
        for (std::size_t t = 0; t < t_len; ++t) {
          s.mts(d, t) = x;
          const std::uint64_t move = rng.next_below(3);
          x = std::clamp(x + (move == 0 ? -1.0 : move == 1 ? 0.0 : 1.0), 0.0, 9.0);
        }
      }
    }
  }

  // Planted-signal statistic per sample: raw value for statics, mean exposure
  // over the first kLabelWindow slots for time series; standardized so the
  // configured effects are in sigma units.
  std::vector<double> signal(cfg.i_count, 0.0);
  for (const auto& planted : cfg.planted) {
    std::vector<double> stat(cfg.i_count, 0.0);
    const int g = schema.static_index(planted.name);
    const int d = schema.mts_index(planted.name);
    for (std::size_t i = 0; i < cfg.i_count; ++i) {
      if (g >= 0) {
        stat[i] = samples[i].statics[static_cast<std::size_t>(g)];
      } else {
        const std::size_t upto = std::min<std::size_t>(samples[i].t_len(), kLabelWindow);
        double sum = 0.0;
        for (std::size_t t = 0; t < upto; ++t)
          sum += samples[i].mts(static_cast<std::size_t>(d), t);
        stat[i] = sum / static_cast<double>(upto);
      }
    }
    double mean = 0.0;
    for (double v : stat) mean += v;
    mean /= static_cast<double>(cfg.i_count);
    double var = 0.0;
    for (double v : stat) var += (v - mean) * (v - mean);
    var /= static_cast<double>(cfg.i_count);
    const double sd = var > 0.0 ? std::sqrt(var) : 1.0;
    for (std::size_t i = 0; i < cfg.i_count; ++i)
      signal[i] += planted.effect * (stat[i] - mean) / sd;
    result.relevant_features.push_back(planted.name);
  }

  // Intercept calibration: bisection on c so the mean predicted probability
  // hits the target ratio.
  auto expected_rate = [&](double c) {
    double rate = 0.0;
    for (double s : signal) rate += sigmoid(c + s);
    return rate / static_cast<double>(cfg.i_count);
  };
  double lo = -40.0, hi = 40.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (expected_rate(mid) < cfg.positive_ratio ? lo : hi) = mid;
  }
  const double intercept = 0.5 * (lo + hi);
  require(std::abs(expected_rate(intercept) - cfg.positive_ratio) <= 0.03,
          "synth: target positive ratio ", cfg.positive_ratio,
          " unreachable after intercept calibration");

  num::RngStream label_rng(cfg.seed, 0xA27B);
  for (std::size_t i = 0; i < cfg.i_count; ++i)
    samples[i].label = label_rng.next_bool(sigmoid(intercept + signal[i])) ? 1 : 0;

  result.dataset.validate();
  return result;
}

}  // namespace mtsfuse::data
