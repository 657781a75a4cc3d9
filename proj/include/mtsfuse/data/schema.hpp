#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mtsfuse::data {

enum class StaticKind { kNumeric, kBinary, kCategorical };
enum class MtsKind { kNumeric, kBinary, kCount };

struct StaticFeature {
  std::string name;
  StaticKind kind = StaticKind::kNumeric;
  std::vector<std::string> vocab;  // categorical only, non-empty
};

struct MtsFeature {
  std::string name;
  MtsKind kind = MtsKind::kNumeric;
};

/// Declares the static and time-series feature layout. Names are unique
/// across both lists; G = statics, D = time-series features.
struct FeatureSchema {
  std::vector<StaticFeature> statics;
  std::vector<MtsFeature> mts;

  std::size_t g() const { return statics.size(); }
  std::size_t d() const { return mts.size(); }

  int static_index(const std::string& name) const;  // -1 if absent
  int mts_index(const std::string& name) const;     // -1 if absent
  bool has_feature(const std::string& name) const;

  /// Throws on duplicate names or empty categorical vocabularies.
  void validate() const;

  /// Stable content hash used to pair serialized models with data.
  std::string fingerprint() const;
};

std::string to_string(StaticKind kind);
std::string to_string(MtsKind kind);
StaticKind static_kind_from_string(const std::string& s);
MtsKind mts_kind_from_string(const std::string& s);

}  // namespace mtsfuse::data
