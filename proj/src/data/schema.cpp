#include "mtsfuse/data/schema.hpp"

#include <set>
#include <sstream>

#include "mtsfuse/error.hpp"

namespace mtsfuse::data {

int FeatureSchema::static_index(const std::string& name) const {
  for (std::size_t i = 0; i < statics.size(); ++i)
    if (statics[i].name == name) return static_cast<int>(i);
  return -1;
}

int FeatureSchema::mts_index(const std::string& name) const {
  for (std::size_t i = 0; i < mts.size(); ++i)
    if (mts[i].name == name) return static_cast<int>(i);
  return -1;
}

bool FeatureSchema::has_feature(const std::string& name) const {
  return static_index(name) >= 0 || mts_index(name) >= 0;
}

void FeatureSchema::validate() const {
  std::set<std::string> seen;
  for (const auto& f : statics) {
    require(seen.insert(f.name).second, "schema: duplicate feature name '", f.name, "'");
    if (f.kind == StaticKind::kCategorical)
      require(!f.vocab.empty(), "schema: categorical feature '", f.name, "' has empty vocabulary");
    else
      require(f.vocab.empty(), "schema: non-categorical feature '", f.name,
              "' must not declare a vocabulary");
  }
  for (const auto& f : mts)
    require(seen.insert(f.name).second, "schema: duplicate feature name '", f.name, "'");
}

std::string FeatureSchema::fingerprint() const {
  // FNV-1a over a canonical rendering of the schema.
  std::ostringstream os;
  for (const auto& f : statics) {
    os << "s|" << f.name << '|' << to_string(f.kind);
    for (const auto& v : f.vocab) os << '|' << v;
    os << '\n';
  }
  for (const auto& f : mts) os << "m|" << f.name << '|' << to_string(f.kind) << '\n';
  const std::string text = os.str();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

std::string to_string(StaticKind kind) {
  switch (kind) {
    case StaticKind::kNumeric: return "numeric";
    case StaticKind::kBinary: return "binary";
    case StaticKind::kCategorical: return "categorical";
  }
  return "numeric";
}

std::string to_string(MtsKind kind) {
  switch (kind) {
    case MtsKind::kNumeric: return "numeric";
    case MtsKind::kBinary: return "binary";
    case MtsKind::kCount: return "count";
  }
  return "numeric";
}

StaticKind static_kind_from_string(const std::string& s) {
  if (s == "numeric") return StaticKind::kNumeric;
  if (s == "binary") return StaticKind::kBinary;
  if (s == "categorical") return StaticKind::kCategorical;
  fail("schema: unknown static feature kind '", s, "'");
}

MtsKind mts_kind_from_string(const std::string& s) {
  if (s == "numeric") return MtsKind::kNumeric;
  if (s == "binary") return MtsKind::kBinary;
  if (s == "count") return MtsKind::kCount;
  fail("schema: unknown mts feature kind '", s, "'");
}

}  // namespace mtsfuse::data
