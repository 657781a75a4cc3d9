#include "mtsfuse/data/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "mtsfuse/error.hpp"

namespace mtsfuse::data {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_number(const std::string& text, const std::string& where) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc{} && ptr == end, where, ": non-numeric value '", text, "'");
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open '", path, "'");
  return in;
}

}  // namespace

std::string format_double(double v) {
  // 17 significant digits round-trip any double; trim when fewer suffice.
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double parsed = 0.0;
    std::from_chars(buf, buf + std::char_traits<char>::length(buf), parsed);
    if (parsed == v) break;
  }
  return buf;
}

FeatureSchema load_schema(const std::string& schema_path) {
  std::ifstream in = open_input(schema_path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail("schema '", schema_path, "': ", e.what());
  }
  FeatureSchema schema;
  for (const auto& f : doc.at("static_features")) {
    StaticFeature sf;
    sf.name = f.at("name").get<std::string>();
    sf.kind = static_kind_from_string(f.at("kind").get<std::string>());
    if (sf.kind == StaticKind::kCategorical)
      sf.vocab = f.at("vocab").get<std::vector<std::string>>();
    schema.statics.push_back(std::move(sf));
  }
  for (const auto& f : doc.at("mts_features")) {
    MtsFeature mf;
    mf.name = f.at("name").get<std::string>();
    mf.kind = mts_kind_from_string(f.at("kind").get<std::string>());
    schema.mts.push_back(std::move(mf));
  }
  schema.validate();
  return schema;
}

void save_schema(const FeatureSchema& schema, const std::string& schema_path) {
  json doc;
  doc["schema_version"] = 1;
  doc["static_features"] = json::array();
  for (const auto& f : schema.statics) {
    json j{{"name", f.name}, {"kind", to_string(f.kind)}};
    if (f.kind == StaticKind::kCategorical) j["vocab"] = f.vocab;
    doc["static_features"].push_back(std::move(j));
  }
  doc["mts_features"] = json::array();
  for (const auto& f : schema.mts)
    doc["mts_features"].push_back(json{{"name", f.name}, {"kind", to_string(f.kind)}});
  std::ofstream out(schema_path);
  require(out.good(), "cannot write '", schema_path, "'");
  out << doc.dump(2) << '\n';
}

Dataset load_dataset(const std::string& static_path, const std::string& mts_path,
                     const std::string& schema_path) {
  Dataset ds;
  ds.schema = load_schema(schema_path);

  // static.csv: one row per patient.
  std::ifstream sin = open_input(static_path);
  std::string line;
  require(static_cast<bool>(std::getline(sin, line)), static_path, ": missing header");
  const std::vector<std::string> header = split_csv_line(line);
  require(header.size() == 2 + ds.schema.g() && header[0] == "patient_id" && header[1] == "label",
          static_path, ": header must be patient_id,label,<static features>");
  for (std::size_t g = 0; g < ds.schema.g(); ++g)
    require(header[2 + g] == ds.schema.statics[g].name, static_path, ": column '", header[2 + g],
            "' does not match schema feature '", ds.schema.statics[g].name, "'");

  std::map<std::string, std::size_t> sample_of_patient;
  std::size_t line_no = 1;
  while (std::getline(sin, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    require(f.size() == header.size(), static_path, ":", line_no, ": expected ", header.size(),
            " fields, got ", f.size());
    PatientSample s;
    s.id = f[0];
    require(sample_of_patient.emplace(s.id, ds.samples.size()).second, static_path, ":", line_no,
            ": duplicate patient id '", s.id, "'");
    const double label = parse_number(f[1], static_path + ":" + std::to_string(line_no));
    require(label == 0.0 || label == 1.0, static_path, ":", line_no, ": label must be 0 or 1");
    s.label = static_cast<int>(label);
    for (std::size_t g = 0; g < ds.schema.g(); ++g) {
      const StaticFeature& sf = ds.schema.statics[g];
      const std::string where = static_path + ":" + std::to_string(line_no);
      if (sf.kind == StaticKind::kCategorical) {
        const auto it = std::find(sf.vocab.begin(), sf.vocab.end(), f[2 + g]);
        require(it != sf.vocab.end(), where, ": value '", f[2 + g],
                "' not in vocabulary of feature '", sf.name, "'");
        s.statics.push_back(static_cast<double>(it - sf.vocab.begin()));
      } else {
        s.statics.push_back(parse_number(f[2 + g], where));
      }
    }
    s.mts = num::Tensor2(ds.schema.d(), 1, 0.0);  // grown below as slots appear
    ds.samples.push_back(std::move(s));
  }

  // mts.csv: long format, zero-filled into D x (1 + max slot).
  std::ifstream min = open_input(mts_path);
  require(static_cast<bool>(std::getline(min, line)), mts_path, ": missing header");
  {
    const std::vector<std::string> h = split_csv_line(line);
    require(h.size() == 4 && h[0] == "patient_id" && h[1] == "time_slot" && h[2] == "feature" &&
                h[3] == "value",
            mts_path, ": header must be patient_id,time_slot,feature,value");
  }
  struct Cell {
    std::size_t sample, d, t;
    double value;
  };
  std::vector<Cell> cells;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  std::vector<std::size_t> t_len(ds.samples.size(), 1);
  line_no = 1;
  while (std::getline(min, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    const std::string where = mts_path + ":" + std::to_string(line_no);
    require(f.size() == 4, where, ": expected 4 fields, got ", f.size());
    const auto pit = sample_of_patient.find(f[0]);
    require(pit != sample_of_patient.end(), where, ": unknown patient id '", f[0], "'");
    const double slot_raw = parse_number(f[1], where);
    require(slot_raw >= 0.0 && slot_raw == std::floor(slot_raw), where,
            ": time_slot must be a non-negative integer");
    const auto t = static_cast<std::size_t>(slot_raw);
    const int d = ds.schema.mts_index(f[2]);
    require(d >= 0, where, ": unknown feature name '", f[2], "'");
    require(seen.emplace(pit->second, static_cast<std::size_t>(d), t).second, where,
            ": duplicate entry for (patient '", f[0], "', slot ", t, ", feature '", f[2], "')");
    cells.push_back({pit->second, static_cast<std::size_t>(d), t, parse_number(f[3], where)});
    t_len[pit->second] = std::max(t_len[pit->second], t + 1);
  }
  for (std::size_t i = 0; i < ds.samples.size(); ++i)
    ds.samples[i].mts = num::Tensor2(ds.schema.d(), t_len[i], 0.0);
  for (const Cell& c : cells) ds.samples[c.sample].mts(c.d, c.t) = c.value;

  ds.validate();
  return ds;
}

void save_dataset(const Dataset& ds, const std::string& static_path, const std::string& mts_path,
                  const std::string& schema_path) {
  save_schema(ds.schema, schema_path);

  std::ofstream sout(static_path);
  require(sout.good(), "cannot write '", static_path, "'");
  sout << "patient_id,label";
  for (const auto& f : ds.schema.statics) sout << ',' << f.name;
  sout << '\n';
  for (const auto& s : ds.samples) {
    sout << s.id << ',' << s.label;
    for (std::size_t g = 0; g < ds.schema.g(); ++g) {
      const StaticFeature& sf = ds.schema.statics[g];
      if (sf.kind == StaticKind::kCategorical)
        sout << ',' << sf.vocab[static_cast<std::size_t>(s.statics[g])];
      else
        sout << ',' << format_double(s.statics[g]);
    }
    sout << '\n';
  }

  std::ofstream mout(mts_path);
  require(mout.good(), "cannot write '", mts_path, "'");
  mout << "patient_id,time_slot,feature,value\n";
  for (const auto& s : ds.samples) {
    for (std::size_t d = 0; d < ds.schema.d(); ++d)
      for (std::size_t t = 0; t < s.t_len(); ++t) {
        // Always write the last slot so T_i survives the round trip.
        if (s.mts(d, t) == 0.0 && !(d == ds.schema.d() - 1 && t == s.t_len() - 1)) continue;
        mout << s.id << ',' << t << ',' << ds.schema.mts[d].name << ','
             << format_double(s.mts(d, t)) << '\n';
      }
  }
}

}  // namespace mtsfuse::data
