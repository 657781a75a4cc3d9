#pragma once

#include <string>

#include "mtsfuse/data/dataset.hpp"

namespace mtsfuse::data {

/// Loads a dataset from the on-disk triple:
///   static.csv  header `patient_id,label,<static feature names...>`
///   mts.csv     long format `patient_id,time_slot,feature,value`
///   schema.json feature kinds and categorical vocabularies
/// T_i is 1 + the largest observed slot per patient; unobserved cells are 0.
Dataset load_dataset(const std::string& static_path, const std::string& mts_path,
                     const std::string& schema_path);

/// Writes the same three files; reloading yields a value-identical dataset.
void save_dataset(const Dataset& ds, const std::string& static_path, const std::string& mts_path,
                  const std::string& schema_path);

FeatureSchema load_schema(const std::string& schema_path);
void save_schema(const FeatureSchema& schema, const std::string& schema_path);

/// Shortest decimal rendering that parses back to the same double.
std::string format_double(double v);

}  // namespace mtsfuse::data
