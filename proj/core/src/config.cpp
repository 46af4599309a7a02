// Copyright 2026 The sdre Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sdre/config.hpp"

#include <charconv>
#include <cstdlib>
#include <set>

#include "json.hpp"
#include "sdre/error.hpp"

namespace sdre {

namespace {

using nlohmann::json;

template <typename T>
T Get(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    Fail(ErrorKind::kInvalidConfig, field + ": wrong type (" + j.dump() + ")");
  }
}

std::size_t GetCount(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    Fail(ErrorKind::kInvalidConfig, field + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::vector<std::size_t> GetCounts(const json& j, const std::string& field) {
  if (!j.is_array()) Fail(ErrorKind::kInvalidConfig, field + ": expected an array");
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(GetCount(v, field));
  return out;
}

double GetNumber(const json& j, const std::string& field) {
  if (!j.is_number()) Fail(ErrorKind::kInvalidConfig, field + ": expected a number");
  return j.get<double>();
}

}  // namespace

ExperimentConfig ParseExperimentConfig(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Fail(ErrorKind::kInvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("config") && doc["config"].is_object()) {
    doc = doc["config"];
  }
  if (!doc.is_object()) Fail(ErrorKind::kInvalidConfig, "config must be a JSON object");

  ExperimentConfig cfg;
  for (const auto& [key, v] : doc.items()) {
    if (key == "methods") {
      if (!v.is_array()) Fail(ErrorKind::kInvalidConfig, "methods: expected an array");
      cfg.methods.clear();
      for (const auto& m : v) cfg.methods.push_back(ParseMethod(Get<std::string>(m, key)));
    } else if (key == "dgps") {
      if (!v.is_array()) Fail(ErrorKind::kInvalidConfig, "dgps: expected an array");
      cfg.dgps.clear();
      for (const auto& d : v) cfg.dgps.push_back(Get<std::string>(d, key));
    } else if (key == "alpha") {
      cfg.alpha = GetNumber(v, key);
    } else if (key == "minpts") {
      cfg.minpts = GetCount(v, key);
    } else if (key == "max_iter") {
      cfg.max_iter = GetCount(v, key);
    } else if (key == "beta") {
      cfg.beta = GetNumber(v, key);
    } else if (key == "bump_iterations") {
      cfg.bump_iterations = GetCount(v, key);
    } else if (key == "new_points") {
      cfg.new_points = GetCount(v, key);
    } else if (key == "sizes") {
      cfg.sizes = GetCounts(v, key);
    } else if (key == "reps") {
      cfg.reps = GetCount(v, key);
    } else if (key == "noise_level") {
      cfg.noise_level = GetNumber(v, key);
    } else if (key == "test_size") {
      cfg.test_size = GetCount(v, key);
    } else if (key == "base_seed") {
      if (!v.is_number_unsigned()) {
        Fail(ErrorKind::kInvalidConfig, "base_seed: expected a non-negative integer");
      }
      cfg.base_seed = v.get<std::uint64_t>();
    } else if (key == "n_trees") {
      cfg.n_trees = GetCount(v, key);
    } else if (key == "mtry_grid") {
      cfg.mtry_grid = GetCounts(v, key);
    } else if (key == "tune_mtry") {
      if (!v.is_boolean()) Fail(ErrorKind::kInvalidConfig, "tune_mtry: expected a boolean");
      cfg.tune_mtry = v.get<bool>();
    } else if (key == "rf_validation") {
      const auto s = Get<std::string>(v, key);
      if (s == "relabeled") {
        cfg.rf_validation = RfValidation::kRelabeled;
      } else if (s == "original") {
        cfg.rf_validation = RfValidation::kOriginal;
      } else {
        Fail(ErrorKind::kInvalidConfig, "rf_validation: expected 'relabeled' or 'original'");
      }
    } else if (key == "jobs") {
      cfg.jobs = GetCount(v, key);
    } else {
      Fail(ErrorKind::kInvalidConfig, "unknown field '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

std::string ExperimentConfigToJson(const ExperimentConfig& cfg) {
  json j;
  j["methods"] = json::array();
  for (Method m : cfg.methods) j["methods"].push_back(std::string(MethodName(m)));
  j["dgps"] = cfg.dgps;
  j["alpha"] = cfg.alpha;
  j["minpts"] = cfg.minpts;
  j["max_iter"] = cfg.max_iter;
  j["beta"] = cfg.beta;
  j["bump_iterations"] = cfg.bump_iterations;
  j["new_points"] = cfg.new_points;
  j["sizes"] = cfg.sizes;
  j["reps"] = cfg.reps;
  j["noise_level"] = cfg.noise_level;
  j["test_size"] = cfg.test_size;
  j["base_seed"] = cfg.base_seed;
  j["n_trees"] = cfg.n_trees;
  j["mtry_grid"] = cfg.mtry_grid;
  j["tune_mtry"] = cfg.tune_mtry;
  j["rf_validation"] = cfg.rf_validation == RfValidation::kRelabeled ? "relabeled" : "original";
  j["jobs"] = cfg.jobs;
  return j.dump(2);
}

void ApplySeedOverride(ExperimentConfig& cfg) {
  const char* env = std::getenv("SDRE_SEED");
  if (!env || !*env) return;
  const std::string_view text(env);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(ErrorKind::kInvalidConfig, "SDRE_SEED: expected a non-negative integer");
  }
  cfg.base_seed = seed;
}

}  // namespace sdre
