// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "puner/bootstrap.hpp"

namespace puner {

/// Full run configuration: entity types plus every classifier and loop knob.
/// Loaded from a JSON file where absent keys keep their defaults and unknown
/// keys are errors.
struct RunConfig {
  EntityTypeSet types = EntityTypeSet::defaults();
  BootstrapConfig bootstrap;
  unsigned threads = 0;  // 0 = machine parallelism

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["types"] = types.names();
    j["bootstrap"] = {{"frequency_threshold", bootstrap.frequency_threshold},
                      {"max_iterations", bootstrap.max_iterations},
                      {"max_phrase_len", bootstrap.max_phrase_len}};
    const TrainConfig& tr = bootstrap.trainer;
    j["trainer"] = {{"learning_rate", tr.learning_rate},
                    {"epochs", tr.epochs},
                    {"loss", std::string(loss_name(tr.loss))},
                    {"batch", tr.batch},
                    {"seed", tr.seed},
                    {"decision_threshold", tr.decision_threshold},
                    {"pi_p", tr.pi_p},
                    {"pi_p_by_type", tr.pi_p_by_type},
                    {"full_batch", tr.full_batch}};
    j["expansion"] = {{"relations", bootstrap.expansion.relations}};
    j["threads"] = threads;
    return j;
  }

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load_file(const std::string& path);

  void validate() const { bootstrap.validate(); }
};

namespace config_detail {

inline void reject_unknown(const nlohmann::json& obj, std::string_view section,
                           std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto k : known)
      if (key == k) ok = true;
    if (!ok) fail_input("config: unknown key '", section, key, "'");
  }
}

template <typename T>
void read_field(const nlohmann::json& obj, const char* key, T& into,
                std::string_view section) {
  if (!obj.contains(key)) return;
  try {
    into = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail_input("config: bad value for '", section, key, "'");
  }
}

}  // namespace config_detail

inline RunConfig RunConfig::from_json(const nlohmann::json& j) {
  using namespace config_detail;
  if (!j.is_object()) fail_input("config: top level must be an object");
  reject_unknown(j, "", {"types", "bootstrap", "trainer", "expansion", "threads"});

  RunConfig cfg;
  if (j.contains("types")) {
    std::vector<std::string> names;
    read_field(j, "types", names, "");
    cfg.types = EntityTypeSet(std::move(names));
  }
  if (j.contains("bootstrap")) {
    const auto& b = j.at("bootstrap");
    if (!b.is_object()) fail_input("config: 'bootstrap' must be an object");
    reject_unknown(b, "bootstrap.", {"frequency_threshold", "max_iterations", "max_phrase_len"});
    read_field(b, "frequency_threshold", cfg.bootstrap.frequency_threshold, "bootstrap.");
    read_field(b, "max_iterations", cfg.bootstrap.max_iterations, "bootstrap.");
    read_field(b, "max_phrase_len", cfg.bootstrap.max_phrase_len, "bootstrap.");
  }
  if (j.contains("trainer")) {
    const auto& t = j.at("trainer");
    if (!t.is_object()) fail_input("config: 'trainer' must be an object");
    reject_unknown(t, "trainer.",
                   {"learning_rate", "epochs", "loss", "batch", "seed", "decision_threshold",
                    "pi_p", "pi_p_by_type", "full_batch"});
    TrainConfig& tr = cfg.bootstrap.trainer;
    read_field(t, "learning_rate", tr.learning_rate, "trainer.");
    read_field(t, "epochs", tr.epochs, "trainer.");
    if (t.contains("loss")) {
      std::string name;
      read_field(t, "loss", name, "trainer.");
      tr.loss = loss_from_string(name);
    }
    read_field(t, "batch", tr.batch, "trainer.");
    read_field(t, "seed", tr.seed, "trainer.");
    read_field(t, "decision_threshold", tr.decision_threshold, "trainer.");
    read_field(t, "pi_p", tr.pi_p, "trainer.");
    read_field(t, "pi_p_by_type", tr.pi_p_by_type, "trainer.");
    read_field(t, "full_batch", tr.full_batch, "trainer.");
    for (const auto& [name, prior] : tr.pi_p_by_type) {
      (void)prior;
      cfg.types.require(name);
    }
  }
  if (j.contains("expansion")) {
    const auto& e = j.at("expansion");
    if (!e.is_object()) fail_input("config: 'expansion' must be an object");
    reject_unknown(e, "expansion.", {"relations"});
    read_field(e, "relations", cfg.bootstrap.expansion.relations, "expansion.");
  }
  read_field(j, "threads", cfg.threads, "");
  cfg.validate();
  return cfg;
}

inline RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_input("cannot open config file: ", path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail_input("config file ", path, ": ", e.what());
  }
  return from_json(j);
}

}  // namespace puner
