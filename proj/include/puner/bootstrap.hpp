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

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "puner/expansion.hpp"
#include "puner/gazetteer.hpp"
#include "puner/trainer.hpp"

namespace puner {

struct BootstrapConfig {
  std::size_t frequency_threshold = 5;  // K; harvested phrases need frequency > K
  std::size_t max_iterations = 10;      // I
  std::size_t max_phrase_len = 4;
  TrainConfig trainer;
  ExpansionConfig expansion;

  void validate() const {
    if (max_iterations < 1) fail_input("max_iterations must be >= 1");
    if (max_phrase_len < 1) fail_input("max_phrase_len must be >= 1");
    trainer.validate();
  }
};

struct HarvestEntry {
  std::size_t iteration = 0;  // 1-based; 0 until stamped by the loop
  int type = -1;
  std::string phrase;
  std::size_t frequency = 0;
};

struct BootstrapState {
  std::size_t iteration = 0;           // completed iterations
  std::vector<Gazetteer> snapshots;    // snapshots[i] = dictionary after iteration i
  std::vector<HarvestEntry> harvest_log;
  bool converged = false;

  static BootstrapState fresh(Gazetteer seed) {
    BootstrapState s;
    s.snapshots.push_back(std::move(seed));
    return s;
  }

  const Gazetteer& current() const {
    if (snapshots.empty()) fail("bootstrap state has no gazetteer snapshot");
    return snapshots.back();
  }
};

/// Candidate dictionary entries from one prediction pass. Candidates are
/// maximal same-type I runs within a sentence; the phrase is the lowercased
/// surfaces joined by spaces. Kept: corpus frequency strictly above K,
/// length within max_phrase_len, phrase absent from the gazetteer under
/// every type. A candidate already listed under a different type is dropped
/// and counted in cross_type_conflicts; under the same type it is silently
/// old news. Order: frequency descending, then phrase, then type order.
inline std::vector<HarvestEntry> harvest_entities(std::span<const Document> corpus,
                                                  std::span<const TagAssignment> preds,
                                                  const Gazetteer& gaz, std::size_t k,
                                                  std::size_t max_phrase_len,
                                                  std::size_t* cross_type_conflicts = nullptr) {
  if (preds.size() != corpus.size())
    fail("harvest: ", preds.size(), " tag assignments for ", corpus.size(), " documents");

  std::map<std::pair<std::string, int>, std::size_t> freq;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    check_alignment(preds[d], corpus[d]);
    for (std::size_t s = 0; s < corpus[d].sentences.size(); ++s) {
      const auto& toks = corpus[d].sentences[s].tokens;
      const auto& tags = preds[d].sentences[s];
      for (std::size_t i = 0; i < tags.size();) {
        if (tags[i].tag.is_o()) {
          ++i;
          continue;
        }
        const int type = tags[i].tag.type;
        std::size_t j = i;
        while (j < tags.size() && tags[j].tag.type == type) ++j;
        std::string phrase = ascii_lower(toks[i].surface);
        for (std::size_t m = i + 1; m < j; ++m) {
          phrase += ' ';
          phrase += ascii_lower(toks[m].surface);
        }
        if (j - i <= max_phrase_len) ++freq[{std::move(phrase), type}];
        i = j;
      }
    }
  }

  std::size_t conflicts = 0;
  std::vector<HarvestEntry> out;
  for (const auto& [key, count] : freq) {
    if (count <= k) continue;
    const auto& [phrase, type] = key;
    const auto existing = gaz.type_of(split_ws(phrase));
    if (existing) {
      if (*existing != type) ++conflicts;
      continue;
    }
    out.push_back(HarvestEntry{0, type, phrase, count});
  }
  std::sort(out.begin(), out.end(), [](const HarvestEntry& a, const HarvestEntry& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    if (a.phrase != b.phrase) return a.phrase < b.phrase;
    return a.type < b.type;
  });
  if (cross_type_conflicts) *cross_type_conflicts = conflicts;
  return out;
}

/// Everything one loop pass produced, handed to the iteration hook before
/// the next pass starts. References stay valid only during the call.
struct IterationArtifacts {
  std::size_t iteration = 0;  // 1-based
  const std::vector<TagAssignment>& labels;  // dictionary + regex + expansion
  ExpansionStats expansion;
  const TrainReport& train_report;
  const std::vector<TagAssignment>& predictions;
  const std::vector<HarvestEntry>& harvested;  // entries added this pass
  std::size_t cross_type_conflicts = 0;
  const Gazetteer& gazetteer;  // post-harvest
  const PuModel& model;
};

using IterationHook = std::function<void(const IterationArtifacts&)>;

struct BootstrapResult {
  Gazetteer gazetteer;
  PuModel model;
  BootstrapState state;
};

/// The bootstrap loop: label with the current dictionary, expand along
/// compound edges, train a fresh classifier bank, predict, harvest frequent
/// novel phrases, grow the dictionary. Stops when a pass harvests nothing
/// new or after max_iterations passes. Dependency structure and features
/// are fixed inputs, so featurization happens once up front. Accepts a
/// resumed state whose last snapshot is the working dictionary.
inline BootstrapResult run_bootstrap(std::span<const Document> corpus, BootstrapState state,
                                     const BootstrapConfig& cfg, unsigned threads = 1,
                                     const IterationHook& hook = nullptr) {
  cfg.validate();
  if (corpus.empty()) fail("bootstrap: empty corpus");
  if (state.snapshots.empty()) fail("bootstrap: state has no gazetteer");
  if (state.iteration + 1 != state.snapshots.size())
    fail("bootstrap: state has ", state.snapshots.size(), " snapshots after ", state.iteration,
         " iterations");
  if (state.current().empty()) fail("bootstrap: seed gazetteer is empty");

  const EntityTypeSet types = state.current().types();
  const FeatureCache cache = featurize_corpus(corpus, threads);
  Gazetteer gaz = state.current();
  PuModel model(types);

  while (state.iteration < cfg.max_iterations && !state.converged) {
    const std::size_t iteration = state.iteration + 1;

    ExpansionStats exp_stats;
    const std::vector<TagAssignment> labels = expand_corpus(
        label_corpus(corpus, gaz, threads), corpus, cfg.expansion, &exp_stats, threads);

    model = PuModel(types);
    const TrainReport report = train_model(model, corpus, labels, cache, cfg.trainer, threads);
    if (!report.any_trained()) {
      std::string reasons;
      for (const auto& t : report.types)
        reasons += cat("\n  ", t.type, ": ", t.skip_reason);
      fail("bootstrap iteration ", iteration, ": training skipped every type:", reasons);
    }

    const std::vector<TagAssignment> preds =
        predict(model, corpus, cache, cfg.trainer.decision_threshold, threads);

    std::size_t conflicts = 0;
    std::vector<HarvestEntry> candidates = harvest_entities(
        corpus, preds, gaz, cfg.frequency_threshold, cfg.max_phrase_len, &conflicts);

    std::vector<HarvestEntry> added;
    for (HarvestEntry& entry : candidates) {
      entry.iteration = iteration;
      try {
        if (gaz.add_entity(entry.phrase, entry.type) == AddOutcome::Added)
          added.push_back(entry);
      } catch (const GazetteerConflict&) {
        // Two candidates claimed the phrase for different types in the same
        // pass; the higher-frequency one already won.
        ++conflicts;
      }
    }
    if (!added.empty()) gaz.bump_version();

    state.iteration = iteration;
    state.snapshots.push_back(gaz);
    state.harvest_log.insert(state.harvest_log.end(), added.begin(), added.end());
    state.converged = added.empty();

    if (hook)
      hook(IterationArtifacts{iteration, labels, exp_stats, report, preds, added, conflicts,
                              gaz, model});
  }

  return BootstrapResult{std::move(gaz), std::move(model), std::move(state)};
}

inline BootstrapResult run_bootstrap(std::span<const Document> corpus, const Gazetteer& seed,
                                     const BootstrapConfig& cfg, unsigned threads = 1,
                                     const IterationHook& hook = nullptr) {
  return run_bootstrap(corpus, BootstrapState::fresh(seed), cfg, threads, hook);
}

}  // namespace puner
