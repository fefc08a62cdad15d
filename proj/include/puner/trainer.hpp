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

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "puner/model.hpp"
#include "puner/rng.hpp"

namespace puner {

struct TrainConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 20;
  Loss loss = Loss::Mae;
  std::size_t batch = 64;
  std::uint64_t seed = 1;
  double decision_threshold = 0.5;  // tau
  double pi_p = 0.01;
  std::map<std::string, double> pi_p_by_type;  // overrides by type name
  /// One batch per epoch holding every example; exact-risk gradient descent.
  bool full_batch = false;

  /// A mini-batch must hold at least one positive and one unlabeled token,
  /// so the lower bound is 2 rather than 1.
  void validate() const {
    if (!(learning_rate > 0.0)) fail_input("learning_rate must be > 0");
    if (epochs < 1) fail_input("epochs must be >= 1");
    if (batch < 2) fail_input("batch must be >= 2 (each batch mixes positives and unlabeled)");
    if (!(decision_threshold > 0.0 && decision_threshold < 1.0))
      fail_input("decision_threshold must lie in (0,1)");
    check_prior(pi_p);
    for (const auto& [name, p] : pi_p_by_type) check_prior(p, name);
  }

  double prior_for(const std::string& type_name) const {
    auto it = pi_p_by_type.find(type_name);
    return it == pi_p_by_type.end() ? pi_p : it->second;
  }

 private:
  static void check_prior(double p, const std::string& type_name = {}) {
    if (p >= 0.0 && p < 1.0) return;
    if (type_name.empty()) fail_input("pi_p must lie in [0,1); got ", p);
    fail_input("pi_p for type ", type_name, " must lie in [0,1); got ", p);
  }
};

struct TypeTrainReport {
  std::string type;
  bool trained = false;
  std::string skip_reason;  // set when not trained
  std::size_t n_pos = 0;
  std::size_t n_unl = 0;
  std::vector<double> epoch_risk;  // exact full-pool risk after each epoch
  std::size_t clamped_batches = 0;
  std::size_t total_batches = 0;
};

struct TrainReport {
  std::vector<TypeTrainReport> types;

  bool any_trained() const {
    for (const auto& t : types)
      if (t.trained) return true;
    return false;
  }
};

namespace trainer_detail {

/// Endless deterministic pass over a pool: shuffle, drain, reshuffle.
class CyclicSampler {
 public:
  CyclicSampler(std::vector<const FeatureVector*> items, Rng& rng) : items_(std::move(items)), rng_(rng) {
    rng_.shuffle(items_);
  }

  const FeatureVector* next() {
    if (pos_ == items_.size()) {
      rng_.shuffle(items_);
      pos_ = 0;
    }
    return items_[pos_++];
  }

 private:
  std::vector<const FeatureVector*> items_;
  std::size_t pos_ = 0;
  Rng& rng_;
};

inline void apply(TypeModel& tm, const PuGradient& g, double lr) {
  tm.bias -= lr * g.bias;
  for (const auto& [id, gw] : g.weights) tm.weights[id] -= lr * gw;
}

inline double full_pool_risk(const PuModel& model, int t,
                             std::span<const FeatureVector* const> pos,
                             std::span<const FeatureVector* const> unl, double pi_p, Loss loss) {
  std::vector<double> ps, us;
  ps.reserve(pos.size());
  us.reserve(unl.size());
  for (const FeatureVector* x : pos) ps.push_back(model.score(t, *x));
  for (const FeatureVector* x : unl) us.push_back(model.score(t, *x));
  return pu_risk(ps, us, pi_p, loss).value;
}

}  // namespace trainer_detail

/// One SGD run for every type with at least one positive and one unlabeled
/// token. Positives for type t are exactly the tokens tagged I(t); everything
/// else, including tokens tagged with other types, goes to t's unlabeled
/// pool. Deterministic given cfg.seed: each type trains on its own RNG
/// stream, so per-type runs are order-independent and may fan out over
/// threads.
inline TrainReport train_model(PuModel& model, std::span<const Document> corpus,
                               std::span<const TagAssignment> tags, const FeatureCache& cache,
                               const TrainConfig& cfg, unsigned threads = 1) {
  cfg.validate();
  if (corpus.empty()) fail("train: empty corpus");
  if (tags.size() != corpus.size())
    fail("train: ", tags.size(), " tag assignments for ", corpus.size(), " documents");
  if (cache.size() != corpus.size())
    fail("train: feature cache covers ", cache.size(), " documents, corpus has ", corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d) check_alignment(tags[d], corpus[d]);
  if (corpus_token_count(corpus) == 0) fail("train: corpus has no tokens");

  const std::size_t n_types = model.types().size();

  // Pool assembly is cheap; do it once up front, serially.
  std::vector<std::vector<const FeatureVector*>> pos_pool(n_types);
  std::vector<const FeatureVector*> all_tokens;
  std::vector<int> all_types;  // tag type per token, -1 for O
  for (std::size_t d = 0; d < corpus.size(); ++d)
    for (std::size_t s = 0; s < tags[d].sentences.size(); ++s)
      for (std::size_t i = 0; i < tags[d].sentences[s].size(); ++i) {
        const FeatureVector* fv = &cache[d][s][i];
        const IOTag tag = tags[d].sentences[s][i].tag;
        all_tokens.push_back(fv);
        all_types.push_back(tag.type);
        if (!tag.is_o()) pos_pool[static_cast<std::size_t>(tag.type)].push_back(fv);
      }

  TrainReport report;
  report.types.resize(n_types);

  parallel_for(n_types, threads, [&](std::size_t ti) {
    using namespace trainer_detail;
    const int t = static_cast<int>(ti);
    TypeTrainReport& tr = report.types[ti];
    tr.type = model.types().name(t);

    std::vector<const FeatureVector*> pos = pos_pool[ti];
    std::vector<const FeatureVector*> unl;
    unl.reserve(all_tokens.size() - pos.size());
    for (std::size_t i = 0; i < all_tokens.size(); ++i)
      if (all_types[i] != t) unl.push_back(all_tokens[i]);
    tr.n_pos = pos.size();
    tr.n_unl = unl.size();

    if (pos.empty()) {
      tr.skip_reason = "no positive tokens";
      return;
    }
    if (unl.empty()) {
      tr.skip_reason = "no unlabeled tokens";
      return;
    }

    const double pi_p = cfg.prior_for(tr.type);
    TypeModel& tm = model.type_model(t);
    tm.ensure_allocated();
    tm.prior = pi_p;

    const std::size_t n_total = pos.size() + unl.size();
    const double pi_hat =
        static_cast<double>(pos.size()) / static_cast<double>(n_total);
    std::size_t batch_pos = static_cast<std::size_t>(
        std::ceil(static_cast<double>(cfg.batch) * pi_hat));
    batch_pos = std::clamp<std::size_t>(batch_pos, 1, cfg.batch - 1);
    const std::size_t batch_unl = cfg.batch - batch_pos;
    const std::size_t batches_per_epoch =
        cfg.full_batch ? 1 : (n_total + cfg.batch - 1) / cfg.batch;

    Rng rng(mix_seed(cfg.seed, 0x70757472u + static_cast<std::uint64_t>(t)));
    CyclicSampler pos_sampler(pos, rng);
    CyclicSampler unl_sampler(unl, rng);

    std::vector<const FeatureVector*> bp, bu;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      for (std::size_t b = 0; b < batches_per_epoch; ++b) {
        if (cfg.full_batch) {
          bp = pos;
          bu = unl;
        } else {
          bp.clear();
          bu.clear();
          for (std::size_t i = 0; i < batch_pos; ++i) bp.push_back(pos_sampler.next());
          for (std::size_t i = 0; i < batch_unl; ++i) bu.push_back(unl_sampler.next());
        }
        const PuGradient g = pu_risk_gradient(model, t, bp, bu, pi_p, cfg.loss);
        apply(tm, g, cfg.learning_rate);
        ++tr.total_batches;
        if (g.risk.clamp_active) ++tr.clamped_batches;
      }
      tr.epoch_risk.push_back(full_pool_risk(model, t, pos, unl, pi_p, cfg.loss));
    }
    tm.trained = true;
    tr.trained = true;
  });

  return report;
}

inline TrainReport train_model(PuModel& model, std::span<const Document> corpus,
                               std::span<const TagAssignment> tags, const TrainConfig& cfg,
                               unsigned threads = 1) {
  const FeatureCache cache = featurize_corpus(corpus, threads);
  return train_model(model, corpus, tags, cache, cfg, threads);
}

}  // namespace puner
