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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "puner/corpus.hpp"
#include "puner/features.hpp"
#include "puner/risk.hpp"

namespace puner {

/// Squashed into [1e-12, 1-1e-12] so BCE stays finite and scores stay in (0,1).
inline double logistic(double z) {
  const double y = 1.0 / (1.0 + std::exp(-z));
  if (y < 1e-12) return 1e-12;
  if (y > 1.0 - 1e-12) return 1.0 - 1e-12;
  return y;
}

/// One binary classifier head. Weights live in the hashed feature space and
/// are allocated on first use; an empty vector means all-zero.
struct TypeModel {
  std::vector<double> weights;
  double bias = 0.0;
  double prior = 0.01;
  bool trained = false;

  void ensure_allocated() {
    if (weights.empty()) weights.assign(kFeatureDim, 0.0);
  }
};

/// A bank of per-type binary classifiers over one fixed entity type set.
class PuModel {
 public:
  PuModel() : PuModel(EntityTypeSet::defaults()) {}
  explicit PuModel(EntityTypeSet types)
      : types_(std::move(types)), per_type_(types_.size()) {}

  const EntityTypeSet& types() const { return types_; }

  TypeModel& type_model(int t) {
    check_type(t);
    return per_type_[static_cast<std::size_t>(t)];
  }
  const TypeModel& type_model(int t) const {
    check_type(t);
    return per_type_[static_cast<std::size_t>(t)];
  }

  bool any_trained() const {
    for (const auto& tm : per_type_)
      if (tm.trained) return true;
    return false;
  }

  double logit(int t, const FeatureVector& x) const {
    const TypeModel& tm = type_model(t);
    double z = tm.bias;
    if (!tm.weights.empty())
      for (const auto& [id, v] : x.entries) z += tm.weights[id] * v;
    return z;
  }

  double score(int t, const FeatureVector& x) const { return logistic(logit(t, x)); }

  void save(std::ostream& out) const;
  static PuModel load(std::istream& in);
  void save_file(const std::string& path) const;
  static PuModel load_file(const std::string& path);

 private:
  void check_type(int t) const {
    if (t < 0 || static_cast<std::size_t>(t) >= per_type_.size())
      fail("unknown entity type id ", t);
  }

  EntityTypeSet types_;
  std::vector<TypeModel> per_type_;
};

/// Gradient of the clamped risk over the weights a batch touches, plus bias.
struct PuGradient {
  std::unordered_map<std::uint32_t, double> weights;
  double bias = 0.0;
  PuRisk risk;  // batch risk at the current parameters, clamp decision included
};

/// Analytic gradient of pu_risk for type t on one batch. Scores are computed
/// at the model's current parameters; when the clamp is active both the
/// unlabeled term and the prior correction stop contributing, leaving the
/// positive term alone.
inline PuGradient pu_risk_gradient(const PuModel& model, int t,
                                   std::span<const FeatureVector* const> pos_batch,
                                   std::span<const FeatureVector* const> unl_batch, double pi_p,
                                   Loss loss) {
  if (pos_batch.empty()) fail("pu_risk_gradient: empty positive batch");
  if (unl_batch.empty()) fail("pu_risk_gradient: empty unlabeled batch");

  std::vector<double> pos_scores, unl_scores;
  pos_scores.reserve(pos_batch.size());
  unl_scores.reserve(unl_batch.size());
  for (const FeatureVector* x : pos_batch) pos_scores.push_back(model.score(t, *x));
  for (const FeatureVector* x : unl_batch) unl_scores.push_back(model.score(t, *x));

  PuGradient g;
  g.risk = pu_risk(pos_scores, unl_scores, pi_p, loss);
  g.weights.reserve((pos_batch.size() + unl_batch.size()) * 16);

  const double n_p = static_cast<double>(pos_batch.size());
  const double n_u = static_cast<double>(unl_batch.size());
  const bool open = !g.risk.clamp_active;

  auto accumulate = [&](const FeatureVector& x, double coeff) {
    g.bias += coeff;
    for (const auto& [id, v] : x.entries) g.weights[id] += coeff * v;
  };

  for (std::size_t i = 0; i < pos_batch.size(); ++i) {
    const double yhat = pos_scores[i];
    double coeff = point_loss_dz(loss, yhat, 1) / n_p;
    if (open) coeff -= pi_p / n_p * point_loss_dz(loss, yhat, 0);
    accumulate(*pos_batch[i], coeff);
  }
  if (open) {
    for (std::size_t i = 0; i < unl_batch.size(); ++i)
      accumulate(*unl_batch[i], point_loss_dz(loss, unl_scores[i], 0) / n_u);
  }
  return g;
}

/// Tag every token with the best-scoring trained type, or O when every score
/// falls below the threshold. Ties go to the earlier type in set order.
inline std::vector<TagAssignment> predict(const PuModel& model,
                                          std::span<const Document> corpus,
                                          const FeatureCache& cache, double tau,
                                          unsigned threads = 1) {
  if (!model.any_trained()) fail("predict: model has no trained type");
  if (cache.size() != corpus.size())
    fail("predict: feature cache covers ", cache.size(), " documents, corpus has ",
         corpus.size());
  std::vector<int> active;
  for (int t = 0; t < static_cast<int>(model.types().size()); ++t)
    if (model.type_model(t).trained) active.push_back(t);

  std::vector<TagAssignment> out(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t d) {
    TagAssignment tags = TagAssignment::unlabeled_for(corpus[d]);
    for (std::size_t s = 0; s < corpus[d].sentences.size(); ++s) {
      for (std::size_t i = 0; i < corpus[d].sentences[s].size(); ++i) {
        int best = -1;
        double best_score = 0.0;
        for (int t : active) {
          const double y = model.score(t, cache[d][s][i]);
          if (best < 0 || y > best_score) {
            best = t;
            best_score = y;
          }
        }
        if (best >= 0 && best_score >= tau)
          tags.sentences[s][i] = {IOTag{best}, Provenance::Prediction};
      }
    }
    out[d] = std::move(tags);
  });
  return out;
}

inline std::vector<TagAssignment> predict(const PuModel& model,
                                          std::span<const Document> corpus, double tau,
                                          unsigned threads = 1) {
  return predict(model, corpus, featurize_corpus(corpus, threads), tau, threads);
}

// --- persistence ---------------------------------------------------------
//
// Line-oriented text format, exact double round-trip via %.17g:
//
//   puner-model 1
//   types <n>
//   type <name>
//   prior <g17>
//   bias <g17>
//   trained <0|1>
//   weights <k>
//   <id> <g17>          (k lines, ids ascending)

namespace model_detail {

inline std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail_input("model file line ", line_no, ": bad number '", s, "'");
  }
}

inline std::string expect_line(std::istream& in, std::size_t& line_no) {
  std::string line;
  if (!std::getline(in, line)) fail_input("model file truncated at line ", line_no + 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline std::string expect_field(std::istream& in, std::size_t& line_no,
                                std::string_view key) {
  std::string line = expect_line(in, line_no);
  const std::string prefix = cat(key, " ");
  if (line.rfind(prefix, 0) != 0)
    fail_input("model file line ", line_no, ": expected '", key, " ...', got '", line, "'");
  return line.substr(prefix.size());
}

}  // namespace model_detail

inline void PuModel::save(std::ostream& out) const {
  using model_detail::g17;
  out << "puner-model 1\n";
  out << "types " << types_.size() << "\n";
  for (std::size_t t = 0; t < types_.size(); ++t) {
    const TypeModel& tm = per_type_[t];
    out << "type " << types_.name(static_cast<int>(t)) << "\n";
    out << "prior " << g17(tm.prior) << "\n";
    out << "bias " << g17(tm.bias) << "\n";
    out << "trained " << (tm.trained ? 1 : 0) << "\n";
    std::size_t nonzero = 0;
    for (double w : tm.weights)
      if (w != 0.0) ++nonzero;
    out << "weights " << nonzero << "\n";
    for (std::size_t id = 0; id < tm.weights.size(); ++id)
      if (tm.weights[id] != 0.0) out << id << " " << g17(tm.weights[id]) << "\n";
  }
  if (!out) fail("model write failed");
}

inline PuModel PuModel::load(std::istream& in) {
  using namespace model_detail;
  std::size_t line_no = 0;
  const std::string header = expect_line(in, line_no);
  if (header != "puner-model 1")
    fail_input("model file line 1: unsupported header '", header, "'");
  const std::string count_field = expect_field(in, line_no, "types");
  std::size_t n = 0;
  try {
    n = std::stoul(count_field);
  } catch (const std::exception&) {
    fail_input("model file line ", line_no, ": bad type count '", count_field, "'");
  }
  if (n == 0) fail_input("model file declares zero types");

  std::vector<std::string> names;
  std::vector<TypeModel> heads;
  for (std::size_t t = 0; t < n; ++t) {
    names.push_back(expect_field(in, line_no, "type"));
    TypeModel tm;
    tm.prior = parse_double(expect_field(in, line_no, "prior"), line_no);
    tm.bias = parse_double(expect_field(in, line_no, "bias"), line_no);
    const std::string trained = expect_field(in, line_no, "trained");
    if (trained != "0" && trained != "1")
      fail_input("model file line ", line_no, ": trained must be 0 or 1");
    tm.trained = trained == "1";
    std::size_t k = 0;
    try {
      k = std::stoul(expect_field(in, line_no, "weights"));
    } catch (const std::exception&) {
      fail_input("model file line ", line_no, ": bad weight count");
    }
    if (k > 0 || tm.trained) tm.ensure_allocated();
    for (std::size_t i = 0; i < k; ++i) {
      const std::string line = expect_line(in, line_no);
      const auto sp = line.find(' ');
      if (sp == std::string::npos)
        fail_input("model file line ", line_no, ": expected '<id> <value>'");
      std::size_t id = 0;
      try {
        id = std::stoul(line.substr(0, sp));
      } catch (const std::exception&) {
        fail_input("model file line ", line_no, ": bad weight id");
      }
      if (id >= kFeatureDim)
        fail_input("model file line ", line_no, ": weight id ", id, " out of range");
      tm.weights[id] = parse_double(line.substr(sp + 1), line_no);
    }
    heads.push_back(std::move(tm));
  }
  PuModel model{EntityTypeSet{std::move(names)}};
  model.per_type_ = std::move(heads);
  return model;
}

inline void PuModel::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_input("cannot open '", path, "' for writing");
  save(out);
}

inline PuModel PuModel::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open model file '", path, "'");
  return load(in);
}

}  // namespace puner
