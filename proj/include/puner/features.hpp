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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "puner/corpus.hpp"
#include "puner/parallel.hpp"

namespace puner {

inline constexpr std::uint32_t kFeatureDim = 1u << 22;

/// FNV-1a over the template string, folded into the feature space.
/// Stable across platforms and runs.
inline std::uint32_t feature_id(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return static_cast<std::uint32_t>(h & (kFeatureDim - 1));
}

/// Sparse feature vector; entries sorted by id, duplicates summed.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, float>> entries;

  static FeatureVector from_ids(std::vector<std::uint32_t> ids) {
    std::sort(ids.begin(), ids.end());
    FeatureVector fv;
    fv.entries.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size();) {
      std::size_t j = i;
      while (j < ids.size() && ids[j] == ids[i]) ++j;
      fv.entries.emplace_back(ids[i], static_cast<float>(j - i));
      i = j;
    }
    return fv;
  }
};

namespace feature_detail {

inline std::string word_shape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (ascii_upper_char(c))
      out += 'X';
    else if (ascii_lower_char(c))
      out += 'x';
    else if (ascii_digit_char(c))
      out += 'd';
    else
      out += c;
  }
  return out;
}

inline bool contains_digit(std::string_view s) {
  for (char c : s)
    if (ascii_digit_char(c)) return true;
  return false;
}

inline bool all_caps(std::string_view s) {
  bool any = false;
  for (char c : s) {
    if (ascii_lower_char(c)) return false;
    if (ascii_upper_char(c)) any = true;
  }
  return any;
}

inline bool is_title(std::string_view s) {
  if (s.empty() || !ascii_upper_char(s[0])) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (ascii_upper_char(s[i])) return false;
  return true;
}

}  // namespace feature_detail

/// Hashed indicator features for one token in context. Templates: the
/// lowercased surface, its shape, 2-4 char prefixes/suffixes, digit /
/// all-caps / title flags, lowercased neighbors at offsets -2..+2 with the
/// position baked in, and the token's dependency relation. Sentence edges
/// use the sentinels "<s>" and "</s>".
inline FeatureVector featurize(const Document& doc, std::size_t sentence_idx,
                               std::size_t token_idx) {
  using namespace feature_detail;
  if (sentence_idx >= doc.sentences.size())
    fail("featurize: sentence index ", sentence_idx, " out of range for document '", doc.doc_id,
         "'");
  const Sentence& sent = doc.sentences[sentence_idx];
  if (token_idx >= sent.size())
    fail("featurize: token index ", token_idx, " out of range in document '", doc.doc_id,
         "' sentence ", sentence_idx);

  const Token& tok = sent.tokens[token_idx];
  const std::string lower = ascii_lower(tok.surface);

  std::vector<std::uint32_t> ids;
  ids.reserve(20);
  auto emit = [&](std::string_view s) { ids.push_back(feature_id(s)); };

  emit(cat("w=", lower));
  emit(cat("shape=", word_shape(tok.surface)));
  for (std::size_t n = 2; n <= 4; ++n) {
    if (lower.size() >= n) {
      emit(cat("pre", n, "=", lower.substr(0, n)));
      emit(cat("suf", n, "=", lower.substr(lower.size() - n)));
    }
  }
  if (contains_digit(tok.surface)) emit("hasdigit");
  if (all_caps(tok.surface)) emit("allcaps");
  if (is_title(tok.surface)) emit("istitle");

  for (int off : {-2, -1, 1, 2}) {
    const long j = static_cast<long>(token_idx) + off;
    std::string neighbor;
    if (j < 0)
      neighbor = "<s>";
    else if (j >= static_cast<long>(sent.size()))
      neighbor = "</s>";
    else
      neighbor = ascii_lower(sent.tokens[static_cast<std::size_t>(j)].surface);
    emit(cat("ctx[", off, "]=", neighbor));
  }
  emit(cat("rel=", tok.deprel));

  return FeatureVector::from_ids(std::move(ids));
}

/// Per-document, per-sentence, per-token feature vectors. Features depend
/// only on the corpus text, so one cache serves every bootstrap iteration.
using FeatureCache = std::vector<std::vector<std::vector<FeatureVector>>>;

inline FeatureCache featurize_corpus(std::span<const Document> corpus, unsigned threads = 1) {
  FeatureCache cache(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t d) {
    const Document& doc = corpus[d];
    cache[d].resize(doc.sentences.size());
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      cache[d][s].reserve(doc.sentences[s].size());
      for (std::size_t i = 0; i < doc.sentences[s].size(); ++i)
        cache[d][s].push_back(featurize(doc, s, i));
    }
  });
  return cache;
}

}  // namespace puner
