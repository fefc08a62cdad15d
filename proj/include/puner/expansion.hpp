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

#include <span>
#include <string>
#include <vector>

#include "puner/corpus.hpp"
#include "puner/parallel.hpp"

namespace puner {

struct ExpansionConfig {
  // Dependency relations that carry labels between their endpoints.
  std::vector<std::string> relations{"compound"};

  bool triggers(const std::string& deprel) const {
    for (const auto& r : relations)
      if (r == deprel) return true;
    return false;
  }
};

struct ExpansionStats {
  std::size_t labels_added = 0;
  // Edges whose endpoints ended up labeled with two different types;
  // nothing propagates across those.
  std::size_t type_conflicts = 0;
  std::size_t passes = 0;
};

/// Copies entity types across configured dependency edges until no O token
/// next to a labeled neighbor remains. Labeled tokens are never rewritten;
/// newly labeled tokens carry provenance "expansion". Propagation crosses
/// chains of edges and terminates even on cyclic head graphs.
inline TagAssignment expand_labels(const TagAssignment& tags, const Document& doc,
                                   const ExpansionConfig& cfg = {},
                                   ExpansionStats* stats = nullptr) {
  check_alignment(tags, doc);
  TagAssignment out = tags;
  ExpansionStats local;

  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const Sentence& sent = doc.sentences[s];
    auto& row = out.sentences[s];

    // Edges as (dependent, head) pairs, in dependent order.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t d = 0; d < sent.size(); ++d) {
      const Token& tok = sent.tokens[d];
      if (tok.head && cfg.triggers(tok.deprel)) {
        if (*tok.head >= sent.size() || *tok.head == d)
          fail("document '", doc.doc_id, "' sentence ", s, ": invalid head for token ", d);
        edges.emplace_back(d, *tok.head);
      }
    }

    // Each pass labels at least one token or stops, so the pass count is
    // bounded by the sentence length regardless of cycles in the graph.
    bool changed = true;
    while (changed) {
      changed = false;
      ++local.passes;
      for (const auto& [d, h] : edges) {
        TokenTag& a = row[d];
        TokenTag& b = row[h];
        if (a.tag.is_o() == b.tag.is_o()) continue;
        TokenTag& blank = a.tag.is_o() ? a : b;
        const TokenTag& labeled = a.tag.is_o() ? b : a;
        blank = TokenTag{labeled.tag, Provenance::Expansion};
        ++local.labels_added;
        changed = true;
      }
    }

    for (const auto& [d, h] : edges) {
      const IOTag a = row[d].tag, b = row[h].tag;
      if (!a.is_o() && !b.is_o() && a != b) ++local.type_conflicts;
    }
  }

  if (stats) *stats = local;
  return out;
}

inline std::vector<TagAssignment> expand_corpus(std::span<const TagAssignment> tags,
                                                std::span<const Document> corpus,
                                                const ExpansionConfig& cfg = {},
                                                ExpansionStats* stats = nullptr,
                                                unsigned threads = 1) {
  if (tags.size() != corpus.size())
    fail("expansion: ", tags.size(), " assignments for ", corpus.size(), " documents");
  std::vector<TagAssignment> out(tags.size());
  std::vector<ExpansionStats> per_doc(tags.size());
  parallel_for(tags.size(), threads,
               [&](std::size_t i) { out[i] = expand_labels(tags[i], corpus[i], cfg, &per_doc[i]); });
  if (stats) {
    ExpansionStats total;
    for (const auto& s : per_doc) {
      total.labels_added += s.labels_added;
      total.type_conflicts += s.type_conflicts;
      total.passes += s.passes;
    }
    *stats = total;
  }
  return out;
}

}  // namespace puner
