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
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "puner/common.hpp"
#include "puner/corpus.hpp"
#include "puner/parallel.hpp"

namespace puner {

/// Raised when a phrase is inserted under a second type.
class GazetteerConflict : public Error {
 public:
  GazetteerConflict(std::string phrase, std::string existing, std::string added)
      : Error(cat("phrase '", phrase, "' already present under type ", existing,
                  ", cannot add under ", added)),
        phrase_(std::move(phrase)),
        existing_type_(std::move(existing)),
        added_type_(std::move(added)) {}

  const std::string& phrase() const { return phrase_; }
  const std::string& existing_type() const { return existing_type_; }
  const std::string& added_type() const { return added_type_; }

 private:
  std::string phrase_, existing_type_, added_type_;
};

enum class AddOutcome { Added, AlreadyPresent };

struct MatchSpan {
  std::size_t sentence = 0;
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive
  int type = -1;
  enum class Source { Dictionary, Regex } source = Source::Dictionary;
};

/// Per-type phrase dictionary plus single-token regex rules.
///
/// Phrases are stored lowercased and matched token-aligned. A phrase maps
/// to exactly one type; the version counter advances once per mutation
/// batch (see bump_version), not per inserted phrase.
class Gazetteer {
 public:
  using Phrase = std::vector<std::string>;

  Gazetteer() : Gazetteer(EntityTypeSet::defaults()) {}
  explicit Gazetteer(EntityTypeSet types)
      : types_(std::move(types)), regex_rules_(types_.size()) {}

  const EntityTypeSet& types() const { return types_; }
  std::uint64_t version() const { return version_; }
  void bump_version() { ++version_; }

  AddOutcome add_entity(const Phrase& phrase_tokens, int type) {
    if (phrase_tokens.empty()) fail_input("cannot add an empty phrase");
    for (const auto& t : phrase_tokens)
      if (t.empty()) fail_input("cannot add a phrase with an empty token");
    require_type(type);
    Phrase lowered;
    lowered.reserve(phrase_tokens.size());
    for (const auto& t : phrase_tokens) lowered.push_back(ascii_lower(t));
    auto [it, inserted] = phrase_type_.emplace(std::move(lowered), type);
    if (!inserted) {
      if (it->second == type) return AddOutcome::AlreadyPresent;
      throw GazetteerConflict(join(it->first), types_.name(it->second), types_.name(type));
    }
    index_phrase(it->first, type);
    return AddOutcome::Added;
  }

  AddOutcome add_entity(std::string_view space_joined, int type) {
    return add_entity(split_ws(space_joined), type);
  }

  void add_regex(int type, const std::string& pattern) {
    require_type(type);
    try {
      regex_rules_[static_cast<std::size_t>(type)].push_back(
          RegexRule{pattern, std::regex(pattern, std::regex::ECMAScript | std::regex::icase)});
    } catch (const std::regex_error& e) {
      fail_input("invalid regex pattern '", pattern, "': ", e.what());
    }
  }

  /// The phrase's type, if present under any type.
  std::optional<int> type_of(const Phrase& phrase_tokens) const {
    Phrase lowered;
    lowered.reserve(phrase_tokens.size());
    for (const auto& t : phrase_tokens) lowered.push_back(ascii_lower(t));
    auto it = phrase_type_.find(lowered);
    if (it == phrase_type_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Phrase& phrase_tokens, int type) const {
    auto t = type_of(phrase_tokens);
    return t && *t == type;
  }

  std::size_t entry_count(int type) const {
    std::size_t n = 0;
    for (const auto& [phrase, t] : phrase_type_)
      if (t == type) ++n;
    return n;
  }

  std::size_t total_entries() const { return phrase_type_.size(); }

  std::size_t regex_count(int type) const {
    require_type(type);
    return regex_rules_[static_cast<std::size_t>(type)].size();
  }

  std::size_t total_regexes() const {
    std::size_t n = 0;
    for (const auto& rules : regex_rules_) n += rules.size();
    return n;
  }

  bool empty() const { return phrase_type_.empty() && total_regexes() == 0; }

  /// Phrases of one type, in lexicographic token order.
  std::vector<Phrase> entries(int type) const {
    std::vector<Phrase> out;
    for (const auto& [phrase, t] : phrase_type_)
      if (t == type) out.push_back(phrase);
    return out;
  }

  std::vector<std::string> regex_patterns(int type) const {
    require_type(type);
    std::vector<std::string> out;
    for (const auto& r : regex_rules_[static_cast<std::size_t>(type)])
      out.push_back(r.pattern);
    return out;
  }

  /// All matches in one sentence after overlap resolution: longest match
  /// wins, ties broken leftmost, consumed tokens unavailable to later
  /// matches. Regex rules then claim single still-free tokens, types in
  /// set order, rules in insertion order.
  std::vector<MatchSpan> match_sentence(const Sentence& sent, std::size_t sentence_idx = 0) const {
    std::vector<std::string> lower;
    lower.reserve(sent.size());
    for (const auto& t : sent.tokens) lower.push_back(ascii_lower(t.surface));

    struct Candidate {
      std::size_t start, len;
      int type;
    };
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < lower.size(); ++i) {
      auto bucket = by_first_.find(lower[i]);
      if (bucket == by_first_.end()) continue;
      for (const auto& [phrase, type] : bucket->second) {
        const std::size_t len = phrase->size();
        if (i + len > lower.size()) continue;
        bool ok = true;
        for (std::size_t k = 1; k < len && ok; ++k)
          if ((*phrase)[k] != lower[i + k]) ok = false;
        if (ok) cands.push_back(Candidate{i, len, type});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.len != b.len) return a.len > b.len;
      return a.start < b.start;
    });

    std::vector<bool> taken(sent.size(), false);
    std::vector<MatchSpan> spans;
    for (const auto& c : cands) {
      bool free = true;
      for (std::size_t k = c.start; k < c.start + c.len && free; ++k)
        if (taken[k]) free = false;
      if (!free) continue;
      for (std::size_t k = c.start; k < c.start + c.len; ++k) taken[k] = true;
      spans.push_back(
          MatchSpan{sentence_idx, c.start, c.start + c.len - 1, c.type, MatchSpan::Source::Dictionary});
    }

    for (std::size_t i = 0; i < sent.size(); ++i) {
      if (taken[i]) continue;
      for (std::size_t t = 0; t < types_.size() && !taken[i]; ++t) {
        for (const auto& rule : regex_rules_[t]) {
          if (std::regex_match(sent.tokens[i].surface, rule.compiled)) {
            taken[i] = true;
            spans.push_back(
                MatchSpan{sentence_idx, i, i, static_cast<int>(t), MatchSpan::Source::Regex});
            break;
          }
        }
      }
    }
    return spans;
  }

 private:
  struct RegexRule {
    std::string pattern;
    std::regex compiled;
  };

  void require_type(int type) const {
    if (type < 0 || static_cast<std::size_t>(type) >= types_.size())
      fail("entity type id ", type, " out of range");
  }

  void index_phrase(const Phrase& stored, int type) {
    auto& bucket = by_first_[stored.front()];
    bucket.emplace_back(&stored, type);
    std::sort(bucket.begin(), bucket.end(),
              [](const auto& a, const auto& b) { return a.first->size() > b.first->size(); });
  }

  EntityTypeSet types_;
  // Single phrase->type map makes the one-type-per-phrase invariant
  // structural; std::map keeps save order deterministic.
  std::map<Phrase, int> phrase_type_;
  std::unordered_map<std::string, std::vector<std::pair<const Phrase*, int>>> by_first_;
  std::vector<std::vector<RegexRule>> regex_rules_;
  std::uint64_t version_ = 0;

 public:
  // Copying re-anchors the first-token index to the copied phrases.
  Gazetteer(const Gazetteer& other)
      : types_(other.types_),
        phrase_type_(other.phrase_type_),
        regex_rules_(other.regex_rules_),
        version_(other.version_) {
    rebuild_index();
  }
  Gazetteer& operator=(const Gazetteer& other) {
    if (this != &other) {
      types_ = other.types_;
      phrase_type_ = other.phrase_type_;
      regex_rules_ = other.regex_rules_;
      version_ = other.version_;
      rebuild_index();
    }
    return *this;
  }
  Gazetteer(Gazetteer&&) = default;
  Gazetteer& operator=(Gazetteer&&) = default;

 private:
  void rebuild_index() {
    by_first_.clear();
    for (const auto& [phrase, type] : phrase_type_) index_phrase(phrase, type);
  }
};

inline TagAssignment label_document(const Document& doc, const Gazetteer& gaz) {
  TagAssignment tags = TagAssignment::unlabeled_for(doc);
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    for (const MatchSpan& span : gaz.match_sentence(doc.sentences[s], s)) {
      const Provenance prov = span.source == MatchSpan::Source::Dictionary
                                  ? Provenance::Dictionary
                                  : Provenance::Regex;
      for (std::size_t i = span.start; i <= span.end; ++i)
        tags.sentences[s][i] = TokenTag{IOTag::inside(span.type), prov};
    }
  }
  return tags;
}

inline std::vector<TagAssignment> label_corpus(std::span<const Document> corpus,
                                               const Gazetteer& gaz, unsigned threads = 1) {
  std::vector<TagAssignment> out(corpus.size());
  parallel_for(corpus.size(), threads,
               [&](std::size_t i) { out[i] = label_document(corpus[i], gaz); });
  return out;
}

// Seed / dictionary files: one JSON record per line, either
//   {"type": "<EntityType>", "phrase": "<space-separated tokens>"}
// or
//   {"type": "<EntityType>", "regex": "<pattern>"}

inline Gazetteer load_seed(std::istream& in, const EntityTypeSet& types) {
  Gazetteer gaz(types);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail_input("seed line ", line_no, ": malformed record: ", e.what());
    }
    if (!rec.is_object() || !rec.contains("type"))
      fail_input("seed line ", line_no, ": record must have a type field");
    const int type = types.require(rec.at("type").get<std::string>());
    if (rec.contains("phrase")) {
      const auto tokens = split_ws(rec.at("phrase").get<std::string>());
      if (tokens.empty()) fail_input("seed line ", line_no, ": empty phrase");
      gaz.add_entity(tokens, type);
    } else if (rec.contains("regex")) {
      gaz.add_regex(type, rec.at("regex").get<std::string>());
    } else {
      fail_input("seed line ", line_no, ": record needs a phrase or regex field");
    }
  }
  return gaz;
}

inline Gazetteer load_seed_file(const std::string& path, const EntityTypeSet& types) {
  std::ifstream in(path);
  if (!in) fail_input("cannot open gazetteer file: ", path);
  return load_seed(in, types);
}

inline void save_gazetteer(std::ostream& out, const Gazetteer& gaz) {
  const auto& types = gaz.types();
  for (std::size_t t = 0; t < types.size(); ++t) {
    for (const auto& phrase : gaz.entries(static_cast<int>(t))) {
      nlohmann::ordered_json rec;
      rec["type"] = types.name(static_cast<int>(t));
      rec["phrase"] = join(phrase);
      out << rec.dump() << "\n";
    }
  }
  for (std::size_t t = 0; t < types.size(); ++t) {
    for (const auto& pattern : gaz.regex_patterns(static_cast<int>(t))) {
      nlohmann::ordered_json rec;
      rec["type"] = types.name(static_cast<int>(t));
      rec["regex"] = pattern;
      out << rec.dump() << "\n";
    }
  }
}

inline void save_gazetteer_file(const std::string& path, const Gazetteer& gaz) {
  std::ofstream out(path);
  if (!out) fail_input("cannot write gazetteer file: ", path);
  save_gazetteer(out, gaz);
}

}  // namespace puner
