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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "puner/common.hpp"

namespace puner {

struct Token {
  std::string surface;
  std::optional<std::size_t> head;  // in-sentence index of dependency head; absent for root
  std::string deprel;
};

struct Sentence {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
};

struct Document {
  std::string doc_id;
  std::vector<Sentence> sentences;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
  }
};

inline std::size_t corpus_token_count(std::span<const Document> corpus) {
  std::size_t n = 0;
  for (const auto& d : corpus) n += d.token_count();
  return n;
}

/// Closed, ordered set of entity type names. The order is the tie-break
/// order used everywhere a single type must win.
class EntityTypeSet {
 public:
  EntityTypeSet() = default;

  explicit EntityTypeSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) fail_input("entity type set must not be empty");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) fail_input("entity type name must not be empty");
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          fail_input("duplicate entity type name: ", names_[i]);
    }
  }

  static EntityTypeSet defaults() {
    return EntityTypeSet({"Product", "Component", "Brand", "Attribute"});
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }

  /// Returns the type id, or -1 if the name is unknown.
  int id(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    return -1;
  }

  int require(std::string_view name) const {
    const int t = id(name);
    if (t < 0) fail_input("unknown entity type: ", name);
    return t;
  }

  bool operator==(const EntityTypeSet&) const = default;

 private:
  std::vector<std::string> names_;
};

/// IO tag: Outside, or Inside some entity type. No B- tags exist.
struct IOTag {
  int type = -1;  // -1 = O, otherwise I(type id)

  constexpr bool is_o() const { return type < 0; }
  constexpr bool is_inside(int t) const { return type == t; }

  static constexpr IOTag o() { return IOTag{}; }
  static constexpr IOTag inside(int t) { return IOTag{t}; }

  bool operator==(const IOTag&) const = default;
};

enum class Provenance : unsigned char {
  Dictionary,
  Regex,
  Expansion,
  Prediction,
  Gold,
  Unlabeled,
};

inline std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Dictionary: return "dictionary";
    case Provenance::Regex: return "regex";
    case Provenance::Expansion: return "expansion";
    case Provenance::Prediction: return "prediction";
    case Provenance::Gold: return "gold";
    case Provenance::Unlabeled: return "unlabeled";
  }
  return "?";
}

inline Provenance provenance_from_name(std::string_view s) {
  if (s == "dictionary") return Provenance::Dictionary;
  if (s == "regex") return Provenance::Regex;
  if (s == "expansion") return Provenance::Expansion;
  if (s == "prediction") return Provenance::Prediction;
  if (s == "gold") return Provenance::Gold;
  if (s == "unlabeled") return Provenance::Unlabeled;
  fail_input("unknown provenance: ", s);
}

struct TokenTag {
  IOTag tag;
  Provenance provenance = Provenance::Unlabeled;

  bool operator==(const TokenTag&) const = default;
};

/// Per-token tags for one document, aligned sentence-by-sentence.
struct TagAssignment {
  std::string doc_id;
  std::vector<std::vector<TokenTag>> sentences;

  static TagAssignment unlabeled_for(const Document& doc) {
    TagAssignment t;
    t.doc_id = doc.doc_id;
    t.sentences.reserve(doc.sentences.size());
    for (const auto& s : doc.sentences)
      t.sentences.emplace_back(s.size(), TokenTag{});
    return t;
  }

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
  }

  bool operator==(const TagAssignment&) const = default;
};

inline void check_alignment(const TagAssignment& tags, const Document& doc) {
  if (tags.sentences.size() != doc.sentences.size())
    fail("tag assignment for document '", doc.doc_id, "' has ", tags.sentences.size(),
         " sentences, document has ", doc.sentences.size());
  for (std::size_t s = 0; s < tags.sentences.size(); ++s)
    if (tags.sentences[s].size() != doc.sentences[s].size())
      fail("tag assignment for document '", doc.doc_id, "' sentence ", s, " has ",
           tags.sentences[s].size(), " tags, sentence has ", doc.sentences[s].size(), " tokens");
}

// "O" or "I-<Type>".
inline std::string tag_to_string(IOTag tag, const EntityTypeSet& types) {
  if (tag.is_o()) return "O";
  return cat("I-", types.name(tag.type));
}

inline IOTag string_to_tag(std::string_view s, const EntityTypeSet& types) {
  if (s == "O") return IOTag::o();
  if (s.size() > 2 && s.substr(0, 2) == "I-")
    return IOTag::inside(types.require(s.substr(2)));
  fail_input("cannot parse IO tag '", s, "' (expected \"O\" or \"I-<Type>\")");
}

}  // namespace puner
