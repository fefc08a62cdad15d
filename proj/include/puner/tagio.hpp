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
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "puner/common.hpp"
#include "puner/corpus.hpp"

namespace puner {

// Line-delimited tag records. One record per sentence:
//   {"doc_id": "...", "tokens": [...], "tags": ["O", "I-Brand", ...]}
// Consecutive records with the same doc_id form one document. Writers add
// "sentence" and "provenance" fields; readers ignore unknown fields, so
// gold files and system outputs share one format.

inline std::vector<std::pair<Document, TagAssignment>> read_gold(
    std::istream& in, const EntityTypeSet& types) {
  std::vector<std::pair<Document, TagAssignment>> out;
  std::unordered_set<std::string> closed_ids;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail_input("line ", line_no, ": malformed record: ", e.what());
    }
    if (!rec.is_object() || !rec.contains("doc_id") || !rec.contains("tokens") ||
        !rec.contains("tags"))
      fail_input("line ", line_no, ": record must have doc_id, tokens and tags");

    const std::string doc_id = rec.at("doc_id").get<std::string>();
    const auto& jtokens = rec.at("tokens");
    const auto& jtags = rec.at("tags");
    if (!jtokens.is_array() || !jtags.is_array())
      fail_input("line ", line_no, ": tokens and tags must be arrays (doc_id '", doc_id, "')");
    if (jtokens.size() != jtags.size())
      fail_input("document '", doc_id, "': ", jtags.size(), " tags for ", jtokens.size(),
                 " tokens");

    if (out.empty() || out.back().first.doc_id != doc_id) {
      if (!closed_ids.insert(doc_id).second)
        fail_input("document '", doc_id, "' appears in non-consecutive records");
      out.emplace_back(Document{doc_id, {}}, TagAssignment{doc_id, {}});
    }

    Sentence sent;
    std::vector<TokenTag> tags;
    sent.tokens.reserve(jtokens.size());
    tags.reserve(jtags.size());
    for (std::size_t i = 0; i < jtokens.size(); ++i) {
      const std::string surface = jtokens[i].get<std::string>();
      if (surface.empty())
        fail_input("document '", doc_id, "': empty token surface at position ", i);
      sent.tokens.push_back(Token{surface, std::nullopt, ""});
      tags.push_back(
          TokenTag{string_to_tag(jtags[i].get<std::string>(), types), Provenance::Gold});
    }
    out.back().first.sentences.push_back(std::move(sent));
    out.back().second.sentences.push_back(std::move(tags));
  }
  return out;
}

inline std::vector<std::pair<Document, TagAssignment>> read_gold_file(
    const std::string& path, const EntityTypeSet& types) {
  std::ifstream in(path);
  if (!in) fail_input("cannot open gold file: ", path);
  return read_gold(in, types);
}

/// Writes one record per sentence, with provenance.
inline void write_tag_records(std::ostream& out, const Document& doc,
                              const TagAssignment& tags, const EntityTypeSet& types,
                              bool with_provenance = true) {
  check_alignment(tags, doc);
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    nlohmann::ordered_json rec;
    rec["doc_id"] = doc.doc_id;
    rec["sentence"] = s;
    auto& jtokens = rec["tokens"] = nlohmann::json::array();
    auto& jtags = rec["tags"] = nlohmann::json::array();
    for (std::size_t i = 0; i < doc.sentences[s].size(); ++i) {
      jtokens.push_back(doc.sentences[s].tokens[i].surface);
      jtags.push_back(tag_to_string(tags.sentences[s][i].tag, types));
    }
    if (with_provenance) {
      auto& jprov = rec["provenance"] = nlohmann::json::array();
      for (const auto& tt : tags.sentences[s])
        jprov.push_back(std::string(provenance_name(tt.provenance)));
    }
    out << rec.dump() << "\n";
  }
}

inline void write_tag_records_file(const std::string& path, std::span<const Document> docs,
                                   std::span<const TagAssignment> tags,
                                   const EntityTypeSet& types, bool with_provenance = true) {
  if (docs.size() != tags.size())
    fail("tag record writer: ", docs.size(), " documents but ", tags.size(), " assignments");
  std::ofstream out(path);
  if (!out) fail_input("cannot write tag file: ", path);
  for (std::size_t i = 0; i < docs.size(); ++i)
    write_tag_records(out, docs[i], tags[i], types, with_provenance);
}

}  // namespace puner
