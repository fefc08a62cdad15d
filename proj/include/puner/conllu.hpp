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
#include <vector>

#include "puner/common.hpp"
#include "puner/corpus.hpp"

namespace puner {

// CoNLL-U ingestion. Only FORM, HEAD and DEPREL are consumed; the other
// seven columns are carried by any external parser and ignored here.
// Multiword-token ranges ("3-4") and empty nodes ("3.1") are skipped.

namespace conllu_detail {

inline bool parse_uint(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  std::size_t v = 0;
  for (char c : s) {
    if (!ascii_digit_char(c)) return false;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  out = v;
  return true;
}

struct PendingToken {
  std::string form;
  std::size_t head_raw = 0;  // 1-based; 0 = root
  std::string deprel;
  std::size_t line_no = 0;
};

inline void flush_sentence(std::vector<PendingToken>& pending, Document& doc) {
  if (pending.empty()) return;
  Sentence sent;
  sent.tokens.reserve(pending.size());
  const std::size_t n = pending.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = pending[i];
    if (p.head_raw > n)
      fail_input("line ", p.line_no, ": HEAD ", p.head_raw, " out of range for sentence of length ", n);
    if (p.head_raw == i + 1)
      fail_input("line ", p.line_no, ": HEAD ", p.head_raw, " points at the token itself");
    Token tok;
    tok.surface = std::move(p.form);
    if (p.head_raw > 0) tok.head = p.head_raw - 1;
    if (p.deprel != "_") tok.deprel = std::move(p.deprel);
    sent.tokens.push_back(std::move(tok));
  }
  pending.clear();
  doc.sentences.push_back(std::move(sent));
}

}  // namespace conllu_detail

inline std::vector<Document> read_conllu(std::istream& in) {
  using namespace conllu_detail;

  std::vector<Document> docs;
  std::vector<PendingToken> pending;
  bool doc_open = false;
  std::unordered_set<std::string> seen_ids;

  auto current_doc = [&]() -> Document& {
    if (!doc_open) {
      docs.push_back(Document{cat("doc", docs.size()), {}});
      doc_open = true;
    }
    return docs.back();
  };

  auto open_doc = [&](std::string id) {
    if (doc_open && !pending.empty()) flush_sentence(pending, docs.back());
    if (id.empty()) id = cat("doc", docs.size());
    docs.push_back(Document{std::move(id), {}});
    doc_open = true;
  };

  std::string line;
  std::size_t line_no = 0;
  std::size_t expected_id = 1;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!pending.empty()) {
        flush_sentence(pending, current_doc());
        expected_id = 1;
      }
      continue;
    }
    if (line[0] == '#') {
      const std::string_view comment = trim(std::string_view(line).substr(1));
      if (comment == "newdoc" || comment.substr(0, 7) == "newdoc ") {
        std::string id;
        const std::size_t eq = comment.find('=');
        if (eq != std::string_view::npos) id = std::string(trim(comment.substr(eq + 1)));
        open_doc(std::move(id));
        expected_id = 1;
      }
      continue;
    }

    const auto cols = split(line, '\t');
    if (cols.size() != 10)
      fail_input("line ", line_no, ": expected 10 tab-separated columns, got ", cols.size());

    const std::string& id_col = cols[0];
    if (id_col.find('-') != std::string::npos) continue;  // multiword-token range
    if (id_col.find('.') != std::string::npos) continue;  // empty node

    std::size_t id = 0;
    if (!parse_uint(id_col, id) || id == 0)
      fail_input("line ", line_no, ": malformed token ID '", id_col, "'");
    if (pending.empty()) expected_id = 1;
    if (id != expected_id)
      fail_input("line ", line_no, ": token ID ", id, " out of sequence (expected ", expected_id, ")");
    ++expected_id;

    if (cols[1].empty()) fail_input("line ", line_no, ": empty FORM");

    std::size_t head = 0;
    if (!parse_uint(cols[6], head))
      fail_input("line ", line_no, ": non-integer HEAD '", cols[6], "'");

    pending.push_back(PendingToken{cols[1], head, cols[7], line_no});
  }
  if (!pending.empty()) flush_sentence(pending, current_doc());

  for (const auto& d : docs)
    if (!seen_ids.insert(d.doc_id).second)
      fail_input("duplicate document id '", d.doc_id, "'");
  return docs;
}

inline std::vector<Document> read_conllu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_input("cannot open corpus file: ", path);
  return read_conllu(in);
}

inline void write_conllu(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) {
    out << "# newdoc id = " << doc.doc_id << "\n";
    for (const auto& sent : doc.sentences) {
      for (std::size_t i = 0; i < sent.size(); ++i) {
        const Token& t = sent.tokens[i];
        const std::size_t head = t.head ? *t.head + 1 : 0;
        out << (i + 1) << '\t' << t.surface << "\t_\t_\t_\t_\t" << head << '\t'
            << (t.deprel.empty() ? "_" : t.deprel) << "\t_\t_\n";
      }
      out << "\n";
    }
  }
}

inline void write_conllu_file(const std::string& path, std::span<const Document> docs) {
  std::ofstream out(path);
  if (!out) fail_input("cannot write corpus file: ", path);
  write_conllu(out, docs);
}

}  // namespace puner
