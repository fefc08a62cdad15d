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

#include <iomanip>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "puner/corpus.hpp"

namespace puner {

struct TypeMetrics {
  std::string type;
  std::size_t tp = 0, fp = 0, fn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
  std::size_t support = 0;        // gold token count = tp + fn
  bool zero_division = false;     // some denominator was 0 and forced a 0 metric

  void finish() {
    support = tp + fn;
    if (tp + fp == 0) {
      precision = 0.0;
      zero_division = true;
    } else {
      precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    }
    if (tp + fn == 0) {
      recall = 0.0;
      zero_division = true;
    } else {
      recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    }
    if (precision + recall == 0.0) {
      f1 = 0.0;
      if (tp + fp != 0 && tp + fn != 0) zero_division = true;
    } else {
      f1 = 2.0 * precision * recall / (precision + recall);
    }
  }
};

struct EvalReport {
  std::vector<TypeMetrics> per_type;  // in entity type set order
  TypeMetrics micro;                  // pooled counts over all types, O excluded
  double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
};

/// Token-level precision/recall/F1. Documents are matched by doc_id; gold
/// and prediction token sequences are flattened per document, so the two
/// sides may disagree on sentence segmentation but not on token count.
inline EvalReport token_prf(std::span<const TagAssignment> gold,
                            std::span<const TagAssignment> pred,
                            const EntityTypeSet& types) {
  std::unordered_map<std::string, const TagAssignment*> pred_by_doc;
  for (const auto& p : pred)
    if (!pred_by_doc.emplace(p.doc_id, &p).second)
      fail("token_prf: duplicate prediction document '", p.doc_id, "'");

  EvalReport report;
  report.per_type.resize(types.size());
  for (std::size_t t = 0; t < types.size(); ++t)
    report.per_type[t].type = types.name(static_cast<int>(t));
  report.micro.type = "micro";

  auto flatten = [](const TagAssignment& a) {
    std::vector<IOTag> out;
    out.reserve(a.token_count());
    for (const auto& s : a.sentences)
      for (const auto& tt : s) out.push_back(tt.tag);
    return out;
  };

  std::unordered_map<std::string, int> seen_gold;
  for (const auto& g : gold) {
    if (++seen_gold[g.doc_id] > 1)
      fail("token_prf: duplicate gold document '", g.doc_id, "'");
    auto it = pred_by_doc.find(g.doc_id);
    if (it == pred_by_doc.end())
      fail("token_prf: no predictions for document '", g.doc_id, "'");
    const std::vector<IOTag> gt = flatten(g);
    const std::vector<IOTag> pt = flatten(*it->second);
    if (gt.size() != pt.size())
      fail("token_prf: document '", g.doc_id, "' has ", gt.size(), " gold tokens but ",
           pt.size(), " predicted tokens");
    for (std::size_t i = 0; i < gt.size(); ++i) {
      const IOTag a = gt[i], b = pt[i];
      if (!a.is_o() && a.type >= static_cast<int>(types.size()))
        fail("token_prf: gold tag type id ", a.type, " outside the type set");
      if (!b.is_o() && b.type >= static_cast<int>(types.size()))
        fail("token_prf: predicted tag type id ", b.type, " outside the type set");
      if (a == b) {
        if (!a.is_o()) ++report.per_type[static_cast<std::size_t>(a.type)].tp;
      } else {
        if (!a.is_o()) ++report.per_type[static_cast<std::size_t>(a.type)].fn;
        if (!b.is_o()) ++report.per_type[static_cast<std::size_t>(b.type)].fp;
      }
    }
  }

  for (auto& m : report.per_type) {
    m.finish();
    report.micro.tp += m.tp;
    report.micro.fp += m.fp;
    report.micro.fn += m.fn;
    report.macro_precision += m.precision;
    report.macro_recall += m.recall;
    report.macro_f1 += m.f1;
  }
  report.micro.finish();
  const double n = static_cast<double>(types.size());
  report.macro_precision /= n;
  report.macro_recall /= n;
  report.macro_f1 /= n;
  return report;
}

/// Recall per iteration per type, from already-computed reports.
inline std::vector<std::vector<double>> recall_curve(std::span<const EvalReport> iterations) {
  if (iterations.empty()) fail("recall_curve: no iterations");
  const std::size_t n_types = iterations.front().per_type.size();
  std::vector<std::vector<double>> series(n_types);
  for (const auto& rep : iterations) {
    if (rep.per_type.size() != n_types) fail("recall_curve: reports disagree on type count");
    for (std::size_t t = 0; t < n_types; ++t)
      series[t].push_back(rep.per_type[t].recall);
  }
  return series;
}

inline std::string format_eval_table(const EvalReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "type" << std::right << std::setw(10) << "precision"
      << std::setw(10) << "recall" << std::setw(10) << "f1" << std::setw(10) << "support"
      << "\n";
  auto row = [&](const std::string& name, double p, double r, double f, std::size_t support,
                 bool starred) {
    out << std::left << std::setw(12) << name << std::right << std::fixed
        << std::setprecision(4) << std::setw(10) << p << std::setw(10) << r << std::setw(10)
        << f << std::setw(10) << support << (starred ? "  *" : "") << "\n";
    out.unsetf(std::ios::fixed);
  };
  for (const auto& m : report.per_type)
    row(m.type, m.precision, m.recall, m.f1, m.support, m.zero_division);
  row("micro", report.micro.precision, report.micro.recall, report.micro.f1,
      report.micro.support, report.micro.zero_division);
  out << std::left << std::setw(12) << "macro" << std::right << std::fixed
      << std::setprecision(4) << std::setw(10) << report.macro_precision << std::setw(10)
      << report.macro_recall << std::setw(10) << report.macro_f1 << "\n";
  out.unsetf(std::ios::fixed);
  out << "(* = a zero denominator was reported as 0)\n";
  return out.str();
}

inline std::string format_recall_table(std::span<const EvalReport> iterations,
                                       const EntityTypeSet& types) {
  const auto series = recall_curve(iterations);
  std::ostringstream out;
  out << std::left << std::setw(12) << "iteration";
  for (std::size_t t = 0; t < types.size(); ++t)
    out << std::right << std::setw(12) << types.name(static_cast<int>(t));
  out << "\n";
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    out << std::left << std::setw(12) << i;
    for (std::size_t t = 0; t < types.size(); ++t)
      out << std::right << std::fixed << std::setprecision(4) << std::setw(12) << series[t][i];
    out.unsetf(std::ios::fixed);
    out << "\n";
  }
  return out.str();
}

}  // namespace puner
