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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <puner/puner.hpp>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GlobalOpts {
  std::string config_path;
  int threads = -1;  // -1: take the config file / default value
  bool show_config = false;
};

puner::RunConfig effective_config(const GlobalOpts& g) {
  puner::RunConfig cfg;
  if (!g.config_path.empty()) cfg = puner::RunConfig::load_file(g.config_path);
  if (g.threads >= 0) cfg.threads = static_cast<unsigned>(g.threads);
  return cfg;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) puner::fail_input("cannot open '", path.string(), "' for writing");
  return out;
}

void write_json_file(const fs::path& path, const ordered_json& j) {
  auto out = open_output(path);
  out << j.dump(2) << "\n";
}

ordered_json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) puner::fail_input("cannot open '", path.string(), "'");
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    puner::fail_input("file ", path.string(), ": ", e.what());
  }
}

void write_tags(const fs::path& path, std::span<const puner::Document> docs,
                std::span<const puner::TagAssignment> tags, const puner::EntityTypeSet& types) {
  if (path == "-") {
    for (std::size_t i = 0; i < docs.size(); ++i)
      puner::write_tag_records(std::cout, docs[i], tags[i], types);
    return;
  }
  puner::write_tag_records_file(path.string(), docs, tags, types);
}

std::string iter_dir_name(std::size_t iteration) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "iter_%03zu", iteration);
  return buf;
}

// --- label ---------------------------------------------------------------

struct LabelOpts {
  std::string corpus, gazetteer, out = "-";
  bool expand = true;
};

void cmd_label(const GlobalOpts& g, const LabelOpts& o) {
  const puner::RunConfig cfg = effective_config(g);
  const unsigned threads = puner::resolve_threads(cfg.threads);
  const auto docs = puner::read_conllu_file(o.corpus);
  const puner::Gazetteer gaz = puner::load_seed_file(o.gazetteer, cfg.types);

  std::vector<puner::TagAssignment> tags = puner::label_corpus(docs, gaz, threads);
  if (o.expand) {
    puner::ExpansionStats stats;
    tags = puner::expand_corpus(tags, docs, cfg.bootstrap.expansion, &stats, threads);
    std::cerr << "expansion: " << stats.labels_added << " labels added, "
              << stats.type_conflicts << " type conflicts\n";
  }
  write_tags(o.out, docs, tags, cfg.types);
}

// --- bootstrap -----------------------------------------------------------

struct BootstrapOpts {
  std::string corpus, seed, run_dir, gold;
};

void write_harvest_records(const fs::path& path, std::span<const puner::HarvestEntry> entries,
                           const puner::EntityTypeSet& types) {
  auto out = open_output(path);
  for (const auto& e : entries) {
    ordered_json rec;
    rec["iteration"] = e.iteration;
    rec["type"] = types.name(e.type);
    rec["phrase"] = e.phrase;
    rec["frequency"] = e.frequency;
    out << rec.dump() << "\n";
  }
}

std::vector<puner::HarvestEntry> read_harvest_records(const fs::path& path,
                                                      const puner::EntityTypeSet& types) {
  std::ifstream in(path);
  if (!in) puner::fail_input("cannot open harvest file '", path.string(), "'");
  std::vector<puner::HarvestEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (puner::trim(line).empty()) continue;
    try {
      const auto rec = nlohmann::json::parse(line);
      out.push_back(puner::HarvestEntry{rec.at("iteration").get<std::size_t>(),
                                        types.require(rec.at("type").get<std::string>()),
                                        rec.at("phrase").get<std::string>(),
                                        rec.at("frequency").get<std::size_t>()});
    } catch (const nlohmann::json::exception& e) {
      puner::fail_input("harvest file ", path.string(), " line ", line_no, ": ", e.what());
    }
  }
  return out;
}

void write_risk_trace(const fs::path& path, const puner::TrainReport& report) {
  auto out = open_output(path);
  for (const auto& t : report.types) {
    ordered_json rec;
    rec["type"] = t.type;
    rec["trained"] = t.trained;
    if (!t.trained) rec["skip_reason"] = t.skip_reason;
    rec["n_pos"] = t.n_pos;
    rec["n_unl"] = t.n_unl;
    rec["epoch_risk"] = t.epoch_risk;
    rec["clamped_batches"] = t.clamped_batches;
    rec["total_batches"] = t.total_batches;
    out << rec.dump() << "\n";
  }
}

ordered_json eval_to_json(const puner::EvalReport& rep) {
  ordered_json j;
  auto metrics = [](const puner::TypeMetrics& m) {
    return ordered_json{{"type", m.type},         {"precision", m.precision},
                        {"recall", m.recall},     {"f1", m.f1},
                        {"support", m.support},   {"tp", m.tp},
                        {"fp", m.fp},             {"fn", m.fn},
                        {"zero_division", m.zero_division}};
  };
  j["per_type"] = ordered_json::array();
  for (const auto& m : rep.per_type) j["per_type"].push_back(metrics(m));
  j["micro"] = metrics(rep.micro);
  j["macro"] = {{"precision", rep.macro_precision},
                {"recall", rep.macro_recall},
                {"f1", rep.macro_f1}};
  return j;
}

void write_eval_records(const fs::path& path, const puner::EvalReport& rep) {
  auto out = open_output(path);
  auto line = [&](const puner::TypeMetrics& m) {
    ordered_json rec{{"type", m.type},       {"precision", m.precision},
                     {"recall", m.recall},   {"f1", m.f1},
                     {"support", m.support}, {"zero_division", m.zero_division}};
    out << rec.dump() << "\n";
  };
  for (const auto& m : rep.per_type) line(m);
  line(rep.micro);
  out << ordered_json{{"type", "macro"},
                      {"precision", rep.macro_precision},
                      {"recall", rep.macro_recall},
                      {"f1", rep.macro_f1}}
             .dump()
      << "\n";
}

void cmd_bootstrap(const GlobalOpts& g, const BootstrapOpts& o) {
  const puner::RunConfig cfg = effective_config(g);
  const unsigned threads = puner::resolve_threads(cfg.threads);
  const auto docs = puner::read_conllu_file(o.corpus);

  std::vector<puner::TagAssignment> gold_tags;
  const bool have_gold = !o.gold.empty();
  if (have_gold)
    for (auto& [doc, tags] : puner::read_gold_file(o.gold, cfg.types))
      gold_tags.push_back(std::move(tags));

  const fs::path run(o.run_dir);
  fs::create_directories(run);
  const fs::path state_path = run / "state.json";
  const fs::path final_dir = run / "final";

  puner::BootstrapState state;
  if (fs::exists(state_path)) {
    const auto j = read_json_file(state_path);
    const auto done = j.at("iteration").get<std::size_t>();
    const bool converged = j.at("converged").get<bool>();
    state = puner::BootstrapState::fresh(
        puner::load_seed_file((run / "seed.jsonl").string(), cfg.types));
    for (std::size_t i = 1; i <= done; ++i) {
      const fs::path iter_dir = run / iter_dir_name(i);
      state.snapshots.push_back(
          puner::load_seed_file((iter_dir / "gazetteer.jsonl").string(), cfg.types));
      const auto harvested = read_harvest_records(iter_dir / "harvest.jsonl", cfg.types);
      state.harvest_log.insert(state.harvest_log.end(), harvested.begin(), harvested.end());
    }
    state.iteration = done;
    state.converged = converged;
    if (converged || done >= cfg.bootstrap.max_iterations) {
      std::cerr << "run directory already holds a finished run (" << done
                << " iterations); nothing to do\n";
      return;
    }
    std::cerr << "resuming after iteration " << done << "\n";
  } else {
    if (o.seed.empty())
      puner::fail_input("--seed is required when starting a fresh run directory");
    puner::Gazetteer seed = puner::load_seed_file(o.seed, cfg.types);
    puner::save_gazetteer_file((run / "seed.jsonl").string(), seed);
    state = puner::BootstrapState::fresh(std::move(seed));
  }
  write_json_file(run / "config.json", cfg.to_json());

  std::vector<puner::HarvestEntry> cumulative = state.harvest_log;

  const puner::IterationHook hook = [&](const puner::IterationArtifacts& a) {
    const fs::path iter_dir = run / iter_dir_name(a.iteration);
    fs::create_directories(iter_dir);
    puner::save_gazetteer_file((iter_dir / "gazetteer.jsonl").string(), a.gazetteer);
    write_tags(iter_dir / "labels.jsonl", docs, a.labels, cfg.types);
    write_tags(iter_dir / "predictions.jsonl", docs, a.predictions, cfg.types);
    write_harvest_records(iter_dir / "harvest.jsonl", a.harvested, cfg.types);
    write_risk_trace(iter_dir / "risk_trace.jsonl", a.train_report);
    write_json_file(iter_dir / "expansion.json",
                    {{"labels_added", a.expansion.labels_added},
                     {"type_conflicts", a.expansion.type_conflicts},
                     {"passes", a.expansion.passes},
                     {"cross_type_harvest_conflicts", a.cross_type_conflicts}});
    if (have_gold) {
      const puner::EvalReport rep = puner::token_prf(gold_tags, a.predictions, cfg.types);
      write_json_file(iter_dir / "eval.json", eval_to_json(rep));
      open_output(iter_dir / "eval.txt") << puner::format_eval_table(rep);
    }

    // final/ always mirrors the newest completed iteration, so an
    // interrupted run resumes from (and serves results of) the last pass.
    cumulative.insert(cumulative.end(), a.harvested.begin(), a.harvested.end());
    fs::create_directories(final_dir);
    puner::save_gazetteer_file((final_dir / "gazetteer.jsonl").string(), a.gazetteer);
    a.model.save_file((final_dir / "model.txt").string());
    write_harvest_records(final_dir / "harvest_log.jsonl", cumulative, cfg.types);
    write_json_file(state_path, {{"iteration", a.iteration},
                                 {"converged", a.harvested.empty()},
                                 {"max_iterations", cfg.bootstrap.max_iterations},
                                 {"harvested_total", cumulative.size()},
                                 {"dictionary_entries", a.gazetteer.total_entries()}});
    std::cerr << "iteration " << a.iteration << ": +" << a.harvested.size()
              << " phrases (dictionary now " << a.gazetteer.total_entries() << ")\n";
  };

  const puner::BootstrapResult result =
      puner::run_bootstrap(docs, std::move(state), cfg.bootstrap, threads, hook);

  // Final report; the recall curve is rebuilt from the per-iteration files
  // so it spans resumed runs too.
  std::ostringstream report;
  report << "iterations: " << result.state.iteration << "\n";
  report << "converged: " << (result.state.converged ? "yes" : "no") << "\n";
  report << "harvested phrases: " << cumulative.size() << "\n";
  for (std::size_t t = 0; t < cfg.types.size(); ++t)
    report << "dictionary[" << cfg.types.name(static_cast<int>(t))
           << "]: " << result.gazetteer.entry_count(static_cast<int>(t)) << "\n";
  if (have_gold) {
    std::vector<puner::EvalReport> reps;
    for (std::size_t i = 1; i <= result.state.iteration; ++i) {
      const fs::path eval_path = run / iter_dir_name(i) / "eval.json";
      if (!fs::exists(eval_path))
        puner::fail_input("iteration ", i, ": missing evaluation file ", eval_path.string());
      const auto j = read_json_file(eval_path);
      puner::EvalReport rep;
      for (const auto& m : j.at("per_type")) {
        puner::TypeMetrics tm;
        tm.type = m.at("type").get<std::string>();
        tm.precision = m.at("precision").get<double>();
        tm.recall = m.at("recall").get<double>();
        tm.f1 = m.at("f1").get<double>();
        tm.support = m.at("support").get<std::size_t>();
        rep.per_type.push_back(std::move(tm));
      }
      reps.push_back(std::move(rep));
    }
    open_output(final_dir / "recall_curve.txt")
        << puner::format_recall_table(reps, cfg.types);
    const puner::EvalReport last = puner::token_prf(
        gold_tags, puner::predict(result.model, docs, cfg.bootstrap.trainer.decision_threshold,
                                  threads),
        cfg.types);
    write_eval_records(final_dir / "eval.jsonl", last);
    report << "\n" << puner::format_eval_table(last);
  }
  open_output(final_dir / "report.txt") << report.str();
  std::cerr << "bootstrap finished: " << result.state.iteration << " iterations, "
            << (result.state.converged ? "converged" : "iteration limit reached") << "\n";
}

// --- train ---------------------------------------------------------------

struct TrainOpts {
  std::string corpus, labels, model_out, trace;
};

std::vector<puner::TagAssignment> align_tags_to_corpus(
    std::vector<std::pair<puner::Document, puner::TagAssignment>> records,
    std::span<const puner::Document> docs) {
  std::unordered_map<std::string, puner::TagAssignment*> by_id;
  for (auto& [doc, tags] : records) by_id[doc.doc_id] = &tags;
  std::vector<puner::TagAssignment> out;
  out.reserve(docs.size());
  for (const auto& doc : docs) {
    auto it = by_id.find(doc.doc_id);
    if (it == by_id.end())
      puner::fail_input("no tags for document '", doc.doc_id, "' in the labels file");
    puner::check_alignment(*it->second, doc);
    out.push_back(std::move(*it->second));
  }
  return out;
}

void cmd_train(const GlobalOpts& g, const TrainOpts& o) {
  const puner::RunConfig cfg = effective_config(g);
  const unsigned threads = puner::resolve_threads(cfg.threads);
  const auto docs = puner::read_conllu_file(o.corpus);
  const auto tags =
      align_tags_to_corpus(puner::read_gold_file(o.labels, cfg.types), docs);

  puner::PuModel model(cfg.types);
  const puner::TrainReport report =
      puner::train_model(model, docs, tags, cfg.bootstrap.trainer, threads);
  for (const auto& t : report.types)
    if (!t.trained)
      std::cerr << "warning: skipped type " << t.type << ": " << t.skip_reason << "\n";
  if (!report.any_trained()) puner::fail("training skipped every type");

  model.save_file(o.model_out);
  if (!o.trace.empty()) write_risk_trace(o.trace, report);
  std::cerr << "model written to " << o.model_out << "\n";
}

// --- predict -------------------------------------------------------------

struct PredictOpts {
  std::string corpus, model, out = "-";
  double tau = -1.0;  // <0: use config value
};

void cmd_predict(const GlobalOpts& g, const PredictOpts& o) {
  const puner::RunConfig cfg = effective_config(g);
  const unsigned threads = puner::resolve_threads(cfg.threads);
  const auto docs = puner::read_conllu_file(o.corpus);
  const puner::PuModel model = puner::PuModel::load_file(o.model);
  const double tau = o.tau < 0 ? cfg.bootstrap.trainer.decision_threshold : o.tau;
  if (!(tau > 0.0 && tau < 1.0)) puner::fail_input("--tau must lie in (0,1)");
  const auto preds = puner::predict(model, docs, tau, threads);
  write_tags(o.out, docs, preds, model.types());
}

// --- eval ----------------------------------------------------------------

struct EvalOpts {
  std::string gold, pred, records;
};

void cmd_eval(const GlobalOpts& g, const EvalOpts& o) {
  const puner::RunConfig cfg = effective_config(g);
  std::vector<puner::TagAssignment> gold_tags, pred_tags;
  for (auto& [doc, tags] : puner::read_gold_file(o.gold, cfg.types))
    gold_tags.push_back(std::move(tags));
  for (auto& [doc, tags] : puner::read_gold_file(o.pred, cfg.types))
    pred_tags.push_back(std::move(tags));
  const puner::EvalReport rep = puner::token_prf(gold_tags, pred_tags, cfg.types);
  std::cout << puner::format_eval_table(rep);
  if (!o.records.empty()) write_eval_records(o.records, rep);
}

// --- synth ---------------------------------------------------------------

struct SynthOpts {
  std::string out_dir;
  std::vector<std::string> vocab;  // TYPE=N
  std::size_t docs = 100, sentences = 10, min_len = 8, max_len = 16;
  double entity_rate = 0.05, compound_rate = 0.3, trigger_rate = 0.3;
  std::size_t filler = 1000;
  std::uint64_t seed = 1;
  double seed_coverage = 0.0;
};

void cmd_synth(const GlobalOpts& g, const SynthOpts& o) {
  const puner::RunConfig cfg = effective_config(g);
  puner::SynthSpec spec;
  spec.types = cfg.types;
  spec.documents = o.docs;
  spec.sentences_per_doc = o.sentences;
  spec.min_sentence_len = o.min_len;
  spec.max_sentence_len = o.max_len;
  spec.entity_rate = o.entity_rate;
  spec.compound_rate = o.compound_rate;
  spec.trigger_rate = o.trigger_rate;
  spec.filler_vocab = o.filler;
  spec.seed = o.seed;
  spec.vocab_per_type.assign(spec.types.size(), 0);
  if (o.vocab.empty()) {
    const int t = spec.types.id("Component");
    spec.vocab_per_type[static_cast<std::size_t>(t < 0 ? 0 : t)] = 40;
  }
  for (const auto& item : o.vocab) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      puner::fail_input("--vocab expects TYPE=COUNT, got '", item, "'");
    const int t = spec.types.require(item.substr(0, eq));
    try {
      spec.vocab_per_type[static_cast<std::size_t>(t)] = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      puner::fail_input("--vocab expects TYPE=COUNT, got '", item, "'");
    }
  }

  const puner::SynthOutput out = puner::generate(spec);
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  puner::write_conllu_file((dir / "corpus.conllu").string(), out.corpus);
  puner::write_tag_records_file((dir / "gold.jsonl").string(), out.corpus, out.gold,
                                spec.types);
  {
    auto vout = open_output(dir / "vocab.jsonl");
    for (const auto& p : out.vocab) {
      ordered_json rec{{"type", spec.types.name(p.type)},
                       {"phrase", p.phrase},
                       {"tokens", p.length}};
      vout << rec.dump() << "\n";
    }
  }
  ordered_json priors;
  for (std::size_t t = 0; t < spec.types.size(); ++t)
    priors[spec.types.name(static_cast<int>(t))] = out.prior_per_type[t];
  write_json_file(dir / "stats.json", {{"documents", out.corpus.size()},
                                       {"tokens", out.token_count},
                                       {"entity_tokens", out.entity_tokens},
                                       {"requested_entity_rate", spec.entity_rate},
                                       {"prior_total", out.prior_total},
                                       {"prior_per_type", priors},
                                       {"seed", spec.seed}});
  if (o.seed_coverage > 0.0) {
    puner::save_gazetteer_file(
        (dir / "seed.jsonl").string(),
        puner::seed_from_vocab(out, spec.types, o.seed_coverage));
  }
  std::cerr << "synthetic corpus: " << out.token_count << " tokens, prior "
            << out.prior_total << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dictionary-bootstrapped NER with a non-negative positive-unlabeled "
               "token classifier"};
  app.require_subcommand(0, 1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON configuration file");
  app.add_option("--threads", g.threads, "worker threads (0 = machine parallelism)");
  app.add_flag("--show-config", g.show_config,
               "print the effective configuration as JSON and exit");

  LabelOpts label;
  auto* label_cmd = app.add_subcommand("label", "tag a corpus with a dictionary");
  label_cmd->add_option("--corpus", label.corpus, "CoNLL-U corpus")->required();
  label_cmd->add_option("--gazetteer", label.gazetteer, "seed dictionary (JSONL)")->required();
  label_cmd->add_flag("--expand,!--no-expand", label.expand,
                      "propagate labels along compound edges (default on)");
  label_cmd->add_option("--out", label.out, "output file, '-' for stdout");

  BootstrapOpts boot;
  auto* boot_cmd = app.add_subcommand("bootstrap", "run the iterative bootstrap loop");
  boot_cmd->add_option("--corpus", boot.corpus, "CoNLL-U corpus")->required();
  boot_cmd->add_option("--seed", boot.seed, "seed dictionary (JSONL)");
  boot_cmd->add_option("--run-dir", boot.run_dir, "run directory for artifacts")->required();
  boot_cmd->add_option("--gold", boot.gold, "gold tags for per-iteration evaluation");

  TrainOpts train;
  auto* train_cmd = app.add_subcommand("train", "train a classifier on labeled tags");
  train_cmd->add_option("--corpus", train.corpus, "CoNLL-U corpus")->required();
  train_cmd->add_option("--labels", train.labels, "tag records (JSONL)")->required();
  train_cmd->add_option("--model-out", train.model_out, "output model file")->required();
  train_cmd->add_option("--trace", train.trace, "risk trace output (JSONL)");

  PredictOpts predict;
  auto* predict_cmd = app.add_subcommand("predict", "tag a corpus with a trained model");
  predict_cmd->add_option("--corpus", predict.corpus, "CoNLL-U corpus")->required();
  predict_cmd->add_option("--model", predict.model, "model file")->required();
  predict_cmd->add_option("--tau", predict.tau, "decision threshold override");
  predict_cmd->add_option("--out", predict.out, "output file, '-' for stdout");

  EvalOpts eval;
  auto* eval_cmd = app.add_subcommand("eval", "token-level precision/recall/F1");
  eval_cmd->add_option("--gold", eval.gold, "gold tag records (JSONL)")->required();
  eval_cmd->add_option("--pred", eval.pred, "predicted tag records (JSONL)")->required();
  eval_cmd->add_option("--records", eval.records, "also write per-type records (JSONL)");

  SynthOpts synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus");
  synth_cmd->add_option("--out-dir", synth.out_dir, "output directory")->required();
  synth_cmd->add_option("--vocab", synth.vocab, "phrases per type, e.g. Component=40");
  synth_cmd->add_option("--docs", synth.docs, "number of documents");
  synth_cmd->add_option("--sentences", synth.sentences, "sentences per document");
  synth_cmd->add_option("--min-len", synth.min_len, "minimum sentence length");
  synth_cmd->add_option("--max-len", synth.max_len, "maximum sentence length");
  synth_cmd->add_option("--entity-rate", synth.entity_rate, "requested entity token rate");
  synth_cmd->add_option("--compound-rate", synth.compound_rate,
                        "fraction of entities gaining a compound head");
  synth_cmd->add_option("--trigger-rate", synth.trigger_rate,
                        "fraction of entities preceded by a cue token");
  synth_cmd->add_option("--filler", synth.filler, "filler vocabulary size");
  synth_cmd->add_option("--seed", synth.seed, "generator seed");
  synth_cmd->add_option("--seed-coverage", synth.seed_coverage,
                        "also write seed.jsonl covering this vocabulary fraction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (g.show_config) {
      std::cout << effective_config(g).to_json().dump(2) << "\n";
      return 0;
    }
    if (label_cmd->parsed())
      cmd_label(g, label);
    else if (boot_cmd->parsed())
      cmd_bootstrap(g, boot);
    else if (train_cmd->parsed())
      cmd_train(g, train);
    else if (predict_cmd->parsed())
      cmd_predict(g, predict);
    else if (eval_cmd->parsed())
      cmd_eval(g, eval);
    else if (synth_cmd->parsed())
      cmd_synth(g, synth);
    else
      std::cout << app.help();
  } catch (const puner::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
