// Copyright 2026 The Stage Authors
//
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

// Batch pipeline driver: parse / extract / features / constraints / order /
// eval over line-delimited corpora.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stage/compose.hpp"
#include "stage/jsonl.hpp"
#include "stage/pipeline.hpp"

namespace {

using nlohmann::json;
using namespace stage;

struct CommonOptions {
  std::string grammar_path;
  std::string output_path;
  std::string dct_text;
  int jobs = 1;
};

Grammar load_grammar(const CommonOptions& opts) {
  std::string path = opts.grammar_path;
  if (path.empty()) {
    const char* env = std::getenv("STAGE_GRAMMAR");
    if (env != nullptr) path = env;
  }
  Grammar grammar = path.empty() ? Grammar::load(builtin_grammar_text()) : Grammar::load_file(path);
  auto diagnostics = grammar.validate();
  if (!diagnostics.empty()) {
    std::ostringstream msg;
    msg << "grammar failed validation:";
    for (const auto& d : diagnostics) msg << "\n  " << d.message;
    throw std::runtime_error(msg.str());
  }
  return grammar;
}

std::optional<DateTime> parse_dct_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto dct = parse_iso_datetime(text);
  if (!dct) throw std::runtime_error("malformed --dct value: " + text);
  return dct;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return in;
}

using Writer = std::function<void(std::ostream&)>;

// `prepare` loads and validates every input, then hands back the writer;
// the output file is only created once validation has fully passed.
int run_command(const CommonOptions& opts, const std::function<Writer()>& prepare) {
  try {
    Writer writer = prepare();
    if (opts.output_path.empty()) {
      writer(std::cout);
    } else {
      std::ofstream out(opts.output_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file: " + opts.output_path);
      writer(out);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "stage: " << e.what() << "\n";
    return 1;
  }
}

std::string meta_line() {
  json meta;
  meta["meta"] = {{"epoch", "2000-01-01T00:00"}, {"format", 1}};
  return meta.dump();
}

json features_json(const TimeExpression& expr) {
  FeatureVector f = features(expr);
  return json{{"is_point", f.is_point},
              {"start_is_int", f.start_is_interval},
              {"end_is_int", f.end_is_interval},
              {"len_is_int", f.length_is_interval}};
}

const char* status_name(CueExtraction::Status status) {
  switch (status) {
    case CueExtraction::Status::kOk:
      return "ok";
    case CueExtraction::Status::kLengthOnly:
      return "length";
    case CueExtraction::Status::kNoParse:
      return "none";
  }
  return "?";
}

json cue_json(const CueExtraction& cue) {
  json j;
  j["status"] = status_name(cue.status);
  j["span"] = {cue.span.first, cue.span.second};
  if (cue.composed) j["expr"] = render(*cue.composed);
  if (cue.resolved) j["resolved"] = render(*cue.resolved);
  if (!cue.resolve_error.empty()) j["resolve_error"] = cue.resolve_error;
  if (cue.status == CueExtraction::Status::kOk) j["features"] = features_json(*cue.composed);
  return j;
}

Document parse_document_line(const std::string& line, std::size_t line_no) {
  try {
    return parse_document_json(line);
  } catch (const std::exception& e) {
    throw ValidationError(line_no, e.what());
  }
}

// Subcommands fully validate their inputs before writing a single output
// byte; corpora stream twice (validate, then process) to stay constant-space.
void validate_corpus_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty()) parse_document_line(line, line_no);
  }
}

int cmd_parse(const CommonOptions& opts, const std::string& cues_path, bool all_trees) {
  return run_command(opts, [&]() -> Writer {
    auto grammar = std::make_shared<Grammar>(load_grammar(opts));
    open_input(cues_path);
    return [&opts, grammar, cues_path, all_trees](std::ostream& out) {
      std::ifstream in = open_input(cues_path);
      std::string line;
      while (std::getline(in, line)) {
        out << "# " << line << "\n";
        std::vector<Token> tokens = tokenize(line, grammar->lexicon());
        if (tokens.empty()) continue;
        Chart chart = parse_all(tokens, *grammar);
        if (all_trees) {
          for (int i = 0; i < chart.size(); ++i) {
            for (int j = i + 1; j <= chart.size(); ++j) {
              for (const ParseTree& tree : enumerate_trees(chart, {i, j}))
                out << render_bracketed(tree) << "\n";
            }
          }
        } else if (auto tree = select_tree(chart)) {
          out << render_bracketed(*tree) << "\n";
        }
      }
    };
  });
}

int cmd_extract(const CommonOptions& opts, const std::string& cues_path,
                const std::string& corpus_path) {
  return run_command(opts, [&]() -> Writer {
    auto grammar = std::make_shared<Grammar>(load_grammar(opts));
    std::optional<DateTime> dct = parse_dct_flag(opts.dct_text);
    if (!corpus_path.empty()) validate_corpus_file(corpus_path);
    if (!cues_path.empty()) open_input(cues_path);
    return [&opts, grammar, dct, cues_path, corpus_path](std::ostream& out) {
      out << meta_line() << "\n";
      if (!cues_path.empty()) {
        std::ifstream in = open_input(cues_path);
        process_lines(in, out, opts.jobs, [&](const std::string& line, std::size_t) {
          if (line.empty()) return std::string();
          CueExtraction cue = extract_cue(*grammar, line, dct);
          json j = cue_json(cue);
          j["cue"] = line;
          return j.dump();
        });
        return;
      }
      std::ifstream in = open_input(corpus_path);
      process_lines(in, out, opts.jobs, [&](const std::string& line, std::size_t line_no) {
        if (line.empty()) return std::string();
        Document doc = parse_document_line(line, line_no);
        std::string block;
        for (const auto& item : extract_document(*grammar, doc).items) {
          json j = cue_json(item.cue);
          j["doc_id"] = doc.doc_id;
          j["event_id"] = item.event_id;
          j["span"] = {item.span.first, item.span.second};
          if (!block.empty()) block += '\n';
          block += j.dump();
        }
        return block;
      });
    };
  });
}

int cmd_features(const CommonOptions& opts, const std::string& corpus_path) {
  return run_command(opts, [&]() -> Writer {
    auto grammar = std::make_shared<Grammar>(load_grammar(opts));
    validate_corpus_file(corpus_path);
    return [&opts, grammar, corpus_path](std::ostream& out) {
      out << meta_line() << "\n";
      std::ifstream in = open_input(corpus_path);
      process_lines(in, out, opts.jobs, [&](const std::string& line, std::size_t line_no) {
        if (line.empty()) return std::string();
        Document doc = parse_document_line(line, line_no);
        std::string block;
        for (const auto& item : extract_document(*grammar, doc).items) {
          if (item.cue.status != CueExtraction::Status::kOk) continue;
          json j = features_json(*item.cue.composed);
          j["doc_id"] = doc.doc_id;
          j["event_id"] = item.event_id;
          if (!block.empty()) block += '\n';
          block += j.dump();
        }
        return block;
      });
    };
  });
}

int cmd_constraints(const CommonOptions& opts, const std::string& corpus_path,
                    bool both_orientations, bool dummies) {
  return run_command(opts, [&]() -> Writer {
    auto grammar = std::make_shared<Grammar>(load_grammar(opts));
    validate_corpus_file(corpus_path);
    return [&opts, grammar, corpus_path, both_orientations, dummies](std::ostream& out) {
      out << meta_line() << "\n";
      std::ifstream in = open_input(corpus_path);
      process_lines(in, out, opts.jobs, [&](const std::string& line, std::size_t line_no) {
        if (line.empty()) return std::string();
        Document doc = parse_document_line(line, line_no);
        std::vector<StageConstraint> rows =
            dummies ? document_dummy_constraints(*grammar, doc)
                    : document_constraints(*grammar, doc, both_orientations);
        std::string block;
        for (const auto& row : rows) {
          if (!block.empty()) block += '\n';
          block += constraint_record_to_json(ConstraintRecord{doc.doc_id, row});
        }
        return block;
      });
    };
  });
}

struct OrderOptions {
  std::string probs_path;
  std::string stage_path;
  std::string mode = "none";
  double alpha = 0.9;
  int exact_limit = 12;
  std::string tc_path;
  std::string dummy_prob = "uniform";
};

int cmd_order(const CommonOptions& opts, const OrderOptions& order) {
  return run_command(opts, [&]() -> Writer {
    // Group scored pairs and stage rows per document.
    std::map<std::string, std::vector<ProbRecord>> prob_rows;
    std::vector<std::string> doc_order;
    {
      std::ifstream in = open_input(order.probs_path);
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
          if (json::parse(line).contains("meta")) continue;
          ProbRecord record = parse_prob_record(line);
          if (!prob_rows.contains(record.doc_id)) doc_order.push_back(record.doc_id);
          prob_rows[record.doc_id].push_back(std::move(record));
        } catch (const std::exception& e) {
          throw ValidationError(line_no, e.what());
        }
      }
    }
    std::map<std::string, std::vector<ConstraintRecord>> stage_rows;
    if (!order.stage_path.empty()) {
      std::ifstream in = open_input(order.stage_path);
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
          if (json::parse(line).contains("meta")) continue;
          ConstraintRecord record = parse_constraint_record(line);
          stage_rows[record.doc_id].push_back(std::move(record));
        } catch (const std::exception& e) {
          throw ValidationError(line_no, e.what());
        }
      }
    }

    OrderingProblem::Mode mode;
    if (order.mode == "none") {
      mode = OrderingProblem::Mode::kNone;
    } else if (order.mode == "hard") {
      mode = OrderingProblem::Mode::kHard;
    } else if (order.mode == "soft") {
      mode = OrderingProblem::Mode::kSoft;
    } else {
      throw std::runtime_error("unknown --mode " + order.mode + " (use none|hard|soft)");
    }

    std::optional<std::vector<TransitivityTriple>> tc_override;
    if (!order.tc_path.empty()) {
      std::ifstream in = open_input(order.tc_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      tc_override = load_transitivity_table(buf.str());
    }

    std::vector<json> results;
    for (const std::string& doc_id : doc_order) {
      OrderingProblem prob;
      prob.mode = mode;
      prob.alpha = Rational::from_decimal(std::to_string(order.alpha));
      prob.exact_limit = order.exact_limit;
      prob.dummy_probs = order.dummy_prob == "zero" ? OrderingProblem::DummyProbs::kZero
                                                    : OrderingProblem::DummyProbs::kUniform;

      std::set<std::string> event_ids;
      std::set<RelationLabel> relation_set;
      for (const ProbRecord& row : prob_rows[doc_id]) {
        event_ids.insert(row.source);
        event_ids.insert(row.target);
        for (const auto& [r, p] : row.probs) relation_set.insert(r);
        prob.probabilities[{row.source, row.target}] = row.probs;
      }
      prob.events.assign(event_ids.begin(), event_ids.end());
      prob.relations.assign(relation_set.begin(), relation_set.end());

      std::set<std::string> dummy_ids;
      auto stage_it = stage_rows.find(doc_id);
      if (stage_it != stage_rows.end()) {
        for (const ConstraintRecord& row : stage_it->second) {
          for (const std::string& id : {row.constraint.source, row.constraint.target}) {
            if (!event_ids.contains(id)) dummy_ids.insert(id);
          }
          prob.stage_relations[{row.constraint.source, row.constraint.target}] =
              row.constraint.relation;
        }
      }
      prob.dummy_events.assign(dummy_ids.begin(), dummy_ids.end());
      prob.tc = tc_override ? *tc_override
                            : default_transitivity_table(prob.relations);

      SolveResult result = solve(prob);
      json j;
      j["doc_id"] = doc_id;
      j["mode"] = order.mode;
      j["objective"] = result.objective.str();
      j["objective_value"] = result.objective.to_double();
      j["proven_optimal"] = result.proven_optimal;
      j["pairs"] = json::array();
      for (const auto& [pair, label] : result.assignment.labels) {
        bool dummy = dummy_ids.contains(pair.source) || dummy_ids.contains(pair.target);
        j["pairs"].push_back({{"source", pair.source},
                              {"target", pair.target},
                              {"relation", relation_symbol(label)},
                              {"dummy", dummy}});
      }
      results.push_back(std::move(j));
    }
    return [results = std::move(results)](std::ostream& out) {
      out << meta_line() << "\n";
      for (const json& j : results) out << j.dump() << "\n";
    };
  });
}

int cmd_eval_extraction(const CommonOptions& opts, const std::string& corpus_path,
                        const std::string& system_path) {
  return run_command(opts, [&]() -> Writer {
    Grammar grammar = load_grammar(opts);
    std::vector<Document> corpus;
    {
      std::ifstream in = open_input(corpus_path);
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        corpus.push_back(parse_document_line(line, line_no));
      }
    }
    std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> system;
    {
      std::ifstream in = open_input(system_path);
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
          json j = json::parse(line);
          if (j.contains("meta")) continue;
          if (j.value("status", "ok") == "none") continue;
          auto span = j.at("span");
          system[j.at("doc_id").get<std::string>()].push_back(
              {span[0].get<std::size_t>(), span[1].get<std::size_t>()});
        } catch (const std::exception& e) {
          throw ValidationError(line_no, e.what());
        }
      }
    }
    ExtractionReport report = extraction_report(corpus, system, grammar.lexicon());
    return [report](std::ostream& out) {
      json j;
      j["n"] = report.gold_count;
      j["exact"] = report.exact;
      j["extended"] = report.extended;
      j["match_rate"] = report.match_rate();        // "=/+"
      j["extended_rate"] = report.extended_rate();  // "+"
      out << j.dump() << "\n";
      std::ostringstream table;
      table << "gold spans      " << report.gold_count << "\n"
            << "exact (=)       " << report.exact << "\n"
            << "extended (+)    " << report.extended << "\n"
            << "match (=/+)     " << report.match_rate() * 100 << "%\n"
            << "extended (+)    " << report.extended_rate() * 100 << "%\n";
      std::cerr << table.str();
    };
  });
}

int cmd_eval_ordering(const CommonOptions& opts, const std::string& pred_path,
                      const std::string& gold_path, bool include_dummies) {
  return run_command(opts, [&]() -> Writer {
    std::vector<TlinkRecord> pred;
    {
      std::ifstream in = open_input(pred_path);
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
          json j = json::parse(line);
          if (j.contains("meta")) continue;
          if (j.contains("pairs")) {  // order output document record
            std::string doc_id = j.value("doc_id", "");
            for (const auto& p : j["pairs"]) {
              if (!include_dummies && p.value("dummy", false)) continue;
              auto rel = relation_from_symbol(p.at("relation").get<std::string>());
              if (!rel) throw std::invalid_argument("unknown relation in pairs");
              pred.push_back({doc_id + "#" + p.at("source").get<std::string>(),
                              doc_id + "#" + p.at("target").get<std::string>(), *rel});
            }
          } else {
            auto [doc_id, link] = parse_tlink_record(line);
            pred.push_back({doc_id + "#" + link.source, doc_id + "#" + link.target,
                            link.relation});
          }
        } catch (const std::exception& e) {
          throw ValidationError(line_no, e.what());
        }
      }
    }
    std::vector<TlinkRecord> gold;
    {
      std::ifstream in = open_input(gold_path);
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
          json j = json::parse(line);
          if (j.contains("meta")) continue;
          if (j.contains("text")) {  // corpus document with gold_tlinks
            Document doc = parse_document_json(line);
            for (const auto& t : doc.gold_tlinks)
              gold.push_back({doc.doc_id + "#" + t.source, doc.doc_id + "#" + t.target,
                              t.relation});
          } else {
            auto [doc_id, link] = parse_tlink_record(line);
            gold.push_back({doc_id + "#" + link.source, doc_id + "#" + link.target,
                            link.relation});
          }
        } catch (const std::exception& e) {
          throw ValidationError(line_no, e.what());
        }
      }
    }
    OrderingMetrics m = ordering_metrics(pred, gold);
    return [m](std::ostream& out) {
      json j;
      j["precision"] = m.precision;
      j["recall"] = m.recall;
      j["f1"] = m.f1;
      j["correct"] = m.correct;
      j["predicted"] = m.predicted;
      j["gold"] = m.gold;
      if (m.empty_gold_warning) j["warning"] = "empty gold set; recall reported as 0";
      out << j.dump() << "\n";
      std::cerr << "P " << m.precision << "  R " << m.recall << "  F1 " << m.f1 << "\n";
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal expression extraction and event ordering pipeline"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  app.add_option("--grammar", common.grammar_path,
                 "grammar file (default: STAGE_GRAMMAR env var, else built-in)")
      ->envname("STAGE_GRAMMAR");
  app.add_option("-o,--output", common.output_path, "output file (default: stdout)");
  app.add_option("--jobs", common.jobs, "worker threads for corpus processing")
      ->check(CLI::Range(1, 256));

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "print parse trees for cue strings");
  std::string parse_cues;
  bool all_trees = false;
  parse_cmd->add_option("--cues", parse_cues, "file with one cue per line")->required();
  parse_cmd->add_flag("--trees", all_trees, "print every tree over every span");

  // extract
  auto* extract_cmd =
      app.add_subcommand("extract", "parse, compose and normalize cues or corpus documents");
  std::string extract_cues, extract_corpus;
  extract_cmd->add_option("--cues", extract_cues, "file with one cue per line");
  extract_cmd->add_option("--corpus", extract_corpus, "corpus file, one document per line");
  extract_cmd->add_option("--dct", common.dct_text, "document date for --cues input (ISO-8601)");

  // features
  auto* features_cmd = app.add_subcommand("features", "per-event boolean feature records");
  std::string features_corpus;
  features_cmd->add_option("--corpus", features_corpus, "corpus file")->required();

  // constraints
  auto* constraints_cmd =
      app.add_subcommand("constraints", "certain pairwise relations from time cues");
  std::string constraints_corpus;
  bool both_orientations = false, dummies = false;
  constraints_cmd->add_option("--corpus", constraints_corpus, "corpus file")->required();
  constraints_cmd->add_flag("--both-orientations", both_orientations,
                            "also emit the inverse of every relation");
  constraints_cmd->add_flag("--dummies", dummies,
                            "emit dummy-node rows for the ordering engine");

  // order
  auto* order_cmd = app.add_subcommand("order", "solve document-level orderings");
  OrderOptions order;
  order_cmd->add_option("--probs", order.probs_path, "relation probability file")->required();
  order_cmd->add_option("--stage", order.stage_path, "parser constraint file (from constraints --dummies)");
  order_cmd->add_option("--mode", order.mode, "none|hard|soft");
  order_cmd->add_option("--alpha", order.alpha, "soft-constraint weight")->check(CLI::Range(0.0, 1.0));
  order_cmd->add_option("--exact-limit", order.exact_limit, "max events for guaranteed optimality");
  order_cmd->add_option("--tc-table", order.tc_path, "transitivity triple file");
  order_cmd->add_option("--dummy-prob", order.dummy_prob,
                        "base term for unscored stage pairs: uniform|zero");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "score extraction or ordering outputs");
  eval_cmd->require_subcommand(1);
  auto* eval_extraction = eval_cmd->add_subcommand("extraction", "relaxed-match extraction report");
  std::string eval_corpus, eval_system;
  eval_extraction->add_option("--corpus", eval_corpus, "corpus file with gold_timex")->required();
  eval_extraction->add_option("--system", eval_system, "extract output file")->required();
  auto* eval_ordering = eval_cmd->add_subcommand("ordering", "micro P/R/F1 over tlinks");
  std::string eval_pred, eval_gold;
  bool include_dummies = false;
  eval_ordering->add_option("--pred", eval_pred, "order output file")->required();
  eval_ordering->add_option("--gold", eval_gold, "gold tlinks (corpus or tlink records)")
      ->required();
  eval_ordering->add_flag("--include-dummies", include_dummies,
                          "score pairs involving dummy nodes too");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  eval_extraction->fallthrough();
  eval_ordering->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (parse_cmd->parsed()) return cmd_parse(common, parse_cues, all_trees);
  if (extract_cmd->parsed()) {
    if (extract_cues.empty() == extract_corpus.empty()) {
      std::cerr << "stage: extract needs exactly one of --cues or --corpus\n";
      return 1;
    }
    return cmd_extract(common, extract_cues, extract_corpus);
  }
  if (features_cmd->parsed()) return cmd_features(common, features_corpus);
  if (constraints_cmd->parsed())
    return cmd_constraints(common, constraints_corpus, both_orientations, dummies);
  if (order_cmd->parsed()) return cmd_order(common, order);
  if (eval_cmd->parsed()) {
    if (eval_extraction->parsed()) return cmd_eval_extraction(common, eval_corpus, eval_system);
    if (eval_ordering->parsed())
      return cmd_eval_ordering(common, eval_pred, eval_gold, include_dummies);
  }
  std::cerr << app.help();
  return 1;
}
