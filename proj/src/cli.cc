// Copyright 2026 The UML Authors
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

#include "uml/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "uml/corpus.h"
#include "uml/decoder.h"
#include "uml/error.h"
#include "uml/experiment.h"
#include "uml/features.h"
#include "uml/param_audit.h"
#include "uml/rnnt_model.h"
#include "uml/trainer.h"
#include "uml/uml_table.h"
#include "uml/uml_tokenizer.h"
#include "uml/unicode.h"
#include "uml/vocab.h"
#include "uml/wpm_trainer.h"

namespace uml::cli {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kCheckpointFormatVersion = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path);
  return ss.str();
}

// Writes to `path`, or to `out` when path is empty.
void emit(const std::string& data, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  f << data;
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> read_lines(const std::string& data) {
  std::vector<std::string> lines;
  std::stringstream ss(data);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// File lines, or stdin when the path is empty or "-".
std::vector<std::string> input_lines(const std::string& path) {
  if (!path.empty() && path != "-") return read_lines(read_file(path));
  std::stringstream ss;
  ss << std::cin.rdbuf();
  return read_lines(ss.str());
}

LanguageRegistry registry_from(const std::string& langs) {
  return LanguageRegistry(langs.empty() ? reference_languages() : split_list(langs));
}

GroupingScheme load_scheme(const std::string& spec) {
  if (fs::exists(spec)) return scheme_from_json(read_file(spec));
  return reference_scheme(spec);
}

UmlTable load_table(const std::string& path) { return deserialize_table(read_file(path)); }

// Languages of a table in scheme order; position is the model's LID index.
LanguageRegistry table_registry(const UmlTable& table) {
  return LanguageRegistry(table.scheme().languages());
}

ordered_json features_to_json(const FeatureConfig& f) {
  ordered_json j;
  j["feat_dim"] = f.feat_dim;
  j["min_frames"] = f.min_frames;
  j["max_frames"] = f.max_frames;
  j["noise"] = f.noise;
  j["language_bias"] = f.language_bias;
  j["feature_seed"] = f.seed;
  return j;
}

struct Checkpoint {
  TransducerModel model;
  FeatureConfig features;
  std::vector<std::string> languages;
};

std::string checkpoint_to_json(const Checkpoint& c) {
  ordered_json j;
  j["format"] = "uml-checkpoint";
  j["version"] = kCheckpointFormatVersion;
  j["languages"] = c.languages;
  j["features"] = features_to_json(c.features);
  j["model"] = ordered_json::parse(c.model.to_json());
  return j.dump() + "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
  const nlohmann::json j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("format", "") != "uml-checkpoint") {
    throw Error(ErrorCode::kSchema, "checkpoint: " + path + " is not a checkpoint file");
  }
  try {
    if (j.at("version").get<int>() != kCheckpointFormatVersion) {
      throw Error(ErrorCode::kVersionMismatch, "checkpoint: unsupported version");
    }
    Checkpoint c;
    c.languages = j.at("languages").get<std::vector<std::string>>();
    const auto& f = j.at("features");
    c.features.feat_dim = f.at("feat_dim").get<int>();
    c.features.min_frames = f.at("min_frames").get<int>();
    c.features.max_frames = f.at("max_frames").get<int>();
    c.features.noise = f.at("noise").get<double>();
    c.features.language_bias = f.at("language_bias").get<double>();
    c.features.seed = f.at("feature_seed").get<std::uint64_t>();
    c.model = TransducerModel::from_json(j.at("model").dump());
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("checkpoint: ") + e.what());
  }
}

void check_compatible(const Checkpoint& c, const UmlTable& table) {
  if (c.languages != table.scheme().languages() ||
      c.model.config().vocab_size != table.vocab_size()) {
    throw Error(ErrorCode::kSchema, "checkpoint was trained against a different table");
  }
}

// Training config: ModelConfig, FeatureConfig and trainer fields in one
// flat JSON object. Unknown keys are rejected.
struct TrainSetup {
  ModelConfig model;
  FeatureConfig features;
  TrainOptions train;
};

void apply_config_file(const std::string& path, TrainSetup& s) {
  const nlohmann::json j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kSchema, "config: " + path + " is not a JSON object");
  }
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "feat_dim") {
        s.model.feat_dim = s.features.feat_dim = v.get<int>();
      } else if (key == "stack_frames") {
        s.model.stack_frames = v.get<int>();
      } else if (key == "hidden") {
        s.model.hidden = v.get<int>();
      } else if (key == "num_heads") {
        s.model.num_heads = v.get<int>();
      } else if (key == "encoder_layers") {
        s.model.encoder_layers = v.get<int>();
      } else if (key == "joint") {
        s.model.joint = parse_joint_type(v.get<std::string>());
      } else if (key == "lid_to_prednet") {
        s.model.lid_to_prednet = v.get<bool>();
      } else if (key == "lid_head") {
        s.model.lid_head = v.get<bool>();
      } else if (key == "min_frames") {
        s.features.min_frames = v.get<int>();
      } else if (key == "max_frames") {
        s.features.max_frames = v.get<int>();
      } else if (key == "noise") {
        s.features.noise = v.get<double>();
      } else if (key == "language_bias") {
        s.features.language_bias = v.get<double>();
      } else if (key == "feature_seed") {
        s.features.seed = v.get<std::uint64_t>();
      } else if (key == "steps") {
        s.train.steps = v.get<int>();
      } else if (key == "batch_size") {
        s.train.batch_size = v.get<int>();
      } else if (key == "optimizer") {
        s.train.optimizer.kind = parse_optimizer(v.get<std::string>());
      } else if (key == "learning_rate") {
        s.train.optimizer.learning_rate = v.get<double>();
      } else if (key == "momentum") {
        s.train.optimizer.momentum = v.get<double>();
      } else if (key == "clip_norm") {
        s.train.optimizer.clip_norm = v.get<double>();
      } else if (key == "lid_weight") {
        s.train.optimizer.lid_weight = v.get<double>();
      } else if (key == "vocab_size" || key == "num_languages") {
        // Derived from the table; accepted for documentation only.
      } else {
        throw Error(ErrorCode::kSchema, "config: unknown field '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("config: ") + e.what());
  }
}

std::string error_json(std::string_view kind, int code, const std::string& message) {
  ordered_json j;
  j["error"] = kind;
  j["code"] = code;
  j["message"] = message;
  return j.dump();
}

std::string join_nodes(const std::vector<int>& nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(nodes[i]);
  }
  return s;
}

std::vector<int> parse_nodes(const std::string& line) {
  std::vector<int> nodes;
  std::stringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      nodes.push_back(v);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidArgument, "decode: '" + tok + "' is not a node index");
    }
  }
  return nodes;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Universal monolingual output layer toolkit", "uml"};
  app.require_subcommand(1);
  int threads = 1;
  std::uint64_t seed = 1;
  app.add_option("--threads", threads, "Worker threads for training")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for synthesis, features and training");

  // Shared option values.
  std::string corpus_path, format = "jsonl", langs, out_path, table_path, model_path, lid;
  std::string text, input_path;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Normalize a JSONL/TSV corpus to canonical JSONL");
  bool lowercase = false;
  ingest->add_option("--input", input_path, "Corpus file")->required();
  ingest->add_option("--format", format, "jsonl or tsv");
  ingest->add_option("--langs", langs, "Comma-separated language registry");
  ingest->add_flag("--lowercase", lowercase, "Lowercase during normalization");
  ingest->add_option("--out", out_path, "Output file (default stdout)");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  std::string sizes = "100";
  synth->add_option("--langs", langs, "Comma-separated language codes")->required();
  synth->add_option("--sizes", sizes, "Utterances per language (one value or one per language)");
  synth->add_option("--out", out_path, "Output file (default stdout)");

  // stats
  auto* stats = app.add_subcommand("stats", "Corpus statistics as JSON");
  stats->add_option("--corpus", corpus_path)->required();
  stats->add_option("--format", format);
  stats->add_option("--langs", langs);

  // train-vocab
  auto* train_vocab = app.add_subcommand("train-vocab", "Train one group's vocabulary");
  std::string group, group_langs, unit = "wpm";
  int size = 0, min_char_count = 1;
  train_vocab->add_option("--corpus", corpus_path)->required();
  train_vocab->add_option("--format", format);
  train_vocab->add_option("--langs", langs, "Corpus language registry");
  train_vocab->add_option("--group", group, "Group name")->required();
  train_vocab->add_option("--group-langs", group_langs, "Languages of the group (default: all)");
  train_vocab->add_option("--size", size, "Vocabulary size including specials");
  train_vocab->add_option("--min-char-count", min_char_count, "Base alphabet threshold");
  train_vocab->add_option("--unit", unit, "wpm or byte");
  train_vocab->add_option("--out", out_path);

  // build-uml
  auto* build = app.add_subcommand("build-uml", "Fold group vocabularies into a UML table");
  std::string scheme_spec;
  std::vector<std::string> vocab_paths;
  build->add_option("--scheme", scheme_spec, "Scheme file or reference name (G1, G5, ...)")
      ->required();
  build->add_option("--vocab", vocab_paths, "Vocabulary files, one per group")->required();
  build->add_option("--out", out_path);

  // encode / decode
  auto* enc = app.add_subcommand("encode", "Text to node indices under a language");
  enc->add_option("--table", table_path)->required();
  enc->add_option("--lid", lid)->required();
  enc->add_option("--text", text, "One utterance (otherwise --input or stdin lines)");
  enc->add_option("--input", input_path);
  auto* dec = app.add_subcommand("decode", "Node indices to text under a language");
  std::string nodes_arg;
  dec->add_option("--table", table_path)->required();
  dec->add_option("--lid", lid)->required();
  dec->add_option("--nodes", nodes_arg, "Space-separated nodes (otherwise --input or stdin lines)");
  dec->add_option("--input", input_path);

  // train-model
  auto* train = app.add_subcommand("train-model", "Train a desk transducer on synthetic audio");
  std::string config_path;
  int steps = -1, batch_size = -1, hidden = -1;
  double learning_rate = -1.0;
  std::string joint, optimizer;
  train->add_option("--config", config_path, "Flat JSON training config");
  train->add_option("--table", table_path)->required();
  train->add_option("--corpus", corpus_path)->required();
  train->add_option("--format", format);
  train->add_option("--steps", steps);
  train->add_option("--batch-size", batch_size);
  train->add_option("--hidden", hidden);
  train->add_option("--learning-rate", learning_rate);
  train->add_option("--joint", joint, "additive or bilinear");
  train->add_option("--optimizer", optimizer, "momentum or adam");
  train->add_option("--out", out_path, "Checkpoint file")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Oracle-LID decoding scored against references");
  bool ter_only = false;
  int beam = 1;
  eval->add_option("--model", model_path)->required();
  eval->add_option("--table", table_path)->required();
  eval->add_option("--corpus", corpus_path)->required();
  eval->add_option("--format", format);
  eval->add_option("--beam", beam);
  eval->add_flag("--ter", ter_only, "Print only the token error rate");

  // beam-decode
  auto* bd = app.add_subcommand("beam-decode", "Beam search with a hard or marginalized LID");
  bool marginal = false;
  int nbest = 1;
  std::string lid_probs_path;
  bd->add_option("--model", model_path)->required();
  bd->add_option("--table", table_path)->required();
  bd->add_option("--corpus", corpus_path)->required();
  bd->add_option("--format", format);
  bd->add_option("--beam", beam);
  bd->add_option("--nbest", nbest);
  auto* lid_opt = bd->add_option("--lid", lid, "Hard LID for every utterance");
  auto* marginal_opt = bd->add_flag("--marginal", marginal, "Marginalize over P(z|x)");
  bd->add_option("--lid-probs", lid_probs_path,
                 "JSON array of P(z|x), or JSONL with one array per utterance");
  lid_opt->excludes(marginal_opt);

  // params-audit
  auto* audit = app.add_subcommand("params-audit", "Closed-form decoder parameter counts");
  bool table2 = false, as_json = false;
  std::string json_out;
  audit->add_flag("--table2", table2, "Reproduce the published decoder sizes");
  audit->add_option("--configs", config_path, "JSON list of architectures");
  audit->add_flag("--json", as_json, "Print JSON instead of the text table");
  audit->add_option("--json-out", json_out, "Also write the JSON report here");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", kUsageExit, e.what()) << "\n";
    return kUsageExit;
  }

  try {
    const CorpusFormat corpus_format = parse_corpus_format(format);
    if (*ingest) {
      NormalizeOptions opts;
      opts.lowercase = lowercase;
      const auto corpus = load_corpus(input_path, corpus_format, registry_from(langs), opts);
      emit(to_jsonl(corpus), out_path, out);
    } else if (*synth) {
      const LanguageRegistry registry(split_list(langs));
      std::vector<int> counts;
      for (const auto& s : split_list(sizes)) counts.push_back(std::stoi(s));
      if (counts.size() == 1) counts.assign(registry.size(), counts.front());
      std::vector<SynthLanguage> specs;
      for (const auto& id : registry.languages()) specs.push_back(default_synth_language(id));
      emit(to_jsonl(synth_corpus(seed, specs, counts)), out_path, out);
    } else if (*stats) {
      const CorpusStats s =
          compute_stats(load_corpus(corpus_path, corpus_format, registry_from(langs)));
      ordered_json j;
      j["total_chars"] = s.total_chars;
      ordered_json per = ordered_json::object();
      for (const auto& [code, n] : s.utterances) {
        per[code] = {{"utterances", n}, {"inventory", s.inventory.at(code).size()}};
      }
      j["languages"] = per;
      out << j.dump(2) << "\n";
    } else if (*train_vocab) {
      Vocab vocab;
      if (parse_unit_type(unit) == UnitType::kByte) {
        vocab = make_byte_vocab(group);
      } else {
        auto corpus = load_corpus(corpus_path, corpus_format, registry_from(langs));
        if (!group_langs.empty()) corpus = filter_languages(corpus, split_list(group_langs));
        if (corpus.empty()) {
          throw Error(ErrorCode::kInvalidArgument, "train-vocab: no utterances for the group");
        }
        vocab = train_wpm(corpus, size, min_char_count, group).vocab;
      }
      emit(vocab_to_json(vocab) + "\n", out_path, out);
    } else if (*build) {
      const GroupingScheme scheme = load_scheme(scheme_spec);
      std::map<std::string, Vocab> vocabs;
      for (const auto& p : vocab_paths) {
        Vocab v = vocab_from_json(read_file(p));
        const std::string name = v.group_name;
        if (!vocabs.emplace(name, std::move(v)).second) {
          throw Error(ErrorCode::kSchema, "build-uml: two vocabularies for group " + name);
        }
      }
      emit(serialize_table(UmlTable::build(scheme, vocabs)) + "\n", out_path, out);
    } else if (*enc) {
      const UmlTable table = load_table(table_path);
      const auto lines = text.empty() ? input_lines(input_path) : std::vector<std::string>{text};
      for (const auto& line : lines) out << join_nodes(encode(normalize_text(line), lid, table)) << "\n";
    } else if (*dec) {
      const UmlTable table = load_table(table_path);
      const auto lines =
          nodes_arg.empty() ? input_lines(input_path) : std::vector<std::string>{nodes_arg};
      for (const auto& line : lines) out << decode(parse_nodes(line), lid, table) << "\n";
    } else if (*train) {
      const UmlTable table = load_table(table_path);
      const LanguageRegistry registry = table_registry(table);
      TrainSetup s;
      s.train.optimizer.threads = threads;
      if (!config_path.empty()) apply_config_file(config_path, s);
      if (steps >= 0) s.train.steps = steps;
      if (batch_size > 0) s.train.batch_size = batch_size;
      if (hidden > 0) s.model.hidden = hidden;
      if (learning_rate > 0) s.train.optimizer.learning_rate = learning_rate;
      if (!joint.empty()) s.model.joint = parse_joint_type(joint);
      if (!optimizer.empty()) s.train.optimizer.kind = parse_optimizer(optimizer);
      s.train.seed = seed;
      s.model.vocab_size = table.vocab_size();
      s.model.num_languages = registry.size();
      s.model.feat_dim = s.features.feat_dim;
      if (s.model.num_heads != 1 && s.model.num_heads != table.num_groups()) {
        throw Error(ErrorCode::kInvalidArgument, "train-model: num_heads must be 1 or the group count");
      }
      const auto corpus = load_corpus(corpus_path, corpus_format, registry);
      const Dataset data = make_dataset(corpus, table, s.features, seed);
      Checkpoint c{TransducerModel(s.model, seed), s.features, registry.codes()};
      train_model(c.model, data.examples, group_masks(table), s.train,
                  [&](int step, const StepResult& r) {
                    if ((step + 1) % 50 == 0 || step + 1 == s.train.steps) {
                      err << "step " << step + 1 << " loss " << r.loss << " lid " << r.lid_loss
                          << "\n";
                    }
                  });
      emit(checkpoint_to_json(c), out_path, out);
    } else if (*eval) {
      const UmlTable table = load_table(table_path);
      const Checkpoint c = load_checkpoint(model_path);
      check_compatible(c, table);
      const auto corpus = load_corpus(corpus_path, corpus_format, table_registry(table));
      const EvalResult r = evaluate(c.model, table, make_dataset(corpus, table, c.features, seed), beam);
      if (ter_only) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", r.ter());
        out << buf << "\n";
      } else {
        ordered_json j;
        j["utterances"] = corpus.size();
        j["ter"] = r.ter();
        j["errors"] = r.total.errors;
        j["reference_chars"] = r.total.reference;
        ordered_json per = ordered_json::object();
        for (const auto& [code, e] : r.per_language) {
          per[code] = {{"ter", e.rate()}, {"errors", e.errors}, {"reference_chars", e.reference}};
        }
        j["per_language"] = per;
        if (r.lid_total) j["lid_accuracy"] = r.lid_accuracy();
        out << j.dump(2) << "\n";
      }
    } else if (*bd) {
      const UmlTable table = load_table(table_path);
      const Checkpoint c = load_checkpoint(model_path);
      check_compatible(c, table);
      const LanguageRegistry registry = table_registry(table);
      if (!marginal && lid.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "beam-decode: pass --lid or --marginal");
      }
      const auto corpus = load_corpus(corpus_path, corpus_format, registry);
      const Dataset data = make_dataset(corpus, table, c.features, seed);
      std::vector<LidPosterior> given;
      if (!lid_probs_path.empty()) {
        const std::string content = read_file(lid_probs_path);
        auto parse_probs = [](const nlohmann::json& j) {
          LidPosterior p;
          p.probs = j.get<std::vector<double>>();
          return p;
        };
        try {
          const nlohmann::json whole = nlohmann::json::parse(content, nullptr, false);
          if (!whole.is_discarded() && whole.is_array() &&
              (whole.empty() || whole.front().is_number())) {
            given.push_back(parse_probs(whole));
          } else {
            for (const auto& line : read_lines(content)) {
              if (!line.empty()) given.push_back(parse_probs(nlohmann::json::parse(line)));
            }
          }
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorCode::kSchema, std::string("--lid-probs: ") + e.what());
        }
        if (given.size() != 1 && given.size() != corpus.size()) {
          throw Error(ErrorCode::kSchema, "--lid-probs: need one posterior or one per utterance");
        }
      }
      for (std::size_t i = 0; i < data.examples.size(); ++i) {
        const auto& x = data.examples[i].features;
        std::vector<Hypothesis> hyps;
        if (marginal) {
          const LidPosterior p = given.empty() ? lid_posterior(x, c.model)
                                               : given[given.size() == 1 ? 0 : i];
          hyps = beam_decode_marginal(x, c.model, table, registry, beam, p);
        } else {
          hyps = beam_decode_hard(x, registry.at(lid), c.model, table, beam);
        }
        for (int k = 0; k < nbest && k < static_cast<int>(hyps.size()); ++k) {
          ordered_json j;
          j["utterance"] = i;
          j["rank"] = k;
          j["text"] = hyps[k].text;
          j["score"] = hyps[k].score;
          j["lid"] = registry.at(hyps[k].lid).code;
          out << j.dump() << "\n";
        }
      }
    } else if (*audit) {
      std::vector<Table2Row> rows;
      if (table2 || config_path.empty()) rows = table2_rows();
      if (!config_path.empty()) {
        for (auto& a : parse_arch_configs(read_file(config_path))) {
          Table2Row r;
          r.system = a.name;
          r.report = count_params(a);
          r.arch = std::move(a);
          rows.push_back(std::move(r));
        }
      }
      const std::string json = report_json(rows);
      if (!json_out.empty()) emit(json, json_out, out);
      out << (as_json ? json : format_report_table(rows));
    }
  } catch (const Error& e) {
    err << error_json(error_code_name(e.code()), static_cast<int>(e.code()), e.what()) << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << error_json("internal", kInternalExit, e.what()) << "\n";
    return kInternalExit;
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace uml::cli
