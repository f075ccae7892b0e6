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


#include "uml/decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "uml/error.h"
#include "uml/uml_tokenizer.h"
#include "uml/utf8.h"
#include "uml/vocab.h"

namespace uml {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::string_view kReplacement = "\xEF\xBF\xBD";

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// Nodes search may emit for a group: valid non-blank labels other than
// <pad>, and no <unk> where bytes make it unnecessary.
std::vector<int> emittable_nodes(const UmlTable& table, int group) {
  std::vector<int> nodes;
  for (int k = 0; k < table.valid_size(group); ++k) {
    if (k == kBlankNode || k == kPadNode) continue;
    if (k == kUnkNode && table.unit_type(group) == UnitType::kByte) continue;
    nodes.push_back(k);
  }
  return nodes;
}

// Decoding state for one language hypothesis z.
struct LanguageContext {
  int z = 0;
  int group = 0;
  int head = 0;
  std::vector<bool> mask;
  std::vector<int> labels;
  Eigen::MatrixXd enc_proj;
  std::map<std::pair<int, int>, Eigen::RowVectorXd> pred_cache;
};

LanguageContext make_context(const Eigen::MatrixXd& features, int z, int group,
                             const TransducerModel& model, const UmlTable& table) {
  if (table.vocab_size() != model.config().vocab_size) {
    throw Error(ErrorCode::kInvalidArgument, "decoder: table and model disagree on V_out");
  }
  LanguageContext c;
  c.z = z;
  c.group = group;
  c.head = model.head_for_group(group);
  c.mask = table.valid_mask(group);
  c.labels = emittable_nodes(table, group);
  c.enc_proj = model.projected_encoder(features, z);
  return c;
}

const Eigen::RowVectorXd& pred_state(LanguageContext& c, const TransducerModel& model,
                                     const std::vector<int>& nodes) {
  const int prev1 = nodes.size() >= 1 ? nodes[nodes.size() - 1] : kPadNode;
  const int prev2 = nodes.size() >= 2 ? nodes[nodes.size() - 2] : kPadNode;
  auto key = std::make_pair(prev1, prev2);
  auto it = c.pred_cache.find(key);
  if (it == c.pred_cache.end()) {
    it = c.pred_cache.emplace(key, model.projected_prednet(prev1, prev2, c.z, c.head)).first;
  }
  return it->second;
}

struct Path {
  std::vector<int> nodes;
  double score = 0.0;
  int ctx = 0;  // index into the language contexts
};

struct Candidate {
  Path path;
  bool blank = false;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.path.score != b.path.score) return a.path.score > b.path.score;
  return std::tie(a.path.ctx, a.path.nodes, a.blank) < std::tie(b.path.ctx, b.path.nodes, b.blank);
}

// Shared frame-synchronous search. Each initial path carries its own
// language context and prior.
std::vector<Hypothesis> run_beam(std::vector<LanguageContext>& contexts,
                                 const std::vector<double>& priors,
                                 const TransducerModel& model, const UmlTable& table,
                                 int beam_size, const DecodeOptions& options) {
  if (beam_size < 1) throw Error(ErrorCode::kInvalidArgument, "decoder: beam size must be >= 1");
  if (options.max_symbols_per_frame < 0) {
    throw Error(ErrorCode::kInvalidArgument, "decoder: max symbols per frame must be >= 0");
  }
  std::vector<Path> active;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    if (priors[i] > kNegInf) active.push_back({{}, priors[i], static_cast<int>(i)});
  }
  const Eigen::Index T = contexts.front().enc_proj.rows();
  for (Eigen::Index t = 0; t < T; ++t) {
    std::vector<Candidate> finished;  // blank-terminated, ready for frame t + 1
    std::vector<Path> frontier = std::move(active);
    for (int s = 0; !frontier.empty(); ++s) {
      const bool may_emit = s < options.max_symbols_per_frame;
      std::vector<Candidate> pool = finished;
      for (const Path& p : frontier) {
        LanguageContext& c = contexts[p.ctx];
        const Eigen::RowVectorXd lp =
            model.step_log_probs(c.enc_proj.row(t), pred_state(c, model, p.nodes), c.mask, c.head);
        Candidate blank{p, true};
        blank.path.score += lp[kBlankNode];
        auto same = std::find_if(pool.begin(), pool.end(), [&](const Candidate& q) {
          return q.blank && q.path.ctx == p.ctx && q.path.nodes == p.nodes;
        });
        if (same != pool.end()) {
          same->path.score = log_add(same->path.score, blank.path.score);
        } else {
          pool.push_back(std::move(blank));
        }
        if (!may_emit) continue;
        for (int k : c.labels) {
          Candidate next{p, false};
          next.path.nodes.push_back(k);
          next.path.score += lp[k];
          pool.push_back(std::move(next));
        }
      }
      const std::size_t keep = std::min<std::size_t>(beam_size, pool.size());
      std::partial_sort(pool.begin(), pool.begin() + keep, pool.end(), better);
      pool.resize(keep);
      finished.clear();
      frontier.clear();
      for (auto& cand : pool) {
        if (cand.blank) {
          finished.push_back(std::move(cand));
        } else {
          frontier.push_back(std::move(cand.path));
        }
      }
    }
    for (auto& f : finished) active.push_back(std::move(f.path));
  }

  // Merge by rendered text across languages.
  std::vector<Hypothesis> merged;
  std::vector<double> best_path;
  for (const Path& p : active) {
    const LanguageContext& c = contexts[p.ctx];
    std::string text = render_text(p.nodes, c.group, table);
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Hypothesis& h) { return h.text == text; });
    if (it == merged.end()) {
      merged.push_back({p.nodes, p.score, std::move(text), c.z});
      best_path.push_back(p.score);
      continue;
    }
    const std::size_t i = it - merged.begin();
    it->score = log_add(it->score, p.score);
    if (p.score > best_path[i]) {
      best_path[i] = p.score;
      it->nodes = p.nodes;
      it->lid = c.z;
    }
  }
  std::stable_sort(merged.begin(), merged.end(),
                   [](const Hypothesis& a, const Hypothesis& b) { return a.score > b.score; });
  return merged;
}

}  // namespace

void LidPosterior::validate() const {
  if (probs.empty()) throw Error(ErrorCode::kInvalidArgument, "LID posterior is empty");
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "LID posterior has a negative or non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw Error(ErrorCode::kInvalidArgument,
                "LID posterior sums to " + std::to_string(sum) + ", not 1");
  }
}

int LidPosterior::argmax() const {
  return static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

LidPosterior LidPosterior::one_hot(int languages, int index) {
  if (index < 0 || index >= languages) {
    throw Error(ErrorCode::kInvalidArgument, "one_hot: index out of range");
  }
  LidPosterior p;
  p.probs.assign(languages, 0.0);
  p.probs[index] = 1.0;
  return p;
}

LidPosterior LidPosterior::uniform(int languages) {
  if (languages < 1) throw Error(ErrorCode::kInvalidArgument, "uniform: no languages");
  LidPosterior p;
  p.probs.assign(languages, 1.0 / languages);
  return p;
}

std::string render_text(const std::vector<int>& nodes, int group, const UmlTable& table) {
  if (table.unit_type(group) == UnitType::kWpm) return decode_group(nodes, group, table);
  std::string bytes;
  std::string out;
  auto flush = [&] {
    std::size_t pos = 0;
    while (pos < bytes.size()) {
      const std::size_t len = utf8_sequence_length(bytes, pos);
      if (len == 0) {
        out += kReplacement;
        ++pos;
      } else {
        out.append(bytes, pos, len);
        pos += len;
      }
    }
    bytes.clear();
  };
  for (int node : nodes) {
    if (node >= table.special_count() && node < table.valid_size(group)) {
      bytes.push_back(static_cast<char>(node - table.special_count()));
    } else {
      flush();
      out += kReplacement;
    }
  }
  flush();
  return out;
}

Hypothesis greedy_decode(const Eigen::MatrixXd& features, const LanguageId& lid,
                         const TransducerModel& model, const UmlTable& table,
                         const DecodeOptions& options) {
  LanguageContext c =
      make_context(features, lid.index, table.group_of_language(lid.code), model, table);
  Hypothesis h;
  h.lid = lid.index;
  for (Eigen::Index t = 0; t < c.enc_proj.rows(); ++t) {
    for (int s = 0;; ++s) {
      const Eigen::RowVectorXd lp =
          model.step_log_probs(c.enc_proj.row(t), pred_state(c, model, h.nodes), c.mask, c.head);
      int best = kBlankNode;
      if (s < options.max_symbols_per_frame) {
        for (int k : c.labels) {
          if (lp[k] > lp[best]) best = k;
        }
      }
      h.score += lp[best];
      if (best == kBlankNode) break;
      h.nodes.push_back(best);
    }
  }
  h.text = render_text(h.nodes, c.group, table);
  return h;
}

std::vector<Hypothesis> beam_decode_hard(const Eigen::MatrixXd& features, const LanguageId& lid,
                                         const TransducerModel& model, const UmlTable& table,
                                         int beam_size, const DecodeOptions& options) {
  std::vector<LanguageContext> contexts;
  contexts.push_back(
      make_context(features, lid.index, table.group_of_language(lid.code), model, table));
  return run_beam(contexts, {0.0}, model, table, beam_size, options);
}

LidPosterior lid_posterior(const Eigen::MatrixXd& features, const TransducerModel& model) {
  const Eigen::VectorXd p = model.lid_posterior(features);
  LidPosterior out;
  out.probs.assign(p.data(), p.data() + p.size());
  out.validate();
  return out;
}

std::vector<Hypothesis> beam_decode_marginal(const Eigen::MatrixXd& features,
                                             const TransducerModel& model,
                                             const UmlTable& table,
                                             const LanguageRegistry& registry, int beam_size,
                                             const LidPosterior& posterior,
                                             const DecodeOptions& options) {
  posterior.validate();
  if (static_cast<int>(posterior.probs.size()) != registry.size() ||
      registry.size() != model.config().num_languages) {
    throw Error(ErrorCode::kInvalidArgument,
                "decoder: posterior, registry and model disagree on the language count");
  }
  std::vector<LanguageContext> contexts;
  std::vector<double> priors;
  for (int z = 0; z < registry.size(); ++z) {
    if (posterior.probs[z] <= 0.0) continue;
    contexts.push_back(make_context(features, z, table.group_of_language(registry.at(z).code),
                                    model, table));
    priors.push_back(std::log(posterior.probs[z]));
  }
  return run_beam(contexts, priors, model, table, beam_size, options);
}

double sequence_log_prob(const Eigen::MatrixXd& features, const std::vector<int>& nodes,
                         int lid, int group, const TransducerModel& model,
                         const UmlTable& table) {
  TransducerExample ex{features, nodes, lid, group};
  return -model.loss(ex, table.valid_mask(group));
}

std::map<std::string, double> exhaustive_marginal_scores(const Eigen::MatrixXd& features,
                                                         const TransducerModel& model,
                                                         const UmlTable& table,
                                                         const LanguageRegistry& registry,
                                                         const LidPosterior& posterior,
                                                         int max_labels) {
  posterior.validate();
  if (static_cast<int>(posterior.probs.size()) != registry.size()) {
    throw Error(ErrorCode::kInvalidArgument, "decoder: posterior and registry sizes differ");
  }
  std::map<std::string, double> scores;
  for (int z = 0; z < registry.size(); ++z) {
    if (posterior.probs[z] <= 0.0) continue;
    const double prior = std::log(posterior.probs[z]);
    const int group = table.group_of_language(registry.at(z).code);
    const std::vector<int> labels = emittable_nodes(table, group);
    std::vector<int> seq;
    // Depth-first over all label sequences of length <= max_labels.
    auto visit = [&](auto&& self) -> void {
      const double lp = sequence_log_prob(features, seq, z, group, model, table);
      const std::string text = render_text(seq, group, table);
      auto [it, inserted] = scores.emplace(text, prior + lp);
      if (!inserted) it->second = log_add(it->second, prior + lp);
      if (static_cast<int>(seq.size()) == max_labels) return;
      for (int k : labels) {
        seq.push_back(k);
        self(self);
        seq.pop_back();
      }
    };
    visit(visit);
  }
  return scores;
}

}  // namespace uml
