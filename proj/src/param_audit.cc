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


#include "uml/param_audit.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "json.hpp"

#include "uml/error.h"

namespace uml {

std::string_view prednet_type_name(PrednetType type) {
  return type == PrednetType::kLstm ? "lstm" : "embedding";
}

PrednetType parse_prednet_type(std::string_view name) {
  if (name == "embedding") return PrednetType::kEmbedding;
  if (name == "lstm") return PrednetType::kLstm;
  throw Error(ErrorCode::kInvalidArgument, "unknown prediction network: " + std::string(name));
}

DecoderArch paper_arch(std::string name, std::int64_t output, PrednetType prednet,
                       JointType joint, bool lid_projections) {
  DecoderArch a;
  a.name = std::move(name);
  a.output = output;
  a.prednet = prednet;
  a.joint = joint;
  a.lid_projections = lid_projections;
  a.bp_extra = joint == JointType::kBilinear ? kPaperBpExtra : 0;
  a.residual = paper_residual();
  return a;
}

DecoderArch desk_arch(const ModelConfig& config) {
  DecoderArch a;
  a.name = "desk";
  a.hidden = config.hidden;
  a.output = config.vocab_size;
  a.joint = config.joint;
  a.context = kContextSize;
  a.lid_projections = config.lid_to_prednet;
  a.languages = config.num_languages;
  a.heads = config.num_heads;
  return a;
}

ParamReport count_params(const DecoderArch& a) {
  if (a.hidden < 0 || a.output < 0 || a.languages < 0 || a.heads < 1 || a.context < 1 ||
      a.bp_extra < 0 || a.residual < 0 || a.lstm_cell < 0 || a.lstm_layers < 0) {
    throw Error(ErrorCode::kInvalidArgument, "count_params: negative size in " + a.name);
  }
  const std::int64_t D = a.hidden;
  const std::int64_t O = a.output;
  ParamReport r;
  if (a.prednet == PrednetType::kEmbedding) {
    r.embeddings = a.heads * a.context * O * D;
    r.merge_projection = a.context * D * D;
  } else {
    // One embedding table feeding a stack of projected LSTM layers.
    r.embeddings = a.heads * O * D;
    const std::int64_t c = a.lstm_cell;
    r.lstm_layers = a.lstm_layers * (4 * c * (D + D) + 4 * c + c * D);
  }
  r.side_projections = 2 * D * D;
  r.joint_fusion = D + a.bp_extra;
  r.output_layer = a.heads * D * O;
  if (a.lid_projections) r.lid_projections = a.context * a.languages * D;
  r.residual = a.residual;
  return r;
}

ParamDelta compare(const ParamReport& a, const ParamReport& b) {
  ParamDelta d;
  d.delta = a.total() - b.total();
  const std::int64_t larger = std::max(a.total(), b.total());
  if (larger > 0) d.fraction = std::abs(static_cast<double>(d.delta)) / static_cast<double>(larger);
  return d;
}

ParamComparison uml_comparison(std::int64_t hidden, const std::vector<std::int64_t>& sizes) {
  if (sizes.empty()) throw Error(ErrorCode::kInvalidArgument, "uml_comparison: no sizes");
  ParamComparison c;
  const std::int64_t largest = *std::max_element(sizes.begin(), sizes.end());
  const std::int64_t sum = std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
  c.uml_params = hidden * largest;
  c.pooled_params = hidden * sum;
  c.separate_params = hidden * sum;
  return c;
}

std::int64_t fit_residual(const std::vector<ParamAnchor>& anchors, std::int64_t hidden) {
  if (anchors.empty()) throw Error(ErrorCode::kInvalidArgument, "fit_residual: no anchors");
  double sum = 0.0;
  for (const auto& anchor : anchors) {
    DecoderArch a;
    a.hidden = hidden;
    a.output = anchor.output;
    sum += static_cast<double>(anchor.total - count_params(a).total());
  }
  return std::llround(sum / static_cast<double>(anchors.size()));
}

const std::vector<ParamAnchor>& paper_anchors() {
  static const std::vector<ParamAnchor> anchors = {
      {8192, 18'100'000}, {6144, 14'200'000}, {4096, 10'200'000},
      {2048, 6'300'000},  {384, 3'100'000},
  };
  return anchors;
}

std::int64_t paper_residual() {
  static const std::int64_t c = fit_residual(paper_anchors());
  return c;
}

std::vector<Table2Row> table2_rows() {
  struct Spec {
    const char* system;
    std::int64_t output;
    PrednetType prednet;
    JointType joint;
    bool lid;
    std::int64_t published;
  };
  constexpr auto E = PrednetType::kEmbedding;
  constexpr auto A = JointType::kAdditive;
  constexpr auto B = JointType::kBilinear;
  const Spec specs[] = {
      {"B0 8kG1", 8192, E, A, false, 18'100'000},
      {"B1 8kG1 LSTM", 8192, PrednetType::kLstm, A, false, 26'500'000},
      {"B2 Bytes", 384, E, A, false, 3'100'000},
      {"U0 6kG11", 6144, E, A, false, 14'200'000},
      {"U1 6kG7", 6144, E, A, false, 14'200'000},
      {"U2 6kG5", 6144, E, A, false, 14'200'000},
      {"U3 6kG6", 6144, E, A, false, 14'200'000},
      {"U4 6kG6 BP", 6144, E, B, false, 15'300'000},
      {"U5 4kG6", 4096, E, A, false, 10'200'000},
      {"U6 4kG6 BP", 4096, E, B, false, 11'300'000},
      {"U7 4kG6 LID", 4096, E, A, true, 10'200'000},
      {"U8 2kG6", 2048, E, A, false, 6'300'000},
      {"U9 1kG5Mix BP", 1024, E, B, false, 4'700'000},
      {"U10 512G5Mix BP", 512, E, B, false, 3'700'000},
  };
  std::vector<Table2Row> rows;
  for (const auto& s : specs) {
    Table2Row row;
    row.system = s.system;
    row.arch = paper_arch(s.system, s.output, s.prednet, s.joint, s.lid);
    row.published = s.published;
    row.report = count_params(row.arch);
    row.relative_error = static_cast<double>(row.report.total() - s.published) /
                         static_cast<double>(s.published);
    row.matches = std::abs(row.relative_error) <= 0.05;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string millions(std::int64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3fM", static_cast<double>(n) / 1e6);
  return buf;
}

}  // namespace

std::string format_report_table(const std::vector<Table2Row>& rows) {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof(line), "%-16s %6s %-9s %-8s %10s %9s %9s %9s %10s %9s %10s %9s %10s %10s %8s %s\n",
                "system", "O", "prednet", "joint", "embed", "merge", "side", "fusion", "output",
                "lid", "lstm", "resid", "total", "published", "err%", "status");
  out += line;
  for (const auto& r : rows) {
    const ParamReport& p = r.report;
    std::string published = r.published > 0 ? millions(r.published) : "-";
    std::string err = "-";
    std::string status = "-";
    if (r.published > 0) {
      char e[32];
      std::snprintf(e, sizeof(e), "%+.2f", 100.0 * r.relative_error);
      err = e;
      status = r.matches ? "ok" : "MISMATCH";
    }
    std::snprintf(line, sizeof(line),
                  "%-16s %6lld %-9s %-8s %10s %9s %9s %9s %10s %9s %10s %9s %10s %10s %8s %s\n",
                  r.system.c_str(), static_cast<long long>(r.arch.output),
                  std::string(prednet_type_name(r.arch.prednet)).c_str(),
                  std::string(joint_type_name(r.arch.joint)).c_str(),
                  millions(p.embeddings).c_str(), millions(p.merge_projection).c_str(),
                  millions(p.side_projections).c_str(), millions(p.joint_fusion).c_str(),
                  millions(p.output_layer).c_str(), millions(p.lid_projections).c_str(),
                  millions(p.lstm_layers).c_str(), millions(p.residual).c_str(),
                  millions(p.total()).c_str(), published.c_str(), err.c_str(), status.c_str());
    out += line;
  }
  return out;
}

std::string report_json(const std::vector<Table2Row>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    const ParamReport& p = r.report;
    nlohmann::ordered_json j;
    j["system"] = r.system;
    j["hidden"] = r.arch.hidden;
    j["output"] = r.arch.output;
    j["prednet"] = prednet_type_name(r.arch.prednet);
    j["joint"] = joint_type_name(r.arch.joint);
    j["lid_projections"] = r.arch.lid_projections;
    j["heads"] = r.arch.heads;
    j["blocks"] = {{"embeddings", p.embeddings},
                   {"merge_projection", p.merge_projection},
                   {"side_projections", p.side_projections},
                   {"joint_fusion", p.joint_fusion},
                   {"output_layer", p.output_layer},
                   {"lid_projections", p.lid_projections},
                   {"lstm_layers", p.lstm_layers},
                   {"residual", p.residual}};
    j["total"] = p.total();
    if (r.published > 0) {
      j["published"] = r.published;
      j["relative_error"] = r.relative_error;
      j["matches"] = r.matches;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<DecoderArch> parse_arch_configs(std::string_view json) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kSchema, "configs: malformed JSON");
  if (j.is_object() && j.contains("configs")) j = j["configs"];
  if (!j.is_array()) throw Error(ErrorCode::kSchema, "configs: expected an array of architectures");
  std::vector<DecoderArch> out;
  try {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& c = j[i];
      if (!c.is_object()) throw Error(ErrorCode::kSchema, "configs: entry " + std::to_string(i) + " is not an object");
      for (const auto& [key, value] : c.items()) {
        static const char* known[] = {"name", "hidden", "output", "prednet", "joint", "context",
                                      "lid_projections", "languages", "heads", "bp_extra",
                                      "residual", "lstm_cell", "lstm_layers", "paper"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known)) {
          throw Error(ErrorCode::kSchema, "configs: entry " + std::to_string(i) +
                                              " has unknown field '" + key + "'");
        }
      }
      DecoderArch a;
      a.name = c.value("name", "config" + std::to_string(i));
      a.output = c.value("output", a.output);
      if (c.contains("prednet")) a.prednet = parse_prednet_type(c["prednet"].get<std::string>());
      if (c.contains("joint")) a.joint = parse_joint_type(c["joint"].get<std::string>());
      a.lid_projections = c.value("lid_projections", a.lid_projections);
      if (c.value("paper", false)) {
        a = paper_arch(a.name, a.output, a.prednet, a.joint, a.lid_projections);
      }
      a.hidden = c.value("hidden", a.hidden);
      a.context = c.value("context", a.context);
      a.languages = c.value("languages", a.languages);
      a.heads = c.value("heads", a.heads);
      a.bp_extra = c.value("bp_extra", a.bp_extra);
      a.residual = c.value("residual", a.residual);
      a.lstm_cell = c.value("lstm_cell", a.lstm_cell);
      a.lstm_layers = c.value("lstm_layers", a.lstm_layers);
      out.push_back(std::move(a));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("configs: ") + e.what());
  }
  return out;
}

}  // namespace uml
