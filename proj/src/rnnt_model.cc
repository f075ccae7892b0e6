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

#include "uml/rnnt_model.h"

#include <array>
#include <cmath>

#include "json.hpp"

#include "uml/error.h"
#include "uml/rng.h"
#include "uml/vocab.h"

namespace uml {

namespace {

constexpr int kCheckpointVersion = 1;

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

struct EncoderTrace {
  std::vector<MatrixXd> inputs;   // per layer, T x in
  std::vector<MatrixXd> outputs;  // per layer, T x D
};

}  // namespace

std::string_view joint_type_name(JointType type) {
  return type == JointType::kBilinear ? "bilinear" : "additive";
}

JointType parse_joint_type(std::string_view name) {
  if (name == "additive") return JointType::kAdditive;
  if (name == "bilinear" || name == "bp") return JointType::kBilinear;
  throw Error(ErrorCode::kInvalidArgument, "unknown joint type: " + std::string(name));
}

void ModelConfig::validate() const {
  if (feat_dim < 1 || stack_frames < 1 || hidden < 1 || vocab_size < kSpecialCount + 1 ||
      num_languages < 1 || num_heads < 1 || encoder_layers < 1) {
    throw Error(ErrorCode::kInvalidArgument, "model config: dimensions must be positive");
  }
}

// ---------------------------------------------------------------------------
// ParamSet

std::int64_t ParamSet::count() const {
  std::int64_t n = 0;
  for (const auto& v : values) n += v.size();
  return n;
}

ParamSet ParamSet::zeros_like() const {
  ParamSet z;
  z.names = names;
  for (const auto& v : values) z.values.push_back(MatrixXd::Zero(v.rows(), v.cols()));
  return z;
}

void ParamSet::set_zero() {
  for (auto& v : values) v.setZero();
}

void ParamSet::add(const ParamSet& other) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
}

double ParamSet::squared_norm() const {
  double s = 0.0;
  for (const auto& v : values) s += v.squaredNorm();
  return s;
}

int ParamSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Construction

namespace {

ParamLayout make_layout(const ModelConfig& c, ParamSet& p) {
  ParamLayout layout;
  auto add = [&](std::string name, int rows, int cols) {
    p.names.push_back(std::move(name));
    p.values.push_back(MatrixXd::Zero(rows, cols));
    return static_cast<int>(p.values.size() - 1);
  };
  const int D = c.hidden;
  for (int k = 0; k < c.encoder_layers; ++k) {
    const int in = k == 0 ? c.encoder_input_dim() : D;
    const std::string prefix = "encoder." + std::to_string(k) + ".";
    layout.enc_input.push_back(add(prefix + "input", D, in));
    layout.enc_recurrent.push_back(add(prefix + "recurrent", D, D));
    layout.enc_bias.push_back(add(prefix + "bias", D, 1));
  }
  for (int h = 0; h < c.num_heads; ++h) {
    const std::string suffix = c.num_heads > 1 ? ".head" + std::to_string(h) : "";
    layout.embed1.push_back(add("prednet.embed1" + suffix, c.vocab_size, D));
    layout.embed2.push_back(add("prednet.embed2" + suffix, c.vocab_size, D));
  }
  if (c.lid_to_prednet) {
    layout.lid_proj1 = add("prednet.lid_proj1", c.num_languages, D);
    layout.lid_proj2 = add("prednet.lid_proj2", c.num_languages, D);
  }
  layout.merge = add("prednet.merge", D, 2 * D);
  layout.proj_enc = add("joint.proj_enc", D, D);
  layout.proj_pred = add("joint.proj_pred", D, D);
  layout.joint_bias = add("joint.bias", D, 1);
  for (int h = 0; h < c.num_heads; ++h) {
    const std::string suffix = c.num_heads > 1 ? ".head" + std::to_string(h) : "";
    layout.output.push_back(add("output" + suffix, c.vocab_size, D));
  }
  if (c.lid_head) {
    layout.lid_head = add("lid_head.weight", c.num_languages, D);
    layout.lid_head_bias = add("lid_head.bias", c.num_languages, 1);
  }
  return layout;
}

void fill_normal(MatrixXd& m, Rng& rng, double scale) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = scale * rng.normal();
  }
}

}  // namespace

TransducerModel::TransducerModel(ModelConfig config, std::uint64_t seed)
    : config_(config) {
  config_.validate();
  layout_ = make_layout(config_, params_);
  Rng rng(seed);
  const double D = config_.hidden;
  auto& v = params_.values;
  for (int k = 0; k < config_.encoder_layers; ++k) {
    fill_normal(v[layout_.enc_input[k]], rng, 1.0 / std::sqrt(double(v[layout_.enc_input[k]].cols())));
    fill_normal(v[layout_.enc_recurrent[k]], rng, 0.5 / std::sqrt(D));
  }
  for (int h = 0; h < config_.num_heads; ++h) {
    fill_normal(v[layout_.embed1[h]], rng, 1.0 / std::sqrt(D));
    fill_normal(v[layout_.embed2[h]], rng, 1.0 / std::sqrt(D));
  }
  if (config_.lid_to_prednet) {
    fill_normal(v[layout_.lid_proj1], rng, 1.0 / std::sqrt(D));
    fill_normal(v[layout_.lid_proj2], rng, 1.0 / std::sqrt(D));
  }
  fill_normal(v[layout_.merge], rng, 1.0 / std::sqrt(2.0 * D));
  fill_normal(v[layout_.proj_enc], rng, 1.0 / std::sqrt(D));
  fill_normal(v[layout_.proj_pred], rng, 1.0 / std::sqrt(D));
  for (int h = 0; h < config_.num_heads; ++h) {
    fill_normal(v[layout_.output[h]], rng, 1.0 / std::sqrt(D));
  }
  // The LID head starts at zero, i.e. a uniform posterior.
}

// ---------------------------------------------------------------------------
// Encoder

namespace {

EncoderTrace run_encoder(const ModelConfig& c, const ParamLayout& layout, const ParamSet& p,
                         MatrixXd inputs) {
  EncoderTrace trace;
  const Eigen::Index T = inputs.rows();
  for (int k = 0; k < c.encoder_layers; ++k) {
    const MatrixXd& w_in = p.values[layout.enc_input[k]];
    const MatrixXd& w_rec = p.values[layout.enc_recurrent[k]];
    const MatrixXd& bias = p.values[layout.enc_bias[k]];
    MatrixXd pre = inputs * w_in.transpose();
    pre.rowwise() += bias.col(0).transpose();
    MatrixXd out(T, c.hidden);
    for (Eigen::Index t = 0; t < T; ++t) {
      if (t > 0) pre.row(t) += out.row(t - 1) * w_rec.transpose();
      out.row(t) = pre.row(t).array().tanh();
    }
    trace.inputs.push_back(std::move(inputs));
    inputs = out;
    trace.outputs.push_back(std::move(out));
  }
  return trace;
}

void backprop_encoder(const ModelConfig& c, const ParamLayout& layout, const ParamSet& p,
                      const EncoderTrace& trace, MatrixXd d_out, ParamSet& grads) {
  const Eigen::Index T = d_out.rows();
  for (int k = c.encoder_layers - 1; k >= 0; --k) {
    const MatrixXd& w_in = p.values[layout.enc_input[k]];
    const MatrixXd& w_rec = p.values[layout.enc_recurrent[k]];
    const MatrixXd& h = trace.outputs[k];
    MatrixXd d_pre(T, c.hidden);
    RowVectorXd carry = RowVectorXd::Zero(c.hidden);
    for (Eigen::Index t = T - 1; t >= 0; --t) {
      const RowVectorXd g = d_out.row(t) + carry;
      d_pre.row(t) = g.array() * (1.0 - h.row(t).array().square());
      carry = d_pre.row(t) * w_rec;
    }
    if (T > 1) {
      grads.values[layout.enc_recurrent[k]].noalias() +=
          d_pre.bottomRows(T - 1).transpose() * h.topRows(T - 1);
    }
    grads.values[layout.enc_input[k]].noalias() += d_pre.transpose() * trace.inputs[k];
    grads.values[layout.enc_bias[k]].col(0) += d_pre.colwise().sum().transpose();
    if (k > 0) d_out = d_pre * w_in;
  }
}

}  // namespace

MatrixXd TransducerModel::encoder_inputs(const MatrixXd& features,
                                         std::optional<int> lid) const {
  if (features.cols() != config_.feat_dim || features.rows() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "encoder: features must be T x feat_dim, T >= 1");
  }
  const Eigen::Index T = features.rows();
  const int F = config_.feat_dim;
  MatrixXd x = MatrixXd::Zero(T, config_.encoder_input_dim());
  for (Eigen::Index t = 0; t < T; ++t) {
    for (int s = 0; s < config_.stack_frames; ++s) {
      if (t - s >= 0) x.block(t, s * F, 1, F) = features.row(t - s);
    }
    if (lid) {
      if (*lid < 0 || *lid >= config_.num_languages) {
        throw Error(ErrorCode::kInvalidArgument, "encoder: language index out of range");
      }
      x(t, config_.stack_frames * F + *lid) = 1.0;
    }
  }
  return x;
}

MatrixXd TransducerModel::encoder_forward(const MatrixXd& features,
                                          std::optional<int> lid) const {
  return run_encoder(config_, layout_, params_, encoder_inputs(features, lid)).outputs.back();
}

// ---------------------------------------------------------------------------
// Prediction network, joint, output

namespace {

// Concatenated slot embeddings [e1 + lid1, e2 + lid2].
RowVectorXd context_embedding(const ModelConfig& c, const ParamLayout& layout,
                              const ParamSet& p, int prev1, int prev2, int lid, int head) {
  const int D = c.hidden;
  for (int node : {prev1, prev2}) {
    if (node < 0 || node >= c.vocab_size) {
      throw Error(ErrorCode::kInvalidArgument,
                  "prednet: node " + std::to_string(node) + " out of range");
    }
  }
  RowVectorXd e(2 * D);
  e.head(D) = p.values[layout.embed1[head]].row(prev1);
  e.tail(D) = p.values[layout.embed2[head]].row(prev2);
  if (c.lid_to_prednet) {
    e.head(D) += p.values[layout.lid_proj1].row(lid);
    e.tail(D) += p.values[layout.lid_proj2].row(lid);
  }
  return e;
}

}  // namespace

RowVectorXd TransducerModel::prednet_forward(std::span<const int> prev_nodes, int lid,
                                             int head) const {
  if (prev_nodes.size() > static_cast<std::size_t>(kContextSize)) {
    prev_nodes = prev_nodes.first(kContextSize);
  }
  const int prev1 = prev_nodes.size() > 0 ? prev_nodes[0] : kPadNode;
  const int prev2 = prev_nodes.size() > 1 ? prev_nodes[1] : kPadNode;
  const RowVectorXd e = context_embedding(config_, layout_, params_, prev1, prev2, lid, head);
  return e * params_.values[layout_.merge].transpose();
}

RowVectorXd TransducerModel::joint_forward(const Eigen::Ref<const RowVectorXd>& acoustic,
                                           const Eigen::Ref<const RowVectorXd>& text) const {
  const RowVectorXd a = acoustic * params_.values[layout_.proj_enc].transpose();
  const RowVectorXd t = text * params_.values[layout_.proj_pred].transpose();
  RowVectorXd pre = a + t + params_.values[layout_.joint_bias].col(0).transpose();
  if (config_.joint == JointType::kBilinear) pre += a.cwiseProduct(t);
  return pre.array().tanh();
}

RowVectorXd TransducerModel::output_logits(const Eigen::Ref<const RowVectorXd>& joint,
                                           const std::vector<bool>& mask, int head) const {
  const RowVectorXd logits = joint * params_.values[layout_.output[head]].transpose();
  return masked_log_softmax(logits, mask);
}

MatrixXd TransducerModel::projected_encoder(const MatrixXd& features, int lid) const {
  return encoder_forward(features, lid) * params_.values[layout_.proj_enc].transpose();
}

RowVectorXd TransducerModel::projected_prednet(int prev1, int prev2, int lid, int head) const {
  const std::array<int, 2> ctx = {prev1, prev2};
  return prednet_forward(ctx, lid, head) * params_.values[layout_.proj_pred].transpose();
}

RowVectorXd TransducerModel::step_log_probs(const Eigen::Ref<const RowVectorXd>& enc_proj,
                                            const Eigen::Ref<const RowVectorXd>& pred_proj,
                                            const std::vector<bool>& mask, int head) const {
  RowVectorXd pre = enc_proj + pred_proj + params_.values[layout_.joint_bias].col(0).transpose();
  if (config_.joint == JointType::kBilinear) pre += enc_proj.cwiseProduct(pred_proj);
  const RowVectorXd z = pre.array().tanh();
  return output_logits(z, mask, head);
}

// ---------------------------------------------------------------------------
// Full lattice forward / backward

namespace {

struct LatticeForward {
  EncoderTrace encoder;
  MatrixXd enc_proj;   // T x D
  MatrixXd context;    // (U+1) x 2D
  MatrixXd text;       // (U+1) x D
  MatrixXd pred_proj;  // (U+1) x D
  RowMatrix joint;     // T(U+1) x D
  RowMatrix logits;    // T(U+1) x V
  std::vector<int> prev1, prev2;
};

LatticeForward lattice_forward(const TransducerModel& m, const TransducerExample& ex) {
  const ModelConfig& c = m.config();
  const ParamLayout& layout = m.layout();
  const ParamSet& p = m.params();
  const int head = m.head_for_group(ex.group);
  LatticeForward f;
  f.encoder = run_encoder(c, layout, p, m.encoder_inputs(ex.features, ex.lid));
  const MatrixXd& acoustic = f.encoder.outputs.back();
  f.enc_proj = acoustic * p.values[layout.proj_enc].transpose();

  const int U = static_cast<int>(ex.target.size());
  const int D = c.hidden;
  f.context.resize(U + 1, 2 * D);
  for (int u = 0; u <= U; ++u) {
    const int prev1 = u >= 1 ? ex.target[u - 1] : kPadNode;
    const int prev2 = u >= 2 ? ex.target[u - 2] : kPadNode;
    f.prev1.push_back(prev1);
    f.prev2.push_back(prev2);
    f.context.row(u) = context_embedding(c, layout, p, prev1, prev2, ex.lid, head);
  }
  f.text = f.context * p.values[layout.merge].transpose();
  f.pred_proj = f.text * p.values[layout.proj_pred].transpose();

  const Eigen::Index T = ex.features.rows();
  const RowVectorXd bias = p.values[layout.joint_bias].col(0).transpose();
  const bool bilinear = c.joint == JointType::kBilinear;
  f.joint.resize(T * (U + 1), D);
  for (Eigen::Index t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      RowVectorXd pre = f.enc_proj.row(t) + f.pred_proj.row(u) + bias;
      if (bilinear) pre += f.enc_proj.row(t).cwiseProduct(f.pred_proj.row(u));
      f.joint.row(t * (U + 1) + u) = pre.array().tanh();
    }
  }
  f.logits.noalias() = f.joint * p.values[layout.output[head]].transpose();
  return f;
}

}  // namespace

RowMatrix TransducerModel::lattice_logits(const TransducerExample& example) const {
  return lattice_forward(*this, example).logits;
}

double TransducerModel::loss(const TransducerExample& example,
                             const std::vector<bool>& mask) const {
  const RowMatrix logits = lattice_logits(example);
  Lattice lat = make_lattice(logits, static_cast<int>(example.features.rows()),
                             static_cast<int>(example.target.size()), mask);
  return rnnt_forward_backward(lat, example.target);
}

TransducerModel::Losses TransducerModel::accumulate_gradients(const TransducerExample& ex,
                                                              const std::vector<bool>& mask,
                                                              double lid_weight,
                                                              ParamSet& grads) const {
  const ModelConfig& c = config_;
  const ParamSet& p = params_;
  const int head = head_for_group(ex.group);
  const int D = c.hidden;
  const int T = static_cast<int>(ex.features.rows());
  const int U = static_cast<int>(ex.target.size());

  LatticeForward f = lattice_forward(*this, ex);
  RnntLossResult r = rnnt_loss(f.logits, T, ex.target, mask);
  Losses losses;
  losses.rnnt = r.loss;

  const MatrixXd& w_out = p.values[layout_.output[head]];
  grads.values[layout_.output[head]].noalias() += r.grad_logits.transpose() * f.joint;
  RowMatrix d_joint = r.grad_logits * w_out;
  d_joint.array() *= 1.0 - f.joint.array().square();  // now d pre-activation

  MatrixXd d_enc_proj = MatrixXd::Zero(T, D);
  MatrixXd d_pred_proj = MatrixXd::Zero(U + 1, D);
  const bool bilinear = c.joint == JointType::kBilinear;
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      const auto d = d_joint.row(t * (U + 1) + u);
      if (bilinear) {
        d_enc_proj.row(t).array() += d.array() * (1.0 + f.pred_proj.row(u).array());
        d_pred_proj.row(u).array() += d.array() * (1.0 + f.enc_proj.row(t).array());
      } else {
        d_enc_proj.row(t) += d;
        d_pred_proj.row(u) += d;
      }
    }
  }
  grads.values[layout_.joint_bias].col(0) += d_joint.colwise().sum().transpose();

  const MatrixXd& acoustic = f.encoder.outputs.back();
  grads.values[layout_.proj_enc].noalias() += d_enc_proj.transpose() * acoustic;
  grads.values[layout_.proj_pred].noalias() += d_pred_proj.transpose() * f.text;
  const MatrixXd d_text = d_pred_proj * p.values[layout_.proj_pred];
  grads.values[layout_.merge].noalias() += d_text.transpose() * f.context;
  const MatrixXd d_context = d_text * p.values[layout_.merge];
  for (int u = 0; u <= U; ++u) {
    grads.values[layout_.embed1[head]].row(f.prev1[u]) += d_context.row(u).head(D);
    grads.values[layout_.embed2[head]].row(f.prev2[u]) += d_context.row(u).tail(D);
    if (c.lid_to_prednet) {
      grads.values[layout_.lid_proj1].row(ex.lid) += d_context.row(u).head(D);
      grads.values[layout_.lid_proj2].row(ex.lid) += d_context.row(u).tail(D);
    }
  }
  const MatrixXd d_acoustic = d_enc_proj * p.values[layout_.proj_enc];
  backprop_encoder(c, layout_, p, f.encoder, d_acoustic, grads);

  if (c.lid_head && lid_weight > 0.0) {
    EncoderTrace trace = run_encoder(c, layout_, p, encoder_inputs(ex.features, std::nullopt));
    const MatrixXd& h = trace.outputs.back();
    const VectorXd pooled = h.colwise().mean().transpose();
    VectorXd logits = p.values[layout_.lid_head] * pooled + p.values[layout_.lid_head_bias].col(0);
    const double max = logits.maxCoeff();
    VectorXd prob = (logits.array() - max).exp();
    prob /= prob.sum();
    losses.lid = -std::log(prob[ex.lid]);
    VectorXd d_logits = prob;
    d_logits[ex.lid] -= 1.0;
    d_logits *= lid_weight;
    grads.values[layout_.lid_head].noalias() += d_logits * pooled.transpose();
    grads.values[layout_.lid_head_bias].col(0) += d_logits;
    const RowVectorXd d_pooled = (p.values[layout_.lid_head].transpose() * d_logits).transpose();
    MatrixXd d_h = d_pooled.replicate(T, 1) / static_cast<double>(T);
    backprop_encoder(c, layout_, p, trace, std::move(d_h), grads);
  }
  return losses;
}

VectorXd TransducerModel::lid_posterior(const MatrixXd& features) const {
  if (!config_.lid_head) {
    throw Error(ErrorCode::kInvalidArgument, "lid_posterior: model has no LID head");
  }
  const MatrixXd h = encoder_forward(features, std::nullopt);
  const VectorXd pooled = h.colwise().mean().transpose();
  VectorXd logits = params_.values[layout_.lid_head] * pooled +
                    params_.values[layout_.lid_head_bias].col(0);
  VectorXd prob = (logits.array() - logits.maxCoeff()).exp();
  return prob / prob.sum();
}

DecoderBlockCounts TransducerModel::decoder_block_counts() const {
  DecoderBlockCounts c;
  const auto& v = params_.values;
  for (int h = 0; h < config_.num_heads; ++h) {
    c.embeddings += v[layout_.embed1[h]].size() + v[layout_.embed2[h]].size();
    c.output_layer += v[layout_.output[h]].size();
  }
  c.merge_projection = v[layout_.merge].size();
  c.side_projections = v[layout_.proj_enc].size() + v[layout_.proj_pred].size();
  c.joint_fusion = v[layout_.joint_bias].size();
  if (config_.lid_to_prednet) {
    c.lid_projections = v[layout_.lid_proj1].size() + v[layout_.lid_proj2].size();
  }
  return c;
}

// ---------------------------------------------------------------------------
// Checkpoints

std::string TransducerModel::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = kCheckpointVersion;
  nlohmann::ordered_json jc;
  jc["feat_dim"] = config_.feat_dim;
  jc["stack_frames"] = config_.stack_frames;
  jc["hidden"] = config_.hidden;
  jc["vocab_size"] = config_.vocab_size;
  jc["num_languages"] = config_.num_languages;
  jc["num_heads"] = config_.num_heads;
  jc["encoder_layers"] = config_.encoder_layers;
  jc["joint"] = joint_type_name(config_.joint);
  jc["lid_to_prednet"] = config_.lid_to_prednet;
  jc["lid_head"] = config_.lid_head;
  j["config"] = std::move(jc);
  auto blocks = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const MatrixXd& m = params_.values[i];
    nlohmann::ordered_json jb;
    jb["name"] = params_.names[i];
    jb["rows"] = m.rows();
    jb["cols"] = m.cols();
    std::vector<double> data;
    data.reserve(m.size());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index col = 0; col < m.cols(); ++col) data.push_back(m(r, col));
    }
    jb["data"] = std::move(data);
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j.dump();
}

TransducerModel TransducerModel::from_json(std::string_view json) {
  nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kSchema, "checkpoint: malformed JSON");
  }
  try {
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw Error(ErrorCode::kVersionMismatch, "checkpoint: unsupported version");
    }
    const auto& jc = j.at("config");
    ModelConfig c;
    c.feat_dim = jc.at("feat_dim").get<int>();
    c.stack_frames = jc.at("stack_frames").get<int>();
    c.hidden = jc.at("hidden").get<int>();
    c.vocab_size = jc.at("vocab_size").get<int>();
    c.num_languages = jc.at("num_languages").get<int>();
    c.num_heads = jc.at("num_heads").get<int>();
    c.encoder_layers = jc.at("encoder_layers").get<int>();
    c.joint = parse_joint_type(jc.at("joint").get<std::string>());
    c.lid_to_prednet = jc.at("lid_to_prednet").get<bool>();
    c.lid_head = jc.at("lid_head").get<bool>();
    c.validate();
    TransducerModel m;
    m.config_ = c;
    m.layout_ = make_layout(c, m.params_);
    const auto& blocks = j.at("blocks");
    if (blocks.size() != m.params_.size()) {
      throw Error(ErrorCode::kSchema, "checkpoint: block count disagrees with config");
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto& jb = blocks[i];
      MatrixXd& dst = m.params_.values[i];
      if (jb.at("name").get<std::string>() != m.params_.names[i] ||
          jb.at("rows").get<Eigen::Index>() != dst.rows() ||
          jb.at("cols").get<Eigen::Index>() != dst.cols()) {
        throw Error(ErrorCode::kSchema, "checkpoint: block " + m.params_.names[i] +
                                            " has an unexpected name or shape");
      }
      const auto data = jb.at("data").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(data.size()) != dst.size()) {
        throw Error(ErrorCode::kSchema, "checkpoint: truncated block " + m.params_.names[i]);
      }
      std::size_t k = 0;
      for (Eigen::Index r = 0; r < dst.rows(); ++r) {
        for (Eigen::Index col = 0; col < dst.cols(); ++col) dst(r, col) = data[k++];
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("checkpoint: ") + e.what());
  }
}

}  // namespace uml
