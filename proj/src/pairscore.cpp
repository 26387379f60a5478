#include "graphdr/pairscore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "graphdr/error.hpp"
#include "graphdr/metrics.hpp"
#include "graphdr/simd.hpp"
#include "graphdr/skipgram.hpp"

namespace graphdr {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_number(const std::string& text, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw Error(Errc::MalformedInput, where + ": '" + text + "' is not a number");
  }
  return v;
}

}  // namespace

FeatureMode parse_feature_mode(std::string_view text) {
  if (text == "fp") return FeatureMode::FP;
  if (text == "dr") return FeatureMode::DR;
  if (text == "fp+dr") return FeatureMode::FPDR;
  throw Error(Errc::InvalidArgument,
              "unknown feature mode '" + std::string(text) + "' (expected fp, dr or fp+dr)");
}

std::string_view feature_mode_name(FeatureMode mode) noexcept {
  switch (mode) {
    case FeatureMode::FP:
      return "fp";
    case FeatureMode::DR:
      return "dr";
    case FeatureMode::FPDR:
      return "fp+dr";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Feature sets

void DrugFeatureSet::set_fingerprint(const std::string& drug_id, std::vector<double> x) {
  if (fingerprint_dim_ != 0 && x.size() != fingerprint_dim_) {
    throw Error(Errc::DimensionMismatch, "fingerprint for '" + drug_id + "' has length " +
                                             std::to_string(x.size()) + ", expected " +
                                             std::to_string(fingerprint_dim_));
  }
  fingerprint_dim_ = x.size();
  drugs_[drug_id].fingerprint = std::move(x);
}

void DrugFeatureSet::set_embedding(const std::string& drug_id, std::vector<double> phi) {
  if (embedding_dim_ != 0 && phi.size() != embedding_dim_) {
    throw Error(Errc::DimensionMismatch, "embedding for '" + drug_id + "' has dimension " +
                                             std::to_string(phi.size()) + ", expected " +
                                             std::to_string(embedding_dim_));
  }
  embedding_dim_ = phi.size();
  drugs_[drug_id].embedding = std::move(phi);
}

const DrugFeatures& DrugFeatureSet::at(const std::string& drug_id) const {
  auto it = drugs_.find(drug_id);
  if (it == drugs_.end()) throw Error(Errc::UnknownDrug, "unknown drug '" + drug_id + "'");
  return it->second;
}

std::vector<std::string> DrugFeatureSet::ids() const {
  std::vector<std::string> out;
  out.reserve(drugs_.size());
  for (const auto& entry : drugs_) out.push_back(entry.first);
  return out;
}

ContextFeatureSet ContextFeatureSet::one_hot(std::span<const std::string> context_ids) {
  ContextFeatureSet set;
  for (std::size_t i = 0; i < context_ids.size(); ++i) {
    std::vector<double> x(context_ids.size(), 0.0);
    x[i] = 1.0;
    set.set(context_ids[i], std::move(x));
  }
  return set;
}

ContextFeatureSet ContextFeatureSet::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open context file '" + path.string() + "'");
  ContextFeatureSet set;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = split_csv(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() < 2) throw Error(Errc::MalformedInput, where + ": expected context,<f1>,...", line_no);
    std::vector<double> x;
    for (std::size_t i = 1; i < fields.size(); ++i) x.push_back(parse_number(fields[i], where));
    if (set.contains(fields[0])) {
      throw Error(Errc::MalformedInput, where + ": duplicate context '" + fields[0] + "'", line_no);
    }
    set.set(fields[0], std::move(x));
  }
  return set;
}

void ContextFeatureSet::set(const std::string& context_id, std::vector<double> x) {
  if (dim_ != 0 && x.size() != dim_) {
    throw Error(Errc::DimensionMismatch, "context '" + context_id + "' has " +
                                             std::to_string(x.size()) + " features, expected " +
                                             std::to_string(dim_));
  }
  dim_ = x.size();
  contexts_[context_id] = std::move(x);
}

const std::vector<double>& ContextFeatureSet::at(const std::string& context_id) const {
  auto it = contexts_.find(context_id);
  if (it == contexts_.end()) {
    throw Error(Errc::UnknownContext, "unknown context '" + context_id + "'");
  }
  return it->second;
}

std::vector<std::string> ContextFeatureSet::ids() const {
  std::vector<std::string> out;
  for (const auto& entry : contexts_) out.push_back(entry.first);
  return out;
}

// ---------------------------------------------------------------------------
// Triples

std::vector<std::string> TripleDataset::context_ids() const {
  std::set<std::string> ids;
  for (const Triple& t : records) ids.insert(t.context);
  return {ids.begin(), ids.end()};
}

std::vector<std::string> TripleDataset::drug_ids() const {
  std::set<std::string> ids;
  for (const Triple& t : records) {
    ids.insert(t.drug_a);
    ids.insert(t.drug_b);
  }
  return {ids.begin(), ids.end()};
}

std::vector<int> TripleDataset::labels() const {
  std::vector<int> out;
  out.reserve(records.size());
  for (const Triple& t : records) out.push_back(t.label);
  return out;
}

TripleDataset TripleDataset::subset(std::span<const std::size_t> indices) const {
  TripleDataset out;
  out.records.reserve(indices.size());
  for (std::size_t i : indices) out.records.push_back(records.at(i));
  return out;
}

TripleDataset read_triples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open triple file '" + path.string() + "'");
  TripleDataset data;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (header) {
      if (line != "drug_a,drug_b,context,label") {
        throw Error(Errc::MalformedInput, where + ": expected header 'drug_a,drug_b,context,label'",
                    line_no);
      }
      header = false;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 4) throw Error(Errc::MalformedInput, where + ": expected 4 fields", line_no);
    if (fields[3] != "0" && fields[3] != "1") {
      throw Error(Errc::MalformedInput, where + ": label must be 0 or 1", line_no);
    }
    data.records.push_back(Triple{fields[0], fields[1], fields[2], fields[3] == "1" ? 1 : 0});
  }
  if (header) throw Error(Errc::MalformedInput, path.string() + ": missing header", 1);
  return data;
}

void write_triples(const std::filesystem::path& path, const TripleDataset& data) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write triple file '" + path.string() + "'");
  out << "drug_a,drug_b,context,label\n";
  for (const Triple& t : data.records) {
    out << t.drug_a << ',' << t.drug_b << ',' << t.context << ',' << t.label << '\n';
  }
}

// ---------------------------------------------------------------------------
// Input assembly

namespace {

std::vector<double> drug_vector(const std::string& id, const DrugFeatures& f, FeatureMode mode) {
  std::vector<double> x;
  if (mode != FeatureMode::DR) x = f.fingerprint;
  if (mode != FeatureMode::FP) {
    if (f.embedding.empty()) {
      throw Error(Errc::MissingEmbedding, "drug '" + id + "' has no embedding");
    }
    x.insert(x.end(), f.embedding.begin(), f.embedding.end());
  }
  return x;
}

}  // namespace

PairInput assemble_input(const Triple& t, const DrugFeatureSet& drugs,
                         const ContextFeatureSet& contexts, FeatureMode mode) {
  PairInput in;
  in.a = drug_vector(t.drug_a, drugs.at(t.drug_a), mode);
  in.b = drug_vector(t.drug_b, drugs.at(t.drug_b), mode);
  in.c = contexts.at(t.context);
  return in;
}

PairFeatures assemble_features(const DrugFeatureSet& drugs, const ContextFeatureSet& contexts,
                               FeatureMode mode) {
  PairFeatures out;
  std::vector<std::vector<double>> rows;
  for (const std::string& id : drugs.ids()) {
    const DrugFeatures& f = drugs.at(id);
    if (mode != FeatureMode::FP && f.embedding.empty()) {
      out.missing_embedding.push_back(id);
      continue;
    }
    out.drug_index.emplace(id, static_cast<std::uint32_t>(out.drug_ids.size()));
    out.drug_ids.push_back(id);
    rows.push_back(drug_vector(id, f, mode));
  }
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  out.drugs = Matrix(rows.size(), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw Error(Errc::DimensionMismatch, "drug '" + out.drug_ids[r] + "' has " +
                                               std::to_string(rows[r].size()) +
                                               " features, expected " + std::to_string(width));
    }
    std::copy(rows[r].begin(), rows[r].end(), out.drugs.row(r).begin());
  }

  out.context_ids = contexts.ids();
  out.contexts = Matrix(out.context_ids.size(), contexts.dim());
  for (std::size_t r = 0; r < out.context_ids.size(); ++r) {
    out.context_index.emplace(out.context_ids[r], static_cast<std::uint32_t>(r));
    const auto& x = contexts.at(out.context_ids[r]);
    std::copy(x.begin(), x.end(), out.contexts.row(r).begin());
  }
  return out;
}

std::vector<EncodedTriple> encode_triples(const TripleDataset& data, const PairFeatures& features) {
  std::vector<EncodedTriple> out;
  out.reserve(data.size());
  const auto drug = [&](const std::string& id, std::size_t row) {
    auto it = features.drug_index.find(id);
    if (it != features.drug_index.end()) return it->second;
    const std::string where = "triple " + std::to_string(row + 1) + ": ";
    if (std::binary_search(features.missing_embedding.begin(), features.missing_embedding.end(), id)) {
      throw Error(Errc::MissingEmbedding, where + "drug '" + id + "' has no embedding", row + 1);
    }
    throw Error(Errc::UnknownDrug, where + "unknown drug '" + id + "'", row + 1);
  };
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Triple& t = data.records[i];
    auto ctx = features.context_index.find(t.context);
    if (ctx == features.context_index.end()) {
      throw Error(Errc::UnknownContext,
                  "triple " + std::to_string(i + 1) + ": unknown context '" + t.context + "'", i + 1);
    }
    out.push_back(EncodedTriple{drug(t.drug_a, i), drug(t.drug_b, i), ctx->second,
                                static_cast<double>(t.label)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model

PairScorer::PairScorer(ScorerConfig cfg, std::size_t drug_input_dim, std::size_t context_input_dim,
                       std::uint64_t seed)
    : cfg_(std::move(cfg)) {
  if (drug_input_dim == 0) throw Error(Errc::ShapeMismatch, "drug input dimension is zero");
  if (cfg_.drug_hidden == 0) throw Error(Errc::InvalidArgument, "drug encoder width is zero");
  if (!(cfg_.dropout >= 0.0 && cfg_.dropout < 1.0)) {
    throw Error(Errc::InvalidArgument, "dropout rate must be in [0, 1)");
  }
  drug_encoder_ = add_layer(drug_input_dim, cfg_.drug_hidden);
  std::size_t head_in = 2 * cfg_.drug_hidden;
  if (cfg_.use_context) {
    if (context_input_dim == 0 || cfg_.context_hidden == 0) {
      throw Error(Errc::ShapeMismatch, "context encoder needs non-zero input and width");
    }
    context_encoder_ = add_layer(context_input_dim, cfg_.context_hidden);
    head_in += cfg_.context_hidden;
  }
  for (std::size_t width : cfg_.head_hidden) {
    if (width == 0) throw Error(Errc::InvalidArgument, "head layer width is zero");
    head_.push_back(add_layer(head_in, width));
    head_in = width;
  }
  head_.push_back(add_layer(head_in, 1));

  Rng rng(seed);
  const auto init = [&](const DenseLayer& l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(l.in));
    for (std::size_t i = 0; i < l.in * l.out; ++i) {
      params_[l.weight_offset + i] = rng.uniform(-bound, bound);
    }
  };
  init(drug_encoder_);
  if (cfg_.use_context) init(context_encoder_);
  for (const DenseLayer& l : head_) init(l);
}

DenseLayer PairScorer::add_layer(std::size_t in, std::size_t out) {
  DenseLayer l{in, out, params_.size(), params_.size() + in * out};
  params_.resize(params_.size() + in * out + out, 0.0);
  return l;
}

double bce_with_logit(double logit, double label) noexcept {
  return std::max(logit, 0.0) - logit * label + std::log1p(std::exp(-std::abs(logit)));
}

double bce_loss(double prob, double label) noexcept {
  constexpr double kTiny = 1e-15;
  const double p = std::clamp(prob, kTiny, 1.0 - kTiny);
  return -(label * std::log(p) + (1.0 - label) * std::log(1.0 - p));
}

namespace {

// Encoder outputs for the distinct rows referenced by a batch. Weights are
// fixed within a batch, so each drug / context is encoded once; dropout is
// drawn per example downstream, at the head input.
struct EncodedRows {
  std::vector<std::int64_t> slot_of;  // feature row -> slot, -1 when unused
  std::vector<std::uint32_t> rows;    // slot -> feature row
  Matrix pre;
  Matrix act;
  Matrix grad;  // d loss / d act, accumulated over the batch

  void reserve_rows(std::size_t n_rows) { slot_of.assign(n_rows, -1); }

  std::size_t slot(std::uint32_t row) {
    if (slot_of[row] < 0) {
      slot_of[row] = static_cast<std::int64_t>(rows.size());
      rows.push_back(row);
    }
    return static_cast<std::size_t>(slot_of[row]);
  }

  void encode(const PairScorer& model, const DenseLayer& layer, const Matrix& inputs,
              bool with_grad) {
    pre = Matrix(rows.size(), layer.out);
    act = Matrix(rows.size(), layer.out);
    if (with_grad) grad = Matrix(rows.size(), layer.out);
    const auto w = model.weights(layer);
    const auto b = model.bias(layer);
    for (std::size_t s = 0; s < rows.size(); ++s) {
      const auto x = inputs.row(rows[s]);
      for (std::size_t o = 0; o < layer.out; ++o) {
        const double z = b[o] + simd::dot(w.subspan(o * layer.in, layer.in), x);
        pre(s, o) = z;
        act(s, o) = z > 0.0 ? z : 0.0;
      }
    }
  }

  void backprop(const DenseLayer& layer, const Matrix& inputs, std::span<double> grad_params) const {
    std::vector<double> dpre(layer.out);
    for (std::size_t s = 0; s < rows.size(); ++s) {
      const auto x = inputs.row(rows[s]);
      for (std::size_t o = 0; o < layer.out; ++o) {
        dpre[o] = pre(s, o) > 0.0 ? grad(s, o) : 0.0;
      }
      for (std::size_t o = 0; o < layer.out; ++o) {
        if (dpre[o] == 0.0) continue;
        simd::axpy(dpre[o], x, grad_params.subspan(layer.weight_offset + o * layer.in, layer.in));
        grad_params[layer.bias_offset + o] += dpre[o];
      }
    }
  }
};

void draw_mask(std::span<double> mask, double rate, bool train, Rng* rng) {
  if (!train || rate == 0.0) {
    std::fill(mask.begin(), mask.end(), 1.0);
    return;
  }
  const double keep = 1.0 - rate;
  const double scale = 1.0 / keep;
  for (double& m : mask) m = rng->bernoulli(keep) ? scale : 0.0;
}

// Shared forward / backward pass. Returns the mean loss; writes logits when
// `logits` is non-empty and adds the gradient of the mean loss when `grad` is.
double run_batch(const PairScorer& model, const PairFeatures& features,
                 std::span<const EncodedTriple> batch, bool train, Rng* rng,
                 std::span<double> grad, std::span<double> logits) {
  if (batch.empty()) return 0.0;
  if (train && model.config().dropout > 0.0 && rng == nullptr) {
    throw Error(Errc::InvalidArgument, "training-mode forward pass needs a random stream");
  }
  if (!grad.empty() && grad.size() != model.parameter_count()) {
    throw Error(Errc::ShapeMismatch, "gradient buffer does not match parameter count");
  }
  const ScorerConfig& cfg = model.config();
  const bool use_context = cfg.use_context;
  if (features.drugs.cols() != model.drug_input_dim()) {
    throw Error(Errc::ShapeMismatch, "drug features have " + std::to_string(features.drugs.cols()) +
                                         " columns, model expects " +
                                         std::to_string(model.drug_input_dim()));
  }
  if (use_context && features.contexts.cols() != model.context_input_dim()) {
    throw Error(Errc::ShapeMismatch, "context features have " +
                                         std::to_string(features.contexts.cols()) +
                                         " columns, model expects " +
                                         std::to_string(model.context_input_dim()));
  }

  const bool with_grad = !grad.empty();
  EncodedRows drugs;
  EncodedRows contexts;
  drugs.reserve_rows(features.drugs.rows());
  contexts.reserve_rows(features.contexts.rows());
  struct Slots {
    std::size_t a, b, c;
  };
  std::vector<Slots> slots(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const EncodedTriple& t = batch[i];
    if (t.a >= features.drugs.rows() || t.b >= features.drugs.rows() ||
        (use_context && t.c >= features.contexts.rows())) {
      throw Error(Errc::ShapeMismatch, "encoded triple index out of range");
    }
    slots[i] = Slots{drugs.slot(t.a), drugs.slot(t.b), use_context ? contexts.slot(t.c) : 0};
  }
  drugs.encode(model, model.drug_encoder(), features.drugs, with_grad);
  if (use_context) contexts.encode(model, model.context_encoder(), features.contexts, with_grad);

  const std::size_t hd = cfg.drug_hidden;
  const std::size_t hc = use_context ? cfg.context_hidden : 0;
  const std::vector<DenseLayer>& head = model.head();
  const std::size_t n_layers = head.size();

  std::vector<double> input0(2 * hd + hc);
  std::vector<double> mask0(input0.size());
  std::vector<double> dinput0(input0.size());
  std::vector<std::vector<double>> pre(n_layers), act(n_layers), mask(n_layers), dact(n_layers);
  for (std::size_t l = 0; l < n_layers; ++l) {
    pre[l].resize(head[l].out);
    act[l].resize(head[l].out);
    mask[l].resize(head[l].out);
    dact[l].resize(head[l].out);
  }
  std::vector<double> dpre;

  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  double loss_sum = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Slots& s = slots[i];
    std::copy_n(drugs.act.row(s.a).begin(), hd, input0.begin());
    std::copy_n(drugs.act.row(s.b).begin(), hd, input0.begin() + static_cast<std::ptrdiff_t>(hd));
    if (use_context) {
      std::copy_n(contexts.act.row(s.c).begin(), hc,
                  input0.begin() + static_cast<std::ptrdiff_t>(2 * hd));
    }
    draw_mask(mask0, cfg.dropout, train, rng);
    for (std::size_t k = 0; k < input0.size(); ++k) input0[k] *= mask0[k];

    for (std::size_t l = 0; l < n_layers; ++l) {
      const DenseLayer& layer = head[l];
      const std::span<const double> in = l == 0 ? std::span<const double>(input0)
                                                : std::span<const double>(act[l - 1]);
      const auto w = model.weights(layer);
      const auto b = model.bias(layer);
      for (std::size_t o = 0; o < layer.out; ++o) {
        pre[l][o] = b[o] + simd::dot(w.subspan(o * layer.in, layer.in), in);
      }
      if (l + 1 < n_layers) {
        draw_mask(mask[l], cfg.dropout, train, rng);
        for (std::size_t o = 0; o < layer.out; ++o) {
          act[l][o] = (pre[l][o] > 0.0 ? pre[l][o] : 0.0) * mask[l][o];
        }
      }
    }
    const double logit = pre[n_layers - 1][0];
    const double y = batch[i].label;
    loss_sum += bce_with_logit(logit, y);
    if (!logits.empty()) logits[i] = logit;
    if (!with_grad) continue;

    // Backward through the head.
    for (std::size_t l = n_layers; l-- > 0;) {
      const DenseLayer& layer = head[l];
      dpre.assign(layer.out, 0.0);
      if (l + 1 == n_layers) {
        dpre[0] = (sigmoid(logit) - y) * inv_batch;
      } else {
        for (std::size_t o = 0; o < layer.out; ++o) {
          dpre[o] = pre[l][o] > 0.0 ? dact[l][o] * mask[l][o] : 0.0;
        }
      }
      const std::span<const double> in = l == 0 ? std::span<const double>(input0)
                                                : std::span<const double>(act[l - 1]);
      std::span<double> din = l == 0 ? std::span<double>(dinput0) : std::span<double>(dact[l - 1]);
      std::fill(din.begin(), din.end(), 0.0);
      const auto w = model.weights(layer);
      for (std::size_t o = 0; o < layer.out; ++o) {
        if (dpre[o] == 0.0) continue;
        simd::axpy(dpre[o], in, grad.subspan(layer.weight_offset + o * layer.in, layer.in));
        grad[layer.bias_offset + o] += dpre[o];
        simd::axpy(dpre[o], w.subspan(o * layer.in, layer.in), din);
      }
    }
    for (std::size_t k = 0; k < dinput0.size(); ++k) dinput0[k] *= mask0[k];
    const std::span<const double> dview(dinput0);
    simd::axpy(1.0, dview.subspan(0, hd), drugs.grad.row(s.a));
    simd::axpy(1.0, dview.subspan(hd, hd), drugs.grad.row(s.b));
    if (use_context) simd::axpy(1.0, dview.subspan(2 * hd, hc), contexts.grad.row(s.c));
  }

  if (with_grad) {
    drugs.backprop(model.drug_encoder(), features.drugs, grad);
    if (use_context) contexts.backprop(model.context_encoder(), features.contexts, grad);
  }
  return loss_sum * inv_batch;
}

}  // namespace

double forward(const PairScorer& model, std::span<const double> xa, std::span<const double> xb,
               std::span<const double> xc, bool train, Rng* rng) {
  const std::size_t din = model.drug_input_dim();
  if (xa.size() != din || xb.size() != din) {
    throw Error(Errc::ShapeMismatch, "drug input has wrong length (expected " +
                                         std::to_string(din) + ")");
  }
  PairFeatures f;
  f.drugs = Matrix(2, din);
  std::copy(xa.begin(), xa.end(), f.drugs.row(0).begin());
  std::copy(xb.begin(), xb.end(), f.drugs.row(1).begin());
  if (model.config().use_context) {
    if (xc.size() != model.context_input_dim()) {
      throw Error(Errc::ShapeMismatch, "context input has wrong length (expected " +
                                           std::to_string(model.context_input_dim()) + ")");
    }
    f.contexts = Matrix(1, xc.size());
    std::copy(xc.begin(), xc.end(), f.contexts.row(0).begin());
  }
  const EncodedTriple t{0, 1, 0, 0.0};
  double logit = 0.0;
  run_batch(model, f, std::span<const EncodedTriple>(&t, 1), train, rng, {},
            std::span<double>(&logit, 1));
  return sigmoid(logit);
}

double batch_loss_grad(const PairScorer& model, const PairFeatures& features,
                       std::span<const EncodedTriple> batch, bool train, Rng* rng,
                       std::span<double> grad) {
  return run_batch(model, features, batch, train, rng, grad, {});
}

std::vector<double> batch_logits(const PairScorer& model, const PairFeatures& features,
                                 std::span<const EncodedTriple> batch) {
  std::vector<double> logits(batch.size());
  run_batch(model, features, batch, false, nullptr, {}, logits);
  return logits;
}

// ---------------------------------------------------------------------------
// Optimizer and training

AdamState::AdamState(std::size_t n_params, AdamConfig cfg)
    : cfg_(cfg), m_(n_params, 0.0), v_(n_params, 0.0) {}

void AdamState::step(std::span<double> params, std::span<const double> grads) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw Error(Errc::ShapeMismatch, "Adam state does not match parameter count");
  }
  ++t_;
  const double b1 = cfg_.beta1;
  const double b2 = cfg_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i] + cfg_.weight_decay * params[i];
    m_[i] = b1 * m_[i] + (1.0 - b1) * g;
    v_[i] = b2 * v_[i] + (1.0 - b2) * g * g;
    const double m_hat = m_[i] / correction1;
    const double v_hat = v_[i] / correction2;
    params[i] -= cfg_.learning_rate * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
  }
}

PairTrainResult train_pairscore(const PairFeatures& features, std::span<const EncodedTriple> train,
                                std::span<const EncodedTriple> validation, const ScorerConfig& cfg,
                                const PairTrainConfig& train_cfg) {
  if (train.empty()) throw Error(Errc::EmptyTrainingSet, "no training triples");
  if (train_cfg.epochs == 0 || train_cfg.batch_size == 0) {
    throw Error(Errc::InvalidArgument, "epochs and batch size must be >= 1");
  }
  PairTrainResult result{PairScorer(cfg, features.drugs.cols(), features.contexts.cols(),
                                    train_cfg.seed),
                         {},
                         {}};
  PairScorer& model = result.model;
  AdamState adam(model.parameter_count(), train_cfg.adam);

  std::vector<EncodedTriple> pool(train.begin(), train.end());
  if (train_cfg.both_orders) {
    for (const EncodedTriple& t : train) pool.push_back(EncodedTriple{t.b, t.a, t.c, t.label});
  }
  std::vector<int> validation_labels;
  bool validation_usable = false;
  if (!validation.empty()) {
    for (const EncodedTriple& t : validation) validation_labels.push_back(t.label > 0.5 ? 1 : 0);
    const auto positives = std::count(validation_labels.begin(), validation_labels.end(), 1);
    validation_usable = positives > 0 && positives < static_cast<long>(validation_labels.size());
  }

  Rng rng(train_cfg.seed ^ 0xd1b54a32d192ed03ULL);
  std::vector<double> grad(model.parameter_count());
  for (std::size_t epoch = 0; epoch < train_cfg.epochs; ++epoch) {
    rng.shuffle(std::span<EncodedTriple>(pool));
    double loss_sum = 0.0;
    std::size_t n_batches = 0;
    for (std::size_t start = 0; start < pool.size(); start += train_cfg.batch_size) {
      const std::size_t len = std::min(train_cfg.batch_size, pool.size() - start);
      std::fill(grad.begin(), grad.end(), 0.0);
      loss_sum += batch_loss_grad(model, features, std::span(pool).subspan(start, len), true, &rng,
                                  grad);
      adam.step(model.parameters(), grad);
      ++n_batches;
    }
    result.train_loss.push_back(loss_sum / static_cast<double>(n_batches));
    if (!validation.empty()) {
      result.validation_auroc.push_back(
          validation_usable ? auroc(batch_logits(model, features, validation), validation_labels)
                            : std::nan(""));
    }
  }
  return result;
}

std::vector<double> predict(const PairScorer& model, const PairFeatures& features,
                            std::span<const EncodedTriple> triples) {
  std::vector<double> scores = batch_logits(model, features, triples);
  for (double& s : scores) s = sigmoid(s);
  return scores;
}

// ---------------------------------------------------------------------------
// Checkpoints

void save_checkpoint(const PairScorer& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write checkpoint '" + path.string() + "'");
  const ScorerConfig& cfg = model.config();
  out << "graphdr-pairscorer v1\n";
  out << "mode " << feature_mode_name(cfg.mode) << '\n';
  out << "drug_input " << model.drug_input_dim() << '\n';
  out << "context_input " << model.context_input_dim() << '\n';
  out << "drug_hidden " << cfg.drug_hidden << '\n';
  out << "context_hidden " << cfg.context_hidden << '\n';
  out << "head";
  for (std::size_t w : cfg.head_hidden) out << ' ' << w;
  out << '\n';
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", cfg.dropout);
  out << "dropout " << buf << '\n';
  out << "use_context " << (cfg.use_context ? 1 : 0) << '\n';
  out << "params " << model.parameter_count() << '\n';
  for (double p : model.parameters()) {
    std::snprintf(buf, sizeof buf, "%.17g", p);
    out << buf << '\n';
  }
  if (!out) throw Error(Errc::Io, "failed writing checkpoint '" + path.string() + "'");
}

PairScorer load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open checkpoint '" + path.string() + "'");
  const auto bad = [&](const std::string& what) {
    return Error(Errc::MalformedCheckpoint, path.string() + ": " + what);
  };
  std::string line;
  if (!std::getline(in, line) || line != "graphdr-pairscorer v1") throw bad("bad header");

  const auto field = [&](const std::string& key) {
    if (!std::getline(in, line)) throw bad("missing '" + key + "'");
    std::istringstream ls(line);
    std::string k;
    ls >> k;
    if (k != key) throw bad("expected '" + key + "', found '" + k + "'");
    std::string rest;
    std::getline(ls, rest);
    if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
    return rest;
  };
  const auto as_size = [&](const std::string& text) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0') throw bad("expected an integer, found '" + text + "'");
    return static_cast<std::size_t>(v);
  };

  ScorerConfig cfg;
  cfg.mode = parse_feature_mode(field("mode"));
  const std::size_t drug_input = as_size(field("drug_input"));
  const std::size_t context_input = as_size(field("context_input"));
  cfg.drug_hidden = as_size(field("drug_hidden"));
  cfg.context_hidden = as_size(field("context_hidden"));
  cfg.head_hidden.clear();
  {
    std::istringstream hs(field("head"));
    std::string tok;
    while (hs >> tok) cfg.head_hidden.push_back(as_size(tok));
  }
  cfg.dropout = std::strtod(field("dropout").c_str(), nullptr);
  cfg.use_context = field("use_context") == "1";
  const std::size_t n_params = as_size(field("params"));

  PairScorer model(cfg, drug_input, context_input, 0);
  if (model.parameter_count() != n_params) throw bad("parameter count does not match shapes");
  auto params = model.parameters();
  for (std::size_t i = 0; i < n_params; ++i) {
    if (!std::getline(in, line)) throw bad("truncated parameter list");
    char* end = nullptr;
    params[i] = std::strtod(line.c_str(), &end);
    if (line.empty() || *end != '\0') throw bad("malformed parameter value");
  }
  return model;
}

}  // namespace graphdr
