#include "shardwright/regressor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "shardwright/gzip.hpp"
#include "shardwright/hash.hpp"

namespace shardwright::quality {

void RegressorHyperparams::validate() const {
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) {
    throw std::invalid_argument("warmup_fraction must be in [0,1)");
  }
  if (!(peak_learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
  if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
  if (weight_decay < 0.0) throw std::invalid_argument("weight_decay must be >= 0");
}

double learning_rate_at(const RegressorHyperparams& hp, std::size_t step, std::size_t total_steps) {
  if (total_steps == 0) return 0.0;
  const auto warmup = static_cast<std::size_t>(std::floor(hp.warmup_fraction * static_cast<double>(total_steps)));
  if (step < warmup) {
    return hp.peak_learning_rate * static_cast<double>(step + 1) / static_cast<double>(warmup);
  }
  const auto decay_steps = std::max<std::size_t>(1, total_steps - warmup);
  const double progress = static_cast<double>(step - warmup) / static_cast<double>(decay_steps);
  return hp.peak_learning_rate * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
}

std::string RegressorModel::to_json() const {
  nlohmann::json j;
  j["category"] = std::string(quality::to_string(category));
  j["dim"] = weights.size();
  j["bias"] = bias;
  j["weights"] = weights;
  return j.dump();
}

RegressorModel RegressorModel::from_json(std::string_view json) {
  const auto j = nlohmann::json::parse(json);
  RegressorModel m;
  m.category = category_from_string(j.at("category").get<std::string>());
  m.bias = j.at("bias").get<double>();
  m.weights = j.at("weights").get<std::vector<double>>();
  if (j.at("dim").get<std::size_t>() != m.weights.size()) {
    throw std::invalid_argument("model dim does not match weights length");
  }
  if (!std::isfinite(m.bias) || !std::all_of(m.weights.begin(), m.weights.end(), [](double w) {
        return std::isfinite(w);
      })) {
    throw std::invalid_argument("model has non-finite parameters");
  }
  return m;
}

void RegressorModel::save(const std::filesystem::path& path) const { io::write_file_atomic(path, to_json() + "\n"); }

RegressorModel RegressorModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io::IoError("cannot open model " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

Dataset make_dataset(const EmbeddingMatrix& embeddings, const std::vector<AnnotationLabel>& labels) {
  Dataset d;
  d.dim = embeddings.dim();
  std::vector<std::string> missing;
  for (const auto& l : labels) {
    const auto v = embeddings.find(l.doc_id);
    if (v.empty()) {
      missing.push_back(l.doc_id);
      continue;
    }
    d.x.insert(d.x.end(), v.begin(), v.end());
    d.y.push_back(static_cast<double>(l.score));
  }
  if (!missing.empty()) {
    std::string msg = "no embedding for " + std::to_string(missing.size()) + " labeled document(s):";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + missing[i];
    if (missing.size() > 20) msg += " ...";
    throw std::invalid_argument(msg);
  }
  return d;
}

double predict_raw(const RegressorModel& m, std::span<const double> x) {
  double s = m.bias;
  for (std::size_t j = 0; j < x.size(); ++j) s += m.weights[j] * x[j];
  return s;
}

double mse_loss(const RegressorModel& m, const Dataset& d) {
  if (d.size() == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = predict_raw(m, d.row(i)) - d.y[i];
    total += r * r;
  }
  return total / static_cast<double>(d.size());
}

Gradient mse_gradient(const RegressorModel& m, const Dataset& d) {
  Gradient g;
  g.weights.assign(d.dim, 0.0);
  if (d.size() == 0) return g;
  const double scale = 2.0 / static_cast<double>(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto x = d.row(i);
    const double r = predict_raw(m, x) - d.y[i];
    for (std::size_t j = 0; j < d.dim; ++j) g.weights[j] += scale * r * x[j];
    g.bias += scale * r;
  }
  return g;
}

RegressorModel train_regressor(const Dataset& data, Category category, const RegressorHyperparams& hp,
                               std::uint64_t seed, TrainingLog* log) {
  hp.validate();
  const std::size_t n = data.size();
  if (n == 0) throw std::invalid_argument("train_regressor: no training examples");
  if (data.x.size() != n * data.dim) throw std::invalid_argument("train_regressor: feature matrix size mismatch");
  const auto [lo, hi] = std::minmax_element(data.y.begin(), data.y.end());
  if (*lo == *hi) throw std::invalid_argument("train_regressor: degenerate labels (a single distinct value)");

  RegressorModel model;
  model.category = category;
  model.weights.assign(data.dim, 0.0);
  model.bias = std::accumulate(data.y.begin(), data.y.end(), 0.0) / static_cast<double>(n);
  if (log) log->epoch_loss.push_back(mse_loss(model, data));

  const std::size_t batch = std::min(hp.batch_size, n);
  const std::size_t steps_per_epoch = (n + batch - 1) / batch;
  const std::size_t total_steps = steps_per_epoch * hp.epochs;

  std::vector<double> m_w(data.dim, 0.0), v_w(data.dim, 0.0), g_w(data.dim, 0.0);
  double m_b = 0.0, v_b = 0.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(seed);
  std::size_t step = 0;

  for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.uniform(i)]);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      const double scale = 2.0 / static_cast<double>(end - start);
      std::fill(g_w.begin(), g_w.end(), 0.0);
      double g_b = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const auto x = data.row(order[k]);
        const double r = predict_raw(model, x) - data.y[order[k]];
        for (std::size_t j = 0; j < data.dim; ++j) g_w[j] += scale * r * x[j];
        g_b += scale * r;
      }

      const double lr = learning_rate_at(hp, step, total_steps);
      ++step;
      const double bc1 = 1.0 - std::pow(hp.beta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(hp.beta2, static_cast<double>(step));
      for (std::size_t j = 0; j < data.dim; ++j) {
        model.weights[j] -= lr * hp.weight_decay * model.weights[j];
        m_w[j] = hp.beta1 * m_w[j] + (1.0 - hp.beta1) * g_w[j];
        v_w[j] = hp.beta2 * v_w[j] + (1.0 - hp.beta2) * g_w[j] * g_w[j];
        model.weights[j] -= lr * (m_w[j] / bc1) / (std::sqrt(v_w[j] / bc2) + hp.epsilon);
      }
      m_b = hp.beta1 * m_b + (1.0 - hp.beta1) * g_b;
      v_b = hp.beta2 * v_b + (1.0 - hp.beta2) * g_b * g_b;
      model.bias -= lr * (m_b / bc1) / (std::sqrt(v_b / bc2) + hp.epsilon);
    }
    if (log) log->epoch_loss.push_back(mse_loss(model, data));
  }
  return model;
}

RegressorModel train_regressor(const EmbeddingMatrix& embeddings, const std::vector<AnnotationLabel>& labels,
                               const RegressorHyperparams& hp, std::uint64_t seed, TrainingLog* log) {
  if (labels.empty()) throw std::invalid_argument("train_regressor: no labels");
  const auto category = labels.front().category;
  for (const auto& l : labels) {
    if (l.category != category) throw std::invalid_argument("train_regressor: labels mix categories");
  }
  return train_regressor(make_dataset(embeddings, labels), category, hp, seed, log);
}

double score_document(const RegressorModel& m, std::span<const double> x) {
  if (x.size() != m.dim()) {
    throw std::invalid_argument("score_document: vector has dim " + std::to_string(x.size()) + ", model expects " +
                                std::to_string(m.dim()));
  }
  return std::clamp(predict_raw(m, x), static_cast<double>(kMinScore), static_cast<double>(kMaxScore));
}

double score_document(const RegressorModel& m, std::span<const float> x) {
  std::vector<double> xd(x.begin(), x.end());
  return score_document(m, std::span<const double>(xd));
}

int round_half_up(double score) { return static_cast<int>(std::floor(score + 0.5)); }

bool binarize(double score, int threshold) { return round_half_up(score) >= threshold; }

}  // namespace shardwright::quality
