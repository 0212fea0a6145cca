#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "shardwright/annotation.hpp"
#include "shardwright/embeddings.hpp"

namespace shardwright::quality {

/// Linear warmup to the peak rate, then cosine decay to zero, optimized with
/// AdamW (decoupled weight decay, applied to weights but not the bias).
struct RegressorHyperparams {
  std::size_t epochs = 20;
  double warmup_fraction = 0.05;
  double peak_learning_rate = 3e-4;
  std::size_t batch_size = 64;
  double weight_decay = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

/// Learning rate used at optimizer step `step` (0-based) out of `total_steps`.
double learning_rate_at(const RegressorHyperparams& hp, std::size_t step, std::size_t total_steps);

struct RegressorModel {
  Category category = Category::edu;
  std::vector<double> weights;
  double bias = 0.0;

  std::size_t dim() const { return weights.size(); }

  std::string to_json() const;
  static RegressorModel from_json(std::string_view json);
  void save(const std::filesystem::path& path) const;
  static RegressorModel load(const std::filesystem::path& path);
};

/// Dense training data: row-major features and integer targets.
struct Dataset {
  std::size_t dim = 0;
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return y.size(); }
  std::span<const double> row(std::size_t i) const { return {x.data() + i * dim, dim}; }
};

/// Joins labels with their embeddings. Throws listing every label id that has
/// no vector.
Dataset make_dataset(const EmbeddingMatrix& embeddings, const std::vector<AnnotationLabel>& labels);

double predict_raw(const RegressorModel& m, std::span<const double> x);

/// Mean squared error of the unclamped prediction.
double mse_loss(const RegressorModel& m, const Dataset& d);

struct Gradient {
  std::vector<double> weights;
  double bias = 0.0;
};

Gradient mse_gradient(const RegressorModel& m, const Dataset& d);

struct TrainingLog {
  /// Training-set MSE before the first epoch and after each epoch.
  std::vector<double> epoch_loss;
};

/// Minimizes MSE from zero weights and a bias equal to the mean target.
/// Minibatch order is shuffled per epoch from `seed`; results are
/// deterministic in (data, hp, seed). Throws on empty data or when all
/// targets are equal.
RegressorModel train_regressor(const Dataset& data, Category category, const RegressorHyperparams& hp,
                               std::uint64_t seed, TrainingLog* log = nullptr);

RegressorModel train_regressor(const EmbeddingMatrix& embeddings, const std::vector<AnnotationLabel>& labels,
                               const RegressorHyperparams& hp, std::uint64_t seed, TrainingLog* log = nullptr);

/// clamp(w.x + b, 0, 5). Throws std::invalid_argument on dimension mismatch.
double score_document(const RegressorModel& m, std::span<const float> x);
double score_document(const RegressorModel& m, std::span<const double> x);

/// Half-up rounding: 2.5 -> 3.
int round_half_up(double score);

/// True iff round_half_up(score) >= threshold.
bool binarize(double score, int threshold = 3);

}  // namespace shardwright::quality
