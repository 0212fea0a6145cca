#pragma once

#include <map>
#include <span>
#include <string>

namespace shardwright::quality {

struct PrecisionRecallF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ClassifierMetrics {
  std::map<int, PrecisionRecallF1> per_class;  // classes present in gold or prediction
  PrecisionRecallF1 macro;
  PrecisionRecallF1 binary;
  int threshold = 3;
  std::size_t count = 0;

  std::string to_json() const;
  /// Multiclass and binary rows laid out as precision / recall / F1.
  std::string format_table(const std::string& model_name) const;
};

/// Predictions are rounded half-up and clamped to [0, 5] before the
/// multiclass metrics; both sides are binarized at `threshold` for the binary
/// metrics. A class absent from the predictions scores precision 0. When
/// neither side has a positive, the binary metrics are 1 (perfect agreement).
ClassifierMetrics evaluate_classifier(std::span<const double> predicted, std::span<const int> gold,
                                      int threshold = 3);

}  // namespace shardwright::quality
