#include "shardwright/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "shardwright/annotation.hpp"
#include "shardwright/regressor.hpp"

namespace shardwright::quality {

namespace {

PrecisionRecallF1 prf(std::size_t tp, std::size_t fp, std::size_t fn) {
  PrecisionRecallF1 r;
  r.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  r.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  r.f1 = r.precision + r.recall == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

nlohmann::json prf_json(const PrecisionRecallF1& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

}  // namespace

ClassifierMetrics evaluate_classifier(std::span<const double> predicted, std::span<const int> gold, int threshold) {
  if (predicted.size() != gold.size()) throw std::invalid_argument("evaluate_classifier: length mismatch");
  if (gold.empty()) throw std::invalid_argument("evaluate_classifier: empty input");

  ClassifierMetrics out;
  out.threshold = threshold;
  out.count = gold.size();

  std::vector<int> pred_class(predicted.size());
  std::set<int> classes;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    pred_class[i] = std::clamp(round_half_up(predicted[i]), kMinScore, kMaxScore);
    classes.insert(pred_class[i]);
    classes.insert(gold[i]);
  }
  for (const int c : classes) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const bool p = pred_class[i] == c, g = gold[i] == c;
      tp += p && g;
      fp += p && !g;
      fn += !p && g;
    }
    out.per_class[c] = prf(tp, fp, fn);
  }
  for (const auto& [c, m] : out.per_class) {
    out.macro.precision += m.precision;
    out.macro.recall += m.recall;
    out.macro.f1 += m.f1;
  }
  const auto k = static_cast<double>(out.per_class.size());
  out.macro.precision /= k;
  out.macro.recall /= k;
  out.macro.f1 /= k;

  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool p = binarize(predicted[i], threshold);
    const bool g = gold[i] >= threshold;
    tp += p && g;
    fp += p && !g;
    fn += !p && g;
  }
  out.binary = (tp + fp + fn == 0) ? PrecisionRecallF1{1.0, 1.0, 1.0} : prf(tp, fp, fn);
  return out;
}

std::string ClassifierMetrics::to_json() const {
  nlohmann::json j;
  j["count"] = count;
  j["threshold"] = threshold;
  j["macro"] = prf_json(macro);
  j["binary"] = prf_json(binary);
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [c, m] : per_class) per[std::to_string(c)] = prf_json(m);
  j["per_class"] = per;
  return j.dump(2);
}

std::string ClassifierMetrics::format_table(const std::string& model_name) const {
  std::ostringstream os;
  const int w = static_cast<int>(std::max<std::size_t>(model_name.size(), 16));
  os << std::left << std::setw(w) << "Classifier Model" << "  Precision  Recall    F1\n";
  auto row = [&](const PrecisionRecallF1& p) {
    os << std::left << std::setw(w) << model_name << std::right << std::fixed << std::setprecision(2) << "  "
       << std::setw(9) << p.precision << "  " << std::setw(6) << p.recall << "  " << std::setw(4) << p.f1 << '\n';
  };
  os << "Multiclass\n";
  row(macro);
  os << "Binary (Threshold " << threshold << ")\n";
  row(binary);
  return os.str();
}

}  // namespace shardwright::quality
