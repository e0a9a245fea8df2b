#pragma once

#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace aiaefa {

/// One per-iteration record of the optimizer internals feeding the two
/// attribution datasets. q_best/a_norm/e_norm belong to the iteration's best
/// agent at force time; f_best/x_norm to the elite after the iteration.
struct IterationTrace {
  int iteration = 0;
  double k_value = 0.0;
  double q_best = 0.0;
  double a_norm = 0.0;
  double e_norm = 0.0;
  double f_best = 0.0;
  double x_norm = 0.0;
};

/// Row-major feature matrix plus a scalar target column.
struct Dataset {
  std::vector<std::string> feature_names;
  std::string target_name;
  int num_features = 0;
  std::vector<double> features;  // rows() * num_features, row-major
  std::vector<double> targets;

  int rows() const { return static_cast<int>(targets.size()); }
  std::span<const double> row(int i) const {
    return {features.data() + static_cast<std::size_t>(i) * num_features,
            static_cast<std::size_t>(num_features)};
  }
  double feature(int row_idx, int col) const {
    return features[static_cast<std::size_t>(row_idx) * num_features + col];
  }
  bool constant_target() const;
};

/// dataset1: (K, Q) -> f_best; dataset2: (A, E) -> x_norm.
std::pair<Dataset, Dataset> build_datasets(std::span<const IterationTrace> trace);

/// Pearson r over all columns (features then target); diagonal is exactly 1.
/// Entries involving a constant column are NaN.
struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<double> values;  // size * size, row-major

  int size() const { return static_cast<int>(labels.size()); }
  double at(int i, int j) const { return values[i * size() + j]; }
  bool has_undefined() const;
};

CorrelationMatrix pearson_correlation(const Dataset& data);

enum class SurrogateKind { linear, knn };

class Surrogate {
 public:
  virtual ~Surrogate() = default;
  virtual double predict(std::span<const double> x) const = 0;
};

class LinearSurrogate final : public Surrogate {
 public:
  LinearSurrogate(double intercept, std::vector<double> coefficients,
                  bool ridge_fallback)
      : intercept_(intercept),
        coefficients_(std::move(coefficients)),
        ridge_fallback_(ridge_fallback) {}

  double predict(std::span<const double> x) const override;
  double intercept() const { return intercept_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  /// True when the design matrix was rank-deficient and a tiny ridge term
  /// was used instead of plain least squares.
  bool used_ridge_fallback() const { return ridge_fallback_; }

 private:
  double intercept_;
  std::vector<double> coefficients_;
  bool ridge_fallback_;
};

class KnnSurrogate final : public Surrogate {
 public:
  KnnSurrogate(Dataset training, int k);
  double predict(std::span<const double> x) const override;
  int k() const { return k_; }

 private:
  Dataset training_;
  int k_;
};

/// linear: ordinary least squares with intercept (ridge fallback on singular
/// designs); knn: mean target of the k nearest training rows.
std::unique_ptr<Surrogate> fit_surrogate(const Dataset& data,
                                         SurrogateKind kind, int knn_k = 5);

/// Exact Shapley attribution of one prediction: base_value is the mean
/// prediction over the background, attributions sum with it to g(sample).
struct ShapResult {
  double base_value = 0.0;
  std::vector<double> attributions;
};

/// Enumerates all 2^M coalitions (M <= 12); coalition values are
/// interventional expectations over the background rows.
ShapResult exact_shapley(const Surrogate& model, const Dataset& background,
                         std::span<const double> sample);

/// Attributions for every row of `samples` against a common background.
struct ShapSummary {
  std::vector<std::string> feature_names;
  double base_value = 0.0;
  std::vector<std::vector<double>> per_sample_phi;
  std::vector<std::vector<double>> feature_values;
};

ShapSummary explain_dataset(const Surrogate& model, const Dataset& background,
                            const Dataset& samples);

struct BarEntry {
  std::string feature;
  double mean_abs_phi = 0.0;
};

/// Mean |phi| per feature, sorted descending.
std::vector<BarEntry> shap_bar_data(const ShapSummary& summary);

// Plot-ready CSV exports. Headers are fixed:
//   trace:    iteration,K,Q,A,E,f_best,x_norm
//   bar:      feature,mean_abs_phi
//   beeswarm: sample,feature,phi,feature_value
//   correlation: label row/column matrix, undefined entries empty
void write_trace_csv(std::ostream& out, std::span<const IterationTrace> trace);
void write_shap_bar_csv(std::ostream& out, const std::vector<BarEntry>& bars);
void write_shap_beeswarm_csv(std::ostream& out, const ShapSummary& summary);
void write_correlation_csv(std::ostream& out, const CorrelationMatrix& corr);

}  // namespace aiaefa
