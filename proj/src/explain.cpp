#include "aiaefa/explain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "aiaefa/csv.hpp"

namespace aiaefa {

bool Dataset::constant_target() const {
  if (targets.empty()) return true;
  const double first = targets.front();
  return std::all_of(targets.begin(), targets.end(),
                     [first](double t) { return t == first; });
}

std::pair<Dataset, Dataset> build_datasets(
    std::span<const IterationTrace> trace) {
  if (trace.empty()) {
    throw std::invalid_argument("build_datasets: empty trace");
  }
  Dataset ds1{{"K", "Q"}, "f_best", 2, {}, {}};
  Dataset ds2{{"A", "E"}, "x_norm", 2, {}, {}};
  ds1.features.reserve(2 * trace.size());
  ds2.features.reserve(2 * trace.size());
  for (const IterationTrace& rec : trace) {
    ds1.features.push_back(rec.k_value);
    ds1.features.push_back(rec.q_best);
    ds1.targets.push_back(rec.f_best);
    ds2.features.push_back(rec.a_norm);
    ds2.features.push_back(rec.e_norm);
    ds2.targets.push_back(rec.x_norm);
  }
  return {std::move(ds1), std::move(ds2)};
}

bool CorrelationMatrix::has_undefined() const {
  return std::any_of(values.begin(), values.end(),
                     [](double v) { return std::isnan(v); });
}

CorrelationMatrix pearson_correlation(const Dataset& data) {
  const int rows = data.rows();
  if (rows < 2) {
    throw std::invalid_argument("pearson_correlation: needs at least 2 rows");
  }
  const int m = data.num_features;
  const int cols = m + 1;
  auto column = [&](int c, int row_idx) {
    return c < m ? data.feature(row_idx, c) : data.targets[row_idx];
  };

  std::vector<double> mean(cols, 0.0);
  for (int c = 0; c < cols; ++c) {
    for (int i = 0; i < rows; ++i) mean[c] += column(c, i);
    mean[c] /= rows;
  }
  std::vector<double> sum_sq(cols, 0.0);
  for (int c = 0; c < cols; ++c) {
    for (int i = 0; i < rows; ++i) {
      const double d = column(c, i) - mean[c];
      sum_sq[c] += d * d;
    }
  }

  CorrelationMatrix corr;
  corr.labels = data.feature_names;
  corr.labels.push_back(data.target_name);
  corr.values.assign(static_cast<std::size_t>(cols) * cols,
                     std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < cols; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (i == j) {
        corr.values[i * cols + j] = 1.0;
        continue;
      }
      if (sum_sq[i] == 0.0 || sum_sq[j] == 0.0) continue;  // undefined
      double cov = 0.0;
      for (int k = 0; k < rows; ++k) {
        cov += (column(i, k) - mean[i]) * (column(j, k) - mean[j]);
      }
      corr.values[i * cols + j] = cov / std::sqrt(sum_sq[i] * sum_sq[j]);
    }
  }
  return corr;
}

double LinearSurrogate::predict(std::span<const double> x) const {
  double y = intercept_;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    y += coefficients_[i] * x[i];
  }
  return y;
}

KnnSurrogate::KnnSurrogate(Dataset training, int k)
    : training_(std::move(training)), k_(std::min(k, training_.rows())) {
  if (k_ < 1) {
    throw std::invalid_argument("KnnSurrogate: k must be >= 1");
  }
}

double KnnSurrogate::predict(std::span<const double> x) const {
  const int rows = training_.rows();
  std::vector<std::pair<double, int>> dist(rows);
  for (int i = 0; i < rows; ++i) {
    double d = 0.0;
    for (int c = 0; c < training_.num_features; ++c) {
      const double diff = training_.feature(i, c) - x[c];
      d += diff * diff;
    }
    dist[i] = {d, i};
  }
  std::partial_sort(dist.begin(), dist.begin() + k_, dist.end());
  double sum = 0.0;
  for (int i = 0; i < k_; ++i) sum += training_.targets[dist[i].second];
  return sum / k_;
}

std::unique_ptr<Surrogate> fit_surrogate(const Dataset& data,
                                         SurrogateKind kind, int knn_k) {
  if (data.rows() < 3) {
    throw std::invalid_argument("fit_surrogate: needs at least 3 rows");
  }
  if (kind == SurrogateKind::knn) {
    return std::make_unique<KnnSurrogate>(data, knn_k);
  }

  const int rows = data.rows();
  const int m = data.num_features;
  Eigen::MatrixXd design(rows, m + 1);
  Eigen::VectorXd y(rows);
  for (int i = 0; i < rows; ++i) {
    design(i, 0) = 1.0;
    for (int c = 0; c < m; ++c) design(i, c + 1) = data.feature(i, c);
    y(i) = data.targets[i];
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  bool ridge = qr.rank() < m + 1;
  Eigen::VectorXd beta;
  if (!ridge) {
    beta = qr.solve(y);
  } else {
    // Tiny ridge term on the feature coefficients only, so a constant target
    // still lands entirely in the intercept.
    Eigen::MatrixXd gram = design.transpose() * design;
    for (int c = 1; c <= m; ++c) gram(c, c) += 1e-8;
    beta = gram.ldlt().solve(design.transpose() * y);
  }
  std::vector<double> coefficients(m);
  for (int c = 0; c < m; ++c) coefficients[c] = beta(c + 1);
  return std::make_unique<LinearSurrogate>(beta(0), std::move(coefficients),
                                           ridge);
}

namespace {

std::vector<double> shapley_weights(int m) {
  // weight(s) = s! (m-s-1)! / m! for a coalition of size s not containing i.
  std::vector<double> factorial(m + 1, 1.0);
  for (int i = 1; i <= m; ++i) factorial[i] = factorial[i - 1] * i;
  std::vector<double> w(m);
  for (int s = 0; s < m; ++s) {
    w[s] = factorial[s] * factorial[m - s - 1] / factorial[m];
  }
  return w;
}

}  // namespace

ShapResult exact_shapley(const Surrogate& model, const Dataset& background,
                         std::span<const double> sample) {
  const int m = static_cast<int>(sample.size());
  if (m < 1 || m > 12) {
    throw std::invalid_argument("exact_shapley: feature count must be in [1, 12]");
  }
  if (background.rows() < 1 || background.num_features != m) {
    throw std::invalid_argument("exact_shapley: background is empty or mismatched");
  }

  const int rows = background.rows();
  const unsigned subsets = 1u << m;

  // Interventional coalition values: pinned sample coordinates, background
  // elsewhere, averaged over all background rows.
  std::vector<double> value(subsets, 0.0);
  std::vector<double> z(m);
  for (unsigned mask = 0; mask < subsets; ++mask) {
    double sum = 0.0;
    for (int row_idx = 0; row_idx < rows; ++row_idx) {
      for (int c = 0; c < m; ++c) {
        z[c] = (mask >> c) & 1u ? sample[c] : background.feature(row_idx, c);
      }
      sum += model.predict(z);
    }
    value[mask] = sum / rows;
  }

  const std::vector<double> weights = shapley_weights(m);
  ShapResult result;
  result.base_value = value[0];
  result.attributions.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const unsigned bit = 1u << i;
    for (unsigned mask = 0; mask < subsets; ++mask) {
      if (mask & bit) continue;
      const int size = std::popcount(mask);
      result.attributions[i] +=
          weights[size] * (value[mask | bit] - value[mask]);
    }
  }
  return result;
}

ShapSummary explain_dataset(const Surrogate& model, const Dataset& background,
                            const Dataset& samples) {
  if (samples.rows() < 1) {
    throw std::invalid_argument("explain_dataset: no samples");
  }
  ShapSummary summary;
  summary.feature_names = samples.feature_names;
  summary.per_sample_phi.reserve(samples.rows());
  summary.feature_values.reserve(samples.rows());
  for (int i = 0; i < samples.rows(); ++i) {
    const auto row = samples.row(i);
    ShapResult shap = exact_shapley(model, background, row);
    summary.base_value = shap.base_value;
    summary.per_sample_phi.push_back(std::move(shap.attributions));
    summary.feature_values.emplace_back(row.begin(), row.end());
  }
  return summary;
}

std::vector<BarEntry> shap_bar_data(const ShapSummary& summary) {
  const int m = static_cast<int>(summary.feature_names.size());
  std::vector<BarEntry> bars(m);
  for (int c = 0; c < m; ++c) {
    double total = 0.0;
    for (const auto& phi : summary.per_sample_phi) total += std::abs(phi[c]);
    bars[c] = {summary.feature_names[c],
               total / static_cast<double>(summary.per_sample_phi.size())};
  }
  std::stable_sort(bars.begin(), bars.end(),
                   [](const BarEntry& a, const BarEntry& b) {
                     return a.mean_abs_phi > b.mean_abs_phi;
                   });
  return bars;
}

void write_trace_csv(std::ostream& out, std::span<const IterationTrace> trace) {
  out << "iteration,K,Q,A,E,f_best,x_norm\n";
  for (const IterationTrace& rec : trace) {
    out << rec.iteration << ',' << format_double(rec.k_value) << ','
        << format_double(rec.q_best) << ',' << format_double(rec.a_norm) << ','
        << format_double(rec.e_norm) << ',' << format_double(rec.f_best) << ','
        << format_double(rec.x_norm) << '\n';
  }
}

void write_shap_bar_csv(std::ostream& out, const std::vector<BarEntry>& bars) {
  out << "feature,mean_abs_phi\n";
  for (const BarEntry& bar : bars) {
    out << bar.feature << ',' << format_double(bar.mean_abs_phi) << '\n';
  }
}

void write_shap_beeswarm_csv(std::ostream& out, const ShapSummary& summary) {
  out << "sample,feature,phi,feature_value\n";
  for (std::size_t i = 0; i < summary.per_sample_phi.size(); ++i) {
    for (std::size_t c = 0; c < summary.feature_names.size(); ++c) {
      out << i << ',' << summary.feature_names[c] << ','
          << format_double(summary.per_sample_phi[i][c]) << ','
          << format_double(summary.feature_values[i][c]) << '\n';
    }
  }
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& corr) {
  out << "label";
  for (const std::string& label : corr.labels) out << ',' << label;
  out << '\n';
  for (int i = 0; i < corr.size(); ++i) {
    out << corr.labels[i];
    for (int j = 0; j < corr.size(); ++j) {
      out << ',' << format_double(corr.at(i, j));
    }
    out << '\n';
  }
}

}  // namespace aiaefa
