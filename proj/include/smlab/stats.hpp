#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace smlab {

// Compensated (Kahan) accumulator. Summation order still matters for the
// last bit, so reductions must fold in a fixed order to stay reproducible.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Streaming moments (Welford). merge() uses the pairwise update, so partial
// accumulators from worker threads combine associatively up to roundoff.
class SummaryStats {
 public:
  void update(double x) {
    if (!std::isfinite(x)) throw NonFinite("SummaryStats::update: non-finite value");
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }

  void merge(const SummaryStats& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n_), nb = static_cast<double>(o.n_);
    const double d = o.mean_ - mean_;
    const double n = na + nb;
    mean_ += d * nb / n;
    m2_ += o.m2_ + d * d * na * nb / n;
    n_ += o.n_;
    min_ = std::min(min_, o.min_);
    max_ = std::max(max_, o.max_);
  }

  std::size_t count() const { return n_; }
  double mean() const {
    if (n_ == 0) throw EmptySample("SummaryStats::mean: no observations");
    return mean_;
  }
  // unbiased (n-1) variance
  double variance() const {
    if (n_ < 2) throw DegenerateSample("SummaryStats::variance: need at least 2 observations");
    return m2_ / static_cast<double>(n_ - 1);
  }
  double stddev() const { return std::sqrt(variance()); }
  double min() const {
    if (n_ == 0) throw EmptySample("SummaryStats::min: no observations");
    return min_;
  }
  double max() const {
    if (n_ == 0) throw EmptySample("SummaryStats::max: no observations");
    return max_;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
};

// Sorted sample for distribution comparisons.
class EcdfSample {
 public:
  explicit EcdfSample(std::vector<double> values) : x_(std::move(values)) {
    if (x_.empty()) throw EmptySample("EcdfSample: empty sample");
    for (double v : x_)
      if (!std::isfinite(v)) throw NonFinite("EcdfSample: non-finite value");
    std::sort(x_.begin(), x_.end());
  }

  const std::vector<double>& values() const { return x_; }
  std::size_t size() const { return x_.size(); }

  // fraction of the sample <= x
  double operator()(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return static_cast<double>(it - x_.begin()) / static_cast<double>(x_.size());
  }

 private:
  std::vector<double> x_;
};

// One-sample Kolmogorov-Smirnov statistic against a cdf callable:
// D = max_i max(|i/n - F(x_(i))|, |(i-1)/n - F(x_(i))|).
template <class Cdf>
double ks_statistic(const EcdfSample& sample, Cdf&& cdf) {
  const auto& x = sample.values();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
  }
  return d;
}

// Two-sample KS statistic: sup |F_a - F_b| over the merged sample grid.
inline double ks_two_sample(const EcdfSample& a, const EcdfSample& b) {
  const auto& xa = a.values();
  const auto& xb = b.values();
  const double na = static_cast<double>(xa.size()), nb = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double v = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= v) ++i;
    while (j < xb.size() && xb[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// (x - mean)/sd applied elementwise
// Centers and scales by the population standard deviation, so the result has
// mean 0 and mean square exactly 1 (e.g. {-1, 1} maps to itself).
inline std::vector<double> standardize(const std::vector<double>& values) {
  SummaryStats s;
  for (double v : values) s.update(v);
  const double n = static_cast<double>(s.count());
  const double sd = std::sqrt(s.variance() * (n - 1.0) / n);
  if (sd == 0.0) throw DegenerateSample("standardize: zero variance");
  const double m = s.mean();
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back((v - m) / sd);
  return out;
}

}  // namespace smlab
