#pragma once

// Sequence engine: samples the ordered matched costs directly through the
// exponential representation Y_k = Y_{k-1} + X_k, X_k ~ Exp((n-k+1)^2),
// which has the same law as the sorted matched costs of an n x n instance
// with Exp(1) edges. Transformed views reach the other cost distributions.

#include <cmath>
#include <cstddef>

#include "cost_sequence.hpp"
#include "distributions.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace smlab {

struct Cuts {
  std::size_t lambda_n = 1;
  std::size_t kappa_n = 1;
};

struct SegmentSplit {
  double w1 = 0.0;  // k < lambda_n
  double w2 = 0.0;  // lambda_n <= k <= n - kappa_n
  double w3 = 0.0;  // k > n - kappa_n
  double total() const { return w1 + w2 + w3; }
};

inline CostSequence sample_exp_sequence(std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidParameter("sample_exp_sequence: n must be >= 1");
  CostSequence s;
  s.view = View::ExpBase;
  s.base.resize(n);
  s.increments.resize(n);
  double y = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double r = static_cast<double>(n - k + 1);
    const double x = rng.standard_exp() / (r * r);
    s.increments[k - 1] = x;
    y += x;
    s.base[k - 1] = y;
  }
  s.values = s.base;
  return s;
}

inline CostSequence transform_sequence(const CostSequence& s, const Distribution& dist) {
  if (s.view != View::ExpBase)
    throw ViewError("transform_sequence: input must be an exponential-base sequence");
  CostSequence out;
  out.base = s.base;
  out.increments = s.increments;
  out.values.resize(s.base.size());
  if (dist.kind() == DistKind::Weibull) {
    out.view = View::Weibull;
    out.weibull_d = dist.pseudo_dimension();
    const double inv_d = 1.0 / out.weibull_d;
    const double scale = dist.couple_from_exponential(1.0);  // scale * 1^(1/d)
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = scale * std::pow(s.base[i], inv_d);
  } else if (dist.kind() == DistKind::Exponential) {
    out.view = View::Coupled;
    out.coupled_name = dist.name();
    out.values = s.base;
  } else {
    out.view = View::Coupled;
    out.coupled_name = dist.name();
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = dist.couple_from_exponential(s.base[i]);
  }
  return out;
}

inline double total_cost(const CostSequence& s) {
  KahanSum acc;
  for (double v : s.values) acc.add(v);
  return acc.value();
}

// one uniformly chosen matched cost
inline double typical_cost(const CostSequence& s, Rng& rng) {
  if (s.n() == 0) throw EmptySample("typical_cost: empty sequence");
  return s.values[rng.uniform_below(s.n())];
}

// Couple a fresh X'_k in place of X_k: Y^k_j = Y_j for j < k,
// Y_j - X_k + X'_k for j >= k. Requires the exponential base. k is 1-based.
inline CostSequence resample_coordinate(const CostSequence& s, std::size_t k, Rng& rng) {
  if (s.view != View::ExpBase)
    throw ViewError("resample_coordinate: input must be an exponential-base sequence");
  const std::size_t n = s.base.size();
  if (k < 1 || k > n) throw IndexError("resample_coordinate: k out of range");
  const double r = static_cast<double>(n - k + 1);
  const double xk_new = rng.standard_exp() / (r * r);
  const double delta = xk_new - s.increments[k - 1];
  CostSequence out;
  out.view = View::ExpBase;
  out.base = s.base;
  out.increments = s.increments;
  out.increments[k - 1] = xk_new;
  for (std::size_t j = k - 1; j < n; ++j) out.base[j] += delta;
  out.values = out.base;
  return out;
}

inline SegmentSplit segment_costs(const CostSequence& s, Cuts cuts) {
  const std::size_t n = s.n();
  if (cuts.lambda_n < 1 || cuts.kappa_n > n || cuts.lambda_n > n - cuts.kappa_n)
    throw RangeError("segment_costs: need 1 <= lambda_n <= n - kappa_n");
  const std::size_t mn = n - cuts.kappa_n;
  KahanSum a, b, c;
  for (std::size_t k = 1; k <= n; ++k) {
    const double v = s.values[k - 1];
    if (k < cuts.lambda_n)
      a.add(v);
    else if (k <= mn)
      b.add(v);
    else
      c.add(v);
  }
  return {a.value(), b.value(), c.value()};
}

// lambda_n = ceil(n^(1/2 + alpha)) with alpha = 1/(4(d+1)), the midpoint of
// the admissible range (0, 1/(2(d+1))); kappa_n = ceil((ln n)^4), capped so
// that lambda_n <= n - kappa_n stays satisfiable at small n.
inline Cuts default_cuts(std::size_t n, double d) {
  if (n < 3) throw DomainError("default_cuts: n must be >= 3");
  if (!(d > 1.0)) throw DomainError("default_cuts: d must be > 1");
  const double alpha = 1.0 / (4.0 * (d + 1.0));
  const double nd = static_cast<double>(n);
  Cuts cuts;
  cuts.lambda_n = static_cast<std::size_t>(std::ceil(std::pow(nd, 0.5 + alpha)));
  if (cuts.lambda_n >= n) cuts.lambda_n = n - 1;
  const double lk = std::pow(std::log(nd), 4.0);
  cuts.kappa_n = static_cast<std::size_t>(std::ceil(lk));
  if (cuts.kappa_n < 1) cuts.kappa_n = 1;
  if (cuts.kappa_n > n - cuts.lambda_n) cuts.kappa_n = n - cuts.lambda_n;
  return cuts;
}

}  // namespace smlab
