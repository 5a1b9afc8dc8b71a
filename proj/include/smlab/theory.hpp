#pragma once

// Limit laws and deterministic reference quantities.
//
// Conventions: d is the pseudo-dimension of the edge-cost distribution and
// a its scale constant (cdf(z) = a z^d (1 + O(z^zeta))). All asymptotic
// constants accept a and apply the appropriate a^(-p/d) correction.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "stats.hpp"

namespace smlab {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 15(7) on [-1,1]; nodes symmetric, listed for x >= 0.
constexpr double kGkNode[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kGkWeight[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kGaussWeight[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& err) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kGkNode[i];
    const double fl = f(c - dx);
    const double fr = (i == 7) ? 0.0 : f(c + dx);
    k += kGkWeight[i] * (fl + fr);
    // embedded Gauss-7 rule lives on the odd Kronrod nodes (center included)
    if (i % 2 == 1) g += kGaussWeight[i / 2] * (fl + fr);
  }
  value = k * h;
  err = std::abs((k - g) * h);
}

// Globally adaptive bisection: always split the segment with the largest
// error estimate until the sum is below tol.
template <class F>
inline QuadratureResult adaptive_gk(const F& f, double a, double b, double tol,
                                    std::size_t max_segments = 4000) {
  struct Seg {
    double a, b, v, e;
  };
  QuadratureResult res;
  if (a == b) return res;
  std::vector<Seg> segs;
  double v, e;
  gk15(f, a, b, v, e);
  res.evaluations = 15;
  segs.push_back({a, b, v, e});
  for (;;) {
    double total = 0.0, errsum = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].v;
      errsum += segs[i].e;
      if (segs[i].e > segs[worst].e) worst = i;
    }
    if (errsum <= tol || segs[worst].e <= 1e-17 * std::abs(total)) {
      res.value = total;
      res.abs_error_estimate = errsum;
      return res;
    }
    if (segs.size() >= max_segments)
      throw ToleranceNotMet("adaptive_gk: tolerance not reached within segment budget");
    const Seg s = segs[worst];
    const double m = 0.5 * (s.a + s.b);
    Seg left{s.a, m, 0, 0}, right{m, s.b, 0, 0};
    gk15(f, left.a, left.b, left.v, left.e);
    gk15(f, right.a, right.b, right.v, right.e);
    res.evaluations += 30;
    segs[worst] = left;
    segs.push_back(right);
  }
}

inline double one_minus_pow(double w, double d) {
  // 1 - w^d without cancellation for w near 1
  if (w <= 0.0) return 1.0;
  return -std::expm1(d * std::log(w));
}

}  // namespace detail

// P(limit of n^(1/d) * typical cost >= x) = 1/(1 + a x^d)
inline double limit_survival_typical(double d, double x, double a = 1.0) {
  if (!(d > 0.0) || !(a > 0.0)) throw DomainError("limit_survival_typical: need d > 0, a > 0");
  if (!(x >= 0.0)) throw DomainError("limit_survival_typical: need x >= 0");
  return 1.0 / (1.0 + a * std::pow(x, d));
}

inline double limit_cdf_typical(double d, double x, double a = 1.0) {
  const double s = a * std::pow(x, d);
  if (!(d > 0.0) || !(a > 0.0)) throw DomainError("limit_cdf_typical: need d > 0, a > 0");
  if (!(x >= 0.0)) throw DomainError("limit_cdf_typical: need x >= 0");
  return s / (1.0 + s);
}

// p-th moment of the limiting scaled typical cost: a^(-p/d) * p pi / (d sin(p pi/d))
inline double moment_limit(double p, double d, double a = 1.0) {
  if (!(p > 0.0) || !(p < d)) throw DomainError("moment_limit: need 0 < p < d");
  if (!(a > 0.0)) throw DomainError("moment_limit: need a > 0");
  const double pi = std::acos(-1.0);
  return std::pow(a, -p / d) * p * pi / (d * std::sin(p * pi / d));
}

// limit of total cost / n^(1-1/d), d > 1
inline double lln_constant(double d, double a = 1.0) {
  if (!(d > 1.0)) throw DomainError("lln_constant: need d > 1");
  return moment_limit(1.0, d, a);
}

// E Y_k = sum_{i=n-k+1}^{n} 1/i^2, summed ascending
inline double exact_mean_Yk(std::size_t n, std::size_t k) {
  if (n == 0 || k < 1 || k > n) throw RangeError("exact_mean_Yk: need 1 <= k <= n");
  KahanSum s;
  for (std::size_t i = n; i + 1 >= n - k + 2; --i) {
    const double v = static_cast<double>(i);
    s.add(1.0 / (v * v));
    if (i == n - k + 1) break;
  }
  return s.value();
}

// I_a(t) = int_a^t x^(1-1/d) (1-x)^(1/d-1) dx, 0 <= a <= t <= 1, d > 1.
// Substituting w = (1-x)^(1/d) removes the endpoint singularity:
// I = d * int_{(1-t)^(1/d)}^{(1-a)^(1/d)} (1 - w^d)^(1-1/d) dw.
inline QuadratureResult incomplete_beta_I(double a_lo, double t, double d, double tol = 1e-12) {
  if (!(d > 1.0)) throw DomainError("incomplete_beta_I: need d > 1");
  if (!(a_lo >= 0.0) || !(t >= a_lo) || !(t <= 1.0))
    throw DomainError("incomplete_beta_I: need 0 <= a <= t <= 1");
  if (a_lo == t) return {0.0, 0.0, 0};
  const double w_hi = std::pow(1.0 - a_lo, 1.0 / d);
  const double w_lo = std::pow(1.0 - t, 1.0 / d);
  const double e = 1.0 - 1.0 / d;
  auto f = [&](double w) { return std::pow(detail::one_minus_pow(w, d), e); };
  QuadratureResult r = detail::adaptive_gk(f, w_lo, w_hi, tol / d);
  r.value *= d;
  r.abs_error_estimate *= d;
  return r;
}

// Xi_k = sum_{i=k}^{n-kappa_n} (E Y_i)^(1/d - 1)
inline double xi_k(std::size_t n, std::size_t k, std::size_t kappa_n, double d) {
  if (!(d > 1.0)) throw DomainError("xi_k: need d > 1");
  if (kappa_n < 1 || kappa_n >= n) throw RangeError("xi_k: need 1 <= kappa_n < n");
  const std::size_t mn = n - kappa_n;
  if (k < 1 || k > mn) throw RangeError("xi_k: need 1 <= k <= n - kappa_n");
  const double ex = 1.0 / d - 1.0;
  double ey = exact_mean_Yk(n, k);
  KahanSum s;
  for (std::size_t i = k;; ++i) {
    s.add(std::pow(ey, ex));
    if (i == mn) break;
    const double r = static_cast<double>(n - i);
    ey += 1.0 / (r * r);
  }
  return s.value();
}

// sum_{k=lambda_n}^{n-kappa_n} E V_{n,k}
//   = (1/d^2) sum_k Xi_k^2 / (n-k+1)^4   (Var X_k = (n-k+1)^-4)
inline double expected_Vnk_sum(std::size_t n, double d, std::size_t lambda_n,
                               std::size_t kappa_n) {
  if (!(d > 2.0)) throw DomainError("expected_Vnk_sum: need d > 2");
  if (kappa_n < 1 || kappa_n >= n || lambda_n < 1 || lambda_n > n - kappa_n)
    throw RangeError("expected_Vnk_sum: invalid cuts");
  const std::size_t mn = n - kappa_n;
  // forward pass for E Y_i keeps the small-i values accurate
  std::vector<double> ey(mn);
  {
    KahanSum s;
    for (std::size_t i = 1; i <= mn; ++i) {
      const double r = static_cast<double>(n - i + 1);
      s.add(1.0 / (r * r));
      ey[i - 1] = s.value();
    }
  }
  const double ex = 1.0 / d - 1.0;
  KahanSum xi, total;
  for (std::size_t k = mn; k >= lambda_n; --k) {
    xi.add(std::pow(ey[k - 1], ex));
    const double r = static_cast<double>(n - k + 1);
    const double x = xi.value();
    total.add(x * x / (r * r * r * r));
    if (k == lambda_n) break;
  }
  return total.value() / (d * d);
}

namespace detail {

// G(t) = I_0(t)/t^(2-1/d) = sum_j g_j t^j with
// g_j = b_j/(j+2-1/d), b_j = prod_{i<=j} (i-1/d)/i  (binomial series of (1-x)^(1/d-1))
inline std::vector<double> small_t_series(double d, std::size_t terms) {
  std::vector<double> g(terms);
  double b = 1.0;
  for (std::size_t j = 0; j < terms; ++j) {
    const double jj = static_cast<double>(j);
    g[j] = b / (jj + 2.0 - 1.0 / d);
    b *= (jj + 1.0 - 1.0 / d) / (jj + 1.0);
  }
  return g;
}

// J(s) = int_{1-s}^{1} x^(1-1/d)(1-x)^(1/d-1) dx
//      = sum_j d c_j s^(j+1/d)/(jd+1), c_j = prod_{i<=j} (i-2+1/d)/i
// (w-substituted tail integral; converges fast for s <= 1/2)
struct TailSeries {
  double d;
  std::vector<double> coef;  // d*c_j/(j*d+1)
  explicit TailSeries(double dd, std::size_t terms = 80) : d(dd), coef(terms) {
    double c = 1.0;
    for (std::size_t j = 0; j < terms; ++j) {
      const double jj = static_cast<double>(j);
      coef[j] = d * c / (jj * d + 1.0);
      c *= (jj - 1.0 + 1.0 / d) / (jj + 1.0);
    }
  }
  double operator()(double s) const {
    const double s1d = std::pow(s, 1.0 / d);
    double acc = 0.0, p = s1d;
    for (double cj : coef) {
      acc += cj * p;
      p *= s;
    }
    return acc;
  }
};

}  // namespace detail

// gamma(d) = a^(-2/d)/d^2 * int_0^1 t^-4 I_0(t)^2 dt, d > 2.
// [0,1/2]: termwise integration of the G(t)^2 power series against t^(-2/d).
// [1/2,1]: substitute t = 1-s and use I_0 = I_0(1) - J(s) with the fast tail
// series; I_0(1) = Gamma(2-1/d)Gamma(1/d).
inline QuadratureResult gamma_d(double d, double tol = 1e-10, double a = 1.0) {
  if (!(d > 2.0)) throw DomainError("gamma_d: need d > 2 (integral diverges otherwise)");
  if (!(tol > 0.0)) throw DomainError("gamma_d: need tol > 0");
  if (!(a > 0.0)) throw DomainError("gamma_d: need a > 0");
  const double scale = std::pow(a, -2.0 / d) / (d * d);
  const double budget = tol / scale;  // tolerance for the raw integral

  QuadratureResult res;

  // series part on [0, 1/2]
  {
    constexpr std::size_t M = 160;
    const auto g = detail::small_t_series(d, M);
    KahanSum acc;
    double term = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      double h = 0.0;
      for (std::size_t j = 0; j <= m; ++j) h += g[j] * g[m - j];
      const double mm = static_cast<double>(m);
      const double p = mm + 1.0 - 2.0 / d;
      term = h * std::pow(0.5, p) / p;
      acc.add(term);
      if (m > 8 && term < 0.125 * budget * 0.25) break;
    }
    res.value = acc.value();
    res.abs_error_estimate = term;  // next terms shrink at least geometrically (ratio ~1/2)
    res.evaluations = 0;
  }

  // quadrature part on [1/2, 1] via s = 1-t
  {
    const double i01 = std::tgamma(2.0 - 1.0 / d) * std::tgamma(1.0 / d);
    const detail::TailSeries J(d);
    auto f = [&](double s) {
      const double t = 1.0 - s;
      const double i0 = i01 - J(s);
      return i0 * i0 / (t * t * t * t);
    };
    QuadratureResult part = detail::adaptive_gk(f, 0.0, 0.5, 0.5 * budget);
    res.value += part.value;
    res.abs_error_estimate += part.abs_error_estimate;
    res.evaluations += part.evaluations;
  }

  res.value *= scale;
  res.abs_error_estimate *= scale;
  return res;
}

}  // namespace smlab
