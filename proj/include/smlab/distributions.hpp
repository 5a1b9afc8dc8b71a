#pragma once

// Edge-cost distributions. Each carries its pseudo-dimension metadata:
// d and a such that cdf(z) = a*z^d*(1 + O(z^zeta)) as z -> 0+.

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "errors.hpp"
#include "rng.hpp"

namespace smlab {

enum class DistKind { Exponential, Weibull, MaxUniform, ChiSquared, Custom };

struct DistributionSpec {
  DistKind kind = DistKind::Weibull;
  double shape = 1.0;  // Weibull shape
  double scale = 1.0;  // Weibull scale
  int degree = 1;      // MaxUniform d, ChiSquared degrees of freedom
};

class Distribution {
 public:
  static Distribution exponential() {
    Distribution d;
    d.kind_ = DistKind::Exponential;
    d.d_ = 1.0;
    d.a_ = 1.0;
    d.zeta_ = 1.0;
    return d;
  }

  static Distribution weibull(double shape, double scale = 1.0) {
    if (!(shape > 0.0) || !std::isfinite(shape))
      throw InvalidParameter("weibull: shape must be positive");
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw InvalidParameter("weibull: scale must be positive");
    Distribution d;
    d.kind_ = DistKind::Weibull;
    d.shape_ = shape;
    d.scale_ = scale;
    d.d_ = shape;
    d.a_ = std::pow(scale, -shape);
    d.zeta_ = shape;
    return d;
  }

  static Distribution max_uniform(int degree) {
    if (degree < 1) throw InvalidParameter("max_uniform: degree must be >= 1");
    Distribution d;
    d.kind_ = DistKind::MaxUniform;
    d.degree_ = degree;
    d.d_ = static_cast<double>(degree);
    d.a_ = 1.0;
    d.zeta_ = std::numeric_limits<double>::infinity();  // cdf is exactly z^d on [0,1]
    return d;
  }

  static Distribution chi_squared(int k) {
    if (k < 1) throw InvalidParameter("chi_squared: degrees of freedom must be >= 1");
    Distribution d;
    d.kind_ = DistKind::ChiSquared;
    d.degree_ = k;
    d.d_ = 0.5 * k;
    // density ~ d*a*x^(d-1) near 0 with a = 1/(2^d Gamma(d+1))
    d.a_ = std::exp(-(d.d_ * std::log(2.0) + std::lgamma(d.d_ + 1.0)));
    d.zeta_ = 1.0;
    return d;
  }

  static Distribution custom(std::function<double(double)> cdf,
                             std::function<double(double)> quantile, double d, double a,
                             std::optional<double> zeta = std::nullopt) {
    if (!cdf || !quantile) throw InvalidParameter("custom: cdf and quantile required");
    if (!(d > 0.0) || !(a > 0.0)) throw InvalidParameter("custom: need d > 0 and a > 0");
    Distribution out;
    out.kind_ = DistKind::Custom;
    out.cdf_fn_ = std::move(cdf);
    out.quantile_fn_ = std::move(quantile);
    out.d_ = d;
    out.a_ = a;
    out.zeta_ = zeta;
    return out;
  }

  double cdf(double x) const {
    if (std::isnan(x)) throw DomainError("cdf: NaN argument");
    if (x <= 0.0) return 0.0;
    switch (kind_) {
      case DistKind::Exponential:
        return -std::expm1(-x);
      case DistKind::Weibull:
        return -std::expm1(-std::pow(x / scale_, shape_));
      case DistKind::MaxUniform:
        return x >= 1.0 ? 1.0 : std::pow(x, static_cast<double>(degree_));
      case DistKind::ChiSquared:
        return boost::math::gamma_p(0.5 * degree_, 0.5 * x);
      case DistKind::Custom:
        return cdf_fn_(x);
    }
    return 0.0;
  }

  // inverse cdf; defined for 0 <= u < 1
  double quantile(double u) const {
    if (!(u >= 0.0) || u >= 1.0) throw DomainError("quantile: need 0 <= u < 1");
    switch (kind_) {
      case DistKind::Exponential:
        return -std::log1p(-u);
      case DistKind::Weibull:
        return scale_ * std::pow(-std::log1p(-u), 1.0 / shape_);
      case DistKind::MaxUniform:
        return std::pow(u, 1.0 / static_cast<double>(degree_));
      case DistKind::ChiSquared:
        return chi2_quantile(u);
      case DistKind::Custom:
        return quantile_fn_(u);
    }
    return 0.0;
  }

  double sample(Rng& rng) const { return quantile(rng.uniform01()); }

  // Map an exponential-base cost y to this distribution through the uniform
  // level u = 1 - exp(-y). Strictly increasing in y, so it preserves the
  // edge ordering and the induced matching.
  double couple_from_exponential(double y_exp) const {
    if (!(y_exp >= 0.0)) throw DomainError("couple_from_exponential: need y >= 0");
    switch (kind_) {
      case DistKind::Exponential:
        return y_exp;
      case DistKind::Weibull:
        // closed form; avoids the u -> 1 roundoff for large y
        return scale_ * std::pow(y_exp, 1.0 / shape_);
      default: {
        double u = -std::expm1(-y_exp);
        constexpr double kMaxU = 1.0 - 0x1.0p-53;
        if (u > kMaxU) u = kMaxU;
        return quantile(u);
      }
    }
  }

  double pseudo_dimension() const { return d_; }
  double scale_constant() const { return a_; }
  std::optional<double> zeta() const { return zeta_; }
  DistKind kind() const { return kind_; }

  std::string name() const {
    std::ostringstream os;
    switch (kind_) {
      case DistKind::Exponential:
        return "exponential";
      case DistKind::Weibull:
        os << "weibull(shape=" << shape_ << ",scale=" << scale_ << ")";
        return os.str();
      case DistKind::MaxUniform:
        os << "max_uniform(d=" << degree_ << ")";
        return os.str();
      case DistKind::ChiSquared:
        os << "chi_squared(k=" << degree_ << ")";
        return os.str();
      case DistKind::Custom:
        return "custom";
    }
    return "?";
  }

 private:
  Distribution() = default;

  double chi2_quantile(double u) const {
    if (u == 0.0) return 0.0;
    return 2.0 * boost::math::gamma_p_inv(0.5 * degree_, u);
  }

  DistKind kind_ = DistKind::Exponential;
  double shape_ = 1.0;
  double scale_ = 1.0;
  int degree_ = 1;
  double d_ = 1.0;
  double a_ = 1.0;
  std::optional<double> zeta_;
  std::function<double(double)> cdf_fn_;
  std::function<double(double)> quantile_fn_;
};

inline Distribution make_distribution(const DistributionSpec& spec) {
  switch (spec.kind) {
    case DistKind::Exponential:
      return Distribution::exponential();
    case DistKind::Weibull:
      return Distribution::weibull(spec.shape, spec.scale);
    case DistKind::MaxUniform:
      return Distribution::max_uniform(spec.degree);
    case DistKind::ChiSquared:
      return Distribution::chi_squared(spec.degree);
    case DistKind::Custom:
      throw InvalidParameter("make_distribution: custom distributions are built in code");
  }
  throw InvalidParameter("make_distribution: unknown kind");
}

inline double quantile_couple(const Distribution& dist, double y_exp) {
  return dist.couple_from_exponential(y_exp);
}

}  // namespace smlab
