#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include <smlab/theory.hpp>

using namespace smlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("limit survival and cdf of the scaled typical cost", "[theory]") {
  CHECK(limit_survival_typical(2.0, 0.0) == 1.0);
  CHECK(limit_survival_typical(2.0, 1.0) == Catch::Approx(0.5).epsilon(1e-15));
  CHECK(limit_survival_typical(3.0, 2.0) == Catch::Approx(1.0 / 9.0).epsilon(1e-15));
  for (double x : {0.0, 0.3, 1.0, 4.0})
    CHECK(limit_survival_typical(2.5, x, 0.7) + limit_cdf_typical(2.5, x, 0.7) ==
          Catch::Approx(1.0).margin(1e-15));
  // scale constant enters as a x^d
  CHECK(limit_survival_typical(2.0, 3.0, 0.5) ==
        Catch::Approx(limit_survival_typical(1.0, 0.5 * 9.0)).epsilon(1e-14));
  CHECK_THROWS_AS(limit_survival_typical(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(limit_survival_typical(2.0, -0.1), DomainError);
}

TEST_CASE("moment formula against the gamma reflection identity", "[theory]") {
  // p pi / (d sin(p pi/d)) = Gamma(1+p/d) Gamma(1-p/d)
  for (double d : {1.5, 2.0, 3.0, 4.0, 7.5}) {
    for (double p : {0.5, 1.0, 1.9}) {
      if (!(p < d)) continue;
      const double ref = std::tgamma(1.0 + p / d) * std::tgamma(1.0 - p / d);
      CHECK(moment_limit(p, d) == Catch::Approx(ref).epsilon(1e-13));
    }
  }
  CHECK(moment_limit(1.0, 2.0) == Catch::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(moment_limit(1.0, 3.0) == Catch::Approx(1.2091995761561452).epsilon(1e-14));
  CHECK_THROWS_AS(moment_limit(2.0, 2.0), DomainError);
  CHECK_THROWS_AS(moment_limit(0.0, 2.0), DomainError);
  // scale correction a^{-p/d}
  CHECK(moment_limit(1.0, 3.0, 8.0) ==
        Catch::Approx(0.5 * moment_limit(1.0, 3.0)).epsilon(1e-14));
}

TEST_CASE("lln constant", "[theory]") {
  CHECK(lln_constant(3.0) == Catch::Approx(1.2091995761561452).epsilon(1e-14));
  CHECK(lln_constant(3.0, 8.0) == Catch::Approx(lln_constant(3.0) / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(lln_constant(1.0), DomainError);
}

TEST_CASE("exact mean of Y_k hand values", "[theory]") {
  CHECK(exact_mean_Yk(3, 1) == Catch::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(exact_mean_Yk(3, 2) == Catch::Approx(13.0 / 36.0).epsilon(1e-15));
  CHECK(exact_mean_Yk(3, 3) == Catch::Approx(49.0 / 36.0).epsilon(1e-15));
  CHECK(exact_mean_Yk(10, 10) == Catch::Approx(1.5497677311665408).epsilon(1e-15));
  CHECK_THROWS_AS(exact_mean_Yk(3, 0), RangeError);
  CHECK_THROWS_AS(exact_mean_Yk(3, 4), RangeError);
}

TEST_CASE("mean bracket for Y_k", "[theory]") {
  // 1/(n-k+1) - 1/n <= E Y_k <= 1/(n-k) - 1/n for k < n
  for (std::size_t n : {10u, 100u, 1000u}) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 1; k < n; ++k) {
      const double ey = exact_mean_Yk(n, k);
      const double lo = 1.0 / static_cast<double>(n - k + 1) - inv_n;
      const double hi = 1.0 / static_cast<double>(n - k) - inv_n;
      CHECK(ey >= lo - 1e-15);
      CHECK(ey <= hi + 1e-15);
    }
    CHECK(exact_mean_Yk(n, n) <= kPi * kPi / 6.0);
  }
}

TEST_CASE("incomplete beta integral values", "[theory]") {
  // I_0(1) = Gamma(2-1/d) Gamma(1/d); d = 2 gives pi/2
  const QuadratureResult half = incomplete_beta_I(0.0, 1.0, 2.0);
  CHECK(half.value == Catch::Approx(kPi / 2.0).margin(1e-10));
  CHECK(half.evaluations > 0);
  CHECK(std::abs(half.value - kPi / 2.0) <= 10.0 * half.abs_error_estimate + 1e-13);
  for (double d : {2.5, 3.0, 4.0, 6.0}) {
    const double ref = std::tgamma(2.0 - 1.0 / d) * std::tgamma(1.0 / d);
    CHECK(incomplete_beta_I(0.0, 1.0, d).value == Catch::Approx(ref).margin(1e-9));
  }
  // frozen reference: d=3, t=0.3
  CHECK(incomplete_beta_I(0.0, 0.3, 3.0).value ==
        Catch::Approx(0.093080405674129313).margin(1e-11));
}

TEST_CASE("incomplete beta additivity and degenerate cases", "[theory]") {
  const double whole = incomplete_beta_I(0.0, 0.8, 3.0).value;
  const double a = incomplete_beta_I(0.0, 0.3, 3.0).value;
  const double b = incomplete_beta_I(0.3, 0.8, 3.0).value;
  CHECK(a + b == Catch::Approx(whole).margin(1e-10));
  CHECK(incomplete_beta_I(0.4, 0.4, 3.0).value == 0.0);
  CHECK_THROWS_AS(incomplete_beta_I(-0.1, 0.5, 3.0), DomainError);
  CHECK_THROWS_AS(incomplete_beta_I(0.6, 0.5, 3.0), DomainError);
  CHECK_THROWS_AS(incomplete_beta_I(0.0, 1.1, 3.0), DomainError);
  CHECK_THROWS_AS(incomplete_beta_I(0.0, 0.5, 1.0), DomainError);
}

TEST_CASE("xi sum dual route", "[theory]") {
  // definition vs the incremental implementation
  const std::size_t n = 100, kap = 5, k = 50;
  const double d = 3.0;
  double direct = 0.0;
  for (std::size_t i = k; i <= n - kap; ++i)
    direct += std::pow(exact_mean_Yk(n, i), 1.0 / d - 1.0);
  CHECK(xi_k(n, k, kap, d) == Catch::Approx(direct).epsilon(1e-12));
  CHECK_THROWS_AS(xi_k(n, 0, kap, d), RangeError);
  CHECK_THROWS_AS(xi_k(n, 96, kap, d), RangeError);
  CHECK_THROWS_AS(xi_k(n, 10, 0, d), RangeError);
  CHECK_THROWS_AS(xi_k(n, 10, kap, 1.0), DomainError);
}

TEST_CASE("variance proxy sum: single-window closed form", "[theory]") {
  // With lambda = n - kappa the sum collapses to Xi^2/(d^2 (kappa+1)^4).
  const std::size_t n = 100, kap = 5;
  const double d = 4.0;
  const double xi = xi_k(n, n - kap, kap, d);
  const double want = xi * xi / (d * d * std::pow(6.0, 4.0));
  CHECK(expected_Vnk_sum(n, d, n - kap, kap) == Catch::Approx(want).epsilon(1e-13));
  CHECK_THROWS_AS(expected_Vnk_sum(n, 2.0, 50, kap), DomainError);
  CHECK_THROWS_AS(expected_Vnk_sum(n, d, 96, kap), RangeError);
}

TEST_CASE("variance proxy sum approaches the variance constant", "[theory]") {
  // sum_k E V_{n,k} ~ gamma(d) sqrt(n) at d=4 (cuts chosen inside the bulk)
  const double v = expected_Vnk_sum(10000, 4.0, 100, 10);
  const double g4 = gamma_d(4.0).value;
  CHECK(v / 100.0 == Catch::Approx(g4).epsilon(0.10));
}

TEST_CASE("variance constant reference values", "[theory]") {
  struct Row {
    double d, gamma;
  };
  // frozen against an independent high-accuracy evaluation of the integral
  const Row rows[] = {
      {2.1, 2.1686033530276}, {2.5, 0.4013318318466}, {3.0, 0.1864496935371},
      {4.0, 0.0828404122084}, {5.0, 0.0498531795798}, {6.0, 0.0340568111673},
      {8.0, 0.0192227854550}, {12.0, 0.0087830573150},
  };
  for (const auto& r : rows) {
    const QuadratureResult q = gamma_d(r.d);
    CHECK(q.value == Catch::Approx(r.gamma).margin(1e-9));
    CHECK(q.abs_error_estimate <= 1e-9);
  }
}

TEST_CASE("variance constant scale correction and refinement", "[theory]") {
  // 16^(-2/4) = 1/4; both sides carry up to their requested absolute tolerance
  CHECK(gamma_d(4.0, 1e-10, 16.0).value ==
        Catch::Approx(gamma_d(4.0).value / 4.0).margin(2e-10));
  for (double d : {2.5, 3.0, 4.0, 6.0})
    CHECK(std::abs(gamma_d(d, 1e-8).value - gamma_d(d, 1e-10).value) <= 1e-7);
  CHECK_THROWS_AS(gamma_d(2.0), DomainError);
  CHECK_THROWS_AS(gamma_d(1.5), DomainError);
  CHECK_THROWS_AS(gamma_d(3.0, 0.0), DomainError);
  CHECK_THROWS_AS(gamma_d(3.0, 1e-10, 0.0), DomainError);
}

TEST_CASE("xi sandwich between incomplete beta integrals", "[theory]") {
  // n^{2-1/d} I_{(kappa-1)/n}((n-k)/n) <= Xi_k <= n^{2-1/d} I_0((n-k+2)/n)
  const double d = 4.0;
  for (std::size_t n : {30u, 100u, 500u, 2000u}) {
    const std::size_t kap = (n + 9) / 10;
    const std::size_t mn = n - kap;
    const double pow_n = std::pow(static_cast<double>(n), 2.0 - 1.0 / d);
    for (std::size_t k = 2; k <= mn; k += std::max<std::size_t>(1, mn / 7)) {
      const double xi = xi_k(n, k, kap, d);
      const double lo =
          pow_n * incomplete_beta_I(static_cast<double>(kap - 1) / static_cast<double>(n),
                                    static_cast<double>(n - k) / static_cast<double>(n), d)
                      .value;
      const double hi =
          pow_n * incomplete_beta_I(
                      0.0, std::min(1.0, static_cast<double>(n - k + 2) / static_cast<double>(n)), d)
                      .value;
      CHECK(lo <= xi);
      CHECK(xi <= hi);
    }
  }
}
