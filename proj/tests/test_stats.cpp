#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <smlab/rng.hpp>
#include <smlab/stats.hpp>

using namespace smlab;

TEST_CASE("kahan sum is exact on the classic 0.1 case", "[stats]") {
  KahanSum s;
  for (int i = 0; i < 10; ++i) s.add(0.1);
  CHECK(std::abs(s.value() - 1.0) <= 1e-15);
}

TEST_CASE("summary stats hand values", "[stats]") {
  SummaryStats s;
  s.update(1.0);
  s.update(2.0);
  s.update(3.0);
  CHECK(s.count() == 3);
  CHECK(s.mean() == Catch::Approx(2.0).margin(1e-15));
  CHECK(s.variance() == Catch::Approx(1.0).margin(1e-15));
  CHECK(s.min() == 1.0);
  CHECK(s.max() == 3.0);
}

TEST_CASE("variance is flagged for tiny samples", "[stats]") {
  SummaryStats s;
  CHECK_THROWS_AS(s.mean(), EmptySample);
  s.update(5.0);
  CHECK(s.count() == 1);
  CHECK_THROWS_AS(s.variance(), DegenerateSample);
}

TEST_CASE("non-finite updates are rejected", "[stats]") {
  SummaryStats s;
  CHECK_THROWS_AS(s.update(std::numeric_limits<double>::quiet_NaN()), NonFinite);
  CHECK_THROWS_AS(s.update(std::numeric_limits<double>::infinity()), NonFinite);
}

TEST_CASE("merge equals pooled accumulation", "[stats]") {
  SummaryStats a, b, whole;
  a.update(1.0);
  a.update(2.0);
  b.update(3.0);
  for (double x : {1.0, 2.0, 3.0}) whole.update(x);
  SummaryStats m = a;
  m.merge(b);
  CHECK(m.count() == whole.count());
  CHECK(m.mean() == Catch::Approx(whole.mean()).epsilon(1e-14));
  CHECK(m.variance() == Catch::Approx(whole.variance()).epsilon(1e-14));
}

TEST_CASE("merge is associative and commutative at fp tolerance", "[stats]") {
  Rng rng(31, 0);
  SummaryStats parts[3];
  for (int p = 0; p < 3; ++p)
    for (int i = 0; i < 257; ++i) parts[p].update(rng.uniform01() * 10.0 - 3.0);
  auto merged = [](const SummaryStats& x, const SummaryStats& y) {
    SummaryStats m = x;
    m.merge(y);
    return m;
  };
  const SummaryStats ab_c = merged(merged(parts[0], parts[1]), parts[2]);
  const SummaryStats a_bc = merged(parts[0], merged(parts[1], parts[2]));
  const SummaryStats ba_c = merged(merged(parts[1], parts[0]), parts[2]);
  CHECK(ab_c.count() == a_bc.count());
  CHECK(ab_c.mean() == Catch::Approx(a_bc.mean()).epsilon(1e-12));
  CHECK(ab_c.variance() == Catch::Approx(a_bc.variance()).epsilon(1e-12));
  CHECK(ab_c.mean() == Catch::Approx(ba_c.mean()).epsilon(1e-12));
  CHECK(ab_c.variance() == Catch::Approx(ba_c.variance()).epsilon(1e-12));
}

TEST_CASE("ecdf evaluation and validation", "[stats]") {
  EcdfSample e{{3.0, 1.0, 2.0}};
  CHECK(e.size() == 3);
  CHECK(e(0.5) == 0.0);
  CHECK(e(1.0) == Catch::Approx(1.0 / 3.0));
  CHECK(e(2.5) == Catch::Approx(2.0 / 3.0));
  CHECK(e(3.0) == 1.0);
  CHECK_THROWS_AS(EcdfSample{std::vector<double>{}}, EmptySample);
  CHECK_THROWS_AS((EcdfSample{std::vector<double>{1.0, std::nan("")}}), NonFinite);
}

TEST_CASE("ks statistic on the plug-in quantile grid", "[stats]") {
  // x_i = F^{-1}((i-0.5)/n) makes both one-sided gaps equal 0.5/n
  const int n = 100;
  std::vector<double> xs;
  for (int i = 1; i <= n; ++i) xs.push_back(-std::log(1.0 - (i - 0.5) / n));
  const EcdfSample e{xs};
  const double d = ks_statistic(e, [](double x) { return 1.0 - std::exp(-x); });
  CHECK(d == Catch::Approx(0.5 / n).margin(1e-12));
}

TEST_CASE("ks statistic hand cases", "[stats]") {
  // all mass at or above 1 against F with F(1) = 0.5
  EcdfSample big{{1.0, 1.5, 2.0, 5.0}};
  const double d = ks_statistic(big, [](double x) { return 1.0 - 1.0 / (1.0 + x); });
  CHECK(d >= 0.5);
  // single point with F(x) = 0.5
  EcdfSample one{{0.0}};
  CHECK(ks_statistic(one, [](double) { return 0.5; }) == Catch::Approx(0.5));
}

TEST_CASE("ks against own ecdf is at most 1/n", "[stats]") {
  Rng rng(8, 8);
  std::vector<double> xs;
  for (int i = 0; i < 313; ++i) xs.push_back(rng.uniform01() * 4.0);
  const EcdfSample e{xs};
  const double d = ks_statistic(e, [&](double x) { return e(x); });
  CHECK(d <= 1.0 / 313 + 1e-14);
}

TEST_CASE("ks is invariant under increasing reparameterization", "[stats]") {
  Rng rng(11, 2);
  std::vector<double> xs, ys;
  for (int i = 0; i < 200; ++i) {
    const double x = rng.standard_exp();
    xs.push_back(x);
    ys.push_back(std::exp(x));  // strictly increasing map
  }
  auto f = [](double x) { return 1.0 - std::exp(-0.7 * x); };
  const double d1 = ks_statistic(EcdfSample{xs}, f);
  const double d2 = ks_statistic(EcdfSample{ys}, [&](double y) { return f(std::log(y)); });
  CHECK(d1 == Catch::Approx(d2).margin(1e-14));
}

TEST_CASE("two-sample ks hand value", "[stats]") {
  const double d = ks_two_sample(EcdfSample{{1.0, 2.0, 3.0}}, EcdfSample{{1.5, 2.5}});
  CHECK(d == Catch::Approx(1.0 / 3.0).margin(1e-14));
  // identical samples
  CHECK(ks_two_sample(EcdfSample{{1.0, 2.0}}, EcdfSample{{1.0, 2.0}}) ==
        Catch::Approx(0.0).margin(1e-14));
  // disjoint supports
  CHECK(ks_two_sample(EcdfSample{{1.0, 2.0}}, EcdfSample{{5.0, 6.0}}) == Catch::Approx(1.0));
}

TEST_CASE("normal cdf values and symmetry", "[stats]") {
  CHECK(normal_cdf(0.0) == Catch::Approx(0.5).margin(1e-15));
  CHECK(normal_cdf(1.959964) == Catch::Approx(0.97500000090355765).margin(1e-9));
  for (double x : {0.1, 0.7, 1.3, 2.9, 4.5})
    CHECK(normal_cdf(-x) == Catch::Approx(1.0 - normal_cdf(x)).margin(1e-15));
}

TEST_CASE("standardize normalizes and is affine invariant", "[stats]") {
  const std::vector<double> two{-1.0, 1.0};
  const auto z2 = standardize(two);
  CHECK(z2[0] == Catch::Approx(-1.0).margin(1e-15));
  CHECK(z2[1] == Catch::Approx(1.0).margin(1e-15));
  Rng rng(4, 4);
  std::vector<double> xs, affine;
  for (int i = 0; i < 500; ++i) xs.push_back(rng.uniform01() * 3.0 + rng.standard_exp());
  for (double x : xs) affine.push_back(2.5 * x - 7.0);
  const auto za = standardize(xs);
  const auto zb = standardize(affine);
  SummaryStats s;
  for (std::size_t i = 0; i < za.size(); ++i) {
    CHECK(za[i] == Catch::Approx(zb[i]).margin(1e-12));
    s.update(za[i]);
  }
  const double n = static_cast<double>(s.count());
  CHECK(std::abs(s.mean()) <= 1e-12);
  CHECK(std::abs(s.variance() * (n - 1.0) / n - 1.0) <= 1e-12);
  CHECK_THROWS_AS(standardize(std::vector<double>{2.0, 2.0, 2.0}), DegenerateSample);
}
