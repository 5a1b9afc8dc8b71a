#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <smlab/distributions.hpp>
#include <smlab/matching.hpp>
#include <smlab/recursion.hpp>
#include <smlab/rng.hpp>
#include <smlab/stats.hpp>
#include <smlab/theory.hpp>

using namespace smlab;

TEST_CASE("exponential representation shape", "[recursion]") {
  Rng rng(100, 0);
  const CostSequence s = sample_exp_sequence(50, rng);
  REQUIRE(s.n() == 50);
  REQUIRE(s.increments.size() == 50);
  CHECK(s.view == View::ExpBase);
  CHECK(std::is_sorted(s.values.begin(), s.values.end()));
  double acc = 0.0;
  for (std::size_t k = 0; k < 50; ++k) {
    CHECK(s.increments[k] > 0.0);
    acc += s.increments[k];
    CHECK(s.base[k] == Catch::Approx(acc).epsilon(1e-12));
  }
  Rng rng2(100, 0);
  const CostSequence t = sample_exp_sequence(50, rng2);
  CHECK(t.values == s.values);
}

TEST_CASE("first matched cost scales like an n^2-rate exponential", "[recursion]") {
  const std::size_t n = 50;
  const int reps = 10000;
  std::vector<double> y1;
  y1.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    Rng rng(2025, static_cast<std::uint64_t>(r));
    y1.push_back(static_cast<double>(n * n) * sample_exp_sequence(n, rng).values.front());
  }
  const double ks = ks_statistic(EcdfSample{y1}, [](double x) { return -std::expm1(-x); });
  CHECK(ks <= 0.02);
}

TEST_CASE("empirical mean of the last coordinate matches the exact series", "[recursion]") {
  const std::size_t n = 10;
  SummaryStats s;
  for (int r = 0; r < 100000; ++r) {
    Rng rng(7, static_cast<std::uint64_t>(r));
    s.update(sample_exp_sequence(n, rng).values.back());
  }
  const double ref = exact_mean_Yk(n, n);  // 1.5497677311665408
  CHECK(ref == Catch::Approx(1.5497677311665408).epsilon(1e-14));
  const double se = s.stddev() / std::sqrt(100000.0);
  CHECK(std::abs(s.mean() - ref) <= 4.0 * se);
}

TEST_CASE("transform to weibull applies the power law", "[recursion]") {
  Rng rng(3, 3);
  const CostSequence base = sample_exp_sequence(20, rng);
  const Distribution w = Distribution::weibull(2.0, 1.5);
  const CostSequence t = transform_sequence(base, w);
  CHECK(t.view == View::Weibull);
  CHECK(t.weibull_d == 2.0);
  for (std::size_t i = 0; i < 20; ++i)
    CHECK(t.values[i] == Catch::Approx(1.5 * std::sqrt(base.base[i])).epsilon(1e-14));
  CHECK(std::is_sorted(t.values.begin(), t.values.end()));
}

TEST_CASE("transform to exponential is a passthrough copy", "[recursion]") {
  Rng rng(4, 1);
  const CostSequence base = sample_exp_sequence(10, rng);
  const CostSequence t = transform_sequence(base, Distribution::exponential());
  CHECK(t.values == base.base);
  CHECK(t.view != View::ExpBase);
}

TEST_CASE("generic coupling transform matches per-element coupling", "[recursion]") {
  Rng rng(5, 9);
  const CostSequence base = sample_exp_sequence(15, rng);
  const Distribution c4 = Distribution::chi_squared(4);
  const CostSequence t = transform_sequence(base, c4);
  CHECK(t.view == View::Coupled);
  for (std::size_t i = 0; i < 15; ++i)
    CHECK(t.values[i] == Catch::Approx(c4.couple_from_exponential(base.base[i])).epsilon(1e-13));
  CHECK(std::is_sorted(t.values.begin(), t.values.end()));
}

TEST_CASE("transform rejects non-base views", "[recursion]") {
  Rng rng(6, 0);
  const CostSequence base = sample_exp_sequence(5, rng);
  const CostSequence once = transform_sequence(base, Distribution::weibull(3.0));
  CHECK_THROWS_AS(transform_sequence(once, Distribution::weibull(3.0)), ViewError);
}

TEST_CASE("total and typical cost", "[recursion]") {
  Rng rng(8, 2);
  CostSequence s = sample_exp_sequence(100, rng);
  s = transform_sequence(s, Distribution::weibull(2.0));
  double plain = 0.0;
  for (double v : s.values) plain += v;
  CHECK(total_cost(s) == Catch::Approx(plain).epsilon(1e-12));
  for (int i = 0; i < 200; ++i) {
    const double c = typical_cost(s, rng);
    CHECK(std::find(s.values.begin(), s.values.end(), c) != s.values.end());
  }
}

TEST_CASE("resampling one coordinate shifts exactly the suffix", "[recursion]") {
  Rng rng(12, 4);
  const CostSequence s = sample_exp_sequence(30, rng);
  const std::size_t k = 11;
  const CostSequence r = resample_coordinate(s, k, rng);
  REQUIRE(r.n() == s.n());
  const double delta = r.increments[k - 1] - s.increments[k - 1];
  for (std::size_t j = 0; j < 30; ++j) {
    if (j + 1 < k) {
      CHECK(r.base[j] == s.base[j]);
      CHECK(r.increments[j] == s.increments[j]);
    } else if (j + 1 == k) {
      CHECK(r.increments[j] > 0.0);
    } else {
      CHECK(r.increments[j] == s.increments[j]);
      CHECK(r.base[j] == Catch::Approx(s.base[j] + delta).epsilon(1e-12));
    }
  }
  CHECK(std::is_sorted(r.base.begin(), r.base.end()));
  CHECK_THROWS_AS(resample_coordinate(s, 0, rng), IndexError);
  CHECK_THROWS_AS(resample_coordinate(s, 31, rng), IndexError);
  const CostSequence t = transform_sequence(s, Distribution::weibull(2.0));
  CHECK_THROWS_AS(resample_coordinate(t, 3, rng), ViewError);
}

TEST_CASE("segment costs partition the total", "[recursion]") {
  Rng rng(13, 1);
  CostSequence s = sample_exp_sequence(500, rng);
  s = transform_sequence(s, Distribution::weibull(3.0));
  const SegmentSplit sp = segment_costs(s, {20, 30});
  CHECK(sp.w1 + sp.w2 + sp.w3 == Catch::Approx(total_cost(s)).epsilon(1e-9));
  CHECK(sp.w1 > 0.0);
  CHECK(sp.w2 > 0.0);
  CHECK(sp.w3 > 0.0);
  CHECK_THROWS_AS(segment_costs(s, {0, 30}), RangeError);
  CHECK_THROWS_AS(segment_costs(s, {400, 200}), RangeError);
}

TEST_CASE("segment split hand case", "[recursion]") {
  CostSequence s;
  s.view = View::Observed;
  s.values = {1.0, 2.0, 4.0, 8.0, 16.0};
  const SegmentSplit sp = segment_costs(s, {2, 1});
  CHECK(sp.w1 == 1.0);          // k < 2
  CHECK(sp.w2 == 2.0 + 4.0 + 8.0);  // 2 <= k <= 4
  CHECK(sp.w3 == 16.0);         // k > 4
}

TEST_CASE("default cuts formulas", "[recursion]") {
  const Cuts c = default_cuts(10000, 4.0);
  CHECK(c.lambda_n == 159);  // ceil(n^(0.5 + 1/20))
  CHECK(c.kappa_n == 7197);  // ceil(log(n)^4)
  const Cuts small = default_cuts(100, 3.0);
  CHECK(small.lambda_n >= 1);
  CHECK(small.lambda_n + small.kappa_n <= 100);
  CHECK_THROWS_AS(default_cuts(2, 3.0), DomainError);
  CHECK_THROWS_AS(default_cuts(100, 1.0), DomainError);
}

TEST_CASE("recursion law matches the direct engine on small instances", "[recursion]") {
  const std::size_t n = 6;
  const int reps = 4000;
  std::vector<double> tot_direct, tot_rec;
  const Distribution expo = Distribution::exponential();
  for (int r = 0; r < reps; ++r) {
    Rng rng_d(55, static_cast<std::uint64_t>(2 * r));
    const CostMatrix cm = generate_instance(n, expo, rng_d);
    const Matching m = greedy_stable_matching(cm);
    tot_direct.push_back(total_cost(sorted_matched_costs(cm, m)));
    Rng rng_r(55, static_cast<std::uint64_t>(2 * r + 1));
    tot_rec.push_back(total_cost(sample_exp_sequence(n, rng_r)));
  }
  const double ks = ks_two_sample(EcdfSample{tot_direct}, EcdfSample{tot_rec});
  CHECK(ks <= 0.05);  // ~2.7x the 5 sigma band at 4000 vs 4000
}
