#pragma once

// Experiment runner: executes replications in parallel with per-replication
// RNG streams and folds results in replication order, so every statistic is
// independent of the thread count. Thread resolution order: config value,
// SMLAB_THREADS, hardware concurrency.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "config.hpp"
#include "distributions.hpp"
#include "errors.hpp"
#include "matching.hpp"
#include "recursion.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "theory.hpp"

namespace smlab {

// Check thresholds applied by --check. Values match the repo's calibrated
// acceptance experiments (see README and tests/acceptance).
namespace checks {
inline constexpr double kTypicalCostKs = 0.03;
inline constexpr double kLlnRelError = 0.06;
inline constexpr double kVarianceRelError = 0.15;
inline constexpr double kCltKs = 0.05;
inline constexpr double kSegmentsBulkLo = 0.85;
inline constexpr double kSegmentsBulkHi = 1.15;
inline constexpr double kEngineKs = 0.035;
inline constexpr double kGammaRefinement = 1e-7;
inline constexpr double kCouplingSlopeAbs = 0.15;
}  // namespace checks

inline unsigned resolve_threads(unsigned requested, std::size_t reps) {
  unsigned t = requested;
  if (t == 0) {
    if (const char* env = std::getenv("SMLAB_THREADS")) {
      char* end = nullptr;
      const unsigned long v = std::strtoul(env, &end, 10);
      if (end && *end == '\0' && v >= 1 && v <= 4096) t = static_cast<unsigned>(v);
    }
  }
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  if (reps > 0 && t > reps) t = static_cast<unsigned>(reps);
  return t;
}

namespace detail {

// Runs fn(rep) for rep in [0, reps) across `threads` threads, contiguous
// chunks. fn must only write to replication-indexed slots.
template <class Fn>
inline void parallel_reps(std::size_t reps, unsigned threads, Fn&& fn) {
  if (threads <= 1) {
    for (std::size_t r = 0; r < reps; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::atomic<bool> failed{false};
  const std::size_t q = reps / threads, rem = reps % threads;
  std::size_t begin = 0;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t len = q + (t < rem ? 1 : 0);
    const std::size_t end = begin + len;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t r = begin; r < end && !failed.load(std::memory_order_relaxed); ++r)
          fn(r);
      } catch (...) {
        failed.store(true, std::memory_order_relaxed);
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DegenerateSample("ls_slope: degenerate abscissa");
  return sxy / sxx;
}

inline SummaryStats fold_stats(const std::vector<double>& v) {
  SummaryStats s;
  for (double x : v) s.update(x);
  return s;
}

struct CheckNote {
  bool pass;
  std::string text;
};

inline void add_check(RunReport& rep, const std::string& name, double value, bool pass,
                      const std::string& bound) {
  rep.checks_passed = rep.checks_passed && pass;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  rep.notes.push_back("check " + name + ": " + buf + " " + bound + " -> " +
                      (pass ? "pass" : "FAIL"));
}

inline Cuts resolve_cuts(const ExperimentConfig& cfg, double d) {
  Cuts cuts = default_cuts(cfg.n, d);
  if (cfg.lambda_n) cuts.lambda_n = *cfg.lambda_n;
  if (cfg.kappa_n) cuts.kappa_n = *cfg.kappa_n;
  if (cuts.lambda_n < 1 || cuts.kappa_n < 1 || cuts.lambda_n + cuts.kappa_n > cfg.n)
    throw ConfigError("cuts: need lambda >= 1, kappa >= 1, lambda + kappa <= n");
  return cuts;
}

// One replication's scaled typical matched cost.
inline double typical_rep(const ExperimentConfig& cfg, const Distribution& dist, double pow_n,
                          std::size_t rep) {
  Rng rng(cfg.seed, rep);
  if (cfg.engine == Engine::Recursion) {
    CostSequence seq = sample_exp_sequence(cfg.n, rng);
    seq = transform_sequence(seq, dist);
    return pow_n * typical_cost(seq, rng);
  }
  const CostMatrix cm = generate_instance(cfg.n, dist, rng);
  const Matching m = greedy_stable_matching(cm);
  const CostSequence seq = sorted_matched_costs(cm, m);
  return pow_n * typical_cost(seq, rng);
}

inline double total_rep(const ExperimentConfig& cfg, const Distribution& dist, std::size_t rep) {
  Rng rng(cfg.seed, rep);
  if (cfg.engine == Engine::Recursion) {
    CostSequence seq = sample_exp_sequence(cfg.n, rng);
    seq = transform_sequence(seq, dist);
    return total_cost(seq);
  }
  const CostMatrix cm = generate_instance(cfg.n, dist, rng);
  const Matching m = greedy_stable_matching(cm);
  return total_cost(sorted_matched_costs(cm, m));
}

}  // namespace detail

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.reps < 1) throw ConfigError("reps must be >= 1");
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError("format must be csv or json");
  if (cfg.dist.kind == DistKind::Custom) throw ConfigError("custom distributions have no config form");
  const bool needs_instances = cfg.experiment != Experiment::GammaTable;
  if (needs_instances) {
    if (cfg.n < 2) throw ConfigError("n must be >= 2");
    if (cfg.engine == Engine::Direct && cfg.n > kDefaultInstanceCap)
      throw ConfigError("direct engine caps n at " + std::to_string(kDefaultInstanceCap) +
                        " (n^2 cost entries); use engine = \"recursion\"");
  }
  switch (cfg.experiment) {
    case Experiment::VarianceLimit:
    case Experiment::CLT:
      if (cfg.reps < 2) throw ConfigError("variance-limit/clt need reps >= 2");
      break;
    case Experiment::EngineEquivalence:
      if (cfg.n > kDefaultInstanceCap)
        throw ConfigError("engine-equivalence runs the direct engine; n caps at " +
                          std::to_string(kDefaultInstanceCap));
      break;
    case Experiment::Segments:
      if (cfg.n < 3) throw ConfigError("segments needs n >= 3");
      break;
    case Experiment::CouplingCheck:
      if (cfg.engine == Engine::Direct)
        throw ConfigError("coupling-check resamples exponential coordinates; use the recursion engine");
      if (cfg.n < 1100) throw ConfigError("coupling-check needs n >= 1100 for its decay grid");
      break;
    default: break;
  }
}

namespace detail {

inline void run_typical_cost(const ExperimentConfig& cfg, const Distribution& dist,
                             unsigned threads, RunReport& rep) {
  const double d = dist.pseudo_dimension();
  const double a = dist.scale_constant();
  const double pow_n = std::pow(static_cast<double>(cfg.n), 1.0 / d);
  std::vector<double> scaled(cfg.reps);
  parallel_reps(cfg.reps, threads,
                [&](std::size_t r) { scaled[r] = typical_rep(cfg, dist, pow_n, r); });
  const EcdfSample ecdf{scaled};
  const double ks = ks_statistic(ecdf, [&](double x) {
    return x <= 0.0 ? 0.0 : limit_cdf_typical(d, x, a);
  });
  rep.metrics.push_back({"ks_scaled_typical_vs_limit", ks});
  const SummaryStats st = fold_stats(scaled);
  if (d > 1.0) {
    const double ref = moment_limit(1.0, d, a);
    rep.metrics.push_back({"mean_scaled_typical", st.mean(), ref, st.mean() / ref});
  } else {
    rep.metrics.push_back({"mean_scaled_typical", st.mean()});
  }
  rep.data_columns = {"x", "ecdf", "limit_cdf"};
  const auto& xs = ecdf.values();
  const double inv = 1.0 / static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    rep.data_rows.push_back(
        {xs[i], static_cast<double>(i + 1) * inv, limit_cdf_typical(d, std::max(xs[i], 0.0), a)});
  if (cfg.check)
    add_check(rep, "ks_scaled_typical_vs_limit", ks, ks <= checks::kTypicalCostKs,
              "<= " + std::to_string(checks::kTypicalCostKs));
}

inline void run_total_lln(const ExperimentConfig& cfg, const Distribution& dist, unsigned threads,
                          RunReport& rep) {
  const double d = dist.pseudo_dimension();
  if (!(d > 1.0)) throw ConfigError("total-cost-lln needs pseudo-dimension d > 1");
  const double a = dist.scale_constant();
  const double scale = std::pow(static_cast<double>(cfg.n), 1.0 - 1.0 / d);
  std::vector<double> totals(cfg.reps);
  parallel_reps(cfg.reps, threads,
                [&](std::size_t r) { totals[r] = total_rep(cfg, dist, r) / scale; });
  const SummaryStats st = fold_stats(totals);
  const double ref = lln_constant(d, a);
  const double ratio = st.mean() / ref;
  rep.metrics.push_back({"mean_scaled_total", st.mean(), ref, ratio});
  rep.metrics.push_back({"stddev_scaled_total", cfg.reps >= 2 ? st.stddev() : 0.0});
  if (cfg.check)
    add_check(rep, "lln_rel_error", std::abs(ratio - 1.0),
              std::abs(ratio - 1.0) <= checks::kLlnRelError,
              "<= " + std::to_string(checks::kLlnRelError));
}

inline void run_variance_limit(const ExperimentConfig& cfg, const Distribution& dist,
                               unsigned threads, RunReport& rep) {
  const double d = dist.pseudo_dimension();
  if (!(d > 2.0)) throw ConfigError("variance-limit needs pseudo-dimension d > 2");
  const double a = dist.scale_constant();
  std::vector<double> totals(cfg.reps);
  parallel_reps(cfg.reps, threads, [&](std::size_t r) { totals[r] = total_rep(cfg, dist, r); });
  const SummaryStats st = fold_stats(totals);
  const double scale = std::pow(static_cast<double>(cfg.n), 1.0 - 2.0 / d);
  const double v = st.variance() / scale;
  const double ref = gamma_d(d, 1e-10, a).value;
  rep.metrics.push_back({"var_scaled_total", v, ref, v / ref});
  rep.metrics.push_back({"mean_total", st.mean()});
  if (cfg.check)
    add_check(rep, "variance_rel_error", std::abs(v / ref - 1.0),
              std::abs(v / ref - 1.0) <= checks::kVarianceRelError,
              "<= " + std::to_string(checks::kVarianceRelError));
}

inline void run_clt(const ExperimentConfig& cfg, const Distribution& dist, unsigned threads,
                    RunReport& rep) {
  std::vector<double> totals(cfg.reps);
  parallel_reps(cfg.reps, threads, [&](std::size_t r) { totals[r] = total_rep(cfg, dist, r); });
  const EcdfSample z{standardize(totals)};
  const double ks = ks_statistic(z, normal_cdf);
  rep.metrics.push_back({"ks_standardized_total_vs_normal", ks});
  rep.data_columns = {"x", "ecdf", "normal_cdf"};
  const auto& xs = z.values();
  const double inv = 1.0 / static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    rep.data_rows.push_back({xs[i], static_cast<double>(i + 1) * inv, normal_cdf(xs[i])});
  if (cfg.check)
    add_check(rep, "ks_standardized_total_vs_normal", ks, ks <= checks::kCltKs,
              "<= " + std::to_string(checks::kCltKs));
}

inline void run_segments(const ExperimentConfig& cfg, const Distribution& dist, unsigned threads,
                         RunReport& rep) {
  const double d = dist.pseudo_dimension();
  const Cuts cuts = resolve_cuts(cfg, d);
  struct Slot {
    double w1, w2, w3, total;
  };
  std::vector<Slot> slots(cfg.reps);
  parallel_reps(cfg.reps, threads, [&](std::size_t r) {
    Rng rng(cfg.seed, r);
    if (cfg.engine == Engine::Recursion) {
      CostSequence seq = sample_exp_sequence(cfg.n, rng);
      seq = transform_sequence(seq, dist);
      const SegmentSplit sp = segment_costs(seq, cuts);
      slots[r] = {sp.w1, sp.w2, sp.w3, sp.total()};
    } else {
      const CostMatrix cm = generate_instance(cfg.n, dist, rng);
      const Matching m = greedy_stable_matching(cm);
      const SegmentSplit sp = segment_costs(sorted_matched_costs(cm, m), cuts);
      slots[r] = {sp.w1, sp.w2, sp.w3, sp.total()};
    }
  });
  SummaryStats s1, s2, s3, st;
  for (const auto& s : slots) {
    s1.update(s.w1);
    s2.update(s.w2);
    s3.update(s.w3);
    st.update(s.total);
  }
  if (cfg.reps < 2) throw ConfigError("segments needs reps >= 2 for variance ratios");
  const double vt = st.variance();
  if (vt == 0.0) throw DegenerateSample("segments: zero total-cost variance");
  rep.metrics.push_back({"var_head_over_var_total", s1.variance() / vt});
  rep.metrics.push_back({"var_bulk_over_var_total", s2.variance() / vt, 1.0, s2.variance() / vt});
  rep.metrics.push_back({"var_tail_over_var_total", s3.variance() / vt});
  rep.metrics.push_back({"var_total", vt});
  if (dist.kind() == DistKind::Weibull && d > 2.0) {
    const double c = dist.couple_from_exponential(1.0);  // power-law prefactor
    const double ref = c * c * expected_Vnk_sum(cfg.n, d, cuts.lambda_n, cuts.kappa_n);
    rep.metrics.push_back({"var_bulk", s2.variance(), ref, s2.variance() / ref});
  } else {
    rep.metrics.push_back({"var_bulk", s2.variance()});
  }
  rep.notes.push_back("cuts: lambda=" + std::to_string(cuts.lambda_n) +
                      " kappa=" + std::to_string(cuts.kappa_n));
  if (cfg.check) {
    const double ratio = s2.variance() / vt;
    add_check(rep, "var_bulk_over_var_total", ratio,
              ratio >= checks::kSegmentsBulkLo && ratio <= checks::kSegmentsBulkHi,
              "in [" + std::to_string(checks::kSegmentsBulkLo) + ", " +
                  std::to_string(checks::kSegmentsBulkHi) + "]");
  }
}

inline void run_engine_equivalence(const ExperimentConfig& cfg, const Distribution& dist,
                                   unsigned threads, RunReport& rep) {
  struct Slot {
    double y1_direct, tot_direct, y1_rec, tot_rec;
  };
  std::vector<Slot> slots(cfg.reps);
  parallel_reps(cfg.reps, threads, [&](std::size_t r) {
    Rng rng_d(cfg.seed, 2 * r);
    const CostMatrix cm = generate_instance(cfg.n, dist, rng_d);
    const Matching m = greedy_stable_matching(cm);
    const CostSequence sd = sorted_matched_costs(cm, m);
    Rng rng_r(cfg.seed, 2 * r + 1);
    CostSequence sr = sample_exp_sequence(cfg.n, rng_r);
    sr = transform_sequence(sr, dist);
    slots[r] = {sd.values.front(), total_cost(sd), sr.values.front(), total_cost(sr)};
  });
  std::vector<double> y1d(cfg.reps), totd(cfg.reps), y1r(cfg.reps), totr(cfg.reps);
  for (std::size_t r = 0; r < cfg.reps; ++r) {
    y1d[r] = slots[r].y1_direct;
    totd[r] = slots[r].tot_direct;
    y1r[r] = slots[r].y1_rec;
    totr[r] = slots[r].tot_rec;
  }
  const double ks_tot = ks_two_sample(EcdfSample{totd}, EcdfSample{totr});
  const double ks_y1 = ks_two_sample(EcdfSample{y1d}, EcdfSample{y1r});
  rep.metrics.push_back({"ks2_total_direct_vs_recursion", ks_tot});
  rep.metrics.push_back({"ks2_y1_direct_vs_recursion", ks_y1});
  if (cfg.check) {
    add_check(rep, "ks2_total", ks_tot, ks_tot <= checks::kEngineKs,
              "<= " + std::to_string(checks::kEngineKs));
    add_check(rep, "ks2_y1", ks_y1, ks_y1 <= checks::kEngineKs,
              "<= " + std::to_string(checks::kEngineKs));
  }
}

inline void run_gamma_table(const ExperimentConfig& cfg, RunReport& rep) {
  std::vector<double> grid = cfg.gamma_grid;
  if (grid.empty())
    grid = {2.1, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0, 6.5, 7.0, 7.5, 8.0};
  {
    std::string ds;
    for (double d : grid) ds += (ds.empty() ? "" : " ") + detail::fmt17(d);
    rep.params.emplace_back("ds", ds);
  }
  rep.data_columns = {"d", "gamma", "abs_error_estimate"};
  double prev = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  double worst_refine = 0.0;
  for (double d : grid) {
    const QuadratureResult q = gamma_d(d, 1e-10);
    rep.data_rows.push_back({d, q.value, q.abs_error_estimate});
    if (!(q.value < prev)) decreasing = false;
    prev = q.value;
    if (cfg.check) {
      const QuadratureResult coarse = gamma_d(d, 1e-8);
      worst_refine = std::max(worst_refine, std::abs(coarse.value - q.value));
    }
  }
  if (cfg.check) {
    add_check(rep, "gamma_refinement_agreement", worst_refine,
              worst_refine <= checks::kGammaRefinement, "<= 1e-07");
    add_check(rep, "gamma_strictly_decreasing", decreasing ? 1.0 : 0.0, decreasing, "== 1");
  }
}

inline void run_coupling_check(const ExperimentConfig& cfg, const Distribution& dist,
                               unsigned threads, RunReport& rep) {
  const double d = dist.pseudo_dimension();
  // The decay grid lives deep in the bulk, so the default log^4 tail cut
  // would swallow it at desk-scale n; a short tail is the useful default here.
  ExperimentConfig ccfg = cfg;
  if (!ccfg.kappa_n) ccfg.kappa_n = 4;
  const Cuts cuts = resolve_cuts(ccfg, d);
  const std::size_t n = cfg.n, mn = n - cuts.kappa_n;
  // geometric grid in s = n-k+1: resampled coordinate k = n+1-s
  static constexpr std::size_t kGrid[] = {64, 91, 128, 181, 256, 362, 512};
  std::vector<std::size_t> svals;
  for (std::size_t s : kGrid)
    if (s >= cuts.kappa_n + 2 && n + 1 - s >= std::max<std::size_t>(cuts.lambda_n, 2))
      svals.push_back(s);
  if (svals.size() < 3)
    throw ConfigError("coupling-check: decay grid does not fit between the cuts at this n");
  const std::size_t G = svals.size();
  std::vector<double> sq(cfg.reps * G);
  parallel_reps(cfg.reps, threads, [&](std::size_t r) {
    Rng rng(cfg.seed, r);
    const CostSequence seq = sample_exp_sequence(n, rng);
    for (std::size_t j = 0; j < G; ++j) {
      const std::size_t k = n + 1 - svals[j];
      const double rate = static_cast<double>(n - k + 1);
      const double xk_new = rng.standard_exp() / (rate * rate);
      const double delta = xk_new - seq.increments[k - 1];
      const std::size_t i0 = std::max(k, cuts.lambda_n);
      KahanSum diff;  // coupled bulk-segment difference after resampling X_k
      for (std::size_t i = i0; i <= mn; ++i) {
        const double y = seq.base[i - 1];
        diff.add(dist.couple_from_exponential(y + delta) - dist.couple_from_exponential(y));
      }
      sq[r * G + j] = diff.value() * diff.value();
    }
  });
  std::vector<double> logs(G), logmsd(G);
  rep.data_columns = {"s", "mean_sq_diff"};
  for (std::size_t j = 0; j < G; ++j) {
    KahanSum acc;
    for (std::size_t r = 0; r < cfg.reps; ++r) acc.add(sq[r * G + j]);
    const double msd = acc.value() / static_cast<double>(cfg.reps);
    if (!(msd > 0.0)) throw DegenerateSample("coupling-check: zero mean squared difference");
    logs[j] = std::log(static_cast<double>(svals[j]));
    logmsd[j] = std::log(msd);
    rep.data_rows.push_back({static_cast<double>(svals[j]), msd});
  }
  const double slope = ls_slope(logs, logmsd);
  const double ref = -2.0 / d;
  rep.metrics.push_back({"decay_slope", slope, ref, slope / ref});
  rep.notes.push_back("cuts: lambda=" + std::to_string(cuts.lambda_n) +
                      " kappa=" + std::to_string(cuts.kappa_n));
  if (cfg.check)
    add_check(rep, "decay_slope_abs_error", std::abs(slope - ref),
              std::abs(slope - ref) <= checks::kCouplingSlopeAbs,
              "<= " + std::to_string(checks::kCouplingSlopeAbs));
}

}  // namespace detail

inline RunReport run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const unsigned threads = resolve_threads(cfg.threads, cfg.reps);
  RunReport rep;
  rep.experiment = experiment_name(cfg.experiment);
  rep.seed = cfg.seed;
  rep.seed_lineage = cfg.experiment == Experiment::EngineEquivalence
                         ? "replication r: counter streams (splitmix64(seed); 2r, 2r+1)"
                         : "replication r: counter stream (splitmix64(seed); r)";
  rep.params.emplace_back("experiment", experiment_name(cfg.experiment));
  if (cfg.experiment != Experiment::GammaTable) {
    rep.params.emplace_back("n", std::to_string(cfg.n));
    rep.params.emplace_back("reps", std::to_string(cfg.reps));
    rep.params.emplace_back("dist", dist_to_string(cfg.dist));
    rep.params.emplace_back("engine", engine_name(cfg.engine));
  }
  rep.params.emplace_back("seed", std::to_string(cfg.seed));
  // thread count is an execution detail, not part of the report: identical
  // (config, seed) must reproduce the report bit-for-bit at any thread count
  if (cfg.lambda_n) rep.params.emplace_back("lambda", std::to_string(*cfg.lambda_n));
  if (cfg.kappa_n) rep.params.emplace_back("kappa", std::to_string(*cfg.kappa_n));

  const Distribution dist = make_distribution(cfg.dist);
  std::cerr << "[smlab] " << rep.experiment << " starting: n=" << cfg.n << " reps=" << cfg.reps
            << " threads=" << threads << '\n';
  switch (cfg.experiment) {
    case Experiment::TypicalCost: detail::run_typical_cost(cfg, dist, threads, rep); break;
    case Experiment::TotalCostLLN: detail::run_total_lln(cfg, dist, threads, rep); break;
    case Experiment::VarianceLimit: detail::run_variance_limit(cfg, dist, threads, rep); break;
    case Experiment::CLT: detail::run_clt(cfg, dist, threads, rep); break;
    case Experiment::Segments: detail::run_segments(cfg, dist, threads, rep); break;
    case Experiment::EngineEquivalence:
      detail::run_engine_equivalence(cfg, dist, threads, rep);
      break;
    case Experiment::GammaTable: detail::run_gamma_table(cfg, rep); break;
    case Experiment::CouplingCheck: detail::run_coupling_check(cfg, dist, threads, rep); break;
  }
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "[smlab] " << rep.experiment << " done in " << rep.wall_time_s << "s\n";
  return rep;
}

}  // namespace smlab
