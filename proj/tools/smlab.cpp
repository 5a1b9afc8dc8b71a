// Command-line experiment runner.
//
// One subcommand per experiment, or `run <config-file>` for reproducible
// single-artifact runs. Results go to --out (or stdout), progress to stderr.
// Exit codes: 0 success, 2 configuration error, 3 threshold failure under
// --check.

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <smlab/config.hpp>
#include <smlab/experiments.hpp>
#include <smlab/report.hpp>

namespace {

struct CliState {
  smlab::ExperimentConfig cfg;
  double d_short = 0.0;
  std::string dist_str;
  std::size_t lambda = 0, kappa = 0;
  std::vector<double> ds;
  std::string config_path;
};

void add_common_options(CLI::App* sub, CliState& st, bool with_reps) {
  if (with_reps) {
    sub->add_option("--n", st.cfg.n, "problem size (n x n instance)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--reps", st.cfg.reps, "number of replications")->check(CLI::PositiveNumber);
    auto* d_opt =
        sub->add_option("--d", st.d_short, "Weibull pseudo-dimension shorthand (shape d, scale 1)")
            ->check(CLI::PositiveNumber);
    auto* dist_opt = sub->add_option(
        "--dist", st.dist_str,
        "distribution: exponential | weibull[:shape[:scale]] | maxuniform:deg | chisquared:k");
    d_opt->excludes(dist_opt);
    dist_opt->excludes(d_opt);
    sub->add_option_function<std::string>(
           "--engine",
           [&st](const std::string& s) {
             const auto e = smlab::engine_from_string(s);
             if (!e) throw CLI::ValidationError("--engine", "must be direct or recursion");
             st.cfg.engine = *e;
           },
           "matching engine: direct | recursion")
        ->type_name("TEXT");
    sub->add_option("--lambda", st.lambda, "head/bulk cut override")->check(CLI::PositiveNumber);
    sub->add_option("--kappa", st.kappa, "bulk/tail cut override")->check(CLI::PositiveNumber);
  }
  sub->add_option("--seed", st.cfg.seed, "master seed");
  sub->add_option("--threads", st.cfg.threads,
                  "worker threads (0 = SMLAB_THREADS or hardware)");
  sub->add_option("--out", st.cfg.out, "output path (default stdout)");
  sub->add_option("--format", st.cfg.format, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--check", st.cfg.check, "apply calibrated thresholds; exit 3 on failure");
}

int run_one(smlab::ExperimentConfig cfg) {
  smlab::RunReport rep;
  try {
    rep = smlab::run_experiment(cfg);
  } catch (const smlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const smlab::InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  for (const auto& note : rep.notes) std::cerr << "[smlab] " << note << '\n';
  smlab::emit_report(rep, cfg.format, cfg.out);
  if (cfg.check && !rep.checks_passed) {
    std::cerr << "[smlab] threshold check failed\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable-matching cost experiments"};
  app.require_subcommand(1);
  std::vector<std::pair<CLI::App*, CliState*>> subs;
  std::vector<std::unique_ptr<CliState>> states;

  auto add_experiment = [&](smlab::Experiment e, const char* help, bool with_reps = true) {
    states.push_back(std::make_unique<CliState>());
    CliState& st = *states.back();
    st.cfg.experiment = e;
    CLI::App* sub = app.add_subcommand(smlab::experiment_name(e), help);
    add_common_options(sub, st, with_reps);
    subs.emplace_back(sub, &st);
    return sub;
  };

  add_experiment(smlab::Experiment::TypicalCost,
                 "distribution of one uniformly chosen matched cost vs its limit law");
  add_experiment(smlab::Experiment::TotalCostLLN, "scaled total cost vs its deterministic limit");
  add_experiment(smlab::Experiment::VarianceLimit,
                 "scaled total-cost variance vs the variance constant");
  add_experiment(smlab::Experiment::CLT, "standardized total cost vs the normal law");
  add_experiment(smlab::Experiment::Segments, "head/bulk/tail variance decomposition");
  add_experiment(smlab::Experiment::EngineEquivalence,
                 "direct matrix engine vs recursion engine, two-sample distances");
  {
    states.push_back(std::make_unique<CliState>());
    CliState& st = *states.back();
    st.cfg.experiment = smlab::Experiment::GammaTable;
    CLI::App* sub = app.add_subcommand(smlab::experiment_name(smlab::Experiment::GammaTable),
                                       "variance-constant table over a d grid");
    sub->add_option("--ds", st.ds, "pseudo-dimension grid (each entry > 2)");
    add_common_options(sub, st, false);
    subs.emplace_back(sub, &st);
  }
  add_experiment(smlab::Experiment::CouplingCheck,
                 "squared coupling difference decay after resampling one coordinate");

  // config-file mode
  states.push_back(std::make_unique<CliState>());
  CliState& run_st = *states.back();
  CLI::App* run_sub = app.add_subcommand("run", "run an experiment from a config document");
  run_sub->add_option("config", run_st.config_path, "config file path")->required();
  run_sub->add_flag("--check", run_st.cfg.check,
                    "apply calibrated thresholds; exit 3 on failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run_sub->parsed()) {
      std::ifstream f(run_st.config_path);
      if (!f) {
        std::cerr << "config error: cannot open '" << run_st.config_path << "'\n";
        return 2;
      }
      std::ostringstream ss;
      ss << f.rdbuf();
      smlab::ExperimentConfig cfg = smlab::parse_config(ss.str());
      if (run_st.cfg.check) cfg.check = true;
      return run_one(cfg);
    }
    // not every subcommand defines every option; App::count throws on unknown names
    const auto given = [](CLI::App* sub, const std::string& name) {
      const CLI::Option* o = sub->get_option_no_throw(name);
      return o != nullptr && o->count() > 0;
    };
    for (auto& [sub, st] : subs) {
      if (!sub->parsed()) continue;
      if (given(sub, "--d"))
        st->cfg.dist = {smlab::DistKind::Weibull, st->d_short, 1.0, 1};
      if (given(sub, "--dist")) st->cfg.dist = smlab::parse_dist_string(st->dist_str);
      if (given(sub, "--lambda")) st->cfg.lambda_n = st->lambda;
      if (given(sub, "--kappa")) st->cfg.kappa_n = st->kappa;
      if (given(sub, "--ds")) {
        for (double d : st->ds)
          if (!(d > 2.0)) {
            std::cerr << "config error: --ds entries must be > 2\n";
            return 2;
          }
        st->cfg.gamma_grid = st->ds;
      }
      return run_one(st->cfg);
    }
    std::cerr << "config error: no subcommand\n";
    return 2;
  } catch (const smlab::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const smlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const smlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
