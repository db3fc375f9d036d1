// Command-line front end for the msarpool shared library. Functionality goes
// through the C API only; this file owns argument parsing, the JSON config
// schema and exit-code mapping.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "msarpool.h"

namespace {

using nlohmann::json;

[[noreturn]] void fail(msar_status status) {
  std::cerr << "error: " << msar_last_error() << '\n';
  std::exit(status == MSAR_ERR_VALIDATION ? 1 : 2);
}

void check(msar_status status) {
  if (status != MSAR_OK) fail(status);
}

struct SeriesArgs {
  std::string path;
  std::string date_column;
  std::string value_column;
  std::string start, end;
  bool year_on_year = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--data", path, "input series CSV")->required();
    cmd->add_option("--date-column", date_column, "date column name (default: first)");
    cmd->add_option("--value-column", value_column, "value column name (default: second)");
    cmd->add_option("--start", start, "clip sample start (YYYYQn)");
    cmd->add_option("--end", end, "clip sample end (YYYYQn)");
    cmd->add_flag("--yoy", year_on_year,
                  "input is a level series; convert to percent year-on-year growth");
  }

  msar_series* load() const {
    msar_series* s = nullptr;
    check(msar_series_load_csv(path.c_str(),
                               date_column.empty() ? nullptr : date_column.c_str(),
                               value_column.empty() ? nullptr : value_column.c_str(),
                               start.empty() ? nullptr : start.c_str(),
                               end.empty() ? nullptr : end.c_str(),
                               year_on_year ? 1 : 0, &s));
    return s;
  }
};

struct CatalogueArgs {
  std::string builtin = "paper";
  std::string scenario_csv;
  int k_max = 5;

  void attach(CLI::App* cmd) {
    cmd->add_option("--catalogue", builtin, "builtin catalogue: paper | vague")
        ->check(CLI::IsMember({"paper", "vague"}));
    cmd->add_option("--scenarios", scenario_csv,
                    "stress-test scenario CSV (required for the paper catalogue)");
    cmd->add_option("--kmax", k_max, "regime-count range for the vague catalogue");
  }

  msar_catalogue* build() const {
    msar_catalogue* c = nullptr;
    if (builtin == "paper") {
      if (scenario_csv.empty()) {
        std::cerr << "error: --scenarios is required for the paper catalogue\n";
        std::exit(1);
      }
      check(msar_catalogue_paper(scenario_csv.c_str(), &c));
    } else {
      check(msar_catalogue_vague(k_max, &c));
    }
    return c;
  }
};

std::string cache_dir_from_env(const std::string& flag_value) {
  if (const char* env = std::getenv("MSARPOOL_CACHE")) return env;
  return flag_value;
}

// Optional JSON config file; explicit flags override its values.
void apply_config_file(const std::string& path, SeriesArgs& series, CatalogueArgs& cat,
                       msar_backtest_params& plan, std::string& methods,
                       std::string& cache_dir, std::string& outdir,
                       std::string& t0, std::string& T0, std::string& Tbar) {
  std::ifstream is(path);
  if (!is) {
    std::cerr << "error: cannot open config '" << path << "'\n";
    std::exit(1);
  }
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    std::cerr << "error: bad config JSON: " << e.what() << '\n';
    std::exit(1);
  }
  if (j.value("version", 1) != 1) {
    std::cerr << "error: unsupported config version\n";
    std::exit(1);
  }
  if (j.contains("data")) {
    const auto& d = j["data"];
    if (series.path.empty()) series.path = d.value("path", "");
    if (series.date_column.empty()) series.date_column = d.value("date_column", "");
    if (series.value_column.empty()) series.value_column = d.value("value_column", "");
    if (series.start.empty()) series.start = d.value("start", "");
    if (series.end.empty()) series.end = d.value("end", "");
    if (d.value("yoy", false)) series.year_on_year = true;
  }
  if (j.contains("catalogue")) {
    const auto& c = j["catalogue"];
    cat.builtin = c.value("builtin", cat.builtin);
    if (cat.scenario_csv.empty()) cat.scenario_csv = c.value("scenario_csv", "");
    cat.k_max = c.value("kmax", cat.k_max);
  }
  if (j.contains("plan")) {
    const auto& p = j["plan"];
    if (t0.empty()) t0 = p.value("t0", "");
    if (T0.empty()) T0 = p.value("T0", "");
    if (Tbar.empty()) Tbar = p.value("Tbar", "");
    plan.R = p.value("R", plan.R);
    plan.horizon = p.value("horizon", plan.horizon);
    plan.rolling_width = p.value("rolling_width", plan.rolling_width);
    if (methods.empty() && p.contains("methods")) {
      std::string joined;
      for (const auto& m : p["methods"]) {
        if (!joined.empty()) joined += ',';
        joined += m.get<std::string>();
      }
      methods = joined;
    }
  }
  if (j.contains("sampler")) {
    const auto& s = j["sampler"];
    plan.burn_in = s.value("burn_in", plan.burn_in);
    plan.keep = s.value("keep", plan.keep);
    plan.thin = s.value("thin", plan.thin);
  }
  plan.seed = j.value("seed", plan.seed);
  plan.jobs = j.value("jobs", plan.jobs);
  if (j.value("kernel_fit", false)) plan.kernel_fit = 1;
  if (j.value("flat_equal_weights", false)) plan.flat_equal_weights = 1;
  if (cache_dir.empty()) cache_dir = j.value("cache", "");
  if (outdir.empty()) outdir = j.value("output", "");
}

int cmd_ingest(const SeriesArgs& series, const std::string& out_path) {
  msar_series* s = series.load();
  char first[16], last[16];
  check(msar_series_period(s, 0, first, sizeof(first)));
  check(msar_series_period(s, msar_series_length(s) - 1, last, sizeof(last)));
  std::cout << "series: " << msar_series_length(s) << " quarters, " << first << ".."
            << last << '\n';
  if (!out_path.empty()) {
    check(msar_series_write_csv(s, out_path.c_str()));
    std::cout << "wrote " << out_path << '\n';
  }
  msar_series_free(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"density forecasts from Markov-switching AR views"};
  app.require_subcommand(1);
  app.set_version_flag("--version", msar_version());

  // ingest -------------------------------------------------------------
  SeriesArgs ingest_series;
  std::string ingest_out;
  auto* ingest = app.add_subcommand("ingest", "parse and validate a series CSV");
  ingest_series.attach(ingest);
  ingest->add_option("--out", ingest_out, "write the normalized series CSV here");

  // estimate -----------------------------------------------------------
  SeriesArgs est_series;
  CatalogueArgs est_cat;
  int est_view = 0;
  msar_sampler_config est_cfg;
  msar_sampler_config_default(&est_cfg);
  int est_horizon = 1;
  bool est_kernel = false;
  std::string est_draws_out, est_forecast_out;
  auto* estimate =
      app.add_subcommand("estimate", "run the sampler for one view on one window");
  est_series.attach(estimate);
  est_cat.attach(estimate);
  estimate->add_option("--view", est_view, "view index in the catalogue (0-based)")
      ->required();
  estimate->add_option("--burn-in", est_cfg.burn_in, "burn-in sweeps");
  estimate->add_option("--keep", est_cfg.keep, "kept sweeps");
  estimate->add_option("--thin", est_cfg.thin, "thinning stride");
  estimate->add_option("--seed", est_cfg.seed, "RNG seed");
  estimate->add_option("--horizon", est_horizon, "forecast horizon (quarters)");
  estimate->add_flag("--kernel-fit", est_kernel, "kernel-fit replication mode");
  estimate->add_option("--draws-out", est_draws_out, "write the draw archive here");
  estimate->add_option("--forecast-out", est_forecast_out,
                       "write the forecast component CSV here");

  // evidence -----------------------------------------------------------
  SeriesArgs ev_series;
  CatalogueArgs ev_cat;
  msar_sampler_config ev_cfg;
  msar_sampler_config_default(&ev_cfg);
  auto* evidence =
      app.add_subcommand("evidence", "log marginal likelihood of every view");
  ev_series.attach(evidence);
  ev_cat.attach(evidence);
  evidence->add_option("--burn-in", ev_cfg.burn_in, "burn-in sweeps");
  evidence->add_option("--keep", ev_cfg.keep, "kept sweeps");
  evidence->add_option("--thin", ev_cfg.thin, "thinning stride");
  evidence->add_option("--seed", ev_cfg.seed, "RNG seed");

  // backtest -----------------------------------------------------------
  SeriesArgs bt_series;
  CatalogueArgs bt_cat;
  msar_backtest_params bt;
  msar_backtest_params_default(&bt);
  std::string bt_t0, bt_T0, bt_Tbar, bt_methods, bt_cache, bt_out, bt_config;
  bool bt_kernel = false, bt_flat = false, bt_verbose = false;
  auto* backtest = app.add_subcommand(
      "backtest", "recursive estimation, optimization and evaluation run");
  backtest->add_option("--config", bt_config, "JSON config file (flags override)");
  bt_series.attach(backtest);
  bt_cat.attach(backtest);
  backtest->add_option("--t0", bt_t0, "sample start (YYYYQn)");
  backtest->add_option("--T0", bt_T0, "shortest estimation window end");
  backtest->add_option("--Tbar", bt_Tbar, "longest estimation window end");
  backtest->add_option("--R", bt.R, "optimization window length");
  backtest->add_option("--horizon", bt.horizon, "forecast horizon");
  backtest->add_option("--burn-in", bt.burn_in, "burn-in sweeps");
  backtest->add_option("--keep", bt.keep, "kept sweeps");
  backtest->add_option("--thin", bt.thin, "thinning stride");
  backtest->add_option("--seed", bt.seed, "RNG seed");
  backtest->add_option("--rolling-width", bt.rolling_width, "AR rolling window width");
  backtest->add_option("--methods", bt_methods, "comma-separated method tags");
  backtest->add_option("--jobs", bt.jobs, "parallel sampler jobs (0 = all cores)");
  backtest->add_option("--cache", bt_cache,
                       "forecast cache directory (MSARPOOL_CACHE overrides)");
  backtest->add_option("--out", bt_out, "output directory")->required();
  backtest->add_flag("--kernel-fit", bt_kernel, "kernel-fit replication mode");
  backtest->add_flag("--flat-equal-weights", bt_flat,
                     "equal weights flat over views instead of two-level");
  backtest->add_flag("--verbose", bt_verbose, "progress to stderr");

  // report -------------------------------------------------------------
  std::string rep_results, rep_out;
  auto* report = app.add_subcommand("report", "emit CSV tables from a results file");
  report->add_option("--results", rep_results, "results.json from a backtest run")
      ->required();
  report->add_option("--out", rep_out, "output directory")->required();

  // plot ---------------------------------------------------------------
  std::string plot_results, plot_out, plot_fan = "pi2*";
  auto* plot = app.add_subcommand("plot", "emit SVG charts from a results file");
  plot->add_option("--results", plot_results, "results.json from a backtest run")
      ->required();
  plot->add_option("--out", plot_out, "output directory")->required();
  plot->add_option("--fan-method", plot_fan, "method tag for the fan chart");

  CLI11_PARSE(app, argc, argv);

  if (ingest->parsed()) return cmd_ingest(ingest_series, ingest_out);

  if (estimate->parsed()) {
    msar_series* s = est_series.load();
    msar_catalogue* c = est_cat.build();
    msar_draws* d = nullptr;
    check(msar_gibbs_run(s, c, static_cast<size_t>(est_view), &est_cfg, &d));
    std::cout << "kept " << msar_draws_count(d) << " draws\n";
    if (!est_draws_out.empty()) {
      check(msar_draws_save(d, est_draws_out.c_str()));
      std::cout << "wrote " << est_draws_out << '\n';
    }
    msar_density* f = nullptr;
    check(msar_forecast(s, d, est_horizon, est_kernel ? 1 : 0, &f));
    std::cout << "forecast mean " << msar_density_mean(f) << " over "
              << msar_density_size(f) << " components\n";
    if (!est_forecast_out.empty()) {
      check(msar_density_write_csv(f, est_forecast_out.c_str()));
      std::cout << "wrote " << est_forecast_out << '\n';
    }
    msar_density_free(f);
    msar_draws_free(d);
    msar_catalogue_free(c);
    msar_series_free(s);
    return 0;
  }

  if (evidence->parsed()) {
    msar_series* s = ev_series.load();
    msar_catalogue* c = ev_cat.build();
    std::cout << "view_id,log_marginal_likelihood\n";
    for (size_t i = 0; i < msar_catalogue_size(c); ++i) {
      msar_sampler_config cfg = ev_cfg;
      msar_draws* d = nullptr;
      check(msar_gibbs_run(s, c, i, &cfg, &d));
      double logml = 0.0;
      check(msar_log_marginal_likelihood(s, c, i, d, &logml));
      std::printf("%d,%.6f\n", msar_catalogue_view_id(c, i), logml);
      msar_draws_free(d);
    }
    msar_catalogue_free(c);
    msar_series_free(s);
    return 0;
  }

  if (backtest->parsed()) {
    if (!bt_config.empty()) {
      apply_config_file(bt_config, bt_series, bt_cat, bt, bt_methods, bt_cache, bt_out,
                        bt_t0, bt_T0, bt_Tbar);
    }
    if (bt_series.path.empty()) {
      std::cerr << "error: --data (or a config data.path) is required\n";
      return 1;
    }
    if (bt_t0.empty() || bt_T0.empty() || bt_Tbar.empty()) {
      std::cerr << "error: --t0, --T0 and --Tbar are required\n";
      return 1;
    }
    bt_cache = cache_dir_from_env(bt_cache);
    msar_series* s = bt_series.load();
    msar_catalogue* c = bt_cat.build();
    bt.t0 = bt_t0.c_str();
    bt.T0 = bt_T0.c_str();
    bt.Tbar = bt_Tbar.c_str();
    if (!bt_methods.empty()) bt.methods = bt_methods.c_str();
    if (!bt_cache.empty()) bt.cache_dir = bt_cache.c_str();
    if (bt_kernel) bt.kernel_fit = 1;
    if (bt_flat) bt.flat_equal_weights = 1;
    if (bt_verbose) bt.verbose = 1;
    msar_report* r = nullptr;
    check(msar_backtest_run(s, c, &bt, &r));

    std::filesystem::create_directories(bt_out);
    const std::string results = bt_out + "/results.json";
    check(msar_report_save(r, results.c_str()));
    check(msar_report_write_csvs(r, bt_out.c_str()));
    std::cout << "evaluation periods: " << msar_report_period_count(r) << '\n';
    for (const char* tag : {"equal-weights", "equal-priors", "max-ml", "w1*", "pi1*",
                            "w2*", "pi2*", "ar-recursive", "ar-rolling"}) {
      double apd_value = 0.0;
      if (msar_report_stat(r, tag, "apd", &apd_value) != MSAR_OK) continue;
      double ks_p = 0.0, lb1 = 0.0, lb2 = 0.0;
      check(msar_report_stat(r, tag, "ks_p", &ks_p));
      check(msar_report_stat(r, tag, "lb1_p", &lb1));
      check(msar_report_stat(r, tag, "lb2_p", &lb2));
      std::printf("%-14s APD %.3f  KS %.2f  LB1 %.2f  LB2 %.2f\n", tag, apd_value, ks_p,
                  lb1, lb2);
    }
    std::cout << "wrote " << results << '\n';
    msar_report_free(r);
    msar_catalogue_free(c);
    msar_series_free(s);
    return 0;
  }

  if (report->parsed()) {
    msar_report* r = nullptr;
    check(msar_report_load(rep_results.c_str(), &r));
    check(msar_report_write_csvs(r, rep_out.c_str()));
    std::cout << "wrote CSV tables to " << rep_out << '\n';
    msar_report_free(r);
    return 0;
  }

  if (plot->parsed()) {
    msar_report* r = nullptr;
    check(msar_report_load(plot_results.c_str(), &r));
    check(msar_report_emit_plots(r, plot_out.c_str(), plot_fan.c_str()));
    std::cout << "wrote charts to " << plot_out << '\n';
    msar_report_free(r);
    return 0;
  }
  return 0;
}
