#include "msarpool.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "msarpool/archive.hpp"
#include "msarpool/backtest.hpp"
#include "msarpool/csv.hpp"
#include "msarpool/errors.hpp"
#include "msarpool/evidence.hpp"
#include "msarpool/forecast.hpp"
#include "msarpool/report_io.hpp"
#include "msarpool/scenario.hpp"

using namespace msarpool;

struct msar_series {
  TimeSeries ts;
};
struct msar_catalogue {
  ViewCatalogue cat;
};
struct msar_draws {
  PosteriorDraws draws;
};
struct msar_density {
  ViewForecast forecast;
};
struct msar_report {
  EvaluationReport report;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
msar_status wrap(Fn&& fn) {
  try {
    fn();
    return MSAR_OK;
  } catch (const validation_error& e) {
    g_last_error = e.what();
    return MSAR_ERR_VALIDATION;
  } catch (const numeric_error& e) {
    g_last_error = e.what();
    return MSAR_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MSAR_ERR_NUMERIC;
  }
}

msar_status fill_string(const std::string& s, char* buffer, size_t buffer_size) {
  if (buffer == nullptr || buffer_size == 0 || s.size() + 1 > buffer_size) {
    g_last_error = "buffer too small";
    return MSAR_ERR_VALIDATION;
  }
  std::memcpy(buffer, s.c_str(), s.size() + 1);
  return MSAR_OK;
}

SamplerConfig to_config(const msar_sampler_config* cfg) {
  SamplerConfig out;
  if (cfg != nullptr) {
    out.burn_in = cfg->burn_in;
    out.keep = cfg->keep;
    out.thin = cfg->thin;
    out.seed = cfg->seed;
  }
  return out;
}

}  // namespace

extern "C" {

const char* msar_version(void) { return "msarpool 1.0.0"; }

const char* msar_last_error(void) { return g_last_error.c_str(); }

/* ---- series ---- */

msar_status msar_series_load_csv(const char* path, const char* date_column,
                                 const char* value_column, const char* start,
                                 const char* end, int year_on_year, msar_series** out) {
  return wrap([&] {
    if (path == nullptr || out == nullptr) throw validation_error("null argument");
    SeriesLoadOptions opts;
    opts.date_column = date_column ? date_column : "";
    opts.value_column = value_column ? value_column : "";
    if (start) opts.start = Quarter::parse(start);
    if (end) opts.end = Quarter::parse(end);
    opts.year_on_year = year_on_year != 0;
    *out = new msar_series{load_series(path, opts)};
  });
}

msar_status msar_series_create(const char* start_quarter, const double* values,
                               size_t count, msar_series** out) {
  return wrap([&] {
    if (start_quarter == nullptr || values == nullptr || out == nullptr) {
      throw validation_error("null argument");
    }
    *out = new msar_series{TimeSeries(Quarter::parse(start_quarter),
                                      std::vector<double>(values, values + count))};
  });
}

msar_status msar_series_window(const msar_series* s, const char* start, const char* end,
                               msar_series** out) {
  return wrap([&] {
    if (s == nullptr || out == nullptr) throw validation_error("null argument");
    const Quarter from = start ? Quarter::parse(start) : s->ts.start_period();
    const Quarter to = end ? Quarter::parse(end) : s->ts.last_period();
    *out = new msar_series{s->ts.window(from, to)};
  });
}

size_t msar_series_length(const msar_series* s) { return s ? s->ts.size() : 0; }

double msar_series_value(const msar_series* s, size_t index) {
  if (s == nullptr || index >= s->ts.size()) {
    g_last_error = "series index out of range";
    return std::numeric_limits<double>::quiet_NaN();
  }
  return s->ts[index];
}

msar_status msar_series_period(const msar_series* s, size_t index, char* buffer,
                               size_t buffer_size) {
  if (s == nullptr || index >= s->ts.size()) {
    g_last_error = "series index out of range";
    return MSAR_ERR_VALIDATION;
  }
  return fill_string(s->ts.period(index).str(), buffer, buffer_size);
}

msar_status msar_series_write_csv(const msar_series* s, const char* path) {
  return wrap([&] {
    if (s == nullptr || path == nullptr) throw validation_error("null argument");
    std::ofstream os(path);
    if (!os) throw validation_error(std::string("cannot open '") + path + "'");
    os << "period,value\n";
    char buf[32];
    for (std::size_t i = 0; i < s->ts.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", s->ts[i]);
      os << s->ts.period(i).str() << ',' << buf << '\n';
    }
  });
}

void msar_series_free(msar_series* s) { delete s; }

/* ---- catalogue ---- */

msar_status msar_catalogue_paper(const char* scenario_csv, msar_catalogue** out) {
  return wrap([&] {
    if (scenario_csv == nullptr || out == nullptr) throw validation_error("null argument");
    *out = new msar_catalogue{paper_catalogue(ScenarioTable::from_csv(scenario_csv))};
  });
}

msar_status msar_catalogue_vague(int k_max, msar_catalogue** out) {
  return wrap([&] {
    if (out == nullptr) throw validation_error("null argument");
    *out = new msar_catalogue{ViewCatalogue(build_vague_views(k_max))};
  });
}

size_t msar_catalogue_size(const msar_catalogue* c) { return c ? c->cat.size() : 0; }

int msar_catalogue_view_id(const msar_catalogue* c, size_t index) {
  return (c && index < c->cat.size()) ? c->cat[index].id : -1;
}

int msar_catalogue_view_regimes(const msar_catalogue* c, size_t index) {
  return (c && index < c->cat.size()) ? c->cat[index].num_regimes : -1;
}

int msar_catalogue_view_is_scenario(const msar_catalogue* c, size_t index) {
  if (c == nullptr || index >= c->cat.size()) return -1;
  return c->cat[index].kind == ViewSpec::Kind::Scenario ? 1 : 0;
}

msar_status msar_catalogue_view_intercept_mean(const msar_catalogue* c, size_t index,
                                               int k, double* out) {
  return wrap([&] {
    if (c == nullptr || out == nullptr) throw validation_error("null argument");
    if (index >= c->cat.size()) throw validation_error("view index out of range");
    const auto& means = c->cat[index].intercept_mean;
    if (k < 0 || static_cast<std::size_t>(k) >= means.size()) {
      throw validation_error("regime index out of range");
    }
    *out = means[static_cast<std::size_t>(k)];
  });
}

void msar_catalogue_free(msar_catalogue* c) { delete c; }

/* ---- sampler ---- */

void msar_sampler_config_default(msar_sampler_config* cfg) {
  if (cfg == nullptr) return;
  cfg->burn_in = 1000;
  cfg->keep = 1000;
  cfg->thin = 1;
  cfg->seed = 0;
}

msar_status msar_gibbs_run(const msar_series* y, const msar_catalogue* c,
                           size_t view_index, const msar_sampler_config* cfg,
                           msar_draws** out) {
  return wrap([&] {
    if (y == nullptr || c == nullptr || out == nullptr) {
      throw validation_error("null argument");
    }
    if (view_index >= c->cat.size()) throw validation_error("view index out of range");
    *out = new msar_draws{run_gibbs(y->ts, c->cat[view_index], to_config(cfg))};
  });
}

size_t msar_draws_count(const msar_draws* d) { return d ? d->draws.draws.size() : 0; }

msar_status msar_draws_save(const msar_draws* d, const char* path) {
  return wrap([&] {
    if (d == nullptr || path == nullptr) throw validation_error("null argument");
    save_draws(d->draws, path);
  });
}

msar_status msar_draws_load(const char* path, msar_draws** out) {
  return wrap([&] {
    if (path == nullptr || out == nullptr) throw validation_error("null argument");
    *out = new msar_draws{load_draws(path)};
  });
}

void msar_draws_free(msar_draws* d) { delete d; }

msar_status msar_log_marginal_likelihood(const msar_series* y, const msar_catalogue* c,
                                         size_t view_index, const msar_draws* d,
                                         double* out) {
  return wrap([&] {
    if (y == nullptr || c == nullptr || d == nullptr || out == nullptr) {
      throw validation_error("null argument");
    }
    if (view_index >= c->cat.size()) throw validation_error("view index out of range");
    SamplerConfig cfg;
    cfg.burn_in = d->draws.burn_in;
    cfg.keep = d->draws.keep;
    cfg.thin = d->draws.thin;
    cfg.seed = d->draws.seed;
    *out = log_marginal_likelihood(y->ts, c->cat[view_index], d->draws, cfg);
  });
}

/* ---- forecast densities ---- */

msar_status msar_forecast(const msar_series* y, const msar_draws* d, int horizon,
                          int kernel_fit, msar_density** out) {
  return wrap([&] {
    if (y == nullptr || d == nullptr || out == nullptr) {
      throw validation_error("null argument");
    }
    ForecastOptions opts;
    opts.horizon = horizon;
    opts.kernel_fit = kernel_fit != 0;
    *out = new msar_density{forecast_view(y->ts, d->draws, opts)};
  });
}

double msar_density_pdf(const msar_density* f, double y) {
  return f ? f->forecast.density.pdf(y) : std::numeric_limits<double>::quiet_NaN();
}

double msar_density_cdf(const msar_density* f, double y) {
  return f ? f->forecast.density.cdf(y) : std::numeric_limits<double>::quiet_NaN();
}

double msar_density_mean(const msar_density* f) {
  return f ? f->forecast.density.mean() : std::numeric_limits<double>::quiet_NaN();
}

msar_status msar_density_quantile(const msar_density* f, double probability,
                                  double* out) {
  return wrap([&] {
    if (f == nullptr || out == nullptr) throw validation_error("null argument");
    *out = f->forecast.density.quantile(probability);
  });
}

size_t msar_density_size(const msar_density* f) {
  return f ? f->forecast.density.components().size() : 0;
}

msar_status msar_density_component(const msar_density* f, size_t index, double* mean,
                                   double* variance, double* weight) {
  return wrap([&] {
    if (f == nullptr) throw validation_error("null argument");
    const auto& comps = f->forecast.density.components();
    if (index >= comps.size()) throw validation_error("component index out of range");
    if (mean) *mean = comps[index].mean;
    if (variance) *variance = comps[index].variance;
    if (weight) *weight = comps[index].weight;
  });
}

msar_status msar_density_write_csv(const msar_density* f, const char* path) {
  return wrap([&] {
    if (f == nullptr || path == nullptr) throw validation_error("null argument");
    std::ofstream os(path);
    if (!os) throw validation_error(std::string("cannot open '") + path + "'");
    os << "origin_period,view_id,component,mean,variance,weight\n";
    char m[32], v[32], w[32];
    const auto& comps = f->forecast.density.components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::snprintf(m, sizeof(m), "%.17g", comps[i].mean);
      std::snprintf(v, sizeof(v), "%.17g", comps[i].variance);
      std::snprintf(w, sizeof(w), "%.17g", comps[i].weight);
      os << f->forecast.origin_period.str() << ',' << f->forecast.view_id << ',' << i
         << ',' << m << ',' << v << ',' << w << '\n';
    }
  });
}

void msar_density_free(msar_density* f) { delete f; }

/* ---- backtest ---- */

void msar_backtest_params_default(msar_backtest_params* p) {
  if (p == nullptr) return;
  std::memset(p, 0, sizeof(*p));
  p->R = 40;
  p->horizon = 1;
  p->burn_in = 1000;
  p->keep = 1000;
  p->thin = 1;
  p->rolling_width = 80;
  p->jobs = 1;
}

msar_status msar_backtest_run(const msar_series* y, const msar_catalogue* c,
                              const msar_backtest_params* params, msar_report** out) {
  return wrap([&] {
    if (y == nullptr || c == nullptr || params == nullptr || out == nullptr) {
      throw validation_error("null argument");
    }
    if (!params->t0 || !params->T0 || !params->Tbar) {
      throw validation_error("t0, T0 and Tbar are required");
    }
    BacktestPlan plan;
    plan.t0 = Quarter::parse(params->t0);
    plan.T0 = Quarter::parse(params->T0);
    plan.Tbar = Quarter::parse(params->Tbar);
    plan.R = params->R;
    plan.horizon = params->horizon;
    plan.sampler.burn_in = params->burn_in;
    plan.sampler.keep = params->keep;
    plan.sampler.thin = params->thin;
    plan.sampler.seed = params->seed;
    plan.rolling_width = params->rolling_width;
    plan.kernel_fit = params->kernel_fit != 0;
    plan.flat_equal_weights = params->flat_equal_weights != 0;
    plan.jobs = params->jobs;
    plan.verbose = params->verbose != 0;
    if (params->cache_dir) plan.cache_dir = params->cache_dir;
    if (params->methods) {
      std::string spec(params->methods);
      std::size_t pos = 0;
      while (pos <= spec.size()) {
        const std::size_t comma = spec.find(',', pos);
        const std::string tag =
            spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tag.empty()) {
          const auto m = parse_method_tag(tag);
          if (!m) throw validation_error("unknown method tag '" + tag + "'");
          plan.methods.push_back(*m);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
    *out = new msar_report{run_backtest(y->ts, c->cat, plan)};
  });
}

msar_status msar_report_save(const msar_report* r, const char* path) {
  return wrap([&] {
    if (r == nullptr || path == nullptr) throw validation_error("null argument");
    save_report_json(r->report, path);
  });
}

msar_status msar_report_load(const char* path, msar_report** out) {
  return wrap([&] {
    if (path == nullptr || out == nullptr) throw validation_error("null argument");
    *out = new msar_report{load_report_json(path)};
  });
}

msar_status msar_report_write_csvs(const msar_report* r, const char* outdir) {
  return wrap([&] {
    if (r == nullptr || outdir == nullptr) throw validation_error("null argument");
    write_report_csvs(r->report, outdir);
  });
}

msar_status msar_report_emit_plots(const msar_report* r, const char* outdir,
                                   const char* fan_method) {
  return wrap([&] {
    if (r == nullptr || outdir == nullptr) throw validation_error("null argument");
    emit_plots(r->report, outdir, fan_method ? fan_method : "pi2*");
  });
}

size_t msar_report_period_count(const msar_report* r) {
  return r ? r->report.periods.size() : 0;
}

msar_status msar_report_period(const msar_report* r, size_t index, char* buffer,
                               size_t buffer_size) {
  if (r == nullptr || index >= r->report.periods.size()) {
    g_last_error = "period index out of range";
    return MSAR_ERR_VALIDATION;
  }
  return fill_string(r->report.periods[index].target.str(), buffer, buffer_size);
}

msar_status msar_report_stat(const msar_report* r, const char* method_tag_str,
                             const char* stat, double* out) {
  return wrap([&] {
    if (r == nullptr || method_tag_str == nullptr || stat == nullptr || out == nullptr) {
      throw validation_error("null argument");
    }
    const auto m = parse_method_tag(method_tag_str);
    if (!m || !r->report.stats.count(*m)) {
      throw validation_error(std::string("method '") + method_tag_str +
                             "' not in the report");
    }
    const MethodStats& s = r->report.stats.at(*m);
    const std::string key(stat);
    if (key == "apd") *out = s.apd;
    else if (key == "ks_stat") *out = s.ks_statistic;
    else if (key == "ks_p") *out = s.ks_p_value;
    else if (key == "lb1_p") *out = s.lb1_p_value;
    else if (key == "lb2_p") *out = s.lb2_p_value;
    else if (key == "floored") *out = s.floored_scores;
    else throw validation_error("unknown stat '" + key + "'");
  });
}

void msar_report_free(msar_report* r) { delete r; }

} /* extern "C" */
