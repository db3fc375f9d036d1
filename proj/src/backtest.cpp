#include "msarpool/backtest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "msarpool/errors.hpp"
#include "msarpool/mathutil.hpp"
#include "msarpool/rng.hpp"
#include "msarpool/stats.hpp"

namespace msarpool {

const char* method_tag(Method m) {
  switch (m) {
    case Method::EqualWeights: return "equal-weights";
    case Method::EqualPriors: return "equal-priors";
    case Method::MaxMarginalLikelihood: return "max-ml";
    case Method::OptimalWeightsLogScore: return "w1*";
    case Method::OptimalPriorsLogScore: return "pi1*";
    case Method::OptimalWeightsPit: return "w2*";
    case Method::OptimalPriorsPit: return "pi2*";
    case Method::ArRecursive: return "ar-recursive";
    case Method::ArRolling: return "ar-rolling";
  }
  return "?";
}

std::vector<Method> all_methods() {
  return {Method::EqualWeights,         Method::EqualPriors,
          Method::MaxMarginalLikelihood, Method::OptimalWeightsLogScore,
          Method::OptimalPriorsLogScore, Method::OptimalWeightsPit,
          Method::OptimalPriorsPit,      Method::ArRecursive,
          Method::ArRolling};
}

std::optional<Method> parse_method_tag(const std::string& tag) {
  for (Method m : all_methods()) {
    if (tag == method_tag(m)) return m;
  }
  return std::nullopt;
}

void BacktestPlan::validate() const {
  if (!(t0 < T0 && T0 < Tbar)) {
    throw validation_error("plan requires t0 < T0 < Tbar");
  }
  if (horizon < 1) throw validation_error("horizon must be >= 1");
  if (R < 1) throw validation_error("R must be >= 1");
  if (eval_start() > eval_end()) {
    throw validation_error("empty evaluation sample: R too large for [T0, Tbar]");
  }
  if (rolling_width < 1) throw validation_error("rolling width must be >= 1");
  if (jobs < 0) throw validation_error("jobs must be >= 0");
  sampler.validate();
  evidence.validate();
}

const PeriodRecord& EvaluationReport::at(Quarter target) const {
  for (const auto& p : periods) {
    if (p.target == target) return p;
  }
  throw validation_error("no record for " + target.str());
}

namespace {

constexpr int kGridPoints = 512;

std::vector<double> percentile_grid_levels() {
  std::vector<double> levels{0.01};
  for (int i = 1; i <= 19; ++i) levels.push_back(0.05 * i);
  levels.push_back(0.99);
  return levels;
}

// Reduced per-(view, origin) record kept after the heavy draws are dropped.
struct Cell {
  double log_pdf = 0.0;  // log view density at the realized target value
  double cdf = 0.0;      // view CDF at the realized target value
  double mean = 0.0;
  double log_ml = 0.0;
};

struct TaskOutput {
  std::vector<NormalComponent> components;
  double log_ml = std::numeric_limits<double>::quiet_NaN();
  double mean = 0.0;
};

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

void hash_doubles(std::uint64_t& h, std::span<const double> v) {
  h = fnv1a(v.data(), v.size() * sizeof(double), h);
}

std::uint64_t task_key(const ViewSpec& view, Quarter win_start, Quarter win_end,
                       const SamplerConfig& cfg, const EvidenceOptions& ev, int horizon,
                       bool kernel_fit, bool with_evidence) {
  std::uint64_t h = 1469598103934665603ULL;
  const int ints[] = {2,  // cache format version
                      view.id, view.num_regimes, view.lag_order, win_start.index(),
                      win_end.index(), cfg.burn_in, cfg.keep, cfg.thin,
                      static_cast<int>(cfg.initial_dist), cfg.random_permutation ? 1 : 0,
                      horizon, kernel_fit ? 1 : 0, with_evidence ? 1 : 0,
                      ev.importance_draws, ev.mixture_terms};
  h = fnv1a(ints, sizeof(ints), h);
  const std::uint64_t seeds[] = {cfg.seed, ev.seed};
  h = fnv1a(seeds, sizeof(seeds), h);
  hash_doubles(h, view.intercept_mean);
  hash_doubles(h, view.intercept_variance);
  hash_doubles(h, view.ar_mean);
  hash_doubles(h, view.ar_variance);
  const double scalars[] = {view.sigma_shape, view.c0_shape, view.c0_rate};
  h = fnv1a(scalars, sizeof(scalars), h);
  for (const auto& row : view.dirichlet) hash_doubles(h, row);
  return h;
}

bool cache_load(const std::string& dir, std::uint64_t key, TaskOutput& out) {
  if (dir.empty()) return false;
  char name[32];
  std::snprintf(name, sizeof(name), "%016llx.fwd", static_cast<unsigned long long>(key));
  std::ifstream in(std::filesystem::path(dir) / name, std::ios::binary);
  if (!in) return false;
  char magic[4];
  std::uint64_t stored_key = 0;
  std::uint32_t count = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&stored_key), 8);
  in.read(reinterpret_cast<char*>(&count), 4);
  if (!in || std::memcmp(magic, "MSFC", 4) != 0 || stored_key != key) return false;
  out.components.resize(count);
  in.read(reinterpret_cast<char*>(out.components.data()),
          static_cast<std::streamsize>(count * sizeof(NormalComponent)));
  in.read(reinterpret_cast<char*>(&out.log_ml), 8);
  in.read(reinterpret_cast<char*>(&out.mean), 8);
  return static_cast<bool>(in);
}

void cache_store(const std::string& dir, std::uint64_t key, const TaskOutput& out) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  char name[32];
  std::snprintf(name, sizeof(name), "%016llx.fwd", static_cast<unsigned long long>(key));
  const auto path = std::filesystem::path(dir) / name;
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) return;  // cache is best-effort
    const auto count = static_cast<std::uint32_t>(out.components.size());
    os.write("MSFC", 4);
    os.write(reinterpret_cast<const char*>(&key), 8);
    os.write(reinterpret_cast<const char*>(&count), 4);
    os.write(reinterpret_cast<const char*>(out.components.data()),
             static_cast<std::streamsize>(out.components.size() * sizeof(NormalComponent)));
    os.write(reinterpret_cast<const char*>(&out.log_ml), 8);
    os.write(reinterpret_cast<const char*>(&out.mean), 8);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
}

void run_parallel(int jobs, std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(jobs, static_cast<int>(count));
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct Engine {
  const TimeSeries& y;
  const ViewCatalogue& catalogue;
  const BacktestPlan& plan;
  std::vector<Method> methods;
  bool need_rolling = false;
  std::size_t k1_index = 0;  // first K=1 view, for the AR benchmarks
  bool have_k1 = false;

  std::size_t nviews = 0;
  int norigins = 0;
  std::vector<Cell> cells;          // [origin][view]
  std::vector<Cell> rolling_cells;  // [origin]

  struct TargetGrid {
    double lo = 0.0, hi = 0.0;
    std::vector<std::vector<double>> view_cdf;  // [view][grid]
    std::vector<double> rolling_cdf;
  };
  std::map<int, TargetGrid> grids;  // keyed by target quarter index

  Cell& cell(Quarter origin, std::size_t view) {
    return cells[static_cast<std::size_t>(origin - plan.first_window_end()) * nviews + view];
  }

  TaskOutput run_task(const ViewSpec& view, Quarter win_start, Quarter win_end,
                      std::uint64_t purpose, bool with_evidence) {
    SamplerConfig cfg = plan.sampler;
    cfg.seed = mix_seed(plan.sampler.seed, static_cast<std::uint64_t>(view.id),
                        static_cast<std::uint64_t>(win_end.index()), purpose);
    EvidenceOptions ev = plan.evidence;
    ev.seed = mix_seed(cfg.seed, 0xe11de9ceULL);
    const std::uint64_t key = task_key(view, win_start, win_end, cfg, ev, plan.horizon,
                                       plan.kernel_fit, with_evidence);
    TaskOutput out;
    if (cache_load(plan.cache_dir, key, out)) return out;

    const TimeSeries window = y.window(win_start, win_end);
    PosteriorDraws draws;
    try {
      draws = run_gibbs(window, view, cfg);
      ForecastOptions fopts;
      fopts.horizon = plan.horizon;
      fopts.kernel_fit = plan.kernel_fit;
      const ViewForecast f = forecast_view(window, draws, fopts);
      out.components = f.density.components();
      out.mean = f.density.mean();
      if (with_evidence) {
        out.log_ml = log_marginal_likelihood(window, view, draws, cfg, ev);
      }
    } catch (const std::runtime_error& e) {
      throw numeric_error(std::string(e.what()) + " [view " + std::to_string(view.id) +
                          ", window " + win_start.str() + ".." + win_end.str() + "]");
    }
    cache_store(plan.cache_dir, key, out);
    return out;
  }

  // Scalar reductions of a forecast for one realized value.
  static Cell reduce(const TaskOutput& task, double realized) {
    Cell c;
    c.mean = task.mean;
    c.log_ml = task.log_ml;
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& comp : task.components) {
      if (comp.weight == 0.0) continue;
      m = std::max(m, std::log(comp.weight) +
                          log_normal_pdf(realized, comp.mean, comp.variance));
    }
    double psum = 0.0, cdf = 0.0;
    for (const auto& comp : task.components) {
      if (comp.weight == 0.0) continue;
      psum += std::exp(std::log(comp.weight) +
                       log_normal_pdf(realized, comp.mean, comp.variance) - m);
      cdf += comp.weight * normal_cdf(realized, comp.mean, comp.variance);
    }
    c.log_pdf = std::isfinite(m) ? m + std::log(psum) : m;
    c.cdf = std::clamp(cdf, 0.0, 1.0);
    return c;
  }

  static void accumulate_grid(std::vector<double>& grid, const TaskOutput& task,
                              double lo, double hi) {
    grid.assign(kGridPoints, 0.0);
    const double step = (hi - lo) / (kGridPoints - 1);
    for (const auto& comp : task.components) {
      if (comp.weight == 0.0) continue;
      const double sd = std::sqrt(comp.variance);
      for (int g = 0; g < kGridPoints; ++g) {
        const double z = (lo + step * g - comp.mean) / sd;
        grid[static_cast<std::size_t>(g)] += comp.weight * 0.5 * std::erfc(-z * M_SQRT1_2);
      }
    }
  }

  void process_window(Quarter win_end) {
    const Quarter target = win_end + plan.horizon;
    const double realized = y.at(target);
    const std::size_t extra = need_rolling ? 1 : 0;
    std::vector<TaskOutput> outputs(nviews + extra);
    run_parallel(plan.jobs, nviews + extra, [&](std::size_t i) {
      if (i < nviews) {
        outputs[i] = run_task(catalogue[i], plan.t0, win_end, 1, true);
      } else {
        const Quarter roll_start = win_end - (plan.rolling_width - 1);
        if (roll_start < y.start_period()) {
          throw validation_error("rolling window before the sample start at " +
                                 win_end.str());
        }
        outputs[i] = run_task(catalogue[k1_index], roll_start, win_end, 2, false);
      }
    });

    for (std::size_t v = 0; v < nviews; ++v) cell(win_end, v) = reduce(outputs[v], realized);
    if (need_rolling) {
      rolling_cells[static_cast<std::size_t>(win_end - plan.first_window_end())] =
          reduce(outputs[nviews], realized);
    }

    // Per-view CDF grids are only needed where composite densities get
    // summarized, i.e. on the evaluation sample.
    if (target >= plan.eval_start() && target <= plan.eval_end()) {
      TargetGrid grid;
      grid.lo = std::numeric_limits<double>::infinity();
      grid.hi = -std::numeric_limits<double>::infinity();
      for (const auto& out : outputs) {
        for (const auto& comp : out.components) {
          if (comp.weight == 0.0) continue;
          const double sd = std::sqrt(comp.variance);
          grid.lo = std::min(grid.lo, comp.mean - 10.0 * sd);
          grid.hi = std::max(grid.hi, comp.mean + 10.0 * sd);
        }
      }
      grid.view_cdf.resize(nviews);
      run_parallel(plan.jobs, nviews + extra, [&](std::size_t i) {
        if (i < nviews) {
          accumulate_grid(grid.view_cdf[i], outputs[i], grid.lo, grid.hi);
        } else {
          accumulate_grid(grid.rolling_cdf, outputs[nviews], grid.lo, grid.hi);
        }
      });
      grids.emplace(target.index(), std::move(grid));
    }
    if (plan.verbose) {
      std::cerr << "window " << plan.t0.str() << ".." << win_end.str() << " done\n";
    }
  }

  std::vector<double> percentiles_from_grid(const TargetGrid& grid,
                                            const std::vector<double>& combined,
                                            const std::vector<double>& levels) const {
    std::vector<double> out;
    out.reserve(levels.size());
    const double step = (grid.hi - grid.lo) / (kGridPoints - 1);
    for (double q : levels) {
      const auto it = std::lower_bound(combined.begin(), combined.end(), q);
      if (it == combined.begin()) {
        out.push_back(grid.lo);
        continue;
      }
      if (it == combined.end()) {
        out.push_back(grid.hi);
        continue;
      }
      const auto g = static_cast<std::size_t>(it - combined.begin());
      const double c1 = combined[g - 1], c2 = combined[g];
      const double x1 = grid.lo + step * static_cast<double>(g - 1);
      const double frac = c2 > c1 ? (q - c1) / (c2 - c1) : 0.5;
      out.push_back(x1 + frac * step);
    }
    return out;
  }
};

}  // namespace

EvaluationReport run_backtest(const TimeSeries& y, const ViewCatalogue& catalogue,
                              const BacktestPlan& plan) {
  plan.validate();
  if (!y.covers(plan.t0) || !y.covers(plan.eval_end())) {
    throw validation_error("data must cover [" + plan.t0.str() + ", " +
                           plan.eval_end().str() + "]");
  }

  Engine eng{y, catalogue, plan, {}, false, 0, false, 0, 0, {}, {}, {}};
  eng.methods = plan.methods.empty() ? all_methods() : plan.methods;
  eng.nviews = catalogue.size();
  for (std::size_t i = 0; i < catalogue.size(); ++i) {
    if (catalogue[i].num_regimes == 1) {
      eng.k1_index = i;
      eng.have_k1 = true;
      break;
    }
  }
  const bool wants_ar =
      std::count(eng.methods.begin(), eng.methods.end(), Method::ArRecursive) > 0 ||
      std::count(eng.methods.begin(), eng.methods.end(), Method::ArRolling) > 0;
  if (wants_ar && !eng.have_k1) {
    throw validation_error("AR benchmarks need a K=1 view in the catalogue");
  }
  eng.need_rolling =
      std::count(eng.methods.begin(), eng.methods.end(), Method::ArRolling) > 0;

  eng.norigins = plan.last_window_end() - plan.first_window_end() + 1;
  eng.cells.resize(static_cast<std::size_t>(eng.norigins) * eng.nviews);
  eng.rolling_cells.resize(static_cast<std::size_t>(eng.norigins));

  for (Quarter t = plan.first_window_end(); t <= plan.last_window_end(); ++t) {
    eng.process_window(t);
  }

  EvaluationReport report;
  report.t0 = plan.t0;
  report.T0 = plan.T0;
  report.Tbar = plan.Tbar;
  report.R = plan.R;
  report.horizon = plan.horizon;
  report.seed = plan.sampler.seed;
  report.rolling_width = plan.rolling_width;
  report.percentile_levels = percentile_grid_levels();
  for (std::size_t i = 0; i < catalogue.size(); ++i) {
    report.view_ids.push_back(catalogue[i].id);
    report.view_is_scenario.push_back(catalogue[i].kind == ViewSpec::Kind::Scenario);
    report.view_num_regimes.push_back(catalogue[i].num_regimes);
  }

  const PoolWeights equal_w = catalogue.two_level_uniform(plan.flat_equal_weights);
  const int h = plan.horizon;

  for (Quarter tw = plan.T0 + h + plan.R - 1; tw <= plan.Tbar + h; ++tw) {
    const Quarter target = tw + h;
    const double realized = y.at(target);

    // Trailing R forecasts with known outcomes: targets in [tw-R+1, tw].
    ForecastHistory history;
    history.num_views = eng.nviews;
    for (Quarter tau = tw - plan.R + 1; tau <= tw; ++tau) {
      HistoryPoint pt;
      pt.target = tau;
      pt.view_log_pdf.resize(static_cast<long>(eng.nviews));
      pt.view_cdf.resize(static_cast<long>(eng.nviews));
      pt.view_log_ml.resize(static_cast<long>(eng.nviews));
      for (std::size_t v = 0; v < eng.nviews; ++v) {
        const Cell& c = eng.cell(tau - h, v);
        pt.view_log_pdf[static_cast<long>(v)] = c.log_pdf;
        pt.view_cdf[static_cast<long>(v)] = c.cdf;
        pt.view_log_ml[static_cast<long>(v)] = c.log_ml;
      }
      history.points.push_back(std::move(pt));
    }

    Eigen::VectorXd evidence_now(static_cast<long>(eng.nviews));
    for (std::size_t v = 0; v < eng.nviews; ++v) {
      evidence_now[static_cast<long>(v)] = eng.cell(tw, v).log_ml;
    }

    PeriodRecord record;
    record.target = target;
    record.realized = realized;
    const auto& grid = eng.grids.at(target.index());

    auto pooled_result = [&](const PoolWeights& w) {
      PeriodMethodResult r;
      r.weights.assign(w.values().begin(), w.values().end());
      double cdf = 0.0, mean = 0.0;
      std::vector<double> logs(eng.nviews);
      std::vector<double> combined(kGridPoints, 0.0);
      for (std::size_t v = 0; v < eng.nviews; ++v) {
        const Cell& c = eng.cell(tw, v);
        cdf += w[v] * c.cdf;
        mean += w[v] * c.mean;
        logs[v] = w[v] > 0.0 ? std::log(w[v]) + c.log_pdf
                             : -std::numeric_limits<double>::infinity();
        if (w[v] > 0.0) {
          for (int g = 0; g < kGridPoints; ++g) {
            combined[static_cast<std::size_t>(g)] +=
                w[v] * grid.view_cdf[v][static_cast<std::size_t>(g)];
          }
        }
      }
      r.pit = std::clamp(cdf, 0.0, 1.0);
      const double lp = log_sum_exp(logs);
      r.floored = lp < kLogScoreFloor;
      r.log_score = std::max(lp, kLogScoreFloor);
      r.mean = mean;
      for (auto& c : combined) c = std::clamp(c, 0.0, 1.0);
      for (int g = 1; g < kGridPoints; ++g) {
        combined[static_cast<std::size_t>(g)] = std::max(
            combined[static_cast<std::size_t>(g)], combined[static_cast<std::size_t>(g - 1)]);
      }
      r.percentiles = eng.percentiles_from_grid(grid, combined, report.percentile_levels);
      return r;
    };

    auto single_result = [&](const Cell& c, const std::vector<double>& cdf_grid) {
      PeriodMethodResult r;
      r.pit = c.cdf;
      r.floored = c.log_pdf < kLogScoreFloor;
      r.log_score = std::max(c.log_pdf, kLogScoreFloor);
      r.mean = c.mean;
      std::vector<double> combined = cdf_grid;
      for (auto& v : combined) v = std::clamp(v, 0.0, 1.0);
      for (std::size_t g = 1; g < combined.size(); ++g) {
        combined[g] = std::max(combined[g], combined[g - 1]);
      }
      r.percentiles = eng.percentiles_from_grid(grid, combined, report.percentile_levels);
      return r;
    };

    for (Method m : eng.methods) {
      switch (m) {
        case Method::EqualWeights:
          record.methods[m] = pooled_result(equal_w);
          break;
        case Method::EqualPriors:
          record.methods[m] = pooled_result(posterior_probs(equal_w, evidence_now));
          break;
        case Method::MaxMarginalLikelihood: {
          long best = 0;
          evidence_now.maxCoeff(&best);
          record.methods[m] =
              pooled_result(PoolWeights::unit(eng.nviews, static_cast<std::size_t>(best)));
          break;
        }
        case Method::OptimalWeightsLogScore:
          record.methods[m] = pooled_result(
              optimize_weights(history, Objective::LogScore, plan.optimizer).weights);
          break;
        case Method::OptimalWeightsPit:
          record.methods[m] = pooled_result(
              optimize_weights(history, Objective::PitUniformity, plan.optimizer).weights);
          break;
        case Method::OptimalPriorsLogScore: {
          const auto prior =
              optimize_prior(history, Objective::LogScore, plan.optimizer).weights;
          record.methods[m] = pooled_result(posterior_probs(prior, evidence_now));
          break;
        }
        case Method::OptimalPriorsPit: {
          const auto prior =
              optimize_prior(history, Objective::PitUniformity, plan.optimizer).weights;
          record.methods[m] = pooled_result(posterior_probs(prior, evidence_now));
          break;
        }
        case Method::ArRecursive: {
          auto r = single_result(eng.cell(tw, eng.k1_index), grid.view_cdf[eng.k1_index]);
          record.methods[m] = std::move(r);
          break;
        }
        case Method::ArRolling: {
          const auto idx = static_cast<std::size_t>(tw - plan.first_window_end());
          record.methods[m] = single_result(eng.rolling_cells[idx], grid.rolling_cdf);
          break;
        }
      }
    }
    report.periods.push_back(std::move(record));
  }

  // Per-method evaluation statistics over the full sample.
  for (Method m : eng.methods) {
    std::vector<double> pits, scores;
    int floored = 0;
    for (const auto& p : report.periods) {
      const auto& r = p.methods.at(m);
      pits.push_back(r.pit);
      scores.push_back(r.log_score);
      if (r.floored) ++floored;
    }
    MethodStats s;
    s.apd = apd(scores);
    const KsTest ks = ks_test(pits);
    s.ks_statistic = ks.statistic;
    s.ks_p_value = ks.p_value;
    s.lb1_p_value = ljung_box(pits, 1).p_value;
    s.lb2_p_value = ljung_box(pits, 2).p_value;
    s.floored_scores = floored;
    report.stats[m] = s;
  }
  return report;
}

std::vector<ViewForecast> ar_benchmark(const TimeSeries& y, Quarter sample_start,
                                       Quarter first_origin, Quarter last_origin,
                                       int horizon, const ArScheme& scheme,
                                       const SamplerConfig& base_cfg) {
  if (horizon < 1) throw validation_error("horizon must be >= 1");
  const ViewSpec view = build_vague_views(1).front();
  std::vector<ViewForecast> out;
  for (Quarter t = first_origin; t <= last_origin; ++t) {
    const Quarter start = scheme.rolling ? t - (scheme.width - 1) : sample_start;
    if (start < y.start_period() || !y.covers(t)) {
      throw validation_error("estimation window [" + start.str() + ", " + t.str() +
                             "] not covered by the data");
    }
    SamplerConfig cfg = base_cfg;
    cfg.seed = mix_seed(base_cfg.seed, static_cast<std::uint64_t>(view.id),
                        static_cast<std::uint64_t>(t.index()), scheme.rolling ? 2 : 1);
    const TimeSeries window = y.window(start, t);
    const PosteriorDraws draws = run_gibbs(window, view, cfg);
    ForecastOptions fopts;
    fopts.horizon = horizon;
    out.push_back(forecast_view(window, draws, fopts));
  }
  return out;
}

}  // namespace msarpool
