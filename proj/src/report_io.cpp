#include "msarpool/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "msarpool/errors.hpp"

namespace msarpool {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json method_result_to_json(const PeriodMethodResult& r) {
  json j;
  j["pit"] = r.pit;
  j["log_score"] = r.log_score;
  j["floored"] = r.floored;
  j["mean"] = r.mean;
  j["percentiles"] = r.percentiles;
  j["weights"] = r.weights;
  return j;
}

PeriodMethodResult method_result_from_json(const json& j) {
  PeriodMethodResult r;
  r.pit = j.at("pit").get<double>();
  r.log_score = j.at("log_score").get<double>();
  r.floored = j.at("floored").get<bool>();
  r.mean = j.at("mean").get<double>();
  r.percentiles = j.at("percentiles").get<std::vector<double>>();
  r.weights = j.at("weights").get<std::vector<double>>();
  return r;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw validation_error("cannot open '" + path.string() + "' for writing");
  return os;
}

}  // namespace

std::string sanitize_tag(const std::string& tag) {
  std::string out;
  for (char c : tag) {
    if (c == '*') out += "star";
    else out += c;
  }
  return out;
}

void save_report_json(const EvaluationReport& report, const std::string& path) {
  json j;
  j["format"] = "msarpool-report";
  j["version"] = 1;
  j["plan"] = {{"t0", report.t0.str()},       {"T0", report.T0.str()},
               {"Tbar", report.Tbar.str()},   {"R", report.R},
               {"horizon", report.horizon},   {"seed", report.seed},
               {"rolling_width", report.rolling_width}};
  j["view_ids"] = report.view_ids;
  j["view_is_scenario"] = report.view_is_scenario;
  j["view_num_regimes"] = report.view_num_regimes;
  j["percentile_levels"] = report.percentile_levels;
  json stats = json::object();
  for (const auto& [m, s] : report.stats) {
    stats[method_tag(m)] = {{"apd", s.apd},
                            {"ks_statistic", s.ks_statistic},
                            {"ks_p_value", s.ks_p_value},
                            {"lb1_p_value", s.lb1_p_value},
                            {"lb2_p_value", s.lb2_p_value},
                            {"floored_scores", s.floored_scores}};
  }
  j["stats"] = stats;
  json periods = json::array();
  for (const auto& p : report.periods) {
    json jp;
    jp["target"] = p.target.str();
    jp["realized"] = p.realized;
    json jm = json::object();
    for (const auto& [m, r] : p.methods) jm[method_tag(m)] = method_result_to_json(r);
    jp["methods"] = jm;
    periods.push_back(std::move(jp));
  }
  j["periods"] = periods;
  auto os = open_out(path);
  os << j.dump(1) << '\n';
}

EvaluationReport load_report_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw validation_error("cannot open '" + path + "'");
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw validation_error("bad report JSON in '" + path + "': " + e.what());
  }
  if (j.value("format", "") != "msarpool-report") {
    throw validation_error("'" + path + "' is not a report file");
  }
  EvaluationReport r;
  const auto& plan = j.at("plan");
  r.t0 = Quarter::parse(plan.at("t0").get<std::string>());
  r.T0 = Quarter::parse(plan.at("T0").get<std::string>());
  r.Tbar = Quarter::parse(plan.at("Tbar").get<std::string>());
  r.R = plan.at("R").get<int>();
  r.horizon = plan.at("horizon").get<int>();
  r.seed = plan.at("seed").get<std::uint64_t>();
  r.rolling_width = plan.at("rolling_width").get<int>();
  r.view_ids = j.at("view_ids").get<std::vector<int>>();
  r.view_is_scenario = j.at("view_is_scenario").get<std::vector<bool>>();
  r.view_num_regimes = j.at("view_num_regimes").get<std::vector<int>>();
  r.percentile_levels = j.at("percentile_levels").get<std::vector<double>>();
  for (const auto& [tag, s] : j.at("stats").items()) {
    const auto m = parse_method_tag(tag);
    if (!m) throw validation_error("unknown method tag '" + tag + "' in report");
    MethodStats ms;
    ms.apd = s.at("apd").get<double>();
    ms.ks_statistic = s.at("ks_statistic").get<double>();
    ms.ks_p_value = s.at("ks_p_value").get<double>();
    ms.lb1_p_value = s.at("lb1_p_value").get<double>();
    ms.lb2_p_value = s.at("lb2_p_value").get<double>();
    ms.floored_scores = s.at("floored_scores").get<int>();
    r.stats[*m] = ms;
  }
  for (const auto& jp : j.at("periods")) {
    PeriodRecord p;
    p.target = Quarter::parse(jp.at("target").get<std::string>());
    p.realized = jp.at("realized").get<double>();
    for (const auto& [tag, jr] : jp.at("methods").items()) {
      const auto m = parse_method_tag(tag);
      if (!m) throw validation_error("unknown method tag '" + tag + "' in report");
      p.methods[*m] = method_result_from_json(jr);
    }
    r.periods.push_back(std::move(p));
  }
  return r;
}

void write_report_csvs(const EvaluationReport& report, const std::string& outdir) {
  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  const fs::path dir(outdir);

  {
    auto os = open_out(dir / "summary.csv");
    os << "method,apd,ks_statistic,ks_pvalue,lb1_pvalue,lb2_pvalue,floored_scores\n";
    for (const auto& [m, s] : report.stats) {
      os << method_tag(m) << ',' << fmt(s.apd) << ',' << fmt(s.ks_statistic) << ','
         << fmt(s.ks_p_value) << ',' << fmt(s.lb1_p_value) << ',' << fmt(s.lb2_p_value)
         << ',' << s.floored_scores << '\n';
    }
  }
  {
    auto os = open_out(dir / "pits.csv");
    os << "period,method,pit,log_score\n";
    for (const auto& p : report.periods) {
      for (const auto& [m, r] : p.methods) {
        os << p.target.str() << ',' << method_tag(m) << ',' << fmt(r.pit) << ','
           << fmt(r.log_score) << '\n';
      }
    }
  }
  {
    auto os = open_out(dir / "weights.csv");
    os << "period,view_id,value,objective_tag\n";
    for (const auto& p : report.periods) {
      for (const auto& [m, r] : p.methods) {
        if (r.weights.empty()) continue;
        for (std::size_t v = 0; v < r.weights.size(); ++v) {
          os << p.target.str() << ',' << report.view_ids[v] << ',' << fmt(r.weights[v])
             << ',' << method_tag(m) << '\n';
        }
      }
    }
  }
  for (const auto& [m, s] : report.stats) {
    (void)s;
    auto os = open_out(dir / ("fan_" + sanitize_tag(method_tag(m)) + ".csv"));
    os << "period,realized";
    for (double lvl : report.percentile_levels) {
      os << ",p" << static_cast<int>(std::lround(lvl * 100));
    }
    os << '\n';
    for (const auto& p : report.periods) {
      const auto& r = p.methods.at(m);
      os << p.target.str() << ',' << fmt(p.realized);
      for (double q : r.percentiles) os << ',' << fmt(q);
      os << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// SVG emission

namespace {

constexpr const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1",
    "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#8c564b", "#2ca02c"};

struct Frame {
  double width = 900, height = 420;
  double left = 60, right = 20, top = 30, bottom = 40;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

  double x(double v) const {
    return left + (v - xmin) / (xmax - xmin) * (width - left - right);
  }
  double y(double v) const {
    return height - bottom - (v - ymin) / (ymax - ymin) * (height - top - bottom);
  }
};

void svg_open(std::ofstream& os, double w, double h) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_text(std::ofstream& os, double x, double y, const std::string& text,
              const std::string& extra = "font-size=\"11\" fill=\"#333\"") {
  os << "<text x=\"" << x << "\" y=\"" << y << "\" " << extra << '>' << text
     << "</text>\n";
}

void svg_axes(std::ofstream& os, const Frame& f, const EvaluationReport& report,
              int y_ticks, const char* y_format) {
  os << "<line x1=\"" << f.left << "\" y1=\"" << f.height - f.bottom << "\" x2=\""
     << f.width - f.right << "\" y2=\"" << f.height - f.bottom
     << "\" stroke=\"#333\"/>\n";
  os << "<line x1=\"" << f.left << "\" y1=\"" << f.top << "\" x2=\"" << f.left
     << "\" y2=\"" << f.height - f.bottom << "\" stroke=\"#333\"/>\n";
  const std::size_t n = report.periods.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 8);
  for (std::size_t i = 0; i < n; i += stride) {
    const double px = f.x(static_cast<double>(i));
    os << "<line x1=\"" << px << "\" y1=\"" << f.height - f.bottom << "\" x2=\"" << px
       << "\" y2=\"" << f.height - f.bottom + 4 << "\" stroke=\"#333\"/>\n";
    svg_text(os, px - 18, f.height - f.bottom + 16, report.periods[i].target.str());
  }
  for (int i = 0; i <= y_ticks; ++i) {
    const double v = f.ymin + (f.ymax - f.ymin) * i / y_ticks;
    const double py = f.y(v);
    os << "<line x1=\"" << f.left - 4 << "\" y1=\"" << py << "\" x2=\"" << f.left
       << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
    char label[32];
    std::snprintf(label, sizeof(label), y_format, v);
    svg_text(os, 8, py + 4, label);
  }
}

Method method_from_tag_or_throw(const std::string& tag) {
  const auto m = parse_method_tag(tag);
  if (!m) throw validation_error("unknown method tag '" + tag + "'");
  return *m;
}

void write_fan_chart(const EvaluationReport& report, Method m,
                     const std::filesystem::path& path) {
  auto os = open_out(path);
  const std::size_t n = report.periods.size();
  const std::size_t levels = report.percentile_levels.size();
  Frame f;
  f.xmin = 0;
  f.xmax = static_cast<double>(n - 1);
  f.ymin = report.periods[0].realized;
  f.ymax = f.ymin;
  for (const auto& p : report.periods) {
    const auto& r = p.methods.at(m);
    f.ymin = std::min({f.ymin, p.realized, r.percentiles.front()});
    f.ymax = std::max({f.ymax, p.realized, r.percentiles.back()});
  }
  const double pad = 0.05 * (f.ymax - f.ymin);
  f.ymin -= pad;
  f.ymax += pad;

  svg_open(os, f.width, f.height);
  svg_text(os, f.left, 18,
           std::string("One-step density forecasts (") + method_tag(m) +
               "): percentile fan and realized growth",
           "font-size=\"13\" fill=\"#111\"");
  for (std::size_t band = 0; band + 1 < (levels + 1) / 2; ++band) {
    const std::size_t lo = band, hi = levels - 1 - band;
    os << "<polygon fill=\"#4e79a7\" fill-opacity=\""
       << 0.12 + 0.75 * static_cast<double>(band) / static_cast<double>(levels / 2)
       << "\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      os << f.x(static_cast<double>(i)) << ','
         << f.y(report.periods[i].methods.at(m).percentiles[lo]) << ' ';
    }
    for (std::size_t i = n; i-- > 0;) {
      os << f.x(static_cast<double>(i)) << ','
         << f.y(report.periods[i].methods.at(m).percentiles[hi]) << ' ';
    }
    os << "\"/>\n";
  }
  os << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < n; ++i) {
    os << f.x(static_cast<double>(i)) << ',' << f.y(report.periods[i].realized) << ' ';
  }
  os << "\"/>\n";
  svg_axes(os, f, report, 6, "%.1f");
  os << "</svg>\n";
}

void write_weights_area(const EvaluationReport& report, Method m,
                        const std::filesystem::path& path) {
  auto os = open_out(path);
  const std::size_t n = report.periods.size();
  const std::size_t nviews = report.view_ids.size();

  const double total_w = 1280, total_h = 420;
  Frame left;  // stacked per-view weights
  left.width = 760;
  left.height = total_h;
  left.xmin = 0;
  left.xmax = static_cast<double>(n - 1);
  left.ymin = 0;
  left.ymax = 1;

  svg_open(os, total_w, total_h);
  svg_text(os, left.left, 18,
           std::string("View weights over time (") + method_tag(m) + ")",
           "font-size=\"13\" fill=\"#111\"");

  // Cumulative stacks, bottom-up in catalogue order.
  std::vector<std::vector<double>> cum(nviews + 1, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = report.periods[i].methods.at(m).weights;
    for (std::size_t v = 0; v < nviews; ++v) {
      cum[v + 1][i] = cum[v][i] + (v < w.size() ? w[v] : 0.0);
    }
  }
  for (std::size_t v = 0; v < nviews; ++v) {
    os << "<polygon fill=\"" << kPalette[v % 13] << "\" fill-opacity=\"0.85\" "
       << "stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      os << left.x(static_cast<double>(i)) << ',' << left.y(cum[v][i]) << ' ';
    }
    for (std::size_t i = n; i-- > 0;) {
      os << left.x(static_cast<double>(i)) << ',' << left.y(cum[v + 1][i]) << ' ';
    }
    os << "\"/>\n";
  }
  svg_axes(os, left, report, 5, "%.1f");
  for (std::size_t v = 0; v < nviews; ++v) {
    const double bx = left.width - 120, by = 40 + 14 * static_cast<double>(v);
    os << "<rect x=\"" << bx << "\" y=\"" << by - 9 << "\" width=\"10\" height=\"10\" fill=\""
       << kPalette[v % 13] << "\"/>\n";
    svg_text(os, bx + 14, by, "view " + std::to_string(report.view_ids[v]));
  }

  // Right panel: cumulative weight of the scenario-derived views.
  Frame right = left;
  right.left = 830;
  right.right = total_w - 1260;
  right.width = total_w;
  svg_text(os, right.left, 18, "Cumulative weight of stress-test views",
           "font-size=\"13\" fill=\"#111\"");
  os << "<line x1=\"" << right.left << "\" y1=\"" << right.height - right.bottom
     << "\" x2=\"" << 1260 << "\" y2=\"" << right.height - right.bottom
     << "\" stroke=\"#333\"/>\n";
  os << "<line x1=\"" << right.left << "\" y1=\"" << right.top << "\" x2=\"" << right.left
     << "\" y2=\"" << right.height - right.bottom << "\" stroke=\"#333\"/>\n";
  auto rx = [&](double v) {
    return right.left + v / right.xmax * (1260 - right.left);
  };
  os << "<polyline fill=\"none\" stroke=\"#2c3e50\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < n; ++i) {
    double fed = 0.0;
    const auto& w = report.periods[i].methods.at(m).weights;
    for (std::size_t v = 0; v < nviews && v < w.size(); ++v) {
      if (report.view_is_scenario[v]) fed += w[v];
    }
    os << rx(static_cast<double>(i)) << ',' << right.y(fed) << ' ';
  }
  os << "\"/>\n";
  os << "</svg>\n";
}

void write_pit_histogram(const EvaluationReport& report, Method m,
                         const std::filesystem::path& path, int bins = 10) {
  auto os = open_out(path);
  std::vector<int> counts(static_cast<std::size_t>(bins), 0);
  for (const auto& p : report.periods) {
    const double u = p.methods.at(m).pit;
    auto b = static_cast<std::size_t>(u * bins);
    if (b >= counts.size()) b = counts.size() - 1;
    counts[b]++;
  }
  const double expected =
      static_cast<double>(report.periods.size()) / static_cast<double>(bins);
  Frame f;
  f.width = 520;
  f.height = 360;
  f.xmin = 0;
  f.xmax = 1;
  f.ymin = 0;
  f.ymax = std::max<double>(expected, *std::max_element(counts.begin(), counts.end())) *
           1.15;

  svg_open(os, f.width, f.height);
  svg_text(os, f.left, 18, std::string("PIT histogram (") + method_tag(m) + ")",
           "font-size=\"13\" fill=\"#111\"");
  for (int b = 0; b < bins; ++b) {
    const double x0 = f.x(static_cast<double>(b) / bins);
    const double x1 = f.x(static_cast<double>(b + 1) / bins);
    const double y0 = f.y(static_cast<double>(counts[static_cast<std::size_t>(b)]));
    os << "<rect x=\"" << x0 + 1 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0 - 2
       << "\" height=\"" << f.y(0) - y0 << "\" fill=\"#4e79a7\"/>\n";
  }
  os << "<line x1=\"" << f.x(0) << "\" y1=\"" << f.y(expected) << "\" x2=\"" << f.x(1)
     << "\" y2=\"" << f.y(expected)
     << "\" stroke=\"#c0392b\" stroke-dasharray=\"4,3\"/>\n";
  os << "<line x1=\"" << f.left << "\" y1=\"" << f.height - f.bottom << "\" x2=\""
     << f.width - f.right << "\" y2=\"" << f.height - f.bottom << "\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    svg_text(os, f.x(i / 5.0) - 6, f.height - f.bottom + 16,
             std::to_string(i * 2 / 10.0).substr(0, 3));
  }
  os << "</svg>\n";
}

}  // namespace

void emit_plots(const EvaluationReport& report, const std::string& outdir,
                const std::string& fan_method) {
  namespace fs = std::filesystem;
  if (report.periods.empty()) throw validation_error("report holds no periods");
  fs::create_directories(outdir);
  const fs::path dir(outdir);
  write_report_csvs(report, outdir);

  const Method fan = method_from_tag_or_throw(fan_method);
  if (!report.stats.count(fan)) {
    throw validation_error("method '" + fan_method + "' missing from the report");
  }
  write_fan_chart(report, fan, dir / ("fan_" + sanitize_tag(fan_method) + ".svg"));
  write_pit_histogram(report, fan, dir / ("pit_hist_" + sanitize_tag(fan_method) + ".svg"));
  for (Method m : {Method::OptimalWeightsLogScore, Method::OptimalWeightsPit,
                   Method::OptimalPriorsLogScore, Method::OptimalPriorsPit}) {
    if (!report.stats.count(m)) continue;
    write_weights_area(report, m,
                       dir / ("weights_" + sanitize_tag(method_tag(m)) + ".svg"));
  }
}

}  // namespace msarpool
