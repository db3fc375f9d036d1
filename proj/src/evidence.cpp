#include "msarpool/evidence.hpp"

#include <cmath>
#include <vector>

#include "msarpool/errors.hpp"
#include "msarpool/mathutil.hpp"
#include "msarpool/rng.hpp"

namespace msarpool {

void EvidenceOptions::validate() const {
  if (importance_draws < 10) throw validation_error("importance_draws must be >= 10");
  if (mixture_terms < 1) throw validation_error("mixture_terms must be >= 1");
  if (max_iterations < 1) throw validation_error("max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw validation_error("tolerance must be > 0");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Which parameter blocks are free (carry prior mass and importance mass).
struct Blocks {
  bool sigma = true;  // sigma2 sampled
  bool c0 = true;     // C0 sampled
  bool xi = true;     // K > 1
};

// One full-conditional kernel of the importance mixture, anchored at a draw.
struct QTerm {
  RegressionPosterior reg;
  double reg_half_logdet = 0.0;  // sum of log diag of the Cholesky factor
  Eigen::VectorXd sig_shape, sig_scale;
  std::vector<std::vector<double>> dir_alpha;
  double c0_shape = 0.0, c0_rate = 0.0;
};

double mvn_logpdf_from_precision(const Eigen::VectorXd& x, const QTerm& t) {
  static const double kLog2Pi = std::log(2.0 * M_PI);
  const Eigen::VectorXd dev = x - t.reg.mean;
  const Eigen::VectorXd u =
      t.reg.precision_chol.matrixU() * dev;  // quadratic form via ||U dev||^2
  return -0.5 * x.size() * kLog2Pi + t.reg_half_logdet - 0.5 * u.squaredNorm();
}

struct Problem {
  const TimeSeries& y;
  const ViewSpec& view;
  const SamplerConfig& cfg;
  Blocks blocks;
  std::vector<QTerm> terms;

  double log_posterior_kernel(const MSARDraw& d) const {
    const double ll =
        forward_filter(y, d, initial_state_distribution(d.xi, cfg.initial_dist))
            .log_likelihood;
    double lp = 0.0;
    for (int i = 0; i < d.beta.size(); ++i) {
      lp += log_normal_pdf(d.beta[i], view.intercept_mean[i], view.intercept_variance[i]);
    }
    for (int j = 0; j < d.alpha.size(); ++j) {
      lp += log_normal_pdf(d.alpha[j], view.ar_mean[j], view.ar_variance[j]);
    }
    if (blocks.sigma) {
      const double scale = blocks.c0 ? d.c0_scale : *cfg.fixed_c0;
      for (int i = 0; i < d.sigma2.size(); ++i) {
        lp += log_inverse_gamma_pdf(d.sigma2[i], view.sigma_shape, scale);
      }
      if (blocks.c0) lp += log_gamma_pdf(d.c0_scale, view.c0_shape, view.c0_rate);
    }
    if (blocks.xi) {
      const int k = view.num_regimes;
      std::vector<double> row(k);
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) row[c] = d.xi(r, c);
        lp += log_dirichlet_pdf(row, view.dirichlet[r]);
      }
    }
    return ll + lp;
  }

  double log_q(const MSARDraw& d) const {
    const int k = view.num_regimes;
    const int p = view.lag_order;
    Eigen::VectorXd reg(k + p);
    reg.head(k) = d.beta;
    if (p > 0) reg.tail(p) = d.alpha;
    std::vector<double> logs(terms.size());
    std::vector<double> xirow(k);
    for (std::size_t s = 0; s < terms.size(); ++s) {
      const QTerm& t = terms[s];
      double lq = mvn_logpdf_from_precision(reg, t);
      if (blocks.sigma) {
        for (int i = 0; i < k; ++i) {
          lq += log_inverse_gamma_pdf(d.sigma2[i], t.sig_shape[i], t.sig_scale[i]);
        }
      }
      if (blocks.c0) lq += log_gamma_pdf(d.c0_scale, t.c0_shape, t.c0_rate);
      if (blocks.xi) {
        for (int r = 0; r < k; ++r) {
          for (int c = 0; c < k; ++c) xirow[c] = d.xi(r, c);
          lq += log_dirichlet_pdf(xirow, t.dir_alpha[r]);
        }
      }
      logs[s] = lq;
    }
    return log_sum_exp(logs) - std::log(static_cast<double>(terms.size()));
  }

  MSARDraw sample_q(Rng& rng) const {
    const int k = view.num_regimes;
    const int p = view.lag_order;
    const auto s = static_cast<std::size_t>(rng.uniform() * terms.size());
    const QTerm& t = terms[std::min(s, terms.size() - 1)];
    MSARDraw d;
    Eigen::VectorXd z(k + p);
    for (int i = 0; i < k + p; ++i) z[i] = rng.normal();
    Eigen::VectorXd reg = t.reg.mean + t.reg.precision_chol.matrixU().solve(z);
    d.beta = reg.head(k);
    d.alpha = reg.tail(p);
    if (blocks.sigma) {
      d.sigma2.resize(k);
      for (int i = 0; i < k; ++i) {
        d.sigma2[i] = rng.inverse_gamma(t.sig_shape[i], t.sig_scale[i]);
      }
    } else {
      d.sigma2 = *cfg.fixed_sigma2;
    }
    d.c0_scale = blocks.c0 ? rng.gamma(t.c0_shape, t.c0_rate)
                           : (cfg.fixed_c0 ? *cfg.fixed_c0 : 1.0);
    if (blocks.xi) {
      d.xi.resize(k, k);
      for (int r = 0; r < k; ++r) {
        const auto row = rng.dirichlet(t.dir_alpha[r]);
        for (int c = 0; c < k; ++c) d.xi(r, c) = row[c];
      }
    } else {
      d.xi = Eigen::MatrixXd::Ones(1, 1);
    }
    return d;
  }
};

}  // namespace

double log_marginal_likelihood(const TimeSeries& y, const ViewSpec& view,
                               const PosteriorDraws& draws, const SamplerConfig& cfg,
                               const EvidenceOptions& opts) {
  view.validate();
  opts.validate();
  if (draws.draws.empty()) throw validation_error("empty draw archive");
  const int k = view.num_regimes;

  Problem prob{y, view, cfg, {}, {}};
  prob.blocks.sigma = !cfg.fixed_sigma2.has_value();
  prob.blocks.c0 = prob.blocks.sigma && !cfg.fixed_c0.has_value();
  prob.blocks.xi = k > 1;

  // Importance mixture anchored at an evenly spaced subset of the chain.
  const std::size_t m = draws.draws.size();
  const std::size_t num_terms = std::min<std::size_t>(opts.mixture_terms, m);
  prob.terms.reserve(num_terms);
  const auto pu = static_cast<std::size_t>(view.lag_order);
  const auto values = y.values();
  for (std::size_t i = 0; i < num_terms; ++i) {
    const MSARDraw& anchor = draws.draws[i * m / num_terms];
    QTerm t;
    t.reg = regression_posterior(y, anchor.states, view, anchor.sigma2);
    const auto& u = t.reg.precision_chol.matrixLLT();
    for (int j = 0; j < u.rows(); ++j) t.reg_half_logdet += std::log(u(j, j));
    if (prob.blocks.sigma) {
      t.sig_shape.resize(k);
      t.sig_scale.resize(k);
      Eigen::VectorXd count = Eigen::VectorXd::Zero(k);
      Eigen::VectorXd ssr = Eigen::VectorXd::Zero(k);
      for (std::size_t tt = pu; tt < y.size(); ++tt) {
        const int s = anchor.states[tt - pu];
        const double resid =
            values[tt] - msar_conditional_mean(values, tt, anchor.alpha, anchor.beta[s]);
        count[s] += 1.0;
        ssr[s] += resid * resid;
      }
      const double c0_anchor = prob.blocks.c0 ? anchor.c0_scale : *cfg.fixed_c0;
      for (int j = 0; j < k; ++j) {
        t.sig_shape[j] = view.sigma_shape + 0.5 * count[j];
        t.sig_scale[j] = c0_anchor + 0.5 * ssr[j];
      }
    }
    if (prob.blocks.c0) {
      t.c0_shape = view.c0_shape + k * view.sigma_shape;
      t.c0_rate = view.c0_rate;
      for (int j = 0; j < k; ++j) t.c0_rate += 1.0 / anchor.sigma2[j];
    }
    if (prob.blocks.xi) {
      Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(k, k);
      for (std::size_t tt = 0; tt + 1 < anchor.states.size(); ++tt) {
        counts(anchor.states[tt], anchor.states[tt + 1]) += 1.0;
      }
      t.dir_alpha.assign(k, std::vector<double>(k));
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) t.dir_alpha[r][c] = view.dirichlet[r][c] + counts(r, c);
      }
    }
    prob.terms.push_back(std::move(t));
  }

  // eta = log p_tilde - log q at posterior draws and at importance draws.
  std::vector<double> eta_post(m);
  for (std::size_t i = 0; i < m; ++i) {
    eta_post[i] = prob.log_posterior_kernel(draws.draws[i]) - prob.log_q(draws.draws[i]);
  }
  Rng rng(mix_seed(opts.seed, draws.seed, 0x627269646765ULL));
  const auto l = static_cast<std::size_t>(opts.importance_draws);
  std::vector<double> eta_imp(l);
  for (std::size_t i = 0; i < l; ++i) {
    const MSARDraw d = prob.sample_q(rng);
    eta_imp[i] = prob.log_posterior_kernel(d) - prob.log_q(d);
  }

  // Meng-Wong iteration in log space.
  const double ls1 = std::log(static_cast<double>(l) / static_cast<double>(l + m));
  const double ls2 = std::log(static_cast<double>(m) / static_cast<double>(l + m));
  double log_e = log_sum_exp(eta_imp) - std::log(static_cast<double>(l));
  std::vector<double> num(l), den(m);
  for (int it = 0; it < opts.max_iterations; ++it) {
    for (std::size_t i = 0; i < l; ++i) {
      const double d2 = std::max(ls1 + eta_imp[i], ls2 + log_e) +
                        std::log1p(std::exp(-std::fabs(ls1 + eta_imp[i] - ls2 - log_e)));
      num[i] = eta_imp[i] - d2;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double d2 = std::max(ls1 + eta_post[i], ls2 + log_e) +
                        std::log1p(std::exp(-std::fabs(ls1 + eta_post[i] - ls2 - log_e)));
      den[i] = -d2;
    }
    const double next = (log_sum_exp(num) - std::log(static_cast<double>(l))) -
                        (log_sum_exp(den) - std::log(static_cast<double>(m)));
    const double delta = std::fabs(next - log_e);
    log_e = next;
    if (delta < opts.tolerance) return log_e;
    if (!std::isfinite(log_e)) break;
  }
  throw numeric_error("bridge sampling failed to converge after " +
                      std::to_string(opts.max_iterations) +
                      " iterations (current estimate " + std::to_string(log_e) + ")");
}

}  // namespace msarpool
