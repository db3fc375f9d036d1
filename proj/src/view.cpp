#include "msarpool/view.hpp"

#include <cmath>
#include <map>
#include <set>

#include "msarpool/errors.hpp"

namespace msarpool {

void ViewSpec::validate() const {
  const auto fail = [this](const std::string& msg) {
    throw validation_error("view " + std::to_string(id) + ": " + msg);
  };
  if (num_regimes < 1) fail("regime count must be >= 1");
  if (lag_order < 0) fail("lag order must be >= 0");
  const auto k = static_cast<std::size_t>(num_regimes);
  const auto p = static_cast<std::size_t>(lag_order);
  if (intercept_mean.size() != k) fail("b0 length must equal K");
  if (intercept_variance.size() != k) fail("B0 length must equal K");
  if (ar_mean.size() != p) fail("a0 length must equal p");
  if (ar_variance.size() != p) fail("A0 length must equal p");
  for (double v : intercept_variance) {
    if (!(v > 0.0)) fail("B0 entries must be > 0");
  }
  for (double v : ar_variance) {
    if (!(v > 0.0)) fail("A0 entries must be > 0");
  }
  if (!(sigma_shape > 2.0)) fail("c0 must be > 2 so the prior variance of sigma^2 exists");
  if (!(c0_shape > 0.0) || !(c0_rate > 0.0)) fail("g0 and G0 must be > 0");
  if (dirichlet.size() != k) fail("e must be K x K");
  for (const auto& row : dirichlet) {
    if (row.size() != k) fail("e must be K x K");
    for (double e : row) {
      if (!(e > 0.0)) fail("e entries must be > 0");
    }
  }
  for (double v : intercept_mean) {
    if (!std::isfinite(v)) fail("b0 entries must be finite");
  }
  for (double v : ar_mean) {
    if (!std::isfinite(v)) fail("a0 entries must be finite");
  }
}

ViewCatalogue::ViewCatalogue(std::vector<ViewSpec> views) : views_(std::move(views)) {
  if (views_.empty()) throw validation_error("catalogue must hold at least one view");
  std::set<int> ids;
  for (const auto& v : views_) {
    v.validate();
    if (!ids.insert(v.id).second) {
      throw validation_error("duplicate view id " + std::to_string(v.id));
    }
  }
}

PoolWeights ViewCatalogue::two_level_uniform(bool flat_over_views) const {
  std::vector<double> w(views_.size());
  if (flat_over_views) {
    for (auto& x : w) x = 1.0 / static_cast<double>(views_.size());
    return PoolWeights(std::move(w));
  }
  std::map<int, int> count_per_k;
  for (const auto& v : views_) count_per_k[v.num_regimes]++;
  const double mass_per_k = 1.0 / static_cast<double>(count_per_k.size());
  for (std::size_t i = 0; i < views_.size(); ++i) {
    w[i] = mass_per_k / count_per_k[views_[i].num_regimes];
  }
  return PoolWeights(std::move(w));
}

std::vector<std::size_t> ViewCatalogue::scenario_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < views_.size(); ++i) {
    if (views_[i].kind == ViewSpec::Kind::Scenario) out.push_back(i);
  }
  return out;
}

std::vector<ViewSpec> build_vague_views(int k_max) {
  if (k_max < 1) throw validation_error("k_max must be >= 1");
  std::vector<ViewSpec> views;
  views.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    ViewSpec v;
    v.id = k;
    v.kind = ViewSpec::Kind::Vague;
    v.num_regimes = k;
    v.lag_order = 5;
    v.intercept_mean.assign(k, 0.0);
    v.intercept_variance.assign(k, 1.0);
    v.ar_mean = {0.5, 0.0, 0.0, 0.0, 0.0};
    v.ar_variance.assign(5, 1.0);
    v.sigma_shape = 3.0;
    v.c0_shape = 0.5;
    v.c0_rate = 0.5;
    v.dirichlet.assign(k, std::vector<double>(k, k > 1 ? 1.0 / (k - 1) : 2.0));
    for (int i = 0; i < k; ++i) v.dirichlet[i][i] = 2.0;
    views.push_back(std::move(v));
  }
  return views;
}

}  // namespace msarpool
