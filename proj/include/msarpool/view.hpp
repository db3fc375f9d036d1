#pragma once

#include <string>
#include <vector>

#include "msarpool/mixture.hpp"

namespace msarpool {

// One prior configuration for the MSAR: a regime count plus every
// hyperparameter of the independence prior.
struct ViewSpec {
  enum class Kind { Vague, Scenario };

  int id = 0;
  Kind kind = Kind::Vague;
  int num_regimes = 1;                // K
  int lag_order = 0;                  // p
  std::vector<double> intercept_mean;      // b0, length K
  std::vector<double> intercept_variance;  // B0, length K, > 0
  std::vector<double> ar_mean;             // a0, length p
  std::vector<double> ar_variance;         // A0, length p, > 0
  double sigma_shape = 3.0;                // c0, must be > 2
  double c0_shape = 0.5;                   // g0
  double c0_rate = 0.5;                    // G0
  std::vector<std::vector<double>> dirichlet;  // e, K x K, entries > 0

  void validate() const;  // throws validation_error on any broken invariant
};

// Ordered, fixed catalogue of views; defines the simplex dimension for all
// pool weights in a run.
class ViewCatalogue {
 public:
  explicit ViewCatalogue(std::vector<ViewSpec> views);

  std::size_t size() const { return views_.size(); }
  const ViewSpec& operator[](std::size_t i) const { return views_[i]; }
  const std::vector<ViewSpec>& views() const { return views_; }

  // Uniform mass over the distinct regime counts present, split uniformly
  // among the views sharing each count. With `flat_over_views` every view
  // gets 1/N instead.
  PoolWeights two_level_uniform(bool flat_over_views = false) const;

  // Indices of the scenario-derived views (for cumulative weight series).
  std::vector<std::size_t> scenario_indices() const;

 private:
  std::vector<ViewSpec> views_;
};

// Diffuse views for K = 1..k_max: intercepts centered on 0 with unit
// variance, first-lag AR mean 0.5, persistence-favoring Dirichlet rows.
std::vector<ViewSpec> build_vague_views(int k_max);

}  // namespace msarpool
