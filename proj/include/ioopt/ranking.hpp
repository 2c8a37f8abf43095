// Product ranking by the chain equilibrium and weak / intermediate / pillar
// classification by cumulative stationary mass.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ioopt/chen_transform.hpp"

namespace ioopt {

struct RankingReport {
  std::vector<std::size_t> order;  // descending by value, ties by index
  std::vector<double> values;      // mu, in product order
  std::vector<double> equilibrium_multiples;  // mu_k / mean(mu), in product order
  std::vector<std::string> labels;
};

struct ClassificationReport {
  std::vector<std::size_t> ascending_order;
  std::vector<double> cumulative;  // prefix sums of pi along ascending_order
  std::vector<std::size_t> weak;
  std::vector<std::size_t> intermediate;
  std::vector<std::size_t> pillar;
  double theta_weak = 0.05;
  double theta_pillar = 0.50;
};

RankingReport rank_products(const TransitionChain& chain, const std::vector<std::string>& labels = {});
RankingReport rank_values(const std::vector<double>& mu, const std::vector<std::string>& labels = {});

/// Throws DomainError unless 0 < theta_weak < theta_pillar <= 1.
ClassificationReport classify(const TransitionChain& chain, double theta_weak = 0.05, double theta_pillar = 0.50);
ClassificationReport classify_distribution(const std::vector<double>& pi, double theta_weak = 0.05,
                                           double theta_pillar = 0.50);

/// (rank position starting at 1, cumulative mass).
std::vector<std::pair<std::size_t, double>> cumulative_curve(const TransitionChain& chain);

}  // namespace ioopt
