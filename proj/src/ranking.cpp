#include "ioopt/ranking.hpp"

#include <numeric>

#include "ioopt/errors.hpp"

namespace ioopt {

namespace {

std::vector<std::size_t> sorted_indices(const std::vector<double>& values, bool descending) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return descending ? values[a] > values[b] : values[a] < values[b];
  });
  return idx;
}

std::vector<double> normalized(const std::vector<double>& pi) {
  const double total = sum(pi);
  if (!(total > 0.0)) throw DomainError("distribution has no mass");
  std::vector<double> out(pi);
  for (double& x : out) {
    if (x < 0.0) throw DomainError("distribution has a negative component");
    x /= total;
  }
  return out;
}

}  // namespace

RankingReport rank_values(const std::vector<double>& mu, const std::vector<std::string>& labels) {
  if (mu.empty()) throw DomainError("nothing to rank");
  if (!labels.empty() && labels.size() != mu.size()) throw DomainError("label count does not match dimension");
  RankingReport r;
  r.values = mu;
  r.order = sorted_indices(mu, true);
  const double mean = sum(mu) / static_cast<double>(mu.size());
  r.equilibrium_multiples.reserve(mu.size());
  for (double x : mu) r.equilibrium_multiples.push_back(x / mean);
  r.labels = labels.empty() ? default_labels(mu.size()) : labels;
  return r;
}

RankingReport rank_products(const TransitionChain& chain, const std::vector<std::string>& labels) {
  return rank_values(chain.mu, labels);
}

ClassificationReport classify_distribution(const std::vector<double>& pi_in, double theta_weak, double theta_pillar) {
  if (!(theta_weak > 0.0 && theta_weak < theta_pillar && theta_pillar <= 1.0))
    throw DomainError("thresholds must satisfy 0 < theta_weak < theta_pillar <= 1");
  auto pi = normalized(pi_in);
  ClassificationReport c;
  c.theta_weak = theta_weak;
  c.theta_pillar = theta_pillar;
  c.ascending_order = sorted_indices(pi, false);
  double running = 0.0;
  for (auto k : c.ascending_order) {
    running += pi[k];
    c.cumulative.push_back(running);
  }

  bool pillar_started = false;
  for (std::size_t pos = 0; pos < c.ascending_order.size(); ++pos) {
    const auto product = c.ascending_order[pos];
    // Pillar products begin at the first position whose cumulative mass
    // reaches theta_pillar.
    if (pillar_started || c.cumulative[pos] >= theta_pillar) {
      pillar_started = true;
      c.pillar.push_back(product);
    } else if (c.cumulative[pos] <= theta_weak) {
      c.weak.push_back(product);
    } else {
      c.intermediate.push_back(product);
    }
  }
  return c;
}

ClassificationReport classify(const TransitionChain& chain, double theta_weak, double theta_pillar) {
  return classify_distribution(chain.pi, theta_weak, theta_pillar);
}

std::vector<std::pair<std::size_t, double>> cumulative_curve(const TransitionChain& chain) {
  auto c = classify_distribution(chain.pi, 0.05, 0.5);
  std::vector<std::pair<std::size_t, double>> curve;
  for (std::size_t pos = 0; pos < c.cumulative.size(); ++pos) curve.emplace_back(pos + 1, c.cumulative[pos]);
  return curve;
}

}  // namespace ioopt
