#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ioopt/ranking.hpp"
#include "support.hpp"

using namespace ioopt;
using namespace ioopt::testing;

namespace {

std::vector<double> random_distribution(std::size_t d, std::mt19937& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(d);
  double s = 0.0;
  for (auto& x : p) s += (x = e(rng));
  for (auto& x : p) x /= s;
  return p;
}

}  // namespace

TEST(RankProducts, TwoSector) {
  auto a = two_sector();
  auto chain = chen_transform(a, eigentriple(a));
  auto r = rank_products(chain, a.labels());
  EXPECT_EQ(r.order, (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(r.values[0] / r.values[1] * 20.0, 34.41179182, 1e-8);
  EXPECT_NEAR(r.equilibrium_multiples[0] + r.equilibrium_multiples[1], 2.0, 1e-14);
  EXPECT_EQ(r.labels, a.labels());
}

TEST(RankValues, TiesAndScaling) {
  auto uniform = rank_values({0.25, 0.25, 0.25, 0.25});
  EXPECT_EQ(uniform.order, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(uniform.labels, default_labels(4));
  std::vector<double> mu{0.3, 0.1, 0.3, 0.5};
  auto r = rank_values(mu);
  EXPECT_EQ(r.order, (std::vector<std::size_t>{3, 0, 2, 1}));
  std::vector<double> scaled_mu;
  for (double x : mu) scaled_mu.push_back(17.5 * x);
  EXPECT_EQ(rank_values(scaled_mu).order, r.order);
  EXPECT_LE(max_diff(rank_values(scaled_mu).equilibrium_multiples, r.equilibrium_multiples), 1e-15);
}

TEST(Classify, Fixtures) {
  auto uniform = classify_distribution({0.25, 0.25, 0.25, 0.25});
  EXPECT_TRUE(uniform.weak.empty());
  EXPECT_EQ(uniform.pillar, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(uniform.intermediate, (std::vector<std::size_t>{0}));

  auto skewed = classify_distribution({0.01, 0.02, 0.97});
  EXPECT_EQ(skewed.weak, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(skewed.pillar, (std::vector<std::size_t>{2}));
  EXPECT_TRUE(skewed.intermediate.empty());

  auto single = classify_distribution({1.0});
  EXPECT_TRUE(single.weak.empty());
  EXPECT_EQ(single.pillar, (std::vector<std::size_t>{0}));

  // Boundary inclusivity: cumulative exactly at the thresholds.
  auto edges = classify_distribution({0.05, 0.45, 0.5});
  EXPECT_EQ(edges.weak, (std::vector<std::size_t>{0}));
  EXPECT_EQ(edges.pillar, (std::vector<std::size_t>{1, 2}));
}

TEST(Classify, Errors) {
  EXPECT_THROW(classify_distribution({0.5, 0.5}, 0.5, 0.5), DomainError);
  EXPECT_THROW(classify_distribution({0.5, 0.5}, 0.0, 0.5), DomainError);
  EXPECT_THROW(classify_distribution({0.5, 0.5}, 0.1, 1.5), DomainError);
  EXPECT_THROW(classify_distribution({0.5, -0.5}), DomainError);
}

TEST(Classify, PartitionAndMonotonicityProperties) {
  std::mt19937 rng(89);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 1 + rng() % 100;
    auto pi = random_distribution(d, rng);
    const double tw = 0.01 + 0.2 * unit(rng);
    const double tp = tw + (1.0 - tw) * (0.05 + 0.9 * unit(rng));
    auto c = classify_distribution(pi, tw, tp);
    std::set<std::size_t> all;
    for (const auto* part : {&c.weak, &c.intermediate, &c.pillar})
      for (auto k : *part) ASSERT_TRUE(all.insert(k).second);
    ASSERT_EQ(all.size(), d);
    for (std::size_t i = 1; i < d; ++i) ASSERT_LE(c.cumulative[i - 1], c.cumulative[i]);
    ASSERT_NEAR(c.cumulative.back(), 1.0, 1e-12);

    auto lower = classify_distribution(pi, tw * 0.5, tp);
    ASSERT_LE(lower.weak.size(), c.weak.size());
    for (auto k : lower.weak) ASSERT_TRUE(std::count(c.weak.begin(), c.weak.end(), k));
    auto higher = classify_distribution(pi, tw, std::min(1.0, tp * 1.2));
    ASSERT_LE(higher.pillar.size(), c.pillar.size());
    for (auto k : higher.pillar) ASSERT_TRUE(std::count(c.pillar.begin(), c.pillar.end(), k));
  }
}

TEST(Classify, InvariantUnderRescaling) {
  std::mt19937 rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = StructureMatrix::from_values(random_primitive(3 + trial, rng));
    auto t = eigentriple(a);
    auto base = classify(chen_transform(a, t));
    auto s = t;
    for (auto& x : s.u) x *= 3.0;
    for (auto& x : s.v) x /= 3.0;
    auto chain = chen_transform(a, s);
    auto c = classify(chain);
    ASSERT_EQ(c.weak, base.weak);
    ASSERT_EQ(c.pillar, base.pillar);
    ASSERT_EQ(rank_products(chain).order, rank_values(chain.pi).order);
  }
}

TEST(CumulativeCurve, TwoSector) {
  auto a = two_sector();
  auto curve = cumulative_curve(chen_transform(a, eigentriple(a)));
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_EQ(curve[0].first, 1u);
  EXPECT_EQ(curve[1].first, 2u);
  EXPECT_NEAR(curve[1].second, 1.0, 1e-15);
  EXPECT_LE(curve[0].second, curve[1].second);
}
