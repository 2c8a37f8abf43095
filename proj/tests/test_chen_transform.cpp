#include <gtest/gtest.h>

#include <random>

#include "ioopt/chen_transform.hpp"
#include "support.hpp"

using namespace ioopt;
using namespace ioopt::testing;

namespace {

Matrix<double> power(const Matrix<double>& m, int n) {
  auto out = Matrix<double>::identity(m.rows());
  for (int k = 0; k < n; ++k) out = out * m;
  return out;
}

}  // namespace

TEST(ChenTransform, TwoSector) {
  auto a = two_sector();
  auto t = eigentriple(a);
  auto c = chen_transform(a, t);
  EXPECT_LE(stochastic_deviation(c.p), 1e-15);
  EXPECT_NEAR(c.pi[0] / c.pi[1] * 20.0, 34.41179182, 1e-8);
  // mu = u . v, closed form from the quadratic-formula eigenvectors.
  EXPECT_NEAR(c.mu[0] / c.mu[1] * 20.0, two_sector_u1_at_20() / two_sector_v2_over_v1(), 1e-9);
  EXPECT_NEAR(c.pi[0] + c.pi[1], 1.0, 1e-15);
  EXPECT_EQ(c.source_rho, t.rho);

  auto pn = c.pi;
  for (int n = 1; n <= 10; ++n) {
    pn = left_multiply(pn, c.p);
    ASSERT_LE(max_diff(pn, c.pi), 1e-14);
  }
}

TEST(ChenTransform, StochasticInputIsFixed) {
  Matrix<double> p{{0.2, 0.8}, {0.6, 0.4}};
  auto a = StructureMatrix::from_values(p);
  auto c = chen_transform(a, eigentriple(a));
  EXPECT_LE(max_diff(c.p, p), 1e-14);
  EXPECT_LE(max_diff(c.pi, stationary_distribution(p)), 1e-14);
}

TEST(ChenTransform, RejectsInconsistentTriple) {
  auto a = two_sector();
  auto t = eigentriple(a);
  auto bad = t;
  bad.v[0] *= 1.01;
  EXPECT_THROW(chen_transform(a, bad), DomainError);
  bad = t;
  bad.rho *= 1.01;
  EXPECT_THROW(chen_transform(a, bad), DomainError);
  bad = t;
  bad.u.pop_back();
  EXPECT_THROW(chen_transform(a, bad), DomainError);
}

TEST(ChenTransform, PropertiesOnRandomMatrices) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 10;
    auto a = StructureMatrix::from_values(random_primitive(d, rng));
    auto t = eigentriple(a);
    auto c = chen_transform(a, t);
    ASSERT_LE(stochastic_deviation(c.p), 1e-12);
    auto pn = c.pi;
    for (int n = 1; n <= 100; ++n) pn = left_multiply(pn, c.p);
    ASSERT_LE(max_diff(pn, c.pi), d * 1e-12);
    for (std::size_t k = 0; k < d; ++k) ASSERT_NEAR(c.mu[k], c.pi[k], 1e-15);
  }
}

TEST(ChenTransform, ErgodicLimit) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + trial % 4;
    auto a = StructureMatrix::from_values(random_primitive(d, rng, 0.6));
    auto c = chen_transform(a, eigentriple(a));
    const int m = min_positivity_exponent(a);
    const int n = 4 * m * static_cast<int>(std::ceil(std::log(1e12)));
    auto pn = power(c.p, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) ASSERT_NEAR(pn(i, j), c.pi[j], 1e-9);
  }
}

TEST(SimilarityTransform, StochasticExactlyForEigenvector) {
  auto a = two_sector();
  auto t = eigentriple(a);
  EXPECT_LE(stochastic_deviation(similarity_transform(a.values(), t.rho, t.v)), 1e-14);
  std::vector<double> twice{2 * t.v[0], 2 * t.v[1]};
  EXPECT_LE(max_diff(similarity_transform(a.values(), t.rho, twice), similarity_transform(a.values(), t.rho, t.v)),
            1e-15);
  auto off = t.v;
  off[0] *= 1.1;
  EXPECT_GT(stochastic_deviation(similarity_transform(a.values(), t.rho, off)), 1e-3);
}

TEST(SimilarityTransform, IffOnRandomMatrices) {
  std::mt19937 rng(47);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + trial % 9;
    auto a = StructureMatrix::from_values(random_primitive(d, rng));
    auto t = eigentriple(a);
    const double tol = 100 * SolverConfig{}.tolerance;
    ASSERT_LE(stochastic_deviation(similarity_transform(a.values(), t.rho, t.v)), tol);
    auto w = t.v;
    w[pick(rng) % d] *= 1.05;
    ASSERT_GT(stochastic_deviation(similarity_transform(a.values(), t.rho, w)), tol);
  }
}

TEST(DualChain, TwoSectorAndIdentities) {
  auto a = two_sector();
  auto t = eigentriple(a);
  auto q = dual_chain(a, t);
  EXPECT_LE(stochastic_deviation(q.q, true), 1e-15);
  auto qe = right_multiply(q.q, q.equilibrium);
  EXPECT_LE(max_diff(qe, q.equilibrium), 1e-15);
  EXPECT_LE(max_diff(q.equilibrium, hadamard<double>(t.u, t.v)), 1e-15);
}

TEST(DualChain, SymmetricMatrixGivesTransposedChain) {
  Matrix<double> s{{0.3, 0.1, 0.2}, {0.1, 0.5, 0.4}, {0.2, 0.4, 0.1}};
  auto a = StructureMatrix::from_values(s);
  auto t = eigentriple(a);
  EXPECT_LE(max_diff(dual_chain(a, t).q, chen_transform(a, t).p.transpose()), 1e-12);
}

TEST(DualChain, TransposeDuality) {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = StructureMatrix::from_values(random_primitive(2 + trial % 8, rng));
    auto t = eigentriple(a);
    EigenTriple tt{t.rho, t.v, t.u, t.residual};
    auto p_of_transpose = chen_transform(a.transposed(), tt);
    ASSERT_LE(max_diff(dual_chain(a, t).q.transpose(), p_of_transpose.p), 1e-12);
  }
}

TEST(InverseChen, RoundTrips) {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + trial % 10;
    auto a = StructureMatrix::from_values(random_primitive(d, rng));
    auto t = eigentriple(a);
    auto c = chen_transform(a, t);
    auto w = random_positive_vector(d, rng);

    auto aw = inverse_chen(c.p, w, false);
    auto back = StructureMatrix::from_values(aw);
    // Analytic triple of A_w: rho = 1, right vector w, left vector pi / w.
    EigenTriple tw{1.0, {}, w, 0.0};
    for (std::size_t k = 0; k < d; ++k) tw.u.push_back(c.pi[k] / w[k]);
    normalize_triple(tw.u, tw.v);
    ASSERT_LE(max_diff(chen_transform(back, tw, 1e-10).p, c.p), 1e-12);

    auto q = dual_chain(a, t);
    auto aq = inverse_chen(q.q, w, true);
    EigenTriple tq{1.0, w, {}, 0.0};
    for (std::size_t k = 0; k < d; ++k) tq.v.push_back(q.equilibrium[k] / w[k]);
    normalize_triple(tq.u, tq.v);
    ASSERT_LE(max_diff(dual_chain(StructureMatrix::from_values(aq), tq, 1e-10).q, q.q), 1e-12);
  }
}

TEST(InverseChen, OnesAndErrors) {
  Matrix<double> p{{0.2, 0.8}, {0.6, 0.4}};
  std::vector<double> ones{1.0, 1.0};
  EXPECT_EQ(inverse_chen(p, ones, false), p);
  EXPECT_THROW(inverse_chen(p, ones, true), DomainError);
  Matrix<double> bad{{0.2, 0.7}, {0.6, 0.4}};
  EXPECT_THROW(inverse_chen(bad, ones, false), DomainError);
  EXPECT_THROW(inverse_chen(p, std::vector<double>{1.0, -1.0}, false), DomainError);
}

TEST(GeneralizedTransform, HermitianExample) {
  const Complex i(0.0, 1.0);
  Matrix<Complex> h{{Complex(0), i}, {-i, Complex(0)}};
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Complex> v{Complex(s), -i * s};
  // hand check: H v = v
  auto hv = right_multiply(h, v);
  EXPECT_LT(std::abs(hv[0] - v[0]) + std::abs(hv[1] - v[1]), 1e-15);

  auto r = generalized_transform(h, Complex(1.0), v);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_LT(std::abs(r(k, 0) + r(k, 1) - 1.0), 1e-15);
  std::vector<Complex> left{std::norm(v[0]), std::norm(v[1])};
  auto lr = left_multiply(left, r);
  EXPECT_LT(std::abs(lr[0] - left[0]) + std::abs(lr[1] - left[1]), 1e-15);

  EXPECT_THROW(generalized_transform(h, Complex(1.0), std::vector<Complex>{Complex(1), Complex(0)}), DomainError);
  EXPECT_THROW(generalized_transform(h, Complex(0.0), v), DomainError);
}

TEST(GeneralizedTransform, RealCaseReducesToChenTransform) {
  auto a = two_sector();
  auto t = eigentriple(a);
  Matrix<Complex> ac(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) ac(i, j) = a.values()(i, j);
  std::vector<Complex> v{t.v[0], t.v[1]};
  auto r = generalized_transform(ac, Complex(t.rho), v);
  auto p = chen_transform(a, t).p;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_LT(std::abs(r(i, j) - p(i, j)), 1e-14);
}

TEST(WaveProbability, Examples) {
  const Complex i(0.0, 1.0);
  EXPECT_EQ(wave_probability(std::vector<Complex>{1.0, 0.0}), (std::vector<double>{1.0, 0.0}));
  auto half = wave_probability(std::vector<Complex>{1.0 / std::sqrt(2.0), -i / std::sqrt(2.0)});
  EXPECT_NEAR(half[0], 0.5, 1e-15);
  EXPECT_NEAR(half[1], 0.5, 1e-15);
  auto p = wave_probability(std::vector<Complex>{3.0, 4.0 * i});
  EXPECT_NEAR(p[0], 0.36, 1e-15);
  EXPECT_NEAR(p[1], 0.64, 1e-15);
  EXPECT_THROW(wave_probability(std::vector<Complex>{0.0, 0.0}), DomainError);
}
