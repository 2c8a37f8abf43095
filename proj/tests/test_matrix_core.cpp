#include <gtest/gtest.h>

#include <random>

#include "ioopt/errors.hpp"
#include "ioopt/structure_matrix.hpp"
#include "support.hpp"

using namespace ioopt;
using ioopt::testing::two_sector;

namespace {

StructureMatrix from_pattern(std::size_t d, unsigned bits) {
  Matrix<Rational> m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (bits >> (i * d + j) & 1u) m(i, j) = 1;
  return StructureMatrix::from_exact(m);
}

// Warshall closure over the zero pattern.
bool closure_oracle(std::size_t d, unsigned bits) {
  std::vector<std::vector<bool>> r(d, std::vector<bool>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r[i][j] = bits >> (i * d + j) & 1u;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!r[i][j]) return false;
  return true;
}

// Least m with the boolean power positive, by direct powering up to the
// Wielandt bound plus slack; 0 when none exists.
int powering_oracle(const StructureMatrix& a) {
  const std::size_t d = a.dim();
  std::vector<std::vector<bool>> p(d, std::vector<bool>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) p[i][j] = a.positive(i, j);
  auto power = p;
  for (int m = 1; m <= static_cast<int>((d - 1) * (d - 1) + 1) + 2; ++m) {
    bool all = true;
    for (auto& row : power)
      for (bool b : row) all = all && b;
    if (all) return m;
    std::vector<std::vector<bool>> next(d, std::vector<bool>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        if (power[i][k])
          for (std::size_t j = 0; j < d; ++j) next[i][j] = next[i][j] || p[k][j];
    power = next;
  }
  return 0;
}

}  // namespace

TEST(StructureMatrix, RejectsInvalidConstruction) {
  EXPECT_THROW(StructureMatrix::from_exact(Matrix<Rational>(0, 0)), DomainError);
  EXPECT_THROW(StructureMatrix::from_exact(Matrix<Rational>(2, 3)), DomainError);
  Matrix<Rational> neg{{Rational(1), Rational(-1, 10)}, {Rational(0), Rational(1)}};
  EXPECT_THROW(StructureMatrix::from_exact(neg), DomainError);
  Matrix<Rational> ok{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
  EXPECT_THROW(StructureMatrix::from_exact(ok, {"x", "x"}), DomainError);
  EXPECT_THROW(StructureMatrix::from_exact(ok, {"x"}), DomainError);
  EXPECT_EQ(StructureMatrix::from_exact(ok).labels(), (std::vector<std::string>{"p1", "p2"}));
}

TEST(StructureMatrix, FloatValuesAreHeldAtExactBinaryValue) {
  Matrix<double> m{{0.1, 0.2}, {0.3, 0.4}};
  auto a = StructureMatrix::from_values(m);
  EXPECT_EQ(a.exact()(0, 0), Rational(0.1));
  EXPECT_NE(a.exact()(0, 0), Rational(1, 10));
  EXPECT_EQ(a.values(), m);
}

TEST(NumericMode, ToleranceZeroExactlyInRationalMode) {
  EXPECT_EQ(NumericMode::exact().tolerance, 0.0);
  EXPECT_TRUE(NumericMode::exact().is_exact());
  EXPECT_GT(NumericMode::floating(1e-9).tolerance, 0.0);
  EXPECT_THROW(NumericMode::floating(0.0), DomainError);
}

TEST(Irreducibility, Examples) {
  EXPECT_TRUE(is_irreducible(two_sector()));
  EXPECT_FALSE(is_irreducible(StructureMatrix::from_exact(Matrix<Rational>::identity(2))));
  EXPECT_FALSE(is_irreducible(from_pattern(2, 0b1010)));  // [[0,1],[0,1]]
  EXPECT_TRUE(is_irreducible(from_pattern(1, 1)));
  EXPECT_FALSE(is_irreducible(from_pattern(1, 0)));
}

TEST(Irreducibility, AgreesWithClosureOnEveryPatternUpToThree) {
  for (std::size_t d = 1; d <= 3; ++d)
    for (unsigned bits = 0; bits < (1u << (d * d)); ++bits)
      ASSERT_EQ(is_irreducible(from_pattern(d, bits)), closure_oracle(d, bits)) << "d=" << d << " bits=" << bits;
}

TEST(Period, Examples) {
  EXPECT_EQ(period(from_pattern(2, 0b0110)), 2);  // [[0,1],[1,0]]
  EXPECT_EQ(period(two_sector()), 1);
  // 3-cycle 1->2->3->1
  EXPECT_EQ(period(from_pattern(3, (1u << 1) | (1u << 5) | (1u << 6))), 3);
  EXPECT_THROW(period(StructureMatrix::from_exact(Matrix<Rational>::identity(2))), StructuralError);
  EXPECT_THROW(period(from_pattern(1, 0)), StructuralError);
  EXPECT_EQ(period(from_pattern(1, 1)), 1);
}

TEST(Period, PositiveDiagonalEntryMeansAperiodic) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 8;
    auto a = StructureMatrix::from_values(ioopt::testing::random_primitive(d, rng));
    ASSERT_EQ(period(a), 1);
  }
}

TEST(PositivityExponent, Examples) {
  EXPECT_EQ(min_positivity_exponent(two_sector()), 1);
  EXPECT_EQ(min_positivity_exponent(from_pattern(2, 0b1110)), 2);  // [[0,1],[1,1]]
  EXPECT_THROW(min_positivity_exponent(from_pattern(2, 0b0110)), StructuralError);
  EXPECT_THROW(min_positivity_exponent(StructureMatrix::from_exact(Matrix<Rational>::identity(3))), StructuralError);
}

TEST(PositivityExponent, MatchesPoweringOracleAndBoundsExhaustivelyUpToThree) {
  for (std::size_t d = 1; d <= 3; ++d)
    for (unsigned bits = 0; bits < (1u << (d * d)); ++bits) {
      auto a = from_pattern(d, bits);
      if (!is_aperiodic(a)) continue;
      const int m = min_positivity_exponent(a);
      ASSERT_EQ(m, powering_oracle(a));
      ASSERT_LE(m, static_cast<int>((d - 1) * (d - 1) + 1));
    }
}

TEST(PositivityExponent, WielandtBoundIsAttained) {
  // Wielandt's matrix: cycle 1->2->...->d->1 plus the chord d->2.
  for (std::size_t d = 2; d <= 6; ++d) {
    Matrix<Rational> m(d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) m(i, i + 1) = 1;
    m(d - 1, 0) = 1;
    m(d - 1, 1) = 1;
    auto a = StructureMatrix::from_exact(m);
    EXPECT_EQ(min_positivity_exponent(a), static_cast<int>((d - 1) * (d - 1) + 1)) << d;
  }
}

TEST(PositivityExponent, RandomPrimitiveUpToSix) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + trial % 6;
    auto a = StructureMatrix::from_values(ioopt::testing::random_primitive(d, rng, 0.15));
    const int m = min_positivity_exponent(a);
    ASSERT_EQ(m, powering_oracle(a));
    ASSERT_LE(m, static_cast<int>((d - 1) * (d - 1) + 1));
  }
}

TEST(CollatzWielandt, Examples) {
  auto a = two_sector();
  auto b = cw_bounds(a, std::vector<double>{1.0, 1.0});
  EXPECT_NEAR(b.lower, 0.26, 1e-15);
  EXPECT_NEAR(b.upper, 0.65, 1e-15);
  EXPECT_FALSE(b.reducible_warning);

  std::vector<double> u{ioopt::testing::two_sector_u1_at_20(), 20.0};
  auto at_u = cw_bounds(a, u);
  EXPECT_NEAR(at_u.lower, ioopt::testing::two_sector_rho(), 1e-14);
  EXPECT_NEAR(at_u.upper, ioopt::testing::two_sector_rho(), 1e-14);

  // Transpose of a row-stochastic matrix: columns sum to one.
  Matrix<double> col{{0.5, 0.3}, {0.5, 0.7}};
  auto c = cw_bounds(StructureMatrix::from_values(col), std::vector<double>{1.0, 1.0});
  EXPECT_DOUBLE_EQ(c.lower, 1.0);
  EXPECT_DOUBLE_EQ(c.upper, 1.0);
}

TEST(CollatzWielandt, Errors) {
  auto a = two_sector();
  EXPECT_THROW(cw_bounds(a, std::vector<double>{1.0, 0.0}), DomainError);
  EXPECT_THROW(cw_bounds(a, std::vector<double>{1.0, -2.0}), DomainError);
  EXPECT_THROW(cw_bounds(a, std::vector<double>{1.0}), DomainError);
  auto id = StructureMatrix::from_exact(Matrix<Rational>::identity(2));
  EXPECT_TRUE(cw_bounds(id, std::vector<double>{1.0, 2.0}).reducible_warning);
}

TEST(CollatzWielandt, LowerNeverExceedsUpper) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + trial % 50;
    auto a = StructureMatrix::from_values(ioopt::testing::random_primitive(d, rng));
    auto x = ioopt::testing::random_positive_vector(d, rng);
    auto b = cw_bounds(a, x);
    ASSERT_LE(b.lower, b.upper);
  }
}

TEST(Amplitude, Examples) {
  EXPECT_NEAR(amplitude(two_sector()), 0.28, 1e-15);
  EXPECT_EQ(amplitude(Matrix<double>(3, 3, 0.7)), 0.0);
  EXPECT_EQ(amplitude(StructureMatrix::from_exact(Matrix<Rational>::identity(2))), 1.0);
}
