#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "rineq/error.hpp"
#include "rineq/krein.hpp"

namespace rineq {
namespace {

using testing::scalar;

HamiltonianPair unit_pair(double sign) {
  return HamiltonianPair::from_matrix(sign * symplectic_unit(1));
}

TEST(BlockKinds, Table) {
  EXPECT_EQ(kind_of(1, 1), BlockKind::kFirstType);
  EXPECT_EQ(kind_of(3, -1), BlockKind::kSecondType);
  EXPECT_EQ(kind_of(2, 1), BlockKind::kNeutral);
  EXPECT_EQ(epsilon_of(1, 1), Complex(0, 1));
  EXPECT_EQ(epsilon_of(3, 1), Complex(0, -1));
  EXPECT_EQ(epsilon_of(2, 1), Complex(-1, 0));
  EXPECT_EQ(epsilon_of(4, -1), Complex(-1, 0));
  EXPECT_EQ(chain_pattern(3), from_rows({{0, 0, -1}, {0, 1, 0}, {-1, 0, 0}}));
}

TEST(Classify, SymplecticUnit) {
  const AxisClassification c = classify(unit_pair(1));
  ASSERT_EQ(c.blocks.size(), 2u);
  EXPECT_NEAR(c.blocks[0].omega, -1.0, 1e-12);
  EXPECT_EQ(c.blocks[0].beta, 1);
  EXPECT_EQ(c.blocks[0].kind, BlockKind::kFirstType);
  EXPECT_NEAR(c.blocks[1].omega, 1.0, 1e-12);
  EXPECT_EQ(c.blocks[1].beta, -1);
  EXPECT_EQ(c.blocks[1].kind, BlockKind::kSecondType);
  // eigenvector (1, -i) at +1: v*(iJ)v = -2
  const ComplexVector v = c.blocks[1].chain_basis.col(0);
  EXPECT_NEAR(std::abs(v(1) / v(0) - Complex(0, -1)), 0.0, 1e-12);
  // evaluated at the computed frequencies, as the verdict does
  EXPECT_EQ(s_function(c, c.blocks[1].omega), 0);
  EXPECT_EQ(s_function(c, c.blocks[0].omega), 0);
}

TEST(Classify, NegatedSymplecticUnit) {
  const HamiltonianPair hp = build_hamiltonian(scalar(0, 1, 1, -1));
  EXPECT_EQ(hp.R, -symplectic_unit(1));
  const AxisClassification c = classify(hp);
  ASSERT_EQ(c.blocks.size(), 2u);
  EXPECT_EQ(c.blocks[0].kind, BlockKind::kSecondType);
  EXPECT_EQ(c.blocks[1].kind, BlockKind::kFirstType);
  EXPECT_EQ(s_function(c, c.blocks[0].omega), -1);
  EXPECT_EQ(s_function(c, c.blocks[1].omega), -1);
}

TEST(SFunction, EmptyClassification) {
  EXPECT_EQ(s_function(AxisClassification{}, 0.3), 0);
}

TEST(SFunction, StrictAndNonStrictComparisons) {
  AxisClassification c;
  c.blocks.push_back({0.0, 1, 1, BlockKind::kFirstType, epsilon_of(1, 1), {}});
  c.blocks.push_back({1.0, 1, -1, BlockKind::kSecondType, epsilon_of(1, -1), {}});
  c.blocks.push_back({2.0, 2, -1, BlockKind::kNeutral, epsilon_of(2, -1), {}});
  EXPECT_EQ(s_function(c, 0.0), 0);    // first type not counted at its own frequency
  EXPECT_EQ(s_function(c, 0.5), 1);
  EXPECT_EQ(s_function(c, 1.0), 0);    // second type counted at its own frequency
  EXPECT_EQ(s_function(c, 2.0), -1);   // even block with beta = -1 only at 2
  EXPECT_EQ(s_function(c, 2.5), 0);
}

TEST(JordanStructure, ExampleSimpleBlocks) {
  const HamiltonianPair hp = build_hamiltonian(testing::indefinite_example());
  const SpectrumReport s = spectrum(hp);
  for (const AxisGroup& g : s.axis_groups) EXPECT_EQ(jordan_structure(hp, g), std::vector<int>{1});
}

TEST(JordanStructure, CanonicalSizeTwoBlock) {
  const CanonicalBlock block{0.0, 2, -1};
  const CanonicalHamiltonian ch = make_canonical_hamiltonian(std::span(&block, 1));
  const SpectrumReport s = spectrum(ch.pair);
  ASSERT_EQ(s.axis_groups.size(), 1u);
  EXPECT_EQ(jordan_structure(ch.pair, s.axis_groups[0]), std::vector<int>{2});
  const AxisClassification c = classify(ch.pair);
  ASSERT_EQ(c.blocks.size(), 1u);
  EXPECT_EQ(c.blocks[0].beta, -1);
  EXPECT_EQ(c.blocks[0].kind, BlockKind::kNeutral);
}

TEST(Canonical, RejectsUnbalancedInertia) {
  const CanonicalBlock block{0.0, 1, 1};
  try {
    make_canonical_hamiltonian(std::span(&block, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

void expect_chain_normal_form(const HamiltonianPair& hp, const JordanBlockInfo& b) {
  ASSERT_TRUE(b.has_chain_basis());
  const ComplexMatrix& s = b.chain_basis;
  const Eigen::Index k = s.cols();
  ComplexMatrix shift = Complex(0, b.omega) * ComplexMatrix::Identity(k, k);
  for (Eigen::Index i = 0; i + 1 < k; ++i) shift(i, i + 1) = 1.0;
  const double scale = std::max(1.0, hp.R.norm()) * s.norm();
  EXPECT_LE((hp.R * s - s * shift).norm(), 1e-4 * scale);
  EXPECT_LE((s.adjoint() * hp.J * s - b.epsilon * chain_pattern(b.size)).norm(),
            1e-4 * std::max(1.0, s.squaredNorm()));
}

// Random balanced configurations of axis blocks, recovered up to ordering.
TEST(Classify, RecoversCanonicalConfigurations) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> size_pick(1, 3);
  std::bernoulli_distribution coin(0.5);
  int checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<CanonicalBlock> blocks;
    double omega = -3.0;
    int odd_balance = 0;
    const int count = 1 + rep % 3;
    for (int i = 0; i < count; ++i) {
      const int size = size_pick(rng);
      const int beta = coin(rng) ? 1 : -1;
      blocks.push_back({omega, size, beta});
      if (size % 2 == 1) odd_balance += beta;
      omega += 1.3;
    }
    while (odd_balance != 0) {
      const int beta = odd_balance > 0 ? -1 : 1;
      blocks.push_back({omega, 1, beta});
      odd_balance += beta;
      omega += 1.3;
    }
    std::vector<Complex> off;
    if (coin(rng)) off.push_back(Complex(-0.8, 0.4));
    const CanonicalHamiltonian ch = make_canonical_hamiltonian(blocks, off);
    KreinOptions options;
    options.axis_tol = 1e-4;
    const AxisClassification c = classify(ch.pair, options);
    ASSERT_EQ(c.blocks.size(), blocks.size()) << "rep " << rep;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      EXPECT_NEAR(c.blocks[i].omega, blocks[i].omega, 1e-3);
      EXPECT_EQ(c.blocks[i].size, blocks[i].size);
      EXPECT_EQ(c.blocks[i].beta, blocks[i].beta);
      expect_chain_normal_form(ch.pair, c.blocks[i]);
    }
    ++checked;
  }
  EXPECT_EQ(checked, 40);
}

TEST(Classify, ExampleChainsAreNormalized) {
  const HamiltonianPair hp = build_hamiltonian(testing::indefinite_example());
  const AxisClassification c = classify(hp);
  ASSERT_EQ(c.blocks.size(), 4u);
  EXPECT_EQ(c.total_axis_multiplicity, 4);
  for (const JordanBlockInfo& b : c.blocks) expect_chain_normal_form(hp, b);
}

TEST(Verdict, ExampleIsSolvable) {
  const SolvabilityVerdict v = verdict(testing::indefinite_example());
  EXPECT_EQ(v.status, VerdictStatus::kSolvable);
  EXPECT_TRUE(v.solvable);
  ASSERT_EQ(v.s_values.size(), 4u);
  for (const FrequencyValue& f : v.s_values) EXPECT_GE(f.s, 0);
  EXPECT_EQ(v.first_type_count, 2);
  EXPECT_EQ(v.second_type_count, 2);
  EXPECT_FALSE(v.witness.has_value());
}

TEST(Verdict, NegatedUnitIsNotSolvable) {
  const SolvabilityVerdict v = verdict(scalar(0, 1, 1, -1));
  EXPECT_EQ(v.status, VerdictStatus::kNotSolvable);
  EXPECT_FALSE(v.solvable);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_NEAR(*v.witness, -1.0, 1e-12);
}

TEST(Verdict, AxisFreeIsSolvable) {
  RiccatiProblem p = testing::indefinite_example();
  p.A = -ComplexMatrix::Identity(3, 3);
  p.B.setZero();
  p.G = -ComplexMatrix::Identity(3, 3);
  const SolvabilityVerdict v = verdict(p);
  EXPECT_TRUE(v.solvable);
  EXPECT_TRUE(v.s_values.empty());
  EXPECT_TRUE(v.classification.blocks.empty());
}

TEST(Verdict, RankAmbiguityIsIndeterminate) {
  // A size-2 block seen with a threshold near (R - i omega)'s nonzero
  // singular values cannot be resolved.
  const CanonicalBlock block{0.0, 2, 1};
  const CanonicalHamiltonian ch = make_canonical_hamiltonian(std::span(&block, 1));
  const SpectrumReport s = spectrum(ch.pair, 1e-4);
  ASSERT_EQ(s.axis_groups.size(), 1u);
  const RealVector sv = singular_values(ch.pair.R - Complex(0, s.axis_groups[0].omega) *
                                                        ComplexMatrix::Identity(2, 2));
  KreinOptions options;
  options.axis_tol = 1e-4;
  options.rank_tol = sv(0) / ch.pair.R.norm();
  const SolvabilityVerdict v = verdict(ch.pair, options);
  EXPECT_EQ(v.status, VerdictStatus::kIndeterminate);
  EXPECT_FALSE(v.solvable);
  EXPECT_FALSE(v.diagnostic.empty());
}

}  // namespace
}  // namespace rineq
