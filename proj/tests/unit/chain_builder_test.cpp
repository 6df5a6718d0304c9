#include <gtest/gtest.h>

#include "conepos/chain_builder.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace conepos;
using testing_support::throws_kind;

namespace {

const Cone quadrant = Cone::hull({{1, 0}, {0, 1}});

Cone negated(const Cone& c) {
  std::vector<IntVector> g;
  for (const auto& x : c.generators()) g.push_back(-x);
  return Cone::hull(g, c.ambient_dim());
}

// Random unimodular full-dimensional cone: columns of a random product of
// elementary matrices.
Cone random_unimodular(std::mt19937_64& rng, std::size_t d) {
  IntMatrix m = IntMatrix::identity(d);
  for (int s = 0; s < 6; ++s) {
    std::size_t i = rng() % d, j = rng() % d;
    if (i == j) continue;
    m.add_column(j, i, Int(static_cast<int>(rng() % 5) - 2));
  }
  if (rng() % 2) m.negate_column(rng() % d);
  return Cone::hull(m.columns(), d);
}

// Random simplicial 3-cone with 1 < mu <= max_mu.
Cone random_simplicial3(std::mt19937_64& rng, const Int& max_mu) {
  while (true) {
    std::vector<IntVector> g;
    for (int i = 0; i < 3; ++i) g.push_back(primitive_part(testing_support::random_vector(rng, 3, 4)));
    if (std::any_of(g.begin(), g.end(), [](const IntVector& v) { return v.is_zero(); })) continue;
    if (rank(std::span<const IntVector>(g), 3) < 3) continue;
    Cone c = Cone::hull(g, 3);
    if (mu(c) > 1 && mu(c) <= max_mu) return c;
  }
}

bool all_steps_height1(const Chain& ch) {
  for (std::size_t i = 0; i < ch.length(); ++i)
    if (ch.moves[i].direction != Direction::Up || !is_height1_extension(ch.cones[i], ch.moves[i].witness)) return false;
  return true;
}

}  // namespace

TEST(VerifyChain, SingleCone) { EXPECT_TRUE(verify_chain(Chain::at(quadrant))); }

TEST(VerifyChain, FormalThenUnimodular) {
  Chain ch{{Cone::zero(2), Cone::hull({{1, 0}}), quadrant},
           {{Direction::Up, {1, 0}, MoveKind::Height1}, {Direction::Up, {0, 1}, MoveKind::UnimodularExt}}};
  EXPECT_TRUE(verify_chain(ch));
  EXPECT_TRUE(verify_chain(reversed(ch)));
}

TEST(VerifyChain, RejectsNonElementaryStepWithRefutation) {
  Chain bad{{Cone::hull({{1, 0}}), Cone::hull({{1, 0}, {1, 2}})}, {{Direction::Up, {1, 2}, MoveKind::Generic}}};
  auto rep = verify_chain_report(bad);
  EXPECT_FALSE(rep.ok);
  ASSERT_EQ(rep.steps.size(), 1u);
  EXPECT_FALSE(rep.steps[0].ok);
  EXPECT_EQ(rep.steps[0].refutation.size(), 2u);

  Chain wrong{{quadrant, Cone::hull({{1, 0}, {1, 2}})}, {{Direction::Up, {1, 2}, MoveKind::Generic}}};
  auto rep2 = verify_chain_report(wrong);
  EXPECT_FALSE(rep2.ok);
  EXPECT_EQ(rep2.steps[0].index, 0u);
  EXPECT_FALSE(rep2.steps[0].ok);
}

TEST(VerifyChain, WrongWitnessFails) {
  Chain ch{{quadrant, quadrant + IntVector{-1, 1}}, {{Direction::Up, {-1, 2}, MoveKind::Generic}}};
  EXPECT_FALSE(verify_chain(ch));
  ch.moves[0].direction = Direction::Down;
  ch.moves[0].witness = {-1, 1};
  EXPECT_FALSE(verify_chain(ch));
}

TEST(Chain2d, AddsHilbertElementsInOrder) {
  Chain ch = chain_2d(Cone::hull({{1, 0}}), Cone::hull({{1, 0}, {1, 5}}));
  ASSERT_EQ(ch.length(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(ch.moves[i].witness, (IntVector{1, i + 1}));
  EXPECT_TRUE(verify_chain(ch));
  EXPECT_TRUE(all_steps_height1(ch));
}

TEST(Chain2d, EqualConesGiveEmptyChain) { EXPECT_EQ(chain_2d(quadrant, quadrant).length(), 0u); }

TEST(Chain2d, FormalStepFromZero) {
  Chain ch = chain_2d(Cone::zero(2), Cone::hull({{2, 3}}));
  ASSERT_EQ(ch.length(), 1u);
  EXPECT_EQ(ch.moves[0].witness, (IntVector{2, 3}));
  EXPECT_TRUE(verify_chain(ch));
}

TEST(Chain2d, NotContained) {
  EXPECT_TRUE(throws_kind([] { chain_2d(quadrant, Cone::hull({{1, 0}, {1, 2}})); }, ErrorKind::NotContained));
}

TEST(Chain2d, RandomNestedPairs) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 60; ++t) {
    const Cone d = testing_support::random_full_cone(rng, 2, 3, 6);
    const auto& hb = hilbert_basis(d);
    // C spanned by one or two lattice points of D
    std::vector<IntVector> g{hb[rng() % hb.size()]};
    if (rng() % 2) g.push_back(hb[rng() % hb.size()]);
    const Cone c = t % 7 == 0 ? Cone::zero(2) : Cone::hull(g, 2);
    Chain ch = chain_2d(c, d);
    ASSERT_TRUE(verify_chain(ch));
    ASSERT_TRUE(all_steps_height1(ch));
    ASSERT_EQ(ch.front(), c);
    ASSERT_EQ(ch.back(), d);
  }
}

TEST(Chain2d, PlaneInsideR3) {
  Cone d = Cone::hull({{1, 0, 1}, {1, 3, 1}});
  Chain ch = chain_2d(Cone::hull({{1, 0, 1}}), d);
  EXPECT_EQ(ch.length(), 3u);
  EXPECT_TRUE(verify_chain(ch));
}

TEST(ChainDim3, FacetOfUnimodularCone) {
  Cone d = Cone::hull({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  Chain ch = chain_dim3(Cone::hull({{1, 0, 0}, {0, 1, 0}}), d);
  ASSERT_EQ(ch.length(), 1u);
  EXPECT_TRUE(verify_chain(ch));
}

TEST(ChainDim3, MuTwoThroughLparPoint) {
  Cone c = Cone::hull({{1, 0, 0}, {0, 1, 0}});
  Cone d = Cone::hull({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}});
  EXPECT_EQ(lpar(d.generators()).points, (std::vector<IntVector>{{1, 1, 1}}));
  Chain ch = chain_dim3(c, d);
  ASSERT_GE(ch.length(), 2u);
  EXPECT_EQ(ch.cones[1].generators(), (c + IntVector{1, 1, 1}).generators());
  EXPECT_EQ(ch.back(), d);
  EXPECT_TRUE(verify_chain(ch));
}

TEST(ChainDim3, RandomSimplicialConesFromEachFacet) {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 15; ++t) {
    const Cone d = random_simplicial3(rng, 50);
    for (const auto& f : d.facets()) {
      const Cone c = Cone::hull(f.generators, 3);
      Chain ch = chain_dim3(c, d);
      ASSERT_TRUE(verify_chain(ch)) << IntMatrix::from_columns(d.generators());
      ASSERT_EQ(ch.front(), c);
      ASSERT_EQ(ch.back(), d);
    }
  }
}

TEST(ChainDim3, GeneralPairs) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 15; ++t) {
    const Cone d = testing_support::random_full_cone(rng, 3, 5, 4);
    const auto& hb = hilbert_basis(d);
    std::vector<IntVector> g;
    for (int i = 0; i < 2; ++i) g.push_back(hb[rng() % hb.size()]);
    const Cone c = Cone::hull(g, 3);
    Chain ch = chain_dim3(c, d);
    ASSERT_TRUE(verify_chain(ch));
    ASSERT_EQ(ch.back(), d);
  }
  Chain from_zero = chain_dim3(Cone::zero(3), Cone::hull({{1, 0, 0}, {0, 1, 0}, {1, 1, 3}}));
  EXPECT_TRUE(verify_chain(from_zero));
}

TEST(FactorPath, EqualConesGiveEmptyChain) { EXPECT_EQ(factor_unimodular_path(quadrant, quadrant).length(), 0u); }

TEST(FactorPath, SingleElementaryFactor) {
  // B = e_12^3: second column becomes (3,1)
  Chain ch = factor_unimodular_path(quadrant, Cone::hull({{1, 0}, {3, 1}}));
  EXPECT_EQ(ch.length(), 1u);
  EXPECT_TRUE(verify_chain(ch));
}

TEST(FactorPath, PlaneExample) {
  Cone c = Cone::hull({{1, 0}, {1, 1}});
  Cone d = Cone::hull({{-1, 1}, {1, 0}});
  Chain ch = factor_unimodular_path(c, d);
  EXPECT_TRUE(verify_chain(ch));
  EXPECT_EQ(ch.back(), d);
  EXPECT_LE(ch.length(), 4u);
}

TEST(FactorPath, Preconditions) {
  EXPECT_TRUE(throws_kind([] { factor_unimodular_path(quadrant, Cone::hull({{1, 0}, {1, 2}})); }, ErrorKind::NotUnimodular));
  EXPECT_TRUE(throws_kind([] { factor_unimodular_path(Cone::hull({{1, 0}}), quadrant); }, ErrorKind::NotFullDim));
}

TEST(FactorPath, RandomPairsStayUnimodular) {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 3 + t % 2;
    const Cone a = random_unimodular(rng, d), b = random_unimodular(rng, d);
    Chain ch = factor_unimodular_path(a, b);
    ASSERT_TRUE(verify_chain(ch));
    ASSERT_EQ(ch.front(), a);
    ASSERT_EQ(ch.back(), b);
    for (const auto& k : ch.cones) {
      ASSERT_TRUE(k.is_full_dim());
      ASSERT_TRUE(is_unimodular(k));
    }
  }
}

TEST(ConnectToUnimodular, AlreadyUnimodular) { EXPECT_EQ(connect_to_unimodular(quadrant).length(), 0u); }

TEST(ConnectToUnimodular, OneStepInThePlane) {
  Chain ch = connect_to_unimodular(Cone::hull({{1, 0}, {1, 5}}));
  ASSERT_EQ(ch.length(), 1u);
  EXPECT_EQ(ch.back().generators(), quadrant.generators());
  EXPECT_TRUE(verify_chain(ch));
}

TEST(ConnectToUnimodular, RayInR3) {
  Chain ch = connect_to_unimodular(Cone::hull({{1, 2, 3}}));
  EXPECT_EQ(ch.length(), 2u);
  EXPECT_TRUE(is_unimodular(ch.back()));
  EXPECT_TRUE(ch.back().is_full_dim());
  EXPECT_TRUE(verify_chain(ch));
}

TEST(ConnectToUnimodular, AtMostDMinusOneMovesWhenFullDim) {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 3 + t % 2;
    const Cone c = testing_support::random_full_cone(rng, d, d + 1, 5);
    Chain ch = connect_to_unimodular(c);
    ASSERT_TRUE(verify_chain(ch));
    ASSERT_LE(ch.length(), d - 1);
    ASSERT_TRUE(is_unimodular(ch.back()));
    ASSERT_TRUE(ch.back().is_full_dim());
  }
}

TEST(Connect, QuadrantToItsNegativeViaZero) {
  Chain ch = connect(quadrant, negated(quadrant), ConnectMode::ViaZero);
  EXPECT_EQ(ch.length(), 4u);
  EXPECT_TRUE(ch.verified);
  EXPECT_TRUE(verify_chain(ch));
}

TEST(Connect, EqualConesGiveEmptyChain) {
  EXPECT_EQ(connect(quadrant, quadrant, ConnectMode::ViaZero).length(), 0u);
  EXPECT_EQ(connect(quadrant, quadrant, ConnectMode::FullDim).length(), 0u);
}

TEST(Connect, UnimodularPairsUseTwiceTheDimension) {
  std::mt19937_64 rng(56);
  for (std::size_t d = 2; d <= 4; ++d)
    for (int t = 0; t < 5; ++t) {
      const Cone c = random_unimodular(rng, d);
      Chain ch = connect(c, negated(c), ConnectMode::ViaZero);
      ASSERT_EQ(ch.length(), 2 * d);
      ASSERT_TRUE(verify_chain(ch));
    }
}

TEST(Connect, FullDimModeKeepsEveryConeFullDimensional) {
  std::mt19937_64 rng(57);
  for (int t = 0; t < 10; ++t) {
    const Cone c = testing_support::random_full_cone(rng, 3, 4, 5);
    const Cone d = testing_support::random_full_cone(rng, 3, 4, 5);
    Chain ch = connect(c, d, ConnectMode::FullDim);
    ASSERT_TRUE(verify_chain(ch));
    ASSERT_EQ(ch.front(), c);
    ASSERT_EQ(ch.back(), d);
    for (const auto& k : ch.cones) ASSERT_TRUE(k.is_full_dim());
  }
}

TEST(Connect, FullDimModeRejectsLowerDimensionalInput) {
  EXPECT_TRUE(throws_kind([] { connect(Cone::hull({{1, 0}}), quadrant, ConnectMode::FullDim); }, ErrorKind::NotFullDim));
}

TEST(ThreeInequality, ParallelepipedPairsHaveSmallerVolume) {
  // vol(u,x,y) < vol(u,v,w) for x, y in the half-open parallelepiped of u,v,w
  std::mt19937_64 rng(58);
  auto coef = [&] { return Rational(static_cast<int>(rng() % 97), 97); };  // in [0,1)
  int checked = 0;
  while (checked < 1000) {
    IntVector u = testing_support::random_vector(rng, 3, 6), v = testing_support::random_vector(rng, 3, 6),
              w = testing_support::random_vector(rng, 3, 6);
    const Int big = abs(det(IntMatrix::from_columns(std::vector<IntVector>{u, v, w})));
    if (big == 0) continue;
    RationalVector x = coef() * to_rational(u) + coef() * to_rational(v) + coef() * to_rational(w);
    RationalVector y = coef() * to_rational(u) + coef() * to_rational(v) + coef() * to_rational(w);
    RationalMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      m(i, 0) = Rational(u[i]);
      m(i, 1) = x[i];
      m(i, 2) = y[i];
    }
    Rational small = det(m);
    if (small < 0) small = -small;
    ASSERT_LT(small, Rational(big));
    ++checked;
  }
}

TEST(Concatenation, MismatchedEndsRejected) {
  Chain a = Chain::at(quadrant), b = Chain::at(Cone::hull({{1, 0}}));
  EXPECT_TRUE(throws_kind([&] { a += b; }, ErrorKind::PreconditionViolated));
}
