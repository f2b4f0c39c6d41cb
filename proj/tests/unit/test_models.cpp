#include <gtest/gtest.h>

#include "hoca/dynamics.hpp"
#include "hoca/models.hpp"
#include "support/brute.hpp"
#include "support/examples.hpp"
#include "support/random.hpp"

using namespace hoca;
using hoca::testkit::poly;

TEST(HocaToFrobenius, MemoryOne) {
  const HocaRule h{5, 1, 1, {{1, 2, 3}}};
  const FrobeniusSpec f = hoca_to_frobenius(h);
  ASSERT_EQ(f.n(), 1u);
  // a_{-1} X + a_0 + a_1 X^-1
  EXPECT_EQ(f.row[0], poly(5, {{-1, 3}, {0, 2}, {1, 1}}));
}

TEST(HocaToFrobenius, Recall) {
  const HocaRule h{2, 2, 0, {{1}, {0}}};
  const FrobeniusSpec f = hoca_to_frobenius(h);
  EXPECT_EQ(f.row, (std::vector<LaurentPoly>{LaurentPoly::constant(2, 1), LaurentPoly(2)}));
  const LaurentMatrix M = frobenius_to_matrix(f);
  EXPECT_EQ(M * M, LaurentMatrix::identity(2, 2));
}

TEST(HocaToFrobenius, AllOnes) {
  const HocaRule h{2, 2, 1, {{1, 1, 1}, {1, 1, 1}}};
  const LaurentPoly s = poly(2, {{-1, 1}, {0, 1}, {1, 1}});
  EXPECT_EQ(hoca_to_frobenius(h).row, (std::vector<LaurentPoly>{s, s}));
}

TEST(HocaToFrobenius, RoundTrip) {
  testkit::Rng rng(30);
  for (int i = 0; i < 200; ++i) {
    const HocaRule h = testkit::random_hoca(rng, rng.uniform(2, 20), static_cast<int>(rng.uniform(1, 4)),
                                            static_cast<int>(rng.uniform(0, 3)));
    EXPECT_EQ(frobenius_to_hoca(hoca_to_frobenius(h), h.radius), h);
    const HocaRule c = canonical(h);
    EXPECT_LE(c.radius, h.radius);
    EXPECT_EQ(hoca_to_frobenius(c), hoca_to_frobenius(h));
    EXPECT_EQ(canonical(c), c);
  }
}

TEST(HocaToFrobenius, RadiusTooSmall) {
  const FrobeniusSpec f(3, {poly(3, {{2, 1}})});
  EXPECT_EQ(frobenius_to_hoca(f).radius, 2);
  EXPECT_THROW(frobenius_to_hoca(f, 1), error);
}

TEST(HocaRule, Validation) {
  EXPECT_THROW(hoca_to_frobenius(HocaRule{2, 2, 1, {{1, 0, 1}}}), error);
  EXPECT_THROW(hoca_to_frobenius(HocaRule{2, 1, 1, {{1, 0}}}), error);
  EXPECT_THROW(hoca_to_frobenius(HocaRule{2, 1, 0, {{2}}}), error);
  EXPECT_THROW(hoca_to_frobenius(HocaRule{2, 0, 0, {}}), error);
}

TEST(LcaToFps, Rule90) {
  const LcaRule r{2, 1, 1, {{{1}}, {{0}}, {{1}}}};
  const LaurentMatrix M = lca_to_fps(r);
  EXPECT_EQ(M.at(0, 0), poly(2, {{-1, 1}, {1, 1}}));
  EXPECT_TRUE(is_frobenius(M));
}

TEST(LcaToFps, RadiusZeroIsConstant) {
  const LcaRule r{6, 2, 0, {{{1, 2}, {3, 4}}}};
  const LaurentMatrix M = lca_to_fps(r);
  for (std::size_t h = 0; h < 2; ++h)
    for (std::size_t k = 0; k < 2; ++k) EXPECT_TRUE(M.at(h, k).is_constant());
  EXPECT_EQ(M.at(1, 0), LaurentPoly::constant(6, 3));
  EXPECT_FALSE(is_frobenius(M));
}

TEST(LcaToFps, SignConvention) {
  // F(c)_x = c_{x+1}: the configuration moves one cell to the left, which is
  // multiplication by X^-1 on P_c.
  const LcaRule left{3, 1, 1, {{{0}}, {{0}}, {{1}}}};
  EXPECT_EQ(lca_to_fps(left).at(0, 0), poly(3, {{-1, 1}}));
  Configuration c(3, 1);
  c.set(5, State{2});
  const Configuration next = step(lca_to_fps(left), c);
  EXPECT_EQ(next.at(4, 0), 2);
  EXPECT_EQ(next.cells().size(), 1u);
  EXPECT_EQ(next, testkit::direct_lca_step(left, c));
}

TEST(LcaToFps, CommutesWithHocaMatrices) {
  testkit::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const HocaRule h = testkit::random_hoca(rng, rng.uniform(2, 12), static_cast<int>(rng.uniform(1, 4)),
                                            static_cast<int>(rng.uniform(0, 2)));
    // Build the 2r+1 matrices directly from the HOCA table.
    const int k = h.memory;
    LcaRule lca{h.modulus, k, h.radius, {}};
    for (int off = -h.radius; off <= h.radius; ++off) {
      Grid g(static_cast<std::size_t>(k), std::vector<residue_t>(static_cast<std::size_t>(k), 0));
      if (off == 0)
        for (int j = 0; j + 1 < k; ++j) g[static_cast<std::size_t>(j)][static_cast<std::size_t>(j + 1)] = 1;
      for (int j = 0; j < k; ++j) g[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)] = h.coefficient(j, off);
      lca.matrices.push_back(std::move(g));
    }
    EXPECT_EQ(lca_to_fps(lca), frobenius_to_matrix(hoca_to_frobenius(h)));
    EXPECT_EQ(lca_to_frobenius(lca), hoca_to_frobenius(h));
  }
}

TEST(LcaToFps, Linear) {
  testkit::Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const std::int64_t m = rng.uniform(2, 16);
    const int n = static_cast<int>(rng.uniform(1, 3));
    const int r = static_cast<int>(rng.uniform(0, 2));
    const LcaRule a = testkit::random_lca(rng, m, n, r);
    const LcaRule b = testkit::random_lca(rng, m, n, r);
    LcaRule sum = a;
    for (std::size_t l = 0; l < sum.matrices.size(); ++l)
      for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k) {
          auto& v = sum.matrices[l][static_cast<std::size_t>(h)][static_cast<std::size_t>(k)];
          v = (v + b.matrices[l][static_cast<std::size_t>(h)][static_cast<std::size_t>(k)]) % m;
        }
    EXPECT_EQ(lca_to_fps(sum), lca_to_fps(a) + lca_to_fps(b));
  }
}

TEST(FpsToLca, RoundTrip) {
  testkit::Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const LcaRule r = testkit::random_lca(rng, rng.uniform(2, 10), static_cast<int>(rng.uniform(1, 3)),
                                          static_cast<int>(rng.uniform(0, 3)));
    const LaurentMatrix M = lca_to_fps(r);
    EXPECT_EQ(lca_to_fps(fps_to_lca(M)), M);
  }
  const FrobeniusSpec f = testkit::monex();
  EXPECT_EQ(lca_to_frobenius(frobenius_to_lca(f)), f);
}

TEST(LcaRule, Validation) {
  EXPECT_THROW(lca_to_fps(LcaRule{2, 1, 1, {{{1}}}}), error);
  EXPECT_THROW(lca_to_fps(LcaRule{2, 2, 0, {{{1, 0}}}}), error);
  EXPECT_THROW(lca_to_fps(LcaRule{4, 1, 0, {{{4}}}}), error);
}

TEST(PnuCaToLca, PeriodOne) {
  const PnuCaRule r{5, 1, 2, {{1, 2, 3, 4, 0}}};
  const PnuCaConjugacy conj = pnuca_to_lca(r);
  EXPECT_EQ(conj.block_size, 1);
  EXPECT_EQ(conj.lca.radius, 2);
  for (int i = -2; i <= 2; ++i) EXPECT_EQ(conj.lca.matrix(i)[0][0], r.coefficient(0, i));
}

TEST(PnuCaToLca, PeriodTwoRadiusOne) {
  const PnuCaRule r{2, 2, 1, {{1, 0, 0}, {0, 0, 1}}};
  const PnuCaConjugacy conj = pnuca_to_lca(r);
  EXPECT_EQ(conj.lca.radius, 1);
  // (M_l)[j][c] = a_{j, 2l + c - j}: even cells read their left neighbour,
  // odd cells their right neighbour.
  EXPECT_EQ(conj.lca.matrix(-1), (Grid{{0, 1}, {0, 0}}));
  EXPECT_EQ(conj.lca.matrix(0), (Grid{{0, 0}, {0, 0}}));
  EXPECT_EQ(conj.lca.matrix(1), (Grid{{0, 0}, {1, 0}}));
}

TEST(PnuCaToLca, RadiusZeroIsDiagonal) {
  const PnuCaRule r{7, 2, 0, {{3}, {5}}};
  const PnuCaConjugacy conj = pnuca_to_lca(r);
  EXPECT_EQ(conj.lca.radius, 0);
  EXPECT_EQ(conj.lca.matrix(0), (Grid{{3, 0}, {0, 5}}));
}

TEST(PnuCaToLca, Conjugacy) {
  testkit::Rng rng(34);
  for (int i = 0; i < 60; ++i) {
    const std::int64_t m = rng.uniform(2, 9);
    const PnuCaRule rule = testkit::random_pnuca(rng, m, static_cast<int>(rng.uniform(1, 4)),
                                                 static_cast<int>(rng.uniform(0, 3)));
    const PnuCaConjugacy conj = pnuca_to_lca(rule);
    const LaurentMatrix M = lca_to_fps(conj.lca);
    Configuration c = testkit::random_config(rng, m, 1, -8, 8);
    Configuration blocked = block_config(c, conj.block_size);
    for (int t = 0; t < 16; ++t) {
      c = pnuca_step(rule, c);
      blocked = step(M, blocked);
      ASSERT_EQ(block_config(c, conj.block_size), blocked) << "t=" << t;
    }
    EXPECT_EQ(unblock_config(blocked), c);
  }
}
