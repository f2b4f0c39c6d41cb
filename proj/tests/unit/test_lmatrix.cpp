#include <gtest/gtest.h>

#include "hoca/lmatrix.hpp"
#include "support/brute.hpp"
#include "support/examples.hpp"
#include "support/random.hpp"

using namespace hoca;
using hoca::testkit::poly;

namespace {

LaurentMatrix random_matrix(testkit::Rng& rng, std::size_t n, std::int64_t m, int max_terms = 3) {
  LaurentMatrix a(n, m);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a.at(r, c) = testkit::random_poly(rng, m, max_terms, -3, 3);
  return a;
}

}  // namespace

TEST(Frobenius, ToMatrix) {
  const LaurentPoly c = poly(5, {{-1, 2}, {1, 3}});
  const LaurentMatrix one = frobenius_to_matrix(FrobeniusSpec(5, {c}));
  EXPECT_EQ(one.n(), 1u);
  EXPECT_EQ(one.at(0, 0), c);

  const LaurentMatrix z = frobenius_to_matrix(FrobeniusSpec(3, {LaurentPoly(3), LaurentPoly(3)}));
  EXPECT_TRUE(z.at(0, 0).is_zero());
  EXPECT_EQ(z.at(0, 1), LaurentPoly::constant(3, 1));
  EXPECT_TRUE(z.at(1, 0).is_zero());
  EXPECT_TRUE(z.at(1, 1).is_zero());

  const FrobeniusSpec f = testkit::exupdown();
  const LaurentMatrix m = frobenius_to_matrix(f);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t col = 0; col < 4; ++col)
      EXPECT_EQ(m.at(r, col), col == r + 1 ? LaurentPoly::constant(49, 1) : LaurentPoly(49));
  for (std::size_t col = 0; col < 4; ++col) EXPECT_EQ(m.at(3, col), f.row[col]);
}

TEST(Frobenius, Recognition) {
  const FrobeniusSpec f = testkit::monex();
  EXPECT_EQ(matrix_to_frobenius(frobenius_to_matrix(f)), f);
  LaurentMatrix bent = frobenius_to_matrix(f);
  bent.at(0, 0) = LaurentPoly::constant(49, 1);
  EXPECT_FALSE(is_frobenius(bent));
  EXPECT_FALSE(is_frobenius(LaurentMatrix::identity(2, 7)));
  EXPECT_TRUE(is_frobenius(LaurentMatrix::identity(1, 7)));
}

TEST(Frobenius, SpecValidation) {
  EXPECT_THROW(FrobeniusSpec(4, {}), error);
  EXPECT_THROW(FrobeniusSpec(4, {LaurentPoly(8)}), error);
}

TEST(MatPow, GenericFourByFourCornerIdentities) {
  testkit::Rng rng(20);
  for (int i = 0; i < 50; ++i) {
    const std::int64_t p = rng.pick(std::vector<std::int64_t>{2, 3, 5, 7});
    const std::int64_t m = checked_pow(p, static_cast<int>(rng.uniform(1, 3)));
    const FrobeniusSpec f = testkit::random_frobenius(rng, m, 4);
    const LaurentMatrix M = frobenius_to_matrix(f);
    const auto& r = f.row;
    EXPECT_EQ(mat_pow(M, 2).at(3, 3), r[3] * r[3] + r[2]);
    EXPECT_EQ(mat_pow(M, 3).at(3, 3), r[1] + (r[2] * r[3]).scaled(2) + r[3] * r[3] * r[3]);
  }
}

TEST(MatPow, IdentityAndZeroPower) {
  const LaurentMatrix id = LaurentMatrix::identity(3, 10);
  EXPECT_EQ(mat_pow(id, 17), id);
  EXPECT_EQ(mat_pow(frobenius_to_matrix(testkit::monex()), 0), LaurentMatrix::identity(4, 49));
}

TEST(MatPow, Additive) {
  testkit::Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    const std::int64_t m = rng.uniform(2, 30);
    const LaurentMatrix a = random_matrix(rng, static_cast<std::size_t>(rng.uniform(1, 3)), m, 2);
    const auto s = static_cast<std::uint64_t>(rng.uniform(0, 6));
    const auto t = static_cast<std::uint64_t>(rng.uniform(0, 6));
    EXPECT_EQ(mat_pow(a, s + t), mat_mul(mat_pow(a, s), mat_pow(a, t)));
  }
}

TEST(MatPow, TrajectoryMatchesBinaryPowering) {
  testkit::Rng rng(22);
  const LaurentMatrix a = random_matrix(rng, 3, 9, 2);
  const auto traj = power_trajectory(a, 12);
  ASSERT_EQ(traj.size(), 13u);
  for (std::uint64_t t = 0; t <= 12; ++t) EXPECT_EQ(traj[t], mat_pow(a, t));
}

TEST(MatMul, Mismatch) {
  EXPECT_THROW(mat_mul(LaurentMatrix(2, 4), LaurentMatrix(3, 4)), error);
  EXPECT_THROW(mat_mul(LaurentMatrix(2, 4), LaurentMatrix(2, 8)), error);
  EXPECT_THROW(LaurentMatrix(2, 4).set(0, 0, LaurentPoly(8)), error);
}

TEST(SpeedTable, Exupdown) {
  const SpeedTable s = speed_table(testkit::exupdown(), 7);
  EXPECT_EQ(s.plus, (std::vector<Fraction>{Fraction(2), Fraction(2, 3), Fraction(2), Fraction(0)}));
  EXPECT_EQ(s.minus, (std::vector<Fraction>{Fraction(-1, 2), Fraction(-1), Fraction(-1, 2), Fraction(-1)}));
  EXPECT_EQ(s.d_plus, Fraction(2));
  EXPECT_EQ(s.d_minus, Fraction(-1));
  EXPECT_EQ(s.degrees[0].deg_plus, 8);
}

TEST(SpeedTable, Monex) {
  const SpeedTable s = speed_table(testkit::monex(), 7);
  EXPECT_EQ(s.d_plus, Fraction(3, 2));
  EXPECT_GT(s.d_plus, Fraction(2, 3));
}

TEST(SpeedTable, Constants) {
  const FrobeniusSpec f(8, {LaurentPoly::constant(8, 3), LaurentPoly(8), LaurentPoly::constant(8, 5)});
  const SpeedTable s = speed_table(f, 2);
  EXPECT_EQ(s.d_plus, Fraction(0));
  EXPECT_EQ(s.d_minus, Fraction(0));
  EXPECT_THROW(speed_table(f, 3), error);
}

TEST(ExtractUL, Exupdown) {
  const UpperLower ul = extract_UL(testkit::exupdown(), 7);
  EXPECT_EQ(ul.upper.row, (std::vector<LaurentPoly>{poly(49, {{8, 2}}), LaurentPoly(49), poly(49, {{4, 3}}),
                                                    LaurentPoly(49)}));
  EXPECT_EQ(ul.lower.row, (std::vector<LaurentPoly>{LaurentPoly(49), poly(49, {{-3, 3}}), LaurentPoly(49),
                                                    poly(49, {{-1, 1}})}));
}

TEST(ExtractUL, Monex) {
  const UpperLower ul = extract_UL(testkit::monex(), 7);
  EXPECT_EQ(ul.upper.row, (std::vector<LaurentPoly>{poly(49, {{6, 16}}), LaurentPoly(49), poly(49, {{3, 8}}),
                                                    LaurentPoly(49)}));
}

TEST(ExtractUL, ZeroRow) {
  const UpperLower ul = extract_UL(FrobeniusSpec(9, {LaurentPoly(9), LaurentPoly(9)}), 3);
  for (const auto& p : ul.upper.row) EXPECT_TRUE(p.is_zero());
  for (const auto& p : ul.lower.row) EXPECT_TRUE(p.is_zero());
}

TEST(ExtractUL, OutputsAreHatPure) {
  testkit::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const std::int64_t p = rng.pick(std::vector<std::int64_t>{2, 3, 5, 7});
    const std::int64_t m = checked_pow(p, static_cast<int>(rng.uniform(1, 3)));
    const FrobeniusSpec f = testkit::random_frobenius(rng, m, static_cast<std::size_t>(rng.uniform(1, 4)));
    const UpperLower ul = extract_UL(f, p);
    const SpeedTable s = speed_table(f, p);
    for (std::size_t j = 0; j < f.n(); ++j) {
      for (const auto* side : {&ul.upper, &ul.lower}) {
        const LaurentPoly& e = side->row[j];
        EXPECT_TRUE(e.is_zero() || e.is_monomial());
        for (const auto& t : e.terms()) EXPECT_NE(t.coefficient % p, 0);
      }
      if (!ul.upper.row[j].is_zero()) {
        EXPECT_EQ(Fraction(ul.upper.row[j].terms()[0].exponent, static_cast<std::int64_t>(f.n() - j)), s.d_plus);
      }
      if (!ul.lower.row[j].is_zero()) {
        EXPECT_EQ(Fraction(ul.lower.row[j].terms()[0].exponent, static_cast<std::int64_t>(f.n() - j)), s.d_minus);
      }
    }
  }
}

TEST(HatBarMatrix, Exupdown) {
  const FrobeniusSpec f = testkit::exupdown();
  const auto [hat, bar] = hat_bar_matrix(f, 7);
  EXPECT_EQ(hat.row[0], poly(49, {{-2, 1}, {0, 1}, {1, 1}, {8, 2}}));
  EXPECT_EQ(hat.row[2], poly(49, {{-1, 4}, {4, 3}}));
  EXPECT_EQ(hat.row[3], poly(49, {{-1, 1}, {0, 3}}));
  EXPECT_EQ(bar.row[0], poly(49, {{123, 14}}));
  EXPECT_EQ(bar.row[1], LaurentPoly(49));
  EXPECT_EQ(bar.row[2], poly(49, {{-70, 21}}));
  EXPECT_EQ(bar.row[3], poly(49, {{-35, 7}}));
  // M = M_hat + M_bar as full matrices.
  EXPECT_EQ(frobenius_to_matrix(hat) + bar_matrix(f, 7), frobenius_to_matrix(f));
}

TEST(HatBarMatrix, DegenerateRows) {
  const FrobeniusSpec units(9, {LaurentPoly::constant(9, 1), LaurentPoly::constant(9, 2)});
  const auto [h1, b1] = hat_bar_matrix(units, 3);
  EXPECT_EQ(h1, units);
  EXPECT_TRUE(b1.row[0].is_zero() && b1.row[1].is_zero());

  const FrobeniusSpec multiples(9, {poly(9, {{1, 3}}), poly(9, {{-2, 6}})});
  const auto [h2, b2] = hat_bar_matrix(multiples, 3);
  EXPECT_TRUE(h2.row[0].is_zero() && h2.row[1].is_zero());
  EXPECT_EQ(b2, multiples);
}

TEST(Determinant, Examples) {
  const LaurentPoly c = poly(7, {{-2, 3}, {5, 1}});
  LaurentMatrix one(1, 7);
  one.at(0, 0) = c;
  EXPECT_EQ(determinant(one), c);

  LaurentMatrix a(2, 2);
  a.at(0, 1) = LaurentPoly::constant(2, 1);
  a.at(1, 0) = poly(2, {{1, 1}});
  EXPECT_EQ(determinant(a), poly(2, {{1, 1}}));
}

TEST(Determinant, FrobeniusIsSignedM0) {
  testkit::Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    const std::int64_t m = rng.uniform(2, 60);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 6));
    const FrobeniusSpec f = testkit::random_frobenius(rng, m, n);
    const LaurentPoly expected = n % 2 == 1 ? f.row[0] : -f.row[0];
    EXPECT_EQ(determinant(frobenius_to_matrix(f)), expected);
  }
}

TEST(Determinant, MatchesLeibniz) {
  testkit::Rng rng(25);
  for (int i = 0; i < 60; ++i) {
    const std::int64_t m = rng.uniform(2, 40);
    const LaurentMatrix a = random_matrix(rng, static_cast<std::size_t>(rng.uniform(1, 5)), m, 2);
    EXPECT_EQ(determinant(a), testkit::leibniz_determinant(a));
  }
}

TEST(Determinant, Multiplicative) {
  testkit::Rng rng(26);
  for (int i = 0; i < 30; ++i) {
    const std::int64_t m = rng.uniform(2, 30);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    const LaurentMatrix a = random_matrix(rng, n, m, 2);
    const LaurentMatrix b = random_matrix(rng, n, m, 2);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
  }
}

TEST(CornerSequence, MonexUpper) {
  const UpperLower ul = extract_UL(testkit::monex(), 7);
  const auto seq = corner_sequence(ul.upper, 8);
  ASSERT_EQ(seq.size(), 9u);
  EXPECT_EQ(seq[0], LaurentPoly::constant(49, 1));
  EXPECT_EQ(seq[2], poly(49, {{3, 8}}));
  EXPECT_EQ(seq[4], poly(49, {{6, 31}}));
  EXPECT_EQ(seq[6], poly(49, {{9, 33}}));
  EXPECT_EQ(seq[8], poly(49, {{12, 25}}));
  for (std::size_t t : {1u, 3u, 5u, 7u}) EXPECT_TRUE(seq[t].is_zero()) << t;
}

TEST(CornerSequence, ScalarCase) {
  const LaurentPoly c = poly(6, {{-1, 1}, {2, 5}});
  const auto seq = corner_sequence(FrobeniusSpec(6, {c}), 7);
  for (std::uint64_t t = 0; t <= 7; ++t) EXPECT_EQ(seq[t], poly_pow(c, t));
}

TEST(CornerSequence, MatchesMatrixPower) {
  testkit::Rng rng(27);
  for (int i = 0; i < 60; ++i) {
    const std::int64_t m = rng.uniform(2, 50);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    const FrobeniusSpec f = testkit::random_frobenius(rng, m, n, 3, -2, 2);
    const auto seq = corner_sequence(f, 12);
    const auto traj = power_trajectory(frobenius_to_matrix(f), 12);
    for (std::size_t t = 0; t <= 12; ++t) EXPECT_EQ(seq[t], traj[t].at(n - 1, n - 1)) << "t=" << t;
  }
}

TEST(DegreeSpan, Examples) {
  EXPECT_EQ(degree_span(frobenius_to_matrix(testkit::exupdown())), std::make_pair(exponent_t{-70}, exponent_t{123}));
  EXPECT_EQ(degree_span(LaurentMatrix::identity(3, 5)), std::make_pair(exponent_t{0}, exponent_t{0}));
  EXPECT_EQ(degree_span(LaurentMatrix(3, 5)), std::make_pair(exponent_t{0}, exponent_t{0}));
}

TEST(LaurentMatrix, TransposeAndReduce) {
  testkit::Rng rng(28);
  const LaurentMatrix a = random_matrix(rng, 3, 12);
  EXPECT_EQ(a.transpose().transpose(), a);
  EXPECT_EQ(a.transpose().at(0, 2), a.at(2, 0));
  EXPECT_EQ(determinant(a.transpose()), determinant(a));
  const LaurentMatrix r = reduce_mod(a, 4);
  EXPECT_EQ(r.modulus(), 4);
  EXPECT_EQ(r.at(1, 2), reduce_mod(a.at(1, 2), 4));
  EXPECT_EQ(reduce_mod(mat_pow(a, 3), 3), mat_pow(reduce_mod(a, 3), 3));
}
