#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vlcsync/errors.hpp"
#include "vlcsync/laurent.hpp"

using namespace vlcsync;

namespace {

LaurentPoly random_poly(std::mt19937& rng, int lo, int hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LaurentPoly p;
  for (int e = lo; e <= hi; ++e) p.add_term(e, u(rng));
  return p;
}

void expect_close(const LaurentPoly& a, const LaurentPoly& b, double tol) {
  const int lo = std::min(a.min_exponent(), b.min_exponent());
  const int hi = std::max(a.max_exponent(), b.max_exponent());
  for (int e = lo; e <= hi; ++e) EXPECT_NEAR(a.coeff(e), b.coeff(e), tol) << "exponent " << e;
}

}  // namespace

TEST(Laurent, ConstructionAndTrimming) {
  LaurentPoly p{{-2, 0.5}, {3, 0.25}, {0, 0.0}};
  EXPECT_EQ(p.min_exponent(), -2);
  EXPECT_EQ(p.max_exponent(), 3);
  EXPECT_DOUBLE_EQ(p.coeff(-2), 0.5);
  EXPECT_DOUBLE_EQ(p.coeff(1), 0.0);
  EXPECT_DOUBLE_EQ(p.coeff(100), 0.0);
  p.add_term(-2, -0.5);
  EXPECT_EQ(p.min_exponent(), 3);
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_TRUE(LaurentPoly().is_zero());
}

TEST(Laurent, ProductOfMonomials) {
  const LaurentPoly p = LaurentPoly::monomial(-1, 2.0) * LaurentPoly::monomial(3, 0.25);
  EXPECT_EQ(p, LaurentPoly::monomial(2, 0.5));
  EXPECT_EQ(LaurentPoly::unit() * p, p);
}

TEST(Laurent, RingProperties) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const LaurentPoly a = random_poly(rng, -3, 2);
    const LaurentPoly b = random_poly(rng, -1, 4);
    const LaurentPoly c = random_poly(rng, 0, 3);
    expect_close(a * b, b * a, 1e-12);
    expect_close((a * b) * c, a * (b * c), 1e-12);
    expect_close(a * (b + c), a * b + a * c, 1e-12);
    EXPECT_NEAR(mass(a * b), mass(a) * mass(b), 1e-12);
  }
}

TEST(Laurent, PowerMatchesRepeatedProduct) {
  const LaurentPoly g{{-1, 0.25}, {0, 0.5}, {1, 0.25}};
  EXPECT_EQ(power(g, 0), LaurentPoly::unit());
  expect_close(power(g, 3), g * g * g, 1e-15);
  // (y^-1/2 + y^1/2)^6 / 64 has binomial coefficients.
  const LaurentPoly p6 = power(g, 3);
  EXPECT_NEAR(p6.coeff(0), 20.0 / 64.0, 1e-15);
  EXPECT_NEAR(p6.coeff(-3), 1.0 / 64.0, 1e-15);
}

TEST(Laurent, WindowTracksLostMass) {
  LaurentPoly g{{-1, 0.25}, {0, 0.5}, {1, 0.25}};
  g.set_window(2);
  LaurentPoly p = g;
  for (int i = 0; i < 5; ++i) p = mul(p, g);
  EXPECT_LE(p.max_exponent(), 2);
  EXPECT_GE(p.min_exponent(), -2);
  EXPECT_NEAR(mass(p) + p.lost_mass(), 1.0, 1e-14);
  EXPECT_GT(p.lost_mass(), 0.0);

  LaurentPoly q{{-5, 0.1}, {0, 0.8}, {5, 0.1}};
  q.set_window(3);
  EXPECT_NEAR(q.lost_mass(), 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(q.coeff(0), 0.8);
}

TEST(Laurent, Moments) {
  const LaurentPoly p{{1, 0.5}, {3, 0.5}};
  EXPECT_DOUBLE_EQ(mean(p), 2.0);
  EXPECT_DOUBLE_EQ(variance(p), 1.0);
  EXPECT_THROW(mean(LaurentPoly()), Error);
}

TEST(Laurent, FoldMod) {
  const LaurentPoly p{{-3, 0.1}, {-1, 0.2}, {0, 0.4}, {2, 0.3}};
  const LaurentPoly f = fold_mod(p, 3);
  EXPECT_NEAR(f.coeff(0), 0.5, 1e-15);
  EXPECT_NEAR(f.coeff(1), 0.0, 1e-15);
  EXPECT_NEAR(f.coeff(2), 0.5, 1e-15);
  EXPECT_EQ(fold_mod(p, 1), LaurentPoly::monomial(0, mass(p)));
  EXPECT_THROW(fold_mod(p, 0), Error);
}

TEST(Laurent, Entropy) {
  EXPECT_DOUBLE_EQ(entropy_bits(LaurentPoly::unit()), 0.0);
  EXPECT_NEAR(entropy_bits(LaurentPoly{{-1, 0.5}, {1, 0.5}}), 1.0, 1e-15);
  EXPECT_NEAR(entropy_bits(LaurentPoly{{0, 0.25}, {1, 0.25}, {2, 0.25}, {7, 0.25}}), 2.0, 1e-15);
  EXPECT_THROW(entropy_bits(LaurentPoly{{0, 0.5}}), Error);
  // Within the tolerance the coefficients are renormalized.
  EXPECT_NEAR(entropy_bits(LaurentPoly{{-1, 0.5 - 1e-8}, {1, 0.5}}), 1.0, 1e-7);
}

TEST(Laurent, EntropyOfFoldNeverExceedsEntropy) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    LaurentPoly p = random_poly(rng, -6, 6);
    p *= 1.0 / mass(p);
    const double h = entropy_bits(p);
    for (int T = 1; T <= 15; ++T) EXPECT_LE(entropy_bits(fold_mod(p, T)), h + 1e-12);
    EXPECT_NEAR(entropy_bits(fold_mod(p, 13)), h, 1e-12);
  }
}

TEST(Laurent, PseudoDegree) {
  const LaurentPoly p{{-3, 1e-7}, {-2, 1e-4}, {-1, 0.1}, {0, 0.8}, {1, 0.0998989}, {2, 1e-6}, {4, 1e-8}};
  EXPECT_EQ(pseudo_degree(p, 1e-6), 2);
  EXPECT_EQ(pseudo_degree(p, 1e-3), 1);
  EXPECT_EQ(pseudo_degree(p, 1.01e-6), 2);
  EXPECT_EQ(pseudo_degree(p, 1e-7), 3);
  EXPECT_EQ(pseudo_degree(LaurentPoly::unit(), 1e-6), 1);
  LaurentPoly lossy = p;
  lossy.set_window(1);
  EXPECT_THROW(pseudo_degree(lossy, 1e-6), Error);
  try {
    pseudo_degree(lossy, 1e-6);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConverged);
  }
}

TEST(Laurent, Printing) {
  const LaurentPoly g{{-1, 0.0625}, {0, 0.8352}, {1, 0.1023}};
  EXPECT_EQ(to_string(g, 4), "0.0625y^-1 + 0.8352 + 0.1023y");
  EXPECT_EQ(to_string(LaurentPoly(), 4), "0");
  EXPECT_EQ(dump_terms(LaurentPoly{{2, 0.5}}), "2\t0.5\n");
}
