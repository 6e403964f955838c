#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hillband/discriminant.hpp"
#include "hillband/errors.hpp"
#include "oracles.hpp"

using hillband::cplx;
using hillband::DiscriminantModel;

namespace {

constexpr double kPi = std::numbers::pi;

cplx fd_derivative(const DiscriminantModel& m, cplx E, double h = 1e-6) {
  return oracle::central_difference([&m](cplx z) { return m.eval(z); }, E, h);
}

TEST(Discriminant, Construction) {
  EXPECT_THROW(DiscriminantModel(0, 1.0), std::invalid_argument);
  const DiscriminantModel m = DiscriminantModel::from_potential(hillband::Potential::sparse(4, {1.0, 2.0}, 3));
  EXPECT_EQ(m.period(), 4);
  EXPECT_EQ(m.impurity(), cplx(1.0, 2.0));
  EXPECT_THROW(DiscriminantModel::from_potential(hillband::Potential::general({1.0, 2.0})), hillband::DegenerateInput);
}

TEST(Discriminant, EvalSpecExamples) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const cplx v = oracle::random_in_disk(rng, 4.0), E = oracle::random_in_disk(rng, 4.0);
    EXPECT_LT(std::abs(DiscriminantModel(1, v).eval(E) - (E - v)), 1e-14);
    for (int L = 1; L <= 20; ++L) {
      const cplx free = 2.0 * hillband::cheb_eval(hillband::ChebKind::First, L, 0.5 * E);
      EXPECT_EQ(DiscriminantModel(L, 0.0).eval(E), free);
    }
  }
  EXPECT_LT(std::abs(DiscriminantModel(3, {0.0, 2.0}).eval(0.0) - cplx(0.0, 2.0)), 1e-15);
}

TEST(Discriminant, SmallPeriodSymbolicForms) {
  // Delta_1 = E - v, Delta_2 = E^2 - vE - 2, Delta_3 = E^3 - vE^2 - 3E + v
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const cplx v = oracle::random_in_disk(rng, 5.0), E = oracle::random_in_disk(rng, 3.0);
    EXPECT_LT(std::abs(DiscriminantModel(2, v).eval(E) - (E * E - v * E - 2.0)), 1e-12);
    EXPECT_LT(std::abs(DiscriminantModel(3, v).eval(E) - (E * E * E - v * E * E - 3.0 * E + v)), 1e-11);
    for (int L = 1; L <= 4; ++L) {
      const oracle::Poly p = oracle::discriminant_coefficients(oracle::sparse_values(L, v));
      ASSERT_EQ(p.size(), static_cast<std::size_t>(L + 1));
      EXPECT_EQ(p.back(), cplx(1.0));
      EXPECT_LT(std::abs(DiscriminantModel(L, v).eval(E) - oracle::eval(p, E)), 1e-11 * (1.0 + std::abs(oracle::eval(p, E))));
    }
  }
}

TEST(Discriminant, OracleEquivalenceWithTransfer) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> period(1, 64);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int L = period(rng);
    const cplx v = oracle::random_in_disk(rng, 10.0), E = oracle::random_in_disk(rng, 4.0);
    const cplx a = DiscriminantModel(L, v).eval(E);
    const cplx b = hillband::discriminant_via_transfer(hillband::Potential::sparse(L, v), E);
    worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Discriminant, Monic) {
  for (int L = 1; L <= 40; ++L) {
    const DiscriminantModel m(L, {3.0, -4.0});
    for (double arg : {0.3, 1.7, -2.5}) {
      const cplx E = std::polar(1e6, arg);
      EXPECT_LT(std::abs(m.eval(E) / std::pow(E, L) - 1.0), 1e-4) << L;
    }
  }
}

TEST(Discriminant, PureImaginarySymmetry) {
  std::mt19937_64 rng(4);
  for (int L = 1; L <= 15; ++L) {
    for (int i = 0; i < 30; ++i) {
      const double s = std::uniform_real_distribution<double>(-6.0, 6.0)(rng);
      const DiscriminantModel m(L, {0.0, s});
      const cplx E = oracle::random_in_disk(rng, 3.0);
      const double sign = L % 2 == 0 ? 1.0 : -1.0;
      const cplx lhs = m.eval(-std::conj(E));
      const cplx rhs = sign * std::conj(m.eval(E));
      EXPECT_LT(std::abs(lhs - rhs), 1e-10 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST(DiscriminantDerivative, SpecExamples) {
  EXPECT_NEAR(std::abs(DiscriminantModel(3, 0.0).eval_derivative(2.0) - 9.0), 0.0, 1e-12);
  for (cplx v : {cplx{0.0}, cplx{1.5}, cplx{0.0, 2.0}, cplx{-3.0, 1.0}}) {
    EXPECT_LT(std::abs(DiscriminantModel(2, v).eval_derivative(-2.0) - (-4.0 - v)), 1e-12);
  }
}

TEST(DiscriminantDerivative, MatchesFiniteDifferenceAwayFromEdges) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const int L = 1 + i % 30;
    const DiscriminantModel m(L, oracle::random_in_disk(rng, 5.0));
    const cplx E = oracle::random_in_disk(rng, 3.0);
    if (std::abs(E - 2.0) < 1e-3 || std::abs(E + 2.0) < 1e-3) continue;
    const cplx d = m.eval_derivative(E);
    EXPECT_LT(std::abs(d - fd_derivative(m, E)), 1e-6 * std::max(1.0, std::abs(d))) << "L=" << L << " E=" << E;
  }
}

TEST(DiscriminantDerivative, ContinuousAcrossGuardSeam) {
  const double g = hillband::kEdgeGuard;
  for (int L = 1; L <= 12; ++L) {
    for (cplx v : {cplx{0.0}, cplx{0.7}, cplx{0.0, 2.0}, cplx{-3.0, 1.5}}) {
      const DiscriminantModel m(L, v);
      for (double s : {2.0, -2.0}) {
        for (double off : {0.0, 1e-9, 0.5 * g, 0.999 * g, 1.001 * g, 2.0 * g, 1e-5, 1e-4}) {
          for (cplx dir : {cplx{1.0}, cplx{-1.0}, cplx{0.0, 1.0}, std::polar(1.0, 0.8)}) {
            const cplx E = s + off * dir;
            const cplx d = m.eval_derivative(E);
            const cplx fd = fd_derivative(m, E, 1e-5);
            EXPECT_LT(std::abs(d - fd), 1e-6 * std::max(1.0, std::abs(d)))
                << "L=" << L << " v=" << v << " E=" << E;
          }
        }
      }
    }
  }
}

TEST(DiscriminantDerivative, EdgeLimitsUseSixthNotQuarter) {
  // Derived limits L^2 - vL(L^2-1)/6 at +2 and (-1)^{L+1}(L^2 + vL(L^2-1)/6) at -2,
  // checked at L = 1, 2, 3 against the finite-difference oracle; the printed
  // coefficient L(L^2-1)/4 with sign (-1)^L misses both.
  const cplx v{0.8, -1.3};
  for (int L = 1; L <= 3; ++L) {
    const DiscriminantModel m(L, v);
    const double l = L;
    const cplx plus = l * l - v * l * (l * l - 1.0) / 6.0;
    const cplx minus = (L % 2 == 0 ? -1.0 : 1.0) * (l * l + v * l * (l * l - 1.0) / 6.0);
    EXPECT_LT(std::abs(hillband::derivative_at_plus_two(m) - plus), 1e-12);
    EXPECT_LT(std::abs(hillband::derivative_at_minus_two(m) - minus), 1e-12);
    EXPECT_LT(std::abs(fd_derivative(m, 2.0) - plus), 1e-6);
    EXPECT_LT(std::abs(fd_derivative(m, -2.0) - minus), 1e-6);
    EXPECT_LT(std::abs(m.eval_derivative(2.0) - plus), 1e-12);
    EXPECT_LT(std::abs(m.eval_derivative(-2.0) - minus), 1e-12);

    const cplx printed_plus = l * l - v * l * (l * l - 1.0) / 4.0;
    const cplx printed_minus = (L % 2 == 0 ? 1.0 : -1.0) * (l * l + v * l * (l * l - 1.0) / 4.0);
    EXPECT_GT(std::abs(fd_derivative(m, -2.0) - printed_minus), 0.1) << L;
    if (L >= 2) EXPECT_GT(std::abs(fd_derivative(m, 2.0) - printed_plus), 0.1) << L;
  }
  // Direct differentiation of Delta_3 = E^3 - vE^2 - 3E + v: 9 - 4v and 9 + 4v at +-2.
  EXPECT_LT(std::abs(DiscriminantModel(3, v).eval_derivative(2.0) - (9.0 - 4.0 * v)), 1e-12);
  EXPECT_LT(std::abs(DiscriminantModel(3, v).eval_derivative(-2.0) - (9.0 + 4.0 * v)), 1e-12);
  for (int L = 4; L <= 60; ++L) {
    const DiscriminantModel m(L, v);
    EXPECT_LT(std::abs(m.eval_derivative(2.0) - hillband::derivative_at_plus_two(m)),
              1e-10 * std::abs(hillband::derivative_at_plus_two(m)));
    EXPECT_LT(std::abs(m.eval_derivative(-2.0) - hillband::derivative_at_minus_two(m)),
              1e-10 * std::abs(hillband::derivative_at_minus_two(m)));
  }
}

TEST(DiscriminantDerivative, BetaSlopeDerivedForm) {
  // Slope at beta_k is vL(-1)^k / (2 sin^2 phi_k); the printed v(-1)^k/(2 sin^3 phi_k) fails at L = 2.
  const cplx v{1.1, 0.6};
  EXPECT_LT(std::abs(DiscriminantModel(2, v).eval_derivative(0.0) - (-v)), 1e-14);
  EXPECT_GT(std::abs(fd_derivative(DiscriminantModel(2, v), 0.0) - (-v / 2.0)), 0.1);
  EXPECT_LT(std::abs(DiscriminantModel(3, v).eval_derivative(1.0) - (-2.0 * v)), 1e-12);
  EXPECT_LT(std::abs(DiscriminantModel(3, v).eval_derivative(-1.0) - (2.0 * v)), 1e-12);
  for (int L = 2; L <= 40; ++L) {
    const DiscriminantModel m(L, v);
    for (int k = 1; k < L; ++k) {
      const double phi = k * kPi / L;
      const cplx expect = v * double(L) * (k % 2 == 0 ? 1.0 : -1.0) / (2.0 * std::sin(phi) * std::sin(phi));
      EXPECT_LT(std::abs(hillband::beta_slope(m, k) - expect), 1e-9 * std::abs(expect));
      EXPECT_LT(std::abs(m.eval_derivative(m.beta(k)) - expect), 1e-9 * std::abs(expect)) << "L=" << L << " k=" << k;
      if (L <= 3) EXPECT_LT(std::abs(fd_derivative(m, m.beta(k)) - expect), 1e-6 * std::abs(expect));
    }
  }
}

TEST(Discriminant, NodesAndIndexChecks) {
  const DiscriminantModel m(5, 0.5);
  for (int j = 1; j <= 5; ++j) EXPECT_NEAR(m.alpha(j), 2.0 * std::cos((2 * j - 1) * kPi / 10.0), 1e-15);
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(m.beta(k), 2.0 * std::cos(k * kPi / 5.0), 1e-15);
  EXPECT_THROW(m.alpha(0), std::out_of_range);
  EXPECT_THROW(m.alpha(6), std::out_of_range);
  EXPECT_THROW(m.beta(0), std::out_of_range);
  EXPECT_THROW(m.beta(5), std::out_of_range);
  EXPECT_THROW(DiscriminantModel(1, 0.0).beta(1), std::out_of_range);
}

TEST(SpecialValues, SpecExamples) {
  EXPECT_LT(std::abs(hillband::special_values(DiscriminantModel(4, 1.0)).at_plus2 - (-2.0)), 1e-15);
  EXPECT_LT(std::abs(hillband::special_values(DiscriminantModel(3, {0.0, 2.0})).at_minus2 - cplx(-2.0, -6.0)), 1e-15);
  const auto sv5 = hillband::special_values(DiscriminantModel(5, {0.3, 0.1}));
  ASSERT_EQ(sv5.at_beta.size(), 4u);
  EXPECT_EQ(sv5.at_beta[0], cplx(-2.0));
  EXPECT_EQ(sv5.at_beta[1], cplx(2.0));
  EXPECT_EQ(sv5.at_beta[2], cplx(-2.0));
  EXPECT_EQ(sv5.at_beta[3], cplx(2.0));
  EXPECT_TRUE(hillband::special_values(DiscriminantModel(1, 1.0)).at_beta.empty());
}

TEST(SpecialValues, BetaValuesAgainstEvaluation) {
  for (int L = 2; L <= 100; ++L) {
    const DiscriminantModel m(L, {2.5, -1.0});
    const auto sv = hillband::special_values(m);
    EXPECT_LT(std::abs(sv.at_plus2 - m.eval(2.0)), 1e-10 * (1.0 + std::abs(sv.at_plus2)));
    EXPECT_LT(std::abs(sv.at_minus2 - m.eval(-2.0)), 1e-10 * (1.0 + std::abs(sv.at_minus2)));
    for (int k = 1; k < L; ++k) {
      EXPECT_LT(std::abs(m.eval(m.beta(k)) - 2.0 * (k % 2 == 0 ? 1.0 : -1.0)), 1e-10) << "L=" << L << " k=" << k;
    }
  }
}

TEST(Taylor, SpecExamples) {
  const cplx v{0.4, 1.7};
  const auto b = hillband::taylor_at(DiscriminantModel(2, v), hillband::BetaNode{1});
  EXPECT_LT(std::abs(b.center), 1e-15);
  EXPECT_LT(std::abs(b.value + 2.0), 1e-15);
  EXPECT_LT(std::abs(b.slope + v), 1e-14);

  const auto a1 = hillband::taylor_at(DiscriminantModel(1, v), hillband::AlphaNode{1});
  EXPECT_LT(std::abs(a1.center), 1e-15);
  EXPECT_LT(std::abs(a1.value + v), 1e-15);
  EXPECT_LT(std::abs(a1.slope - 1.0), 1e-15);

  const auto a2 = hillband::taylor_at(DiscriminantModel(2, v), hillband::AlphaNode{1});
  EXPECT_LT(std::abs(a2.center - std::sqrt(2.0)), 1e-15);
  EXPECT_LT(std::abs(a2.value + std::sqrt(2.0) * v), 1e-14);
  EXPECT_LT(std::abs(a2.slope - (2.0 * std::sqrt(2.0) - v)), 1e-14);

  // j = 2 at L = 2: Delta_2'(-sqrt 2) = -2 sqrt 2 - v; the printed slope lacks (-1)^{j-1}.
  const auto a22 = hillband::taylor_at(DiscriminantModel(2, v), hillband::AlphaNode{2});
  EXPECT_LT(std::abs(a22.slope - (-2.0 * std::sqrt(2.0) - v)), 1e-14);
  const double theta = 3.0 * kPi / 4.0;
  const cplx printed = (2.0 * 2.0 * std::sin(theta) * std::sin(theta) - v * std::cos(theta)) /
                       (2.0 * std::pow(std::sin(theta), 3));
  EXPECT_GT(std::abs(a22.slope - printed), 0.1);

  EXPECT_THROW(hillband::taylor_at(DiscriminantModel(2, v), hillband::AlphaNode{3}), std::out_of_range);
  EXPECT_THROW(hillband::taylor_at(DiscriminantModel(2, v), hillband::BetaNode{2}), std::out_of_range);
  EXPECT_THROW(hillband::taylor_at(DiscriminantModel(1, v), hillband::BetaNode{1}), std::out_of_range);
}

TEST(Taylor, InvariantsAtEveryCentre) {
  std::mt19937_64 rng(6);
  for (int L = 1; L <= 25; ++L) {
    const DiscriminantModel m(L, oracle::random_in_disk(rng, 6.0));
    std::vector<hillband::TaylorPoint> points{hillband::PlusTwo{}, hillband::MinusTwo{}};
    for (int j = 1; j <= L; ++j) points.push_back(hillband::AlphaNode{j});
    for (int k = 1; k < L; ++k) points.push_back(hillband::BetaNode{k});
    for (const auto& p : points) {
      const auto t = hillband::taylor_at(m, p);
      EXPECT_LT(std::abs(t.value - m.eval(t.center)), 1e-10 * (1.0 + std::abs(t.value)));
      EXPECT_LT(std::abs(t.slope - m.eval_derivative(t.center)), 1e-10 * (1.0 + std::abs(t.slope)));
      const double h = 1e-5;
      EXPECT_LT(std::abs(t(t.center + h) - m.eval(t.center + h)), 1e-6 * (1.0 + std::abs(t.value) + std::abs(t.slope)));
    }
    for (int j = 1; j <= L; ++j) {
      const double theta = (2.0 * j - 1.0) * kPi / (2.0 * L);
      const cplx expect = m.impurity() * (j % 2 == 0 ? 1.0 : -1.0) / std::sin(theta);
      EXPECT_LT(std::abs(hillband::taylor_at(m, hillband::AlphaNode{j}).value - expect), 1e-10 * (1.0 + std::abs(expect)));
    }
  }
}

}  // namespace
