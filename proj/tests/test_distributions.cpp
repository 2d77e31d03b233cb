#include "oracles.hpp"
#include "sqlr/distributions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace sqlr {
namespace {

TEST(PValue, RangeChecked) {
  EXPECT_THROW(PValue(-0.1), std::invalid_argument);
  EXPECT_THROW(PValue(1.5), std::invalid_argument);
  EXPECT_THROW(PValue(std::nan("")), std::invalid_argument);
  EXPECT_EQ(PValue(1.0 + 1e-14).value(), 1.0);
}

TEST(LogGamma, KnownValues) {
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-14);
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-14);
  EXPECT_NEAR(log_gamma(10.0), std::log(362880.0), 1e-12);
  for (double x : {0.1, 0.7, 3.3, 17.5, 250.0, 5e5}) {
    EXPECT_NEAR(log_gamma(x), std::lgamma(x), 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
  }
}

TEST(Erfc, AgainstSeriesOracle) {
  // erf(z) = 2/sqrt(pi) sum_k (-1)^k z^(2k+1) / (k! (2k+1)), fine for z <= 2.
  for (double z : {0.0, 0.1, 0.5, 1.0 / std::sqrt(2.0), 1.3, 2.0}) {
    double term = z;
    double sum = z;
    for (int k = 1; k < 80; ++k) {
      term *= -z * z / k;
      sum += term / (2 * k + 1);
    }
    const double series_erfc = 1.0 - 2.0 / std::sqrt(std::numbers::pi) * sum;
    EXPECT_NEAR(sqlr::erfc(z), series_erfc, 1e-13) << z;
    EXPECT_NEAR(sqlr::erfc(-z), 2.0 - series_erfc, 1e-13) << z;
  }
}

TEST(Chisq1Sf, Examples) {
  EXPECT_EQ(chisq1_sf(0.0).value(), 1.0);
  EXPECT_NEAR(chisq1_sf(3.841459).value(), 0.05, 1e-6);
  EXPECT_NEAR(chisq1_sf(1.0).value(), 0.317311, 1e-6);
  EXPECT_THROW(chisq1_sf(-1.0), std::invalid_argument);
}

TEST(Chisq1Sf, MatchesQuadrature) {
  for (double x : {0.01, 0.2, 0.5, 1.0, 2.5, 3.841459, 6.63, 10.0, 20.0, 35.0}) {
    EXPECT_NEAR(chisq1_sf(x).value(), oracle::chisq1_sf_quadrature(x), 1e-10) << x;
  }
}

TEST(Chisq1Sf, MonotoneAndVanishing) {
  double prev = 1.0;
  for (double x = 0.0; x < 60.0; x += 0.05) {
    const double p = chisq1_sf(x).value();
    ASSERT_LE(p, prev);
    prev = p;
  }
  EXPECT_LT(chisq1_sf(1e6).value(), 1e-300);
}

TEST(Chisq1Sf, BisectionRecoversCriticalValue) {
  double lo = 0.0;
  double hi = 20.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (chisq1_sf(mid).value() > 0.05 ? lo : hi) = mid;
  }
  EXPECT_NEAR(0.5 * (lo + hi), 3.841459, 1e-4);
}

TEST(FSf, Examples) {
  EXPECT_EQ(f_sf(0.0, 3, 7).value(), 1.0);
  EXPECT_NEAR(f_sf(4.0, 1, 10).value(), 0.073389, 1e-5);
  EXPECT_THROW(f_sf(1.0, 0, 5), std::invalid_argument);
  EXPECT_THROW(f_sf(-1.0, 1, 5), std::invalid_argument);
}

TEST(FSf, StudentTIdentity) {
  // Two-sided t tails in closed form for 1 and 2 degrees of freedom.
  for (double t : {0.3, 1.0, 2.2, 7.5}) {
    const double tail1 = 1.0 - 2.0 * std::atan(t) / std::numbers::pi;
    const double tail2 = 1.0 - t / std::sqrt(2.0 + t * t);
    EXPECT_NEAR(f_sf(t * t, 1, 1).value(), tail1, 1e-12) << t;
    EXPECT_NEAR(f_sf(t * t, 1, 2).value(), tail2, 1e-12) << t;
  }
}

TEST(FSf, MatchesQuadrature) {
  struct Case {
    double x;
    long long d1;
    long long d2;
  };
  for (const Case c : {Case{0.5, 1, 10}, Case{4.0, 1, 10}, Case{2.0, 3, 7}, Case{1.1, 5, 40},
                       Case{6.0, 1, 993}, Case{0.05, 2, 3}, Case{12.0, 4, 4}}) {
    EXPECT_NEAR(f_sf(c.x, c.d1, c.d2).value(),
                oracle::f_sf_quadrature(c.x, static_cast<double>(c.d1), static_cast<double>(c.d2)),
                1e-9)
        << c.x << " " << c.d1 << " " << c.d2;
  }
}

TEST(FSf, MonotoneAndVanishing) {
  double prev = 1.0;
  for (double x = 0.0; x < 50.0; x += 0.1) {
    const double p = f_sf(x, 1, 20).value();
    ASSERT_LE(p, prev);
    prev = p;
  }
  EXPECT_LT(f_sf(1e6, 1, 20).value(), 1e-9);
}

TEST(FSf, LargeDenominatorApproachesChiSquare) {
  for (double x : {0.5, 1.0, 4.0}) {
    EXPECT_NEAR(chisq1_sf(x).value(), f_sf(x, 1, 1000000).value(), 1e-4);
  }
}

}  // namespace
}  // namespace sqlr
