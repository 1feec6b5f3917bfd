#include "fogrelay/bessel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fogrelay {
namespace {

struct Reference {
  double x;
  double k1;
};

// 40-digit mpmath besselk(1, x).
constexpr Reference kReference[] = {
    {1e-6, 999999.99999278427896},
    {0.001, 999.99623815608557428},
    {0.01, 99.973894118296247643},
    {0.1, 9.8538447808706061348},
    {0.5, 1.6564411200033008937},
    {1.0, 0.60190723019723457474},
    {2.0, 0.13986588181652242728},
    {5.0, 0.0040446134454521642084},
    {10.0, 1.8648773453825584597e-5},
    {20.0, 5.8830579695570381777e-10},
    {50.0, 3.4441022267175556126e-23},
};

TEST(BesselK1, MatchesReferenceValues) {
  for (const auto& r : kReference) {
    EXPECT_NEAR(bessel_k1(r.x) / r.k1, 1.0, 1e-12) << "x = " << r.x;
  }
}

TEST(BesselK1, AgreesWithStandardLibrary) {
  for (double x = 0.05; x < 40.0; x *= 1.37) {
    const double ref = std::cyl_bessel_k(1.0, x);
    EXPECT_NEAR(bessel_k1(x) / ref, 1.0, 1e-10) << "x = " << x;
  }
}

TEST(BesselK1, ContinuousAcrossMethodSwitch) {
  const double below = bessel_k1(std::nextafter(2.0, 0.0));
  const double above = bessel_k1(std::nextafter(2.0, 3.0));
  EXPECT_NEAR(below / above, 1.0, 1e-12);
}

TEST(BesselK1, StrictlyDecreasing) {
  double prev = bessel_k1(1e-4);
  for (double x = 2e-4; x < 60.0; x *= 1.1) {
    const double v = bessel_k1(x);
    EXPECT_LT(v, prev) << "x = " << x;
    prev = v;
  }
}

TEST(BesselK1, UnderflowsToZero) {
  EXPECT_EQ(bessel_k1(800.0), 0.0);
  EXPECT_EQ(bessel_k1(std::numeric_limits<double>::infinity()), 0.0);
}

TEST(BesselK1, RejectsNonPositive) {
  EXPECT_THROW(bessel_k1(0.0), std::domain_error);
  EXPECT_THROW(bessel_k1(-1.0), std::domain_error);
  EXPECT_THROW(bessel_k1(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST(OneMinusXK1, MatchesDirectFormWhereStable) {
  for (double x : {0.3, 1.0, 2.5, 7.0}) {
    EXPECT_NEAR(one_minus_x_k1(x), 1.0 - x * bessel_k1(x), 1e-14) << "x = " << x;
  }
}

TEST(OneMinusXK1, SmallArgumentLimit) {
  // 1 - x K1(x) ~ -(x^2/2) ln(x/2) - (x^2/4)(2 gamma - 1) as x -> 0.
  const double x = 1e-5;
  const double lead = -0.5 * x * x * std::log(x / 2.0) - 0.25 * x * x * (2.0 * 0.5772156649015329 - 1.0);
  EXPECT_NEAR(one_minus_x_k1(x) / lead, 1.0, 1e-6);
  EXPECT_GT(one_minus_x_k1(1e-150), 0.0);
}

TEST(OneMinusXK1, LargeArgumentTendsToOne) {
  EXPECT_NEAR(one_minus_x_k1(60.0), 1.0, 1e-20);
  EXPECT_THROW(one_minus_x_k1(0.0), std::domain_error);
}

}  // namespace
}  // namespace fogrelay
