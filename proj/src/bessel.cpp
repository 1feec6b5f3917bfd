#include "fogrelay/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fogrelay {
namespace {

constexpr double kSeriesLimit = 2.0;

// Pieces of the small-argument expansion
//   K1(x) = 1/x + ln(x/2) I1(x) - (x/4) sum_k [psi(k+1) + psi(k+2)] q^k / (k!(k+1)!)
// with q = x^2/4.
struct SeriesTerms {
  double i1;       // I1(x)
  double digamma;  // the digamma-weighted sum
};

SeriesTerms small_argument_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;  // q^k / (k! (k+1)!)
  double psi_k1 = -std::numbers::egamma;        // psi(k+1)
  double psi_k2 = 1.0 - std::numbers::egamma;   // psi(k+2)
  double i1_sum = 0.0;
  double dg_sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    i1_sum += term;
    dg_sum += (psi_k1 + psi_k2) * term;
    if (term < 1e-18 * i1_sum) break;
    psi_k1 += 1.0 / (k + 1);
    psi_k2 += 1.0 / (k + 2);
    term *= q / ((k + 1.0) * (k + 2.0));
  }
  return {0.5 * x * i1_sum, dg_sum};
}

// exp(x) * K1(x) by the trapezoidal rule; the integrand is analytic in a
// strip of half-width pi/2, so the error decays like exp(-pi^2 / h).
double scaled_k1_quadrature(double x) {
  constexpr double h = 0.125;
  double sum = 0.5;  // t = 0 contributes cosh(0) * exp(0) with weight 1/2
  for (int k = 1; k < 2000; ++k) {
    const double t = k * h;
    const double c = std::cosh(t);
    const double term = std::exp(-x * (c - 1.0)) * c;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return h * sum;
}

void check_argument(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k1: argument must be positive");
}

}  // namespace

double bessel_k1(double x) {
  check_argument(x);
  if (x <= kSeriesLimit) {
    const auto s = small_argument_series(x);
    return 1.0 / x + std::log(0.5 * x) * s.i1 - 0.25 * x * s.digamma;
  }
  const double e = std::exp(-x);
  if (e == 0.0) return 0.0;
  return e * scaled_k1_quadrature(x);
}

double one_minus_x_k1(double x) {
  check_argument(x);
  if (x <= kSeriesLimit) {
    const auto s = small_argument_series(x);
    return -x * std::log(0.5 * x) * s.i1 + 0.25 * x * x * s.digamma;
  }
  return 1.0 - x * bessel_k1(x);
}

}  // namespace fogrelay
