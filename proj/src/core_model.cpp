#include "fogrelay/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fogrelay/bessel.hpp"
#include "fogrelay/random.hpp"

namespace fogrelay {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Argument above which x*K1(x) is zero in double precision.
constexpr double kBesselUnderflow = 700.0;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double attenuation(double distance_m, double alpha) {
  return std::pow(std::max(distance_m, kMinDistanceM), -alpha);
}

double gain_sq(double p_relay_w, double rx_power_hop1_w, double noise_w) {
  const double denom = rx_power_hop1_w + noise_w;
  require(denom > 0.0, "amplifier_gain_sq: non-positive denominator");
  return p_relay_w / denom;
}

// Received mean powers of both hops.
struct HopPowers {
  double upsilon;  // P_I * D_I^-a
  double sigma;    // P_R * D_S^-a
};

HopPowers hop_powers(const RelayState& s, double separation_m, const RadioParams& p) {
  return {s.p_source_w * attenuation(dist_source_relay(s.pos), p.path_loss_exp),
          s.p_relay_w * attenuation(dist_relay_dest(s.pos, separation_m), p.path_loss_exp)};
}

}  // namespace

RadioParams RadioParams::defaults() {
  return {dbm_to_watts(-96.0), db_to_linear(0.0), 4.0, dbm_to_watts(26.0), 50.0};
}

void RadioParams::validate() const {
  require(std::isfinite(noise_power_w) && noise_power_w > 0.0, "noise_power_w must be > 0");
  require(std::isfinite(snr_threshold) && snr_threshold > 0.0, "snr_threshold must be > 0");
  require(std::isfinite(path_loss_exp) && path_loss_exp >= 2.0, "path_loss_exp must be >= 2");
  require(std::isfinite(p_max_w) && p_max_w > 0.0, "p_max_w must be > 0");
  require(std::isfinite(separation_m) && separation_m > 0.0, "separation_m must be > 0");
}

void RelayState::validate(const RadioParams& params) const {
  require(std::isfinite(pos.x_m) && std::isfinite(pos.y_m), "relay position must be finite");
  require(p_source_w >= 0.0, "p_source_w must be >= 0");
  require(p_relay_w >= 0.0, "p_relay_w must be >= 0");
  require(p_source_w + p_relay_w <= params.p_max_w * (1.0 + 1e-12),
          "p_source_w + p_relay_w must not exceed p_max_w");
}

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }
double watts_to_dbm(double p_w) { return 10.0 * std::log10(p_w) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double dist_source_relay(Position pos) { return std::hypot(pos.x_m, pos.y_m); }

double dist_relay_dest(Position pos, double separation_m) {
  return std::hypot(pos.x_m - separation_m, pos.y_m);
}

double amplifier_gain_sq(double p_relay_w, double p_source_w, double d_source_relay,
                         double gain_sq_hop1, const RadioParams& params) {
  return gain_sq(p_relay_w, p_source_w * attenuation(d_source_relay, params.path_loss_exp) * gain_sq_hop1,
                 params.noise_power_w);
}

double instantaneous_snr(const RelayState& state, const ChannelSample& sample,
                         const RadioParams& params) {
  return instantaneous_snr(state, sample, params, RelayGain::Variable);
}

double instantaneous_snr(const RelayState& state, const ChannelSample& sample,
                         const RadioParams& params, RelayGain gain) {
  const double att1 = attenuation(dist_source_relay(state.pos), params.path_loss_exp);
  const double att2 = attenuation(dist_relay_dest(state.pos, params.separation_m), params.path_loss_exp);
  const double upsilon = state.p_source_w * att1;
  const double hop1_for_gain = gain == RelayGain::Fixed ? upsilon : upsilon * sample.gain_sq_hop1;
  const double g2 = gain_sq(state.p_relay_w, hop1_for_gain, sample.noise_relay_w);
  const double hop2 = att2 * sample.gain_sq_hop2;
  const double num = g2 * upsilon * sample.gain_sq_hop1 * hop2;
  if (num == 0.0) return 0.0;
  return num / (g2 * sample.noise_relay_w * hop2 + sample.noise_dest_w);
}

OutageResult outage_exact(const RelayState& state, double separation_m,
                          const RadioParams& params) {
  OutageResult r;
  r.method = OutageMethod::Exact;
  const double a = params.noise_power_w * params.snr_threshold;
  if (a == 0.0) return r;
  const auto [upsilon, sigma] = hop_powers(state, separation_m, params);
  if (upsilon <= 0.0 || sigma <= 0.0) {
    r.p_out = 1.0;
    r.psi = kInf;
    return r;
  }
  r.psi = std::sqrt(a / sigma * (1.0 + params.noise_power_w / upsilon));
  const double x = 2.0 * r.psi;
  const double tail = x > kBesselUnderflow ? 1.0 : one_minus_x_k1(x);  // 1 - 2Psi K1(2Psi)
  const double first_hop = -std::expm1(-a / upsilon);                   // 1 - exp(-a/U)
  r.p_out = tail + (1.0 - tail) * first_hop;
  if (!std::isfinite(r.p_out)) throw std::domain_error("outage_exact: non-finite result");
  return r;
}

OutageResult outage_approx(const RelayState& state, double separation_m,
                           const RadioParams& params) {
  require(state.p_source_w > 0.0 && state.p_relay_w > 0.0, "outage_approx: powers must be > 0");
  OutageResult r;
  r.method = OutageMethod::Approx;
  const double a = params.noise_power_w * params.snr_threshold;
  const auto [upsilon, sigma] = hop_powers(state, separation_m, params);
  r.psi = std::sqrt(a / sigma);
  const double first_hop = -std::expm1(-a / upsilon);
  if (r.psi == 0.0) {
    r.p_out = first_hop;
  } else {
    r.p_out = first_hop - 2.0 * r.psi * r.psi * std::log(r.psi) * (1.0 - first_hop);
  }
  r.psi_beyond_validity = r.psi > kApproxPsiLimit;
  r.outside_unit_interval = !(r.p_out >= 0.0 && r.p_out <= 1.0);
  return r;
}

OutageResult outage_monte_carlo(const RelayState& state, double separation_m,
                                const RadioParams& params, std::size_t n_samples,
                                std::uint64_t seed, RelayGain gain) {
  if (n_samples < kMinMonteCarloSamples) {
    throw std::invalid_argument("outage_monte_carlo: n_samples must be >= " +
                                std::to_string(kMinMonteCarloSamples));
  }
  RadioParams local = params;
  local.separation_m = separation_m;

  Rng rng(seed);
  ChannelSample sample;
  sample.noise_relay_w = params.noise_power_w;
  sample.noise_dest_w = params.noise_power_w;
  std::size_t outages = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    sample.gain_sq_hop1 = rng.exponential();
    sample.gain_sq_hop2 = rng.exponential();
    if (params.snr_threshold > 0.0 &&
        instantaneous_snr(state, sample, local, gain) <= params.snr_threshold) {
      ++outages;
    }
  }

  OutageResult r;
  r.method = OutageMethod::MonteCarlo;
  const double n = static_cast<double>(n_samples);
  r.p_out = static_cast<double>(outages) / n;
  r.mc_stderr = std::sqrt(r.p_out * (1.0 - r.p_out) / n);
  r.psi = outage_exact(state, separation_m, params).psi;
  return r;
}

}  // namespace fogrelay
