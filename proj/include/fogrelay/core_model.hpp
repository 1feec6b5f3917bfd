#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace fogrelay {

// Physical constants of the two-hop link, all in linear units.
struct RadioParams {
  double noise_power_w;   // N0
  double snr_threshold;   // linear SNR threshold
  double path_loss_exp;   // alpha
  double p_max_w;         // total power budget for both hops
  double separation_m;    // source (0,0) to destination (L,0)

  // -96 dBm noise, 0 dB threshold, alpha = 4, 26 dBm budget, L = 50 m.
  static RadioParams defaults();

  // Throws std::invalid_argument naming the first violated invariant.
  void validate() const;

  bool operator==(const RadioParams&) const = default;
};

struct Position {
  double x_m = 0.0;
  double y_m = 0.0;

  bool operator==(const Position&) const = default;
};

// Relay location plus the source power of slot t and the relay power of
// slot t+1.
struct RelayState {
  Position pos;
  double p_source_w = 0.0;
  double p_relay_w = 0.0;

  // Throws std::invalid_argument on negative powers or an exceeded budget.
  void validate(const RadioParams& params) const;

  bool operator==(const RelayState&) const = default;
};

enum class OutageMethod { Exact, Approx, MonteCarlo };

struct OutageResult {
  double p_out = 0.0;
  double psi = 0.0;
  OutageMethod method = OutageMethod::Exact;
  std::optional<double> mc_stderr;
  // Approx only: psi above the small-argument region of the expansion.
  bool psi_beyond_validity = false;
  // Approx only: the expansion left [0, 1]; the value is reported unclamped.
  bool outside_unit_interval = false;
};

// One fading realization. Noise fields are the noise powers seen at the
// relay and destination; instantaneous_snr uses them in place of N0.
struct ChannelSample {
  double gain_sq_hop1 = 1.0;
  double gain_sq_hop2 = 1.0;
  double noise_relay_w = 0.0;
  double noise_dest_w = 0.0;
};

// How the relay sets its amplification.
//  Fixed:    G^2 = P_R / (Upsilon + N0), normalized to the mean first-hop
//            power. The closed form in outage_exact is exact for this relay.
//  Variable: G^2 = P_R / (Upsilon * beta^2 + N0), the instantaneous gain.
enum class RelayGain { Fixed, Variable };

double dbm_to_watts(double p_dbm);
double watts_to_dbm(double p_w);
double db_to_linear(double db);
double linear_to_db(double linear);

// Distances are floored at this value before exponentiation.
inline constexpr double kMinDistanceM = 1e-6;

double dist_source_relay(Position pos);
double dist_relay_dest(Position pos, double separation_m);

double amplifier_gain_sq(double p_relay_w, double p_source_w, double d_source_relay,
                         double gain_sq_hop1, const RadioParams& params);

// End-to-end SNR of one realization. Uses params.separation_m for the
// destination position and the Variable gain rule.
double instantaneous_snr(const RelayState& state, const ChannelSample& sample,
                         const RadioParams& params);
double instantaneous_snr(const RelayState& state, const ChannelSample& sample,
                         const RadioParams& params, RelayGain gain);

// Closed form P_out = 1 - exp(-N0*g/U) * 2*Psi*K1(2*Psi),
// Psi = sqrt(N0*g*(U + N0) / (S*U)), U = P_I*D_I^-a, S = P_R*D_S^-a.
// Zero powers and a zero threshold return the limiting values.
OutageResult outage_exact(const RelayState& state, double separation_m,
                          const RadioParams& params);

// Small-Psi expansion P_out = 1 - (1 + 2*Psi^2*ln Psi) * exp(-N0*g/U) with
// Psi = sqrt(N0*g/S). Flags Psi > kApproxPsiLimit and results outside [0,1].
OutageResult outage_approx(const RelayState& state, double separation_m,
                           const RadioParams& params);

inline constexpr double kApproxPsiLimit = 0.1;
inline constexpr std::size_t kMinMonteCarloSamples = 1000;

// Empirical P[gamma <= threshold] over independent unit-mean exponential
// power gains. Deterministic for a fixed seed. Throws std::invalid_argument
// for n_samples below kMinMonteCarloSamples.
OutageResult outage_monte_carlo(const RelayState& state, double separation_m,
                                const RadioParams& params, std::size_t n_samples,
                                std::uint64_t seed, RelayGain gain = RelayGain::Fixed);

}  // namespace fogrelay
