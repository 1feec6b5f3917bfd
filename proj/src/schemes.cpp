#include "fogrelay/schemes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "fogrelay/errors.hpp"

namespace fogrelay {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Flfp: return "flfp";
    case Scheme::Olfp: return "olfp";
    case Scheme::Opfl: return "opfl";
    case Scheme::Olop: return "olop";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

bool moves_relay(Scheme s) { return s == Scheme::Olfp || s == Scheme::Olop; }
bool adjusts_power(Scheme s) { return s == Scheme::Opfl || s == Scheme::Olop; }

RelayState midpoint_start(const RadioParams& params) {
  return {{params.separation_m / 2.0, 0.0}, params.p_max_w / 2.0, params.p_max_w / 2.0};
}

double scheme_objective(const RelayState& state, const RadioParams& params) {
  return std::log(outage_exact(state, params.separation_m, params).p_out);
}

namespace {

RelayState location_step(const RelayState& s, const RadioParams& params, const opt::SdmConfig& config) {
  const double L = params.separation_m;
  auto f = [&](std::span<const double> u) {
    RelayState probe = s;
    probe.pos = {u[0] * L, u[1] * L};
    return scheme_objective(probe, params);
  };
  const double u0[2] = {s.pos.x_m / L, s.pos.y_m / L};
  const auto step = opt::sdm_step(f, u0, config);
  RelayState next = s;
  if (!step.stationary) {
    next.pos = opt::project_mobility(s.pos, {step.point[0] * L, step.point[1] * L},
                                     config.mobility_limit_m);
  }
  return next;
}

RelayState power_step(const RelayState& s, const RadioParams& params, const opt::SdmConfig& config) {
  const double pmax = params.p_max_w;
  auto f = [&](std::span<const double> rho) {
    RelayState probe = s;
    probe.p_source_w = rho[0] * pmax;
    probe.p_relay_w = (1.0 - rho[0]) * pmax;
    return scheme_objective(probe, params);
  };
  const double total = s.p_source_w + s.p_relay_w;
  const double rho0[1] = {total > 0.0 ? s.p_source_w / total : 0.5};
  const auto step = opt::sdm_step(f, rho0, config);
  const double rho = step.stationary ? rho0[0] : step.point[0];
  RelayState next = s;
  std::tie(next.p_source_w, next.p_relay_w) = opt::project_power(rho * pmax, (1.0 - rho) * pmax, pmax);
  return next;
}

}  // namespace

Trajectory run_scheme(Scheme scheme, const RadioParams& params, const RelayState& start,
                      const opt::SdmConfig& config) {
  start.validate(params);
  config.validate();

  Trajectory traj;
  traj.scheme = scheme;
  traj.initial = start;
  traj.initial_outage = outage_exact(start, params.separation_m, params).p_out;
  traj.theta = config.max_iters;

  RelayState state = start;
  double p_out = traj.initial_outage;

  if (scheme == Scheme::Flfp || p_out <= 0.0) {
    // Nothing to descend on: FLFP by definition, or an outage that is already zero.
    const int slots = scheme == Scheme::Flfp ? config.max_iters : 1;
    for (int t = 1; t <= slots; ++t) traj.slots.push_back({t, state, p_out});
    if (scheme != Scheme::Flfp) traj.theta = 0;
    traj.final_outage = p_out;
    return traj;
  }

  double objective = std::log(p_out);
  for (int t = 1; t <= config.max_iters; ++t) {
    RelayState next = state;
    try {
      if (moves_relay(scheme)) next = location_step(next, params, config);
      if (adjusts_power(scheme)) next = power_step(next, params, config);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(to_string(scheme)) + " slot " + std::to_string(t) + ": " +
                           e.what());
    }
    const double next_p_out = outage_exact(next, params.separation_m, params).p_out;
    const double next_objective = std::log(next_p_out);
    if (objective - next_objective < config.tol) {
      if (next_objective > objective) {
        next = state;
      } else {
        p_out = next_p_out;
      }
      traj.slots.push_back({t, next, p_out});
      traj.theta = t - 1;
      break;
    }
    state = next;
    p_out = next_p_out;
    objective = next_objective;
    traj.slots.push_back({t, state, p_out});
  }
  traj.final_outage = traj.slots.back().p_out;
  return traj;
}

double improvement_pct(const Trajectory& baseline, const Trajectory& other) {
  if (baseline.slots.empty() || other.slots.empty()) {
    throw std::invalid_argument("improvement_pct: empty trajectory");
  }
  if (baseline.final_outage == 0.0) throw std::invalid_argument("improvement_pct: zero baseline outage");
  return 100.0 * (baseline.final_outage - other.final_outage) / baseline.final_outage;
}

}  // namespace fogrelay
