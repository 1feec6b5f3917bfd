#include "fogrelay/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fogrelay/errors.hpp"
#include "fogrelay/random.hpp"

namespace fogrelay {

double jain_index(const std::vector<int>& counts) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int c : counts) {
    sum += c;
    sum_sq += static_cast<double>(c) * c;
  }
  if (sum_sq == 0.0) return 1.0;
  return sum * sum / (static_cast<double>(counts.size()) * sum_sq);
}

std::vector<RelayCandidate> deploy_relays(int n, double separation_m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("deploy_relays: n must be >= 1");
  const double radius = separation_m / 2.0;
  std::vector<RelayCandidate> relays;
  relays.reserve(n);
  for (int id = 1; id <= n; ++id) {
    Rng rng(seed, static_cast<std::uint64_t>(id));
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = std::numbers::pi * rng.uniform();
    RelayCandidate c;
    c.id = id;
    c.pos = {radius + r * std::cos(phi), r * std::sin(phi)};
    relays.push_back(c);
  }
  return relays;
}

Trajectory convergence_trajectory(const RelayCandidate& candidate, Scheme scheme,
                                  const RadioParams& params, const opt::SdmConfig& config) {
  const RelayState start{candidate.pos, params.p_max_w / 2.0, params.p_max_w / 2.0};
  try {
    return run_scheme(scheme, params, start, config);
  } catch (const NumericalError& e) {
    throw NumericalError("relay " + std::to_string(candidate.id) + ": " + e.what());
  }
}

int convergence_value(const RelayCandidate& candidate, Scheme scheme, const RadioParams& params,
                      const opt::SdmConfig& config) {
  return convergence_trajectory(candidate, scheme, params, config).theta;
}

SelectionProtocol::SelectionProtocol(std::vector<RelayCandidate> candidates, int tick_budget,
                                     int cts_delay)
    : candidates_(std::move(candidates)), tick_budget_(tick_budget), cts_delay_(cts_delay) {
  if (candidates_.empty()) throw std::invalid_argument("selection: no candidates");
  if (tick_budget_ < 0) throw std::invalid_argument("selection: tick_budget must be >= 0");
  if (cts_delay_ < 0) throw std::invalid_argument("selection: cts_delay must be >= 0");
  std::sort(candidates_.begin(), candidates_.end(),
            [](const RelayCandidate& a, const RelayCandidate& b) { return a.id < b.id; });
  for (auto& c : candidates_) {
    if (c.theta < 0 || c.theta_initial < 0) throw std::invalid_argument("selection: negative counter");
    c.state = RelayStatus::Counting;
  }
}

PhaseLog SelectionProtocol::run_phase() {
  PhaseLog log;
  log.phase_index = ++phase_;
  log.start_tick = tick_;
  log.cts_tick = tick_ + cts_delay_;

  int min_theta = candidates_.front().theta;
  for (const auto& c : candidates_) {
    log.counters_before[c.id] = c.theta;
    min_theta = std::min(min_theta, c.theta);
  }

  // Tied relays in round-robin order: ids above the last transmitter first.
  std::vector<int> after_cursor;
  std::vector<int> wrapped;
  for (const auto& c : candidates_) {
    if (c.theta != min_theta) continue;
    (c.id > last_transmitter_ ? after_cursor : wrapped).push_back(c.id);
  }
  log.selected_ids = std::move(after_cursor);
  log.selected_ids.insert(log.selected_ids.end(), wrapped.begin(), wrapped.end());
  const int transmitter = log.transmitter();

  // Transmission: everyone else freezes until CTS.
  for (auto& c : candidates_) c.state = c.id == transmitter ? RelayStatus::Selected : RelayStatus::Frozen;

  // CTS received: reload the transmitter, count the others down.
  const auto& tied = log.selected_ids;
  for (auto& c : candidates_) {
    if (c.id == transmitter) {
      c.theta = c.theta_initial;
    } else if (c.id != last_transmitter_ && std::find(tied.begin(), tied.end(), c.id) == tied.end() &&
               c.theta > 1) {
      c.theta = std::max(1, c.theta - tick_budget_);
    }
    c.state = RelayStatus::Counting;
    log.counters_after[c.id] = c.theta;
  }

  last_transmitter_ = transmitter;
  tick_ = log.cts_tick + tick_budget_;
  return log;
}

PhasesResult run_phases(std::vector<RelayCandidate> candidates, int n_phases, int cts_delay,
                        int tick_budget) {
  if (n_phases < 1) throw std::invalid_argument("run_phases: n_phases must be >= 1");
  SelectionProtocol protocol(std::move(candidates), tick_budget, cts_delay);
  PhasesResult result;
  for (const auto& c : protocol.candidates()) result.fairness.times_selected[c.id] = 0;
  for (int p = 0; p < n_phases; ++p) {
    result.phases.push_back(protocol.run_phase());
    ++result.fairness.times_selected[result.phases.back().transmitter()];
  }
  std::vector<int> counts;
  for (const auto& [id, n] : result.fairness.times_selected) counts.push_back(n);
  result.fairness.jain_index = jain_index(counts);
  return result;
}

}  // namespace fogrelay
