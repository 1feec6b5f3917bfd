#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fogrelay/core_model.hpp"
#include "fogrelay/optimizer.hpp"
#include "fogrelay/schemes.hpp"

namespace fogrelay {

enum class RelayStatus { Counting, Frozen, Idle, Selected };

struct RelayCandidate {
  int id = 0;
  Position pos;
  int theta = 0;          // current counter
  int theta_initial = 0;  // convergence value of its optimization run
  RelayStatus state = RelayStatus::Counting;
};

struct PhaseLog {
  int phase_index = 0;
  std::vector<int> selected_ids;  // round-robin order; front() transmits
  std::map<int, int> counters_before;
  std::map<int, int> counters_after;
  std::int64_t start_tick = 0;
  std::int64_t cts_tick = 0;

  int transmitter() const { return selected_ids.front(); }
};

struct FairnessReport {
  std::map<int, int> times_selected;
  double jain_index = 0.0;
};

// (sum s)^2 / (n * sum s^2); 1 for an empty or all-zero vector.
double jain_index(const std::vector<int>& counts);

// n relays uniform over the upper half-disc of diameter L centred at
// (L/2, 0). Relay i (ids start at 1) draws from its own stream of `seed`,
// so adding relays leaves earlier positions unchanged.
std::vector<RelayCandidate> deploy_relays(int n, double separation_m, std::uint64_t seed);

// Optimization run of one candidate: starts at its position with the budget
// split evenly.
Trajectory convergence_trajectory(const RelayCandidate& candidate, Scheme scheme,
                                  const RadioParams& params, const opt::SdmConfig& config);

int convergence_value(const RelayCandidate& candidate, Scheme scheme, const RadioParams& params,
                      const opt::SdmConfig& config);

inline constexpr int kDefaultTickBudget = 5;

// Counter-based relay selection over repeated transmission phases.
//
// Each phase picks the minimum counter; ties go round-robin in ascending id
// order after the last transmitter. The transmitter's counter is reloaded
// with theta_initial. Every other relay stays frozen until the CTS tick and
// then counts down by tick_budget, floored at 1, except the previous
// transmitter and the other tied relays, which keep their counters.
class SelectionProtocol {
 public:
  // Throws std::invalid_argument for an empty candidate list, negative
  // counters or a negative tick budget / CTS delay.
  SelectionProtocol(std::vector<RelayCandidate> candidates, int tick_budget = kDefaultTickBudget,
                    int cts_delay = 1);

  PhaseLog run_phase();

  const std::vector<RelayCandidate>& candidates() const { return candidates_; }

 private:
  std::vector<RelayCandidate> candidates_;
  int tick_budget_;
  int cts_delay_;
  int phase_ = 0;
  std::int64_t tick_ = 0;
  int last_transmitter_ = 0;
};

struct PhasesResult {
  std::vector<PhaseLog> phases;
  FairnessReport fairness;
};

PhasesResult run_phases(std::vector<RelayCandidate> candidates, int n_phases, int cts_delay = 1,
                        int tick_budget = kDefaultTickBudget);

}  // namespace fogrelay
