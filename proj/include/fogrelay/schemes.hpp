#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fogrelay/core_model.hpp"
#include "fogrelay/optimizer.hpp"

namespace fogrelay {

// FLFP fixes both; OLFP moves the relay; OPFL re-splits the power budget;
// OLOP does both, location step first.
enum class Scheme { Flfp, Olfp, Opfl, Olop };

inline constexpr Scheme kAllSchemes[] = {Scheme::Flfp, Scheme::Olfp, Scheme::Opfl, Scheme::Olop};

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);  // "flfp", "olfp", ...

bool moves_relay(Scheme s);
bool adjusts_power(Scheme s);

struct SlotRecord {
  int slot = 0;
  RelayState state;
  double p_out = 0.0;
};

struct Trajectory {
  Scheme scheme = Scheme::Flfp;
  RelayState initial;
  double initial_outage = 0.0;
  std::vector<SlotRecord> slots;  // slots 1, 2, ... up to K
  double final_outage = 0.0;
  int theta = 0;                  // convergence value
};

// Relay halfway between the endpoints, budget split evenly.
RelayState midpoint_start(const RadioParams& params);

// The quantity the schemes descend on: ln P_out with the exact closed form.
// Its minimizers are those of P_out, and its decrease per slot is the
// relative outage improvement, so tol is scale free.
double scheme_objective(const RelayState& state, const RadioParams& params);

// One steepest-descent iteration per time slot on ln P_out, with the relay
// position measured in units of the separation L and the power as the split
// rho = P_I / P_max. Position steps go through project_mobility, power steps
// through project_power. A slot whose improvement falls below config.tol
// ends the run (a worsening step is discarded) and theta is the number of
// slots before it. FLFP performs no updates and reports theta = K.
// Throws std::invalid_argument for an invalid start state.
Trajectory run_scheme(Scheme scheme, const RadioParams& params, const RelayState& start,
                      const opt::SdmConfig& config);

// 100 * (baseline - other) / baseline on final outages.
double improvement_pct(const Trajectory& baseline, const Trajectory& other);

}  // namespace fogrelay
