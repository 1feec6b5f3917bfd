#pragma once

#include <vector>

#include "fogrelay/core_model.hpp"

namespace fogrelay {

struct GridSpec {
  int n_power = 800;
  int n_positions = 3000;

  void validate() const;  // n_power >= 2, n_positions >= 4
  bool operator==(const GridSpec&) const = default;
};

// Split grids stay this far from the endpoints, where the outage is 1.
inline constexpr double kSplitFloor = 1e-3;

// n uniform splits rho = P_I / P_max on [kSplitFloor, 1 - kSplitFloor].
std::vector<double> split_grid(int n_power);

// Uniform square lattice over the bounding box [0, L] x [0, L/2] of the
// upper semicircle centred at (L/2, 0), keeping the points inside it. The
// diameter is cut into `intervals` equal pieces.
std::vector<Position> semicircle_lattice(double separation_m, int intervals);

// Fewest diameter intervals whose lattice keeps at least n_positions points.
int lattice_intervals(int n_positions);

struct GridMinimum {
  RelayState state;
  double p_out = 1.0;
  int position_index = 0;
};

// Exhaustive minimum of outage_exact over the lattice x split grid with the
// power sum pinned to P_max. Ties resolve to the lower position index.
GridMinimum brute_force_min(const RadioParams& params, const GridSpec& spec);

struct SeparationPoint {
  double separation_m;
  double p_out_min;
};

std::vector<SeparationPoint> min_outage_vs_separation(const RadioParams& params, const GridSpec& spec,
                                                      const std::vector<double>& separations);

struct PowerSweepPoint {
  double rho;
  double p_relay_w;
  double p_out;
};

// Outage at a fixed position over n_points splits spanning [0, 1] inclusive.
// The endpoints give one hop zero power and evaluate to 1.
std::vector<PowerSweepPoint> power_sweep(const RadioParams& params, Position pos, int n_points);

}  // namespace fogrelay
