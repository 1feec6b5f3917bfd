#include "fogrelay/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace fogrelay {

void GridSpec::validate() const {
  if (n_power < 2) throw std::invalid_argument("n_power must be >= 2");
  if (n_positions < 4) throw std::invalid_argument("n_positions must be >= 4");
}

std::vector<double> split_grid(int n_power) {
  std::vector<double> rho(n_power);
  const double span = 1.0 - 2.0 * kSplitFloor;
  for (int i = 0; i < n_power; ++i) rho[i] = kSplitFloor + span * i / (n_power - 1);
  return rho;
}

std::vector<Position> semicircle_lattice(double separation_m, int intervals) {
  const double radius = separation_m / 2.0;
  const double pitch = separation_m / intervals;
  // Slack so boundary points are not lost to rounding.
  const double r2 = radius * radius * (1.0 + 1e-12);
  std::vector<Position> points;
  for (int j = 0; j <= intervals / 2; ++j) {
    const double y = j * pitch;
    for (int i = 0; i <= intervals; ++i) {
      const double x = i * pitch;
      const double dx = x - radius;
      if (dx * dx + y * y <= r2) points.push_back({x, y});
    }
  }
  return points;
}

int lattice_intervals(int n_positions) {
  // Counts depend only on the interval count, so probe with a unit diameter.
  int q = 2;
  while (static_cast<int>(semicircle_lattice(1.0, q).size()) < n_positions) ++q;
  return q;
}

GridMinimum brute_force_min(const RadioParams& params, const GridSpec& spec) {
  spec.validate();
  const auto points = semicircle_lattice(params.separation_m, lattice_intervals(spec.n_positions));
  const auto splits = split_grid(spec.n_power);

  GridMinimum best;
  best.p_out = 2.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    RelayState s;
    s.pos = points[i];
    for (double rho : splits) {
      s.p_source_w = rho * params.p_max_w;
      s.p_relay_w = params.p_max_w - s.p_source_w;
      const double p = outage_exact(s, params.separation_m, params).p_out;
      if (p < best.p_out) {
        best.p_out = p;
        best.state = s;
        best.position_index = static_cast<int>(i);
      }
    }
  }
  return best;
}

std::vector<SeparationPoint> min_outage_vs_separation(const RadioParams& params, const GridSpec& spec,
                                                      const std::vector<double>& separations) {
  std::vector<SeparationPoint> out;
  out.reserve(separations.size());
  double last = 0.0;
  for (double L : separations) {
    if (!(L > 0.0) || L < last) throw std::invalid_argument("separations must be positive and ascending");
    last = L;
    RadioParams p = params;
    p.separation_m = L;
    out.push_back({L, brute_force_min(p, spec).p_out});
  }
  return out;
}

std::vector<PowerSweepPoint> power_sweep(const RadioParams& params, Position pos, int n_points) {
  if (n_points < 1) throw std::invalid_argument("power_sweep: n_points must be >= 1");
  std::vector<PowerSweepPoint> out;
  out.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double rho = n_points == 1 ? 0.5 : static_cast<double>(i) / (n_points - 1);
    RelayState s{pos, rho * params.p_max_w, (1.0 - rho) * params.p_max_w};
    out.push_back({rho, s.p_relay_w, outage_exact(s, params.separation_m, params).p_out});
  }
  return out;
}

}  // namespace fogrelay
