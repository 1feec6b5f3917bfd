#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fogrelay/core_model.hpp"

namespace fogrelay::opt {

using Vector = std::vector<double>;
using Objective = std::function<double(std::span<const double>)>;
// Maps a proposed iterate back onto the feasible set, given the previous one.
using Projector = std::function<void(std::span<const double> previous, std::span<double> proposed)>;

enum class LineSearch { FixedStep, ExactLineSearch };

struct SdmConfig {
  double step_size = 1e-3;         // lambda for FixedStep
  double grad_step = 1e-6;         // relative finite-difference half-width
  double tol = 1e-9;               // converged once the per-iteration decrease drops below this
  double grad_tol = 1e-12;         // gradient-norm stop
  double line_search_max = 1.0;    // upper end of the golden-section bracket
  int max_iters = 1500;            // K time slots
  double mobility_limit_m = 0.01;  // iota, per slot
  LineSearch line_search = LineSearch::FixedStep;

  // Throws std::invalid_argument. mobility_limit_m may be 0 (a static relay).
  void validate() const;

  bool operator==(const SdmConfig&) const = default;
};

// Central differences with h_i = grad_step * max(1, |x_i|).
// Throws NumericalError if the objective is not finite at a probe point.
Vector numerical_gradient(const Objective& f, std::span<const double> point, double grad_step);

struct StepResult {
  Vector point;
  double value = 0.0;
  Vector direction;       // h = -grad f at the input point
  double step = 0.0;      // lambda actually taken
  bool stationary = false;  // gradient norm at or below grad_tol; point unchanged
};

// One steepest-descent iteration: point + lambda * h with h = -grad f.
StepResult sdm_step(const Objective& f, std::span<const double> point, const SdmConfig& config);

// Golden-section minimization of phi on [lo, hi] down to the given bracket width.
double golden_section_min(const std::function<double(double)>& phi, double lo, double hi,
                          double width = 1e-10);

Position project_mobility(Position previous, Position proposed, double iota);

// Relative floor kept on each hop's share of the budget.
inline constexpr double kPowerFloorFraction = 1e-6;

// Clamp both powers into [floor, p_max - floor] and rescale so they sum to p_max.
std::pair<double, double> project_power(double p_source_w, double p_relay_w, double p_max_w);

enum class CriticalPointKind { LocalMin, LocalMax, Saddle, Inconclusive };

struct CriticalPointClass {
  CriticalPointKind kind = CriticalPointKind::Inconclusive;
  double d_value = 0.0;  // f_xx f_yy - f_xy^2
  double f_xx = 0.0;
  double f_yy = 0.0;
  double f_xy = 0.0;
};

// Second-derivative test from central second differences with step
// rel_step * max(1, |x_i|). |D| below 1e-8 * max(|f_xx f_yy|, f_xy^2) is
// reported as Inconclusive.
CriticalPointClass hessian_dtest(const Objective& f, std::array<double, 2> point,
                                 double rel_step = 1e-3);

struct SdmRun {
  Vector solution;
  std::vector<double> objective_trace;  // f at the start, then after each iteration
  std::vector<Vector> directions;       // search direction of each iteration
  int theta = 0;                        // iterations that improved by at least tol
};

// Repeats sdm_step followed by the projector. Stops when the gradient
// vanishes (theta = iterations done), when an iteration improves by less
// than tol (theta = iterations before it), or after max_iters.
SdmRun run_sdm(const Objective& f, Vector start, const SdmConfig& config,
               const Projector& projector = {});

}  // namespace fogrelay::opt
