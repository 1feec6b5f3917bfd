#include "fogrelay/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fogrelay/errors.hpp"

namespace fogrelay::opt {
namespace {

double checked(const Objective& f, std::span<const double> x) {
  const double v = f(x);
  if (!std::isfinite(v)) throw NumericalError("objective is not finite");
  return v;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace

void SdmConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(step_size > 0.0, "step_size must be > 0");
  require(grad_step > 0.0, "grad_step must be > 0");
  require(tol > 0.0, "tol must be > 0");
  require(grad_tol >= 0.0, "grad_tol must be >= 0");
  require(line_search_max > 0.0, "line_search_max must be > 0");
  require(max_iters >= 1, "max_iters must be >= 1");
  require(mobility_limit_m >= 0.0 && std::isfinite(mobility_limit_m), "mobility_limit_m must be >= 0");
}

Vector numerical_gradient(const Objective& f, std::span<const double> point, double grad_step) {
  Vector probe(point.begin(), point.end());
  Vector grad(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double h = grad_step * std::max(1.0, std::abs(point[i]));
    probe[i] = point[i] + h;
    const double up = checked(f, probe);
    probe[i] = point[i] - h;
    const double down = checked(f, probe);
    probe[i] = point[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

double golden_section_min(const std::function<double(double)>& phi, double lo, double hi,
                          double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = phi(c);
  double fd = phi(d);
  while (b - a > width) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = phi(d);
    }
  }
  // The endpoints are candidates too: the minimizer may sit on the bracket edge.
  const double mid = 0.5 * (a + b);
  double best = mid;
  double fbest = phi(mid);
  for (double cand : {lo, hi}) {
    const double fv = phi(cand);
    if (fv < fbest) {
      best = cand;
      fbest = fv;
    }
  }
  return best;
}

StepResult sdm_step(const Objective& f, std::span<const double> point, const SdmConfig& config) {
  StepResult r;
  r.point.assign(point.begin(), point.end());
  r.direction = numerical_gradient(f, point, config.grad_step);
  for (double& c : r.direction) c = -c;

  if (norm(r.direction) <= config.grad_tol) {
    r.stationary = true;
    r.value = checked(f, point);
    return r;
  }

  Vector trial(point.size());
  auto along = [&](double lambda) -> std::span<const double> {
    for (std::size_t i = 0; i < point.size(); ++i) trial[i] = point[i] + lambda * r.direction[i];
    return trial;
  };

  if (config.line_search == LineSearch::FixedStep) {
    r.step = config.step_size;
  } else {
    r.step = golden_section_min([&](double lambda) { return checked(f, along(lambda)); }, 0.0,
                                config.line_search_max);
  }
  along(r.step);
  r.point = trial;
  r.value = checked(f, r.point);
  return r;
}

Position project_mobility(Position previous, Position proposed, double iota) {
  const double dx = proposed.x_m - previous.x_m;
  const double dy = proposed.y_m - previous.y_m;
  const double d = std::hypot(dx, dy);
  if (d <= iota) return proposed;
  const double s = iota / d;
  return {previous.x_m + s * dx, previous.y_m + s * dy};
}

std::pair<double, double> project_power(double p_source_w, double p_relay_w, double p_max_w) {
  const double floor = kPowerFloorFraction * p_max_w;
  const double ceil = p_max_w - floor;
  if (p_source_w >= floor && p_source_w <= ceil && p_relay_w == p_max_w - p_source_w) {
    return {p_source_w, p_relay_w};
  }
  const double ps = std::clamp(p_source_w, floor, ceil);
  const double pr = std::clamp(p_relay_w, floor, ceil);
  const double scaled = std::clamp(ps * (p_max_w / (ps + pr)), floor, ceil);
  return {scaled, p_max_w - scaled};
}

CriticalPointClass hessian_dtest(const Objective& f, std::array<double, 2> point, double rel_step) {
  const double hx = rel_step * std::max(1.0, std::abs(point[0]));
  const double hy = rel_step * std::max(1.0, std::abs(point[1]));
  auto at = [&](double dx, double dy) {
    const std::array<double, 2> p{point[0] + dx, point[1] + dy};
    return checked(f, p);
  };
  const double f0 = at(0.0, 0.0);

  CriticalPointClass c;
  c.f_xx = (at(hx, 0.0) - 2.0 * f0 + at(-hx, 0.0)) / (hx * hx);
  c.f_yy = (at(0.0, hy) - 2.0 * f0 + at(0.0, -hy)) / (hy * hy);
  c.f_xy = (at(hx, hy) - at(hx, -hy) - at(-hx, hy) + at(-hx, -hy)) / (4.0 * hx * hy);
  c.d_value = c.f_xx * c.f_yy - c.f_xy * c.f_xy;
  if (!std::isfinite(c.d_value)) throw NumericalError("hessian_dtest: non-finite second differences");

  const double scale = std::max(std::abs(c.f_xx * c.f_yy), c.f_xy * c.f_xy);
  if (scale == 0.0 || std::abs(c.d_value) < 1e-8 * scale) {
    c.kind = CriticalPointKind::Inconclusive;
  } else if (c.d_value < 0.0) {
    c.kind = CriticalPointKind::Saddle;
  } else {
    c.kind = c.f_xx > 0.0 ? CriticalPointKind::LocalMin : CriticalPointKind::LocalMax;
  }
  return c;
}

SdmRun run_sdm(const Objective& f, Vector start, const SdmConfig& config, const Projector& projector) {
  config.validate();
  SdmRun run;
  run.solution = std::move(start);
  run.theta = config.max_iters;

  int iter = 0;
  try {
    double previous = checked(f, run.solution);
    run.objective_trace.push_back(previous);
    for (iter = 1; iter <= config.max_iters; ++iter) {
      StepResult step = sdm_step(f, run.solution, config);
      if (step.stationary) {
        run.theta = iter - 1;
        break;
      }
      if (projector) projector(run.solution, step.point);
      const double value = checked(f, step.point);
      run.solution = std::move(step.point);
      run.directions.push_back(std::move(step.direction));
      run.objective_trace.push_back(value);
      if (previous - value < config.tol) {
        run.theta = iter - 1;
        break;
      }
      previous = value;
    }
  } catch (const NumericalError& e) {
    throw NumericalError("run_sdm iteration " + std::to_string(iter) + ": " + e.what());
  }
  return run;
}

}  // namespace fogrelay::opt
