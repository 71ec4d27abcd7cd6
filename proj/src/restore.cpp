#include "saltpepper/restore.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "saltpepper/errors.hpp"

namespace saltpepper {

Method method_from_string(const std::string& name) {
  if (name == "relax") return Method::relax;
  if (name == "newton_minres") return Method::newton_minres;
  if (name == "cg_fr") return Method::cg_fr;
  if (name == "cg_pr") return Method::cg_pr;
  if (name == "cg_hs") return Method::cg_hs;
  throw ConfigError("unknown method: " + name);
}

std::string to_string(Method m) {
  switch (m) {
    case Method::relax: return "relax";
    case Method::newton_minres: return "newton_minres";
    case Method::cg_fr: return "cg_fr";
    case Method::cg_pr: return "cg_pr";
    case Method::cg_hs: return "cg_hs";
  }
  return "?";
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::tolerance: return "tolerance";
    case StopReason::ite_max: return "ite_max";
    case StopReason::line_search: return "line_search";
  }
  return "?";
}

void StopCriteria::validate() const {
  if (!(rel_u_tol > 0.0) || !(rel_f_tol > 0.0)) throw ConfigError("stop tolerances must be positive");
  if (ite_max < 1) throw ConfigError("ite_max must be at least 1");
}

void ContinuationSchedule::validate() const {
  if (alphas.empty()) throw ConfigError("schedule must contain at least one alpha");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0)) throw ConfigError("schedule alphas must be positive");
    if (i > 0 && !(alphas[i] < alphas[i - 1]))
      throw ConfigError("schedule alphas must be strictly decreasing");
  }
  if (!(alpha_min > 0.0)) throw ConfigError("alpha_min must be positive");
}

std::vector<double> ContinuationSchedule::expand() const {
  validate();
  std::vector<double> stages;
  for (double a : alphas)
    if (a >= alpha_min) stages.push_back(a);
  if (!stages.empty()) {
    for (double a = stages.back() / 2.0; a >= alpha_min; a /= 2.0) stages.push_back(a);
  }
  return stages;
}

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Coordinate derivative of the functional in unknown k, evaluated at x.
double coord_grad(const RestorationState& state, double alpha, std::size_t k, double x) {
  const auto& u = state.u();
  double g = 0.0;
  for (const double t : state.clean_neighbors(k)) g += 2.0 * phi_d1(alpha, x - t);
  for (const std::uint32_t l : state.noisy_neighbors(k)) g += 2.0 * phi_d1(alpha, x - u[l]);
  return g;
}

struct RelTests {
  double rel_du = 0.0;
  double rel_df = 0.0;
};

RelTests relative_tests(std::span<const double> u_new, std::span<const double> u_prev,
                        double f_new, double f_prev) {
  RelTests t;
  double du2 = 0.0;
  for (std::size_t i = 0; i < u_new.size(); ++i) {
    const double d = u_new[i] - u_prev[i];
    du2 += d * d;
  }
  const double du = std::sqrt(du2);
  const double un = norm2(u_new);
  t.rel_du = un > 0.0 ? du / un : (du == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  const double df = std::abs(f_new - f_prev);
  t.rel_df = f_new != 0.0 ? df / std::abs(f_new)
                          : (df == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  return t;
}

}  // namespace

double relax_sweep(RestorationState& state, const PotentialParams& params) {
  params.validate();
  const double alpha = params.alpha;
  auto& u = state.u();
  double max_update = 0.0;

  for (std::size_t k = 0; k < state.size(); ++k) {
    const auto clean = state.clean_neighbors(k);
    const auto noisy = state.noisy_neighbors(k);
    if (clean.empty() && noisy.empty()) continue;  // isolated pixel, nothing to do

    double g = 0.0, h = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const double uk = u[k];
    for (const double t : clean) {
      g += 2.0 * phi_d1(alpha, uk - t);
      h += 2.0 * phi_d2(alpha, uk - t);
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    for (const std::uint32_t l : noisy) {
      g += 2.0 * phi_d1(alpha, uk - u[l]);
      h += 2.0 * phi_d2(alpha, uk - u[l]);
      lo = std::min(lo, u[l]);
      hi = std::max(hi, u[l]);
    }
    lo -= 1.0;
    hi += 1.0;

    double next = uk - g / h;
    if (!(next >= lo && next <= hi)) {
      // The coordinate derivative is increasing and brackets a sign change
      // over [lo, hi]; ten bisection steps land near its root.
      double a = lo, b = hi;
      for (int step = 0; step < 10; ++step) {
        const double mid = 0.5 * (a + b);
        if (coord_grad(state, alpha, k, mid) > 0.0) b = mid;
        else a = mid;
      }
      next = 0.5 * (a + b);
    }
    max_update = std::max(max_update, std::abs(next - uk));
    u[k] = next;
  }
  return max_update;
}

std::pair<double, bool> newton_minres_step(RestorationState& state, const PotentialParams& params,
                                           const MinresConfig& cfg) {
  const SparseSymSystem sys = newton_system(state, params);
  const MinresResult sol = minres_solve(sys, cfg);
  auto& u = state.u();
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += sol.x[i];
  return {norm2(sol.x), sol.converged};
}

StageReport nonlinear_cg(RestorationState& state, const PotentialParams& params,
                         CgVariant variant, const StopCriteria& stop) {
  params.validate();
  stop.validate();
  constexpr double kArmijoC1 = 1e-4;
  constexpr int kMaxBacktracks = 40;

  StageReport stage;
  stage.alpha = params.alpha;

  auto& u = state.u();
  const std::size_t n = state.size();

  std::vector<double> g = gradient(state, params);
  double f_prev = cost(state, params);
  stage.final_cost = f_prev;
  if (norm2(g) == 0.0) return stage;  // already stationary, zero iterations

  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];

  std::vector<double> u_prev(n), u_trial(n), g_new(n);
  int consecutive_failures = 0;

  for (std::size_t k = 1; k <= stop.ite_max; ++k) {
    u_prev = u;

    double gtd = dot(g, d);
    if (gtd >= 0.0) {  // stale direction, fall back to steepest descent
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      gtd = -dot(g, g);
    }

    // Initial trial step from the local quadratic model, then halve.
    const double curv = hessian_quadratic_form(state, params, d);
    double t = curv > 0.0 ? -gtd / curv : 1.0;
    if (!(t > 0.0) || !std::isfinite(t)) t = 1.0;

    bool accepted = false;
    double f_new = f_prev;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (std::size_t i = 0; i < n; ++i) u_trial[i] = u[i] + t * d[i];
      const double f_t = cost_at(state, params, u_trial);
      if (f_t <= f_prev + kArmijoC1 * t * gtd) {
        accepted = true;
        f_new = f_t;
        break;
      }
      t *= 0.5;
    }

    if (accepted) {
      consecutive_failures = 0;
      u.swap(u_trial);
      g_new = gradient(state, params);

      double beta = 0.0;
      const double g_dot_g = dot(g, g);
      switch (variant) {
        case CgVariant::FR:
          beta = dot(g_new, g_new) / g_dot_g;
          break;
        case CgVariant::PR: {
          double num = 0.0;
          for (std::size_t i = 0; i < n; ++i) num += g_new[i] * (g_new[i] - g[i]);
          beta = num / g_dot_g;
          break;
        }
        case CgVariant::HS: {
          double num = 0.0, den = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            const double y = g_new[i] - g[i];
            num += g_new[i] * y;
            den += d[i] * y;
          }
          beta = den != 0.0 ? num / den : 0.0;
          break;
        }
      }
      if (beta < 0.0 || k % std::max<std::size_t>(n, 1) == 0) beta = 0.0;

      for (std::size_t i = 0; i < n; ++i) d[i] = -g_new[i] + beta * d[i];
      g.swap(g_new);
    } else {
      ++consecutive_failures;
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];  // retry from steepest descent
    }

    stage.iterations = k;
    const RelTests t2 = relative_tests(u, u_prev, f_new, f_prev);
    stage.final_rel_du = t2.rel_du;
    stage.final_rel_df = t2.rel_df;
    stage.final_cost = f_new;
    f_prev = f_new;

    if (consecutive_failures >= 2) {
      stage.stop_reason = StopReason::line_search;
      return stage;
    }
    if (t2.rel_du <= stop.rel_u_tol && t2.rel_df <= stop.rel_f_tol) {
      stage.stop_reason = StopReason::tolerance;
      return stage;
    }
  }
  stage.stop_reason = StopReason::ite_max;
  return stage;
}

namespace {

StageReport run_stage(RestorationState& state, const PotentialParams& params, Method method,
                      const StopCriteria& stop, const MinresConfig& minres_cfg) {
  switch (method) {
    case Method::cg_fr: return nonlinear_cg(state, params, CgVariant::FR, stop);
    case Method::cg_pr: return nonlinear_cg(state, params, CgVariant::PR, stop);
    case Method::cg_hs: return nonlinear_cg(state, params, CgVariant::HS, stop);
    default: break;
  }

  StageReport stage;
  stage.alpha = params.alpha;
  auto& u = state.u();
  std::vector<double> u_prev(u.size());
  double f_prev = cost(state, params);
  stage.final_cost = f_prev;

  for (std::size_t k = 1; k <= stop.ite_max; ++k) {
    u_prev = u;
    if (method == Method::relax) {
      relax_sweep(state, params);
    } else {
      const auto [step_norm, ok] = newton_minres_step(state, params, minres_cfg);
      (void)step_norm;
      if (!ok) ++stage.inner_failures;
    }
    const double f_new = cost(state, params);
    const RelTests t = relative_tests(u, u_prev, f_new, f_prev);
    stage.iterations = k;
    stage.final_rel_du = t.rel_du;
    stage.final_rel_df = t.rel_df;
    stage.final_cost = f_new;
    f_prev = f_new;
    if (t.rel_du <= stop.rel_u_tol && t.rel_df <= stop.rel_f_tol) {
      stage.stop_reason = StopReason::tolerance;
      return stage;
    }
  }
  stage.stop_reason = StopReason::ite_max;
  return stage;
}

}  // namespace

std::pair<GrayImage, SolverReport> restore(const GrayImage& observed, const NoiseMask& mask,
                                           const GrayImage& u0, Method method,
                                           const ContinuationSchedule& schedule,
                                           const StopCriteria& stop,
                                           const MinresConfig& minres_cfg) {
  stop.validate();
  minres_cfg.validate();
  if (observed.width() != mask.width() || observed.height() != mask.height())
    throw ConfigError("observed image and mask dimensions differ");
  const std::vector<double> stages = schedule.expand();

  SolverReport report;
  report.method = method;
  if (mask.count() == 0) return {observed, report};

  RestorationState state(u0, mask);

  const auto t0 = std::chrono::steady_clock::now();
  for (const double alpha : stages) {
    const StageReport stage = run_stage(state, PotentialParams{alpha}, method, stop, minres_cfg);
    report.total_iterations += stage.iterations;
    report.outer_stages.push_back(stage);
  }
  const auto t1 = std::chrono::steady_clock::now();
  report.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();

  report.stop_reason = StopReason::tolerance;
  for (const auto& s : report.outer_stages) {
    if (s.stop_reason == StopReason::ite_max) {
      report.stop_reason = StopReason::ite_max;
      break;
    }
    if (s.stop_reason == StopReason::line_search) report.stop_reason = StopReason::line_search;
  }
  report.final_u = state.u();

  GrayImage restored = observed;
  for (std::size_t k = 0; k < mask.count(); ++k)
    restored.at(mask.index()[k]) = std::clamp(state.u()[k], 0.0, 255.0);
  return {std::move(restored), std::move(report)};
}

}  // namespace saltpepper
