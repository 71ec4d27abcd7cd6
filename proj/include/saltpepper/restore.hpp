#ifndef SALTPEPPER_RESTORE_HPP
#define SALTPEPPER_RESTORE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "saltpepper/functional.hpp"
#include "saltpepper/image.hpp"
#include "saltpepper/mask.hpp"
#include "saltpepper/minres.hpp"

namespace saltpepper {

enum class Method { relax, newton_minres, cg_fr, cg_pr, cg_hs };
enum class CgVariant { FR, PR, HS };
enum class StopReason { tolerance, ite_max, line_search };

Method method_from_string(const std::string& name);
std::string to_string(Method m);
std::string to_string(StopReason r);

/// Per-stage termination: stop once BOTH relative tests hold
/// (||u_k - u_{k-1}|| / ||u_k|| and |F_k - F_{k-1}| / F_k), or the
/// iteration count reaches ite_max.
struct StopCriteria {
  double rel_u_tol = 1e-4;
  double rel_f_tol = 1e-4;
  std::size_t ite_max = 500;

  void validate() const;
};

/// Decreasing smoothing schedule: an explicit head followed by repeated
/// halving of the last value; stages below alpha_min are dropped.
struct ContinuationSchedule {
  std::vector<double> alphas = {160000.0, 5000.0, 1250.0, 312.5, 156.25, 78.125, 39.0625};
  double alpha_min = 1.0;

  void validate() const;
  /// Full stage list: the explicit head plus halvings, all >= alpha_min.
  std::vector<double> expand() const;
};

struct StageReport {
  double alpha = 0.0;
  std::size_t iterations = 0;
  double final_cost = 0.0;
  StopReason stop_reason = StopReason::tolerance;
  double final_rel_du = 0.0;
  double final_rel_df = 0.0;
  std::size_t inner_failures = 0;  ///< MINRES solves that hit their cap
};

struct SolverReport {
  Method method = Method::relax;
  std::vector<StageReport> outer_stages;
  std::size_t total_iterations = 0;
  double elapsed_seconds = 0.0;
  /// ite_max if any stage hit the cap, else line_search if any stage ended
  /// on a failed search, else tolerance.
  StopReason stop_reason = StopReason::tolerance;
  std::vector<double> final_u;
};

/// One Gauss-Seidel pass of scalar Newton updates over the candidates in
/// index order, each against the current (partially updated) state.
/// A step that leaves [min(neighbor targets)-1, max(neighbor targets)+1]
/// is replaced by 10 bisection steps on the coordinate derivative over that
/// bracket. Returns the largest absolute per-pixel change.
double relax_sweep(RestorationState& state, const PotentialParams& params);

/// One full Newton step: assemble the linearized system, solve it with
/// MINRES started from zero, add the correction. Returns the step norm and
/// whether the inner solve converged.
std::pair<double, bool> newton_minres_step(RestorationState& state, const PotentialParams& params,
                                           const MinresConfig& cfg);

/// Nonlinear conjugate gradient (FR/PR/HS) on the functional at fixed
/// alpha, Armijo backtracking line search, restart on negative beta or
/// every n iterations. Runs until StopCriteria is met.
StageReport nonlinear_cg(RestorationState& state, const PotentialParams& params,
                         CgVariant variant, const StopCriteria& stop);

/// Full phase-two restoration: run `method` under the continuation
/// schedule, warm-starting each stage, then write the clamped unknowns back
/// over the flagged pixels only. Unflagged pixels of the result are
/// bit-identical to `observed`. `u0` must agree with `observed` on
/// unflagged pixels (the detector output satisfies this).
std::pair<GrayImage, SolverReport> restore(const GrayImage& observed, const NoiseMask& mask,
                                           const GrayImage& u0, Method method,
                                           const ContinuationSchedule& schedule,
                                           const StopCriteria& stop,
                                           const MinresConfig& minres_cfg = {});

}  // namespace saltpepper

#endif
