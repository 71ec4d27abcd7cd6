#ifndef SALTPEPPER_FUNCTIONAL_HPP
#define SALTPEPPER_FUNCTIONAL_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "saltpepper/errors.hpp"
#include "saltpepper/image.hpp"
#include "saltpepper/mask.hpp"

namespace saltpepper {

/// Smoothing parameter of the potential sqrt(alpha + x^2), alpha > 0.
struct PotentialParams {
  double alpha = 1.0;

  void validate() const {
    if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  }
};

/// phi(x) = sqrt(alpha + x^2)
inline double phi(double alpha, double x) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  return std::sqrt(alpha + x * x);
}

/// phi'(x) = x (alpha + x^2)^(-1/2)
inline double phi_d1(double alpha, double x) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  return x / std::sqrt(alpha + x * x);
}

/// phi''(x) = alpha (alpha + x^2)^(-3/2), strictly positive
inline double phi_d2(double alpha, double x) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  const double s = alpha + x * x;
  return alpha / (s * std::sqrt(s));
}

/// Unknowns at the noise candidates plus everything needed to evaluate the
/// regularization functional: the background image supplies the fixed
/// intensity for each clean neighbor, the mask supplies the ordering of the
/// unknown vector. Neighbor structure is precomputed once at construction;
/// all evaluations are O(#neighbor pairs).
class RestorationState {
 public:
  /// `background` must equal the observed image on unflagged pixels;
  /// flagged entries seed u.
  RestorationState(const GrayImage& background, const NoiseMask& mask);

  std::size_t size() const { return u_.size(); }
  std::vector<double>& u() { return u_; }
  const std::vector<double>& u() const { return u_; }

  const NoiseMask& mask() const { return mask_; }
  const GrayImage& background() const { return background_; }

  /// Fixed intensities of the clean 4-neighbors of unknown k.
  std::span<const double> clean_neighbors(std::size_t k) const {
    return {clean_vals_.data() + clean_off_[k], clean_off_[k + 1] - clean_off_[k]};
  }
  /// Ordinals of the flagged 4-neighbors of unknown k.
  std::span<const std::uint32_t> noisy_neighbors(std::size_t k) const {
    return {nbr_ord_.data() + nbr_off_[k], nbr_off_[k + 1] - nbr_off_[k]};
  }

 private:
  GrayImage background_;
  NoiseMask mask_;
  std::vector<double> u_;
  std::vector<double> clean_vals_;
  std::vector<std::size_t> clean_off_;
  std::vector<std::uint32_t> nbr_ord_;
  std::vector<std::size_t> nbr_off_;
};

/// Symmetric sparse system over the candidate ordering: diagonal, strictly
/// upper off-diagonal entries (mirrored implicitly), and right-hand side.
struct SparseSymSystem {
  struct OffDiag {
    std::uint32_t row;
    std::uint32_t col;  // row < col
    double value;
  };

  std::size_t n = 0;
  std::vector<double> diag;
  std::vector<OffDiag> off;
  std::vector<double> rhs;
};

/// y = A v using the diagonal plus mirrored off-diagonal entries.
std::vector<double> matvec(const SparseSymSystem& sys, std::span<const double> v);

/// Functional value: sum over candidates of twice the potential against each
/// clean neighbor plus the potential against each noisy neighbor (so each
/// noisy pair contributes once per endpoint).
double cost(const RestorationState& state, const PotentialParams& params);

/// cost() evaluated at `u_override` instead of the stored unknowns.
double cost_at(const RestorationState& state, const PotentialParams& params,
               std::span<const double> u_override);

/// Hessian quadratic form d^T J d at the current state; positive for any
/// nonzero d whenever some unknown has a neighbor.
double hessian_quadratic_form(const RestorationState& state, const PotentialParams& params,
                              std::span<const double> dir);

/// Gradient: per candidate, 2 phi'(u - x) summed over clean neighbors plus
/// 2 phi'(u - u') over noisy neighbors.
std::vector<double> gradient(const RestorationState& state, const PotentialParams& params);

struct ScalarDerivs {
  double g = 0.0;  ///< first derivative in the k-th coordinate
  double h = 0.0;  ///< second derivative, positive whenever neighbors exist
};

/// First and second derivative of the functional in coordinate k at the
/// current state.
ScalarDerivs scalar_derivs(const RestorationState& state, const PotentialParams& params,
                           std::size_t k);

/// Newton linearization: diag holds the per-coordinate second derivatives,
/// off-diagonals are -2 phi''(u_k - u_l) for adjacent noisy pairs, and the
/// right-hand side is the negated gradient.
SparseSymSystem newton_system(const RestorationState& state, const PotentialParams& params);

}  // namespace saltpepper

#endif
