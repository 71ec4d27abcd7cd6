#ifndef SALTPEPPER_MINRES_HPP
#define SALTPEPPER_MINRES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "saltpepper/functional.hpp"

namespace saltpepper {

struct MinresConfig {
  double tol = 1e-8;        ///< relative residual tolerance
  std::size_t max_iter = 0; ///< iteration cap; 0 means 2n
  /// Paper-faithful variant that re-orthogonalizes against every previous
  /// basis vector (O(n k) memory). Default is the three-term Lanczos
  /// recurrence with Givens QR, equivalent in exact arithmetic.
  bool full_orthogonalization = false;

  void validate() const;
};

struct MinresResult {
  std::vector<double> x;
  /// ||b - A x^(i)||_2, entry 0 is the initial residual; nonincreasing.
  std::vector<double> residual_history;
  bool converged = false;
  std::size_t iterations = 0;
};

/// Minimize ||A x - b||_2 over the affine Krylov space x0 + span{r0, A r0, ...}
/// for the symmetric (possibly indefinite) system. Lanczos breakdown means
/// the Krylov space became invariant; the iterate is then exact within it
/// and is returned as converged.
MinresResult minres_solve(const SparseSymSystem& sys, std::span<const double> x0,
                          const MinresConfig& cfg);

/// Convenience overload with x0 = 0.
MinresResult minres_solve(const SparseSymSystem& sys, const MinresConfig& cfg);

}  // namespace saltpepper

#endif
