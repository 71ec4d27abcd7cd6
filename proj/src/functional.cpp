#include "saltpepper/functional.hpp"

namespace saltpepper {

RestorationState::RestorationState(const GrayImage& background, const NoiseMask& mask)
    : background_(background), mask_(mask) {
  if (background.width() != mask.width() || background.height() != mask.height())
    throw ConfigError("background and mask dimensions differ");

  const std::size_t n = mask.count();
  u_.resize(n);
  clean_off_.assign(n + 1, 0);
  nbr_off_.assign(n + 1, 0);

  for (std::size_t k = 0; k < n; ++k) {
    const PixelCoord at = mask.index()[k];
    u_[k] = background.at(at);
    for (const PixelCoord nb : neighborhood(at, background.height(), background.width())) {
      if (mask.flagged(nb)) ++nbr_off_[k + 1];
      else ++clean_off_[k + 1];
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    clean_off_[k + 1] += clean_off_[k];
    nbr_off_[k + 1] += nbr_off_[k];
  }
  clean_vals_.resize(clean_off_[n]);
  nbr_ord_.resize(nbr_off_[n]);

  std::size_t ci = 0, ni = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const PixelCoord at = mask.index()[k];
    for (const PixelCoord nb : neighborhood(at, background.height(), background.width())) {
      if (auto ord = mask.index_of(nb)) nbr_ord_[ni++] = static_cast<std::uint32_t>(*ord);
      else clean_vals_[ci++] = background.at(nb);
    }
  }
}

std::vector<double> matvec(const SparseSymSystem& sys, std::span<const double> v) {
  if (v.size() != sys.n) throw ConfigError("matvec: dimension mismatch");
  std::vector<double> y(sys.n);
  for (std::size_t i = 0; i < sys.n; ++i) y[i] = sys.diag[i] * v[i];
  for (const auto& e : sys.off) {
    y[e.row] += e.value * v[e.col];
    y[e.col] += e.value * v[e.row];
  }
  return y;
}

double cost_at(const RestorationState& state, const PotentialParams& params,
               std::span<const double> u_override) {
  params.validate();
  if (u_override.size() != state.size()) throw ConfigError("cost_at: dimension mismatch");
  const double alpha = params.alpha;
  const auto u = u_override;
  double total = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const double uk = u[k];
    for (const double x : state.clean_neighbors(k)) total += 2.0 * phi(alpha, uk - x);
    for (const std::uint32_t l : state.noisy_neighbors(k)) total += phi(alpha, uk - u[l]);
  }
  return total;
}

double cost(const RestorationState& state, const PotentialParams& params) {
  return cost_at(state, params, state.u());
}

double hessian_quadratic_form(const RestorationState& state, const PotentialParams& params,
                              std::span<const double> dir) {
  params.validate();
  if (dir.size() != state.size()) throw ConfigError("hessian_quadratic_form: dimension mismatch");
  const double alpha = params.alpha;
  const auto& u = state.u();
  double total = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const double uk = u[k];
    const double dk = dir[k];
    for (const double x : state.clean_neighbors(k)) total += 2.0 * phi_d2(alpha, uk - x) * dk * dk;
    for (const std::uint32_t l : state.noisy_neighbors(k)) {
      if (l > k) {  // each pair once
        const double dd = dk - dir[l];
        total += 2.0 * phi_d2(alpha, uk - u[l]) * dd * dd;
      }
    }
  }
  return total;
}

std::vector<double> gradient(const RestorationState& state, const PotentialParams& params) {
  params.validate();
  const double alpha = params.alpha;
  const auto& u = state.u();
  std::vector<double> g(state.size());
  for (std::size_t k = 0; k < state.size(); ++k) {
    const double uk = u[k];
    double gk = 0.0;
    for (const double x : state.clean_neighbors(k)) gk += 2.0 * phi_d1(alpha, uk - x);
    for (const std::uint32_t l : state.noisy_neighbors(k)) gk += 2.0 * phi_d1(alpha, uk - u[l]);
    g[k] = gk;
  }
  return g;
}

ScalarDerivs scalar_derivs(const RestorationState& state, const PotentialParams& params,
                           std::size_t k) {
  params.validate();
  const double alpha = params.alpha;
  const auto& u = state.u();
  const double uk = u[k];
  ScalarDerivs d;
  for (const double x : state.clean_neighbors(k)) {
    d.g += 2.0 * phi_d1(alpha, uk - x);
    d.h += 2.0 * phi_d2(alpha, uk - x);
  }
  for (const std::uint32_t l : state.noisy_neighbors(k)) {
    d.g += 2.0 * phi_d1(alpha, uk - u[l]);
    d.h += 2.0 * phi_d2(alpha, uk - u[l]);
  }
  return d;
}

SparseSymSystem newton_system(const RestorationState& state, const PotentialParams& params) {
  params.validate();
  const double alpha = params.alpha;
  const auto& u = state.u();
  SparseSymSystem sys;
  sys.n = state.size();
  sys.diag.assign(sys.n, 0.0);
  sys.rhs.assign(sys.n, 0.0);

  for (std::size_t k = 0; k < sys.n; ++k) {
    const double uk = u[k];
    double gk = 0.0, hk = 0.0;
    for (const double x : state.clean_neighbors(k)) {
      gk += 2.0 * phi_d1(alpha, uk - x);
      hk += 2.0 * phi_d2(alpha, uk - x);
    }
    for (const std::uint32_t l : state.noisy_neighbors(k)) {
      gk += 2.0 * phi_d1(alpha, uk - u[l]);
      hk += 2.0 * phi_d2(alpha, uk - u[l]);
      if (l > k)  // store each pair once, upper triangle
        sys.off.push_back({static_cast<std::uint32_t>(k), l, -2.0 * phi_d2(alpha, uk - u[l])});
    }
    sys.diag[k] = hk;
    sys.rhs[k] = -gk;
  }
  return sys;
}

}  // namespace saltpepper
