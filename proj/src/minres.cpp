#include "saltpepper/minres.hpp"

#include <algorithm>
#include <cmath>

#include "saltpepper/errors.hpp"

namespace saltpepper {

void MinresConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("minres tol must be positive");
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

std::vector<double> initial_residual(const SparseSymSystem& sys, std::span<const double> x0) {
  std::vector<double> r(sys.rhs.begin(), sys.rhs.end());
  const std::vector<double> ax = matvec(sys, x0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= ax[i];
  return r;
}

// Classical MINRES: three-term Lanczos recurrence, QR of the tridiagonal
// matrix by Givens rotations, solution built from a three-vector direction
// recurrence. The rotated right-hand side tracks the residual norm, so no
// explicit residual vector is kept.
MinresResult minres_lanczos(const SparseSymSystem& sys, std::span<const double> x0,
                            const MinresConfig& cfg) {
  const std::size_t n = sys.n;
  const std::size_t max_iter = cfg.max_iter ? cfg.max_iter : 2 * n;

  MinresResult res;
  res.x.assign(x0.begin(), x0.end());

  std::vector<double> r = initial_residual(sys, res.x);
  const double beta1 = norm2(r);
  res.residual_history.push_back(beta1);

  double denom = norm2(sys.rhs);
  if (denom == 0.0) denom = beta1;
  if (beta1 == 0.0 || beta1 <= cfg.tol * denom) {
    res.converged = true;
    return res;
  }

  std::vector<double> v_prev(n, 0.0);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = r[i] / beta1;

  std::vector<double> d_old2(n, 0.0), d_old1(n, 0.0), d(n);

  double beta = beta1;     // subdiagonal entering this step
  double phi_bar = beta1;  // residual norm of the current iterate
  double c_prev2 = 1.0, s_prev2 = 0.0;
  double c_prev1 = 1.0, s_prev1 = 0.0;

  for (std::size_t k = 1; k <= max_iter; ++k) {
    std::vector<double> w = matvec(sys, v);
    const double alpha = dot(w, v);
    for (std::size_t i = 0; i < n; ++i) w[i] -= alpha * v[i] + beta * v_prev[i];
    const double beta_next = norm2(w);

    // Rotate the new tridiagonal column (.., beta, alpha, beta_next) through
    // the two previous Givens rotations, then zero beta_next with a new one.
    const double eps_k = s_prev2 * beta;
    const double mid = c_prev2 * beta;
    const double delta_k = c_prev1 * mid + s_prev1 * alpha;
    const double gamma_bar = -s_prev1 * mid + c_prev1 * alpha;

    const double gamma = std::hypot(gamma_bar, beta_next);
    double c_k, s_k;
    if (gamma > 0.0) {
      c_k = gamma_bar / gamma;
      s_k = beta_next / gamma;
      const double phi = c_k * phi_bar;
      phi_bar = -s_k * phi_bar;
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = (v[i] - delta_k * d_old1[i] - eps_k * d_old2[i]) / gamma;
        res.x[i] += phi * d[i];
      }
    } else {
      // Singular block: the least-squares solution leaves this coordinate
      // at zero, the iterate and residual stay put.
      c_k = 1.0;
      s_k = 0.0;
      std::fill(d.begin(), d.end(), 0.0);
    }

    res.iterations = k;
    res.residual_history.push_back(std::abs(phi_bar));

    if (std::abs(phi_bar) <= cfg.tol * denom) {
      res.converged = true;
      return res;
    }
    if (beta_next == 0.0) {
      // Lanczos breakdown: the Krylov space is invariant, the iterate is
      // exact within it.
      res.converged = true;
      return res;
    }

    std::swap(d_old2, d_old1);
    std::swap(d_old1, d);
    std::swap(v_prev, v);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / beta_next;
    beta = beta_next;
    c_prev2 = c_prev1;
    s_prev2 = s_prev1;
    c_prev1 = c_k;
    s_prev1 = s_k;
  }
  return res;
}

// Variant that keeps every basis vector and orthogonalizes each new Krylov
// vector against all of them, mirroring the textbook Arnoldi loop. Used for
// fidelity checks against the Lanczos recurrence; O(n k) memory.
MinresResult minres_full_ortho(const SparseSymSystem& sys, std::span<const double> x0,
                               const MinresConfig& cfg) {
  const std::size_t n = sys.n;
  const std::size_t max_iter = cfg.max_iter ? cfg.max_iter : 2 * n;

  MinresResult res;
  res.x.assign(x0.begin(), x0.end());

  std::vector<double> r = initial_residual(sys, res.x);
  const double beta1 = norm2(r);
  res.residual_history.push_back(beta1);

  double denom = norm2(sys.rhs);
  if (denom == 0.0) denom = beta1;
  if (beta1 == 0.0 || beta1 <= cfg.tol * denom) {
    res.converged = true;
    return res;
  }

  std::vector<std::vector<double>> q;
  q.emplace_back(n);
  for (std::size_t i = 0; i < n; ++i) q[0][i] = r[i] / beta1;

  // Rotated upper-triangular columns and right-hand side of the small
  // least-squares problem min || beta1 e1 - H y ||.
  std::vector<std::vector<double>> r_cols;
  std::vector<double> cs, sn;
  std::vector<double> g{beta1};

  std::size_t m = 0;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    std::vector<double> v = matvec(sys, q[k - 1]);
    std::vector<double> h(k + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      h[i] = dot(v, q[i]);
      for (std::size_t j = 0; j < n; ++j) v[j] -= h[i] * q[i][j];
    }
    const double h_sub = norm2(v);
    h[k] = h_sub;

    for (std::size_t i = 0; i + 1 < k; ++i) {
      const double t = cs[i] * h[i] + sn[i] * h[i + 1];
      h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
      h[i] = t;
    }
    double gamma = std::hypot(h[k - 1], h[k]);
    if (gamma == 0.0) gamma = 1.0;
    cs.push_back(h[k - 1] / gamma);
    sn.push_back(h[k] / gamma);
    h[k - 1] = gamma;

    g.push_back(-sn.back() * g.back());
    g[k - 1] = cs.back() * g[k - 1];

    r_cols.emplace_back(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(k));
    m = k;
    res.iterations = k;
    res.residual_history.push_back(std::abs(g[k]));

    if (std::abs(g[k]) <= cfg.tol * denom || h_sub == 0.0) {
      res.converged = true;
      break;
    }
    q.emplace_back(n);
    for (std::size_t j = 0; j < n; ++j) q[k][j] = v[j] / h_sub;
  }

  std::vector<double> y(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    double s = g[i];
    for (std::size_t j = i + 1; j < m; ++j) s -= r_cols[j][i] * y[j];
    y[i] = r_cols[i][i] != 0.0 ? s / r_cols[i][i] : 0.0;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) res.x[j] += y[i] * q[i][j];
  return res;
}

}  // namespace

MinresResult minres_solve(const SparseSymSystem& sys, std::span<const double> x0,
                          const MinresConfig& cfg) {
  cfg.validate();
  if (sys.n == 0) {
    MinresResult res;
    res.converged = true;
    return res;
  }
  std::vector<double> start(x0.begin(), x0.end());
  if (start.empty()) start.assign(sys.n, 0.0);
  if (start.size() != sys.n) throw ConfigError("minres: x0 dimension mismatch");
  return cfg.full_orthogonalization ? minres_full_ortho(sys, start, cfg)
                                    : minres_lanczos(sys, start, cfg);
}

MinresResult minres_solve(const SparseSymSystem& sys, const MinresConfig& cfg) {
  return minres_solve(sys, {}, cfg);
}

}  // namespace saltpepper
