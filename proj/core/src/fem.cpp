#include "heatcp/fem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "heatcp/errors.hpp"
#include "heatcp/rng.hpp"

namespace heatcp {

namespace {

struct Tridiag {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
};

// Number of eigenvalues of (K, M) strictly below mu, via the inertia of
// K - mu M (LDL^T sign count with tiny-pivot regularization).
int sturm_count(const Tridiag& K, const Tridiag& M, double mu) {
  const std::size_t n = K.diag.size();
  int count = 0;
  double d_prev = 1.0;
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = K.diag[i] - mu * M.diag[i];
    if (i == 0) {
      d = a;
    } else {
      const double o = K.off[i - 1] - mu * M.off[i - 1];
      d = a - o * o / d_prev;
    }
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
    d_prev = d;
  }
  return count;
}

// Solves (K - mu M) x = b with partial pivoting (dgtsv-style).
void solve_shifted(const Tridiag& K, const Tridiag& M, double mu,
                   std::vector<double>& x, std::vector<double> b) {
  const std::size_t n = K.diag.size();
  std::vector<double> dl(n, 0.0), d(n, 0.0), du(n, 0.0), du2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = K.diag[i] - mu * M.diag[i];
    if (i + 1 < n) {
      const double o = K.off[i] - mu * M.off[i];
      du[i] = o;
      dl[i + 1] = o;
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i + 1])) {
      if (d[i] == 0.0) d[i] = 1e-300;
      const double m = dl[i + 1] / d[i];
      d[i + 1] -= m * du[i];
      b[i + 1] -= m * b[i];
    } else {
      // interchange rows i and i+1
      const double m = d[i] / dl[i + 1];
      d[i] = dl[i + 1];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - m * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -m * du2[i];
      }
      du[i] = tmp;
      const double tb = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tb - m * b[i + 1];
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
  x.assign(n, 0.0);
  x[n - 1] = b[n - 1] / d[n - 1];
  if (n >= 2) {
    x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  }
  for (std::size_t ii = n; ii >= 3; --ii) {
    const std::size_t i = ii - 3;
    x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
  }
}

}  // namespace

FemDecomposition fem_oracle(const DiffusivityProfile& profile, int cells,
                            int mode_count, bool with_vectors) {
  if (mode_count < 1) {
    throw std::invalid_argument("fem_oracle: mode_count < 1");
  }
  if (cells < 10 * mode_count) {
    throw SingularMatrix("fem_oracle: cells=" + std::to_string(cells) +
                         " too small for " + std::to_string(mode_count) +
                         " modes (need >= 10x)");
  }

  // Grid with a node at tau: uniform pieces left and right of the jump.
  const double tau = profile.tau();
  int n_left = static_cast<int>(std::lround(tau * cells));
  n_left = std::clamp(n_left, 1, cells - 1);
  std::vector<double> nodes(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i <= n_left; ++i) {
    nodes[i] = tau * i / n_left;
  }
  for (int i = n_left + 1; i <= cells; ++i) {
    nodes[i] = tau + (1.0 - tau) * (i - n_left) / (cells - n_left);
  }

  const std::size_t dof = static_cast<std::size_t>(cells) - 1;
  Tridiag K{std::vector<double>(dof, 0.0), std::vector<double>(dof - 1, 0.0)};
  Tridiag M{std::vector<double>(dof, 0.0), std::vector<double>(dof - 1, 0.0)};
  for (int c = 0; c < cells; ++c) {
    const double h = nodes[c + 1] - nodes[c];
    if (!(h > 0.0)) throw SingularMatrix("fem_oracle: empty cell");
    const double th = profile.value(0.5 * (nodes[c] + nodes[c + 1]));
    const double ks = th / h;
    // local element matrices scattered over interior dofs c-1, c
    if (c >= 1) {
      K.diag[c - 1] += ks;
      M.diag[c - 1] += h / 3.0;
    }
    if (c <= cells - 2) {
      K.diag[c] += ks;
      M.diag[c] += h / 3.0;
    }
    if (c >= 1 && c <= cells - 2) {
      K.off[c - 1] -= ks;
      M.off[c - 1] += h / 6.0;
    }
  }

  // Bisection per mode inside the operator-comparison bracket.
  constexpr double kPi = std::numbers::pi;
  std::vector<double> eigenvalues(mode_count);
  for (int k = 1; k <= mode_count; ++k) {
    double lo = 0.0;
    double hi = 1.05 * profile.theta_hi() * kPi * kPi * k * k;
    while (sturm_count(K, M, hi) < k) hi *= 1.5;
    for (int iter = 0; iter < 80 && (hi - lo) > 1e-12 * hi; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(K, M, mid) >= k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    eigenvalues[k - 1] = 0.5 * (lo + hi);
  }

  std::vector<std::vector<double>> vectors;
  if (with_vectors) {
    vectors.resize(mode_count);
    for (int k = 1; k <= mode_count; ++k) {
      // Inverse iteration with a slightly detuned shift.
      const double shift = eigenvalues[k - 1] * (1.0 - 1e-9) - 1e-12;
      std::vector<double> v(dof), b(dof);
      for (std::size_t i = 0; i < dof; ++i) {
        b[i] = uniform_from_bits(splitmix64(0xFE1Du + 977u * i + k)) - 0.5;
      }
      for (int it = 0; it < 3; ++it) {
        solve_shifted(K, M, shift, v, b);
        double nrm = 0.0;
        for (double t : v) nrm += t * t;
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < dof; ++i) b[i] = v[i] / nrm;
      }
      v = b;
      // Mass normalization v^T M v = 1 and sign e'(0) > 0.
      double q = 0.0;
      for (std::size_t i = 0; i < dof; ++i) {
        q += M.diag[i] * v[i] * v[i];
        if (i + 1 < dof) q += 2.0 * M.off[i] * v[i] * v[i + 1];
      }
      const double scale = (v[0] >= 0.0 ? 1.0 : -1.0) / std::sqrt(q);
      for (double& t : v) t *= scale;
      vectors[k - 1] = std::move(v);
    }
  }

  return FemDecomposition(profile, std::move(nodes), std::move(eigenvalues),
                          std::move(vectors));
}

double FemDecomposition::eigenvalue(int k) const {
  if (k < 1 || k > mode_count()) {
    throw IndexOutOfRange("fem eigenvalue index " + std::to_string(k));
  }
  return eigenvalues_[static_cast<std::size_t>(k - 1)];
}

double FemDecomposition::evaluate(int k, double x) const {
  if (k < 1 || k > static_cast<int>(vectors_.size())) {
    throw IndexOutOfRange("fem eigenvector index " + std::to_string(k));
  }
  if (x <= nodes_.front() || x >= nodes_.back()) return 0.0;
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const std::size_t cell = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  const double x0 = nodes_[cell];
  const double x1 = nodes_[cell + 1];
  const double w = (x - x0) / (x1 - x0);
  const auto& v = vectors_[static_cast<std::size_t>(k - 1)];
  // interior dof j sits at node j+1
  const double left = (cell == 0) ? 0.0 : v[cell - 1];
  const double right = (cell + 1 == nodes_.size() - 1) ? 0.0 : v[cell];
  return left * (1.0 - w) + right * w;
}

}  // namespace heatcp
