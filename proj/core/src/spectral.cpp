#include "pst/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pst {

namespace {

double frobenius(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

// Cyclic Jacobi on a dense symmetric matrix held in full row-major storage.
// a is destroyed (ends up near-diagonal); v accumulates the rotations so
// that original_a = v * diag(a) * v^T.
void jacobi_sym(int n, std::vector<double>& a, std::vector<double>& v) {
  const std::size_t nn = static_cast<std::size_t>(n);
  v.assign(nn * nn, 0.0);
  for (int i = 0; i < n; ++i) v[i * nn + i] = 1.0;

  const double norm = frobenius(a);
  if (norm == 0.0 || n == 1) return;
  const double stop = 1e-13 * norm;

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * a[p * nn + q] * a[p * nn + q];
    if (std::sqrt(off) <= stop) return;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * nn + q];
        if (apq == 0.0) continue;

        const double theta = (a[q * nn + q] - a[p * nn + p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e12) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a[p * nn + p];
        const double aqq = a[q * nn + q];
        a[p * nn + p] = app - t * apq;
        a[q * nn + q] = aqq + t * apq;
        a[p * nn + q] = 0.0;
        a[q * nn + p] = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * nn + p];
          const double arq = a[r * nn + q];
          a[r * nn + p] = a[p * nn + r] = c * arp - s * arq;
          a[r * nn + q] = a[q * nn + r] = s * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {
          const double vrp = v[r * nn + p];
          const double vrq = v[r * nn + q];
          v[r * nn + p] = c * vrp - s * vrq;
          v[r * nn + q] = s * vrp + c * vrq;
        }
      }
    }
  }
  throw std::runtime_error("jacobi eigensolver failed to converge");
}

// Sorts eigenpairs ascending and fixes the sign of each eigenvector.
SpectralDecomposition assemble(int n, const std::vector<double>& diag_a,
                               const std::vector<double>& v) {
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return diag_a[i * nn + i] < diag_a[j * nn + j];
  });

  SpectralDecomposition d;
  d.n = n;
  d.eigenvalues.resize(n);
  d.vectors.assign(nn * nn, 0.0);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    d.eigenvalues[j] = diag_a[src * nn + src];

    int top = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double m = std::abs(v[i * nn + src]);
      if (m > best) {
        best = m;
        top = i;
      }
    }
    const double sign = v[top * nn + src] < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) d.vectors[i * nn + j] = sign * v[i * nn + src];
  }

  d.simplicity_gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j + 1 < n; ++j)
    d.simplicity_gap =
        std::min(d.simplicity_gap, d.eigenvalues[j + 1] - d.eigenvalues[j]);
  return d;
}

std::vector<double> eigenvalues_of(int n, std::vector<double> m) {
  std::vector<double> v;
  jacobi_sym(n, m, v);
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = m[static_cast<std::size_t>(i) * n + i];
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace

SpectralDecomposition decompose(const Hamiltonian& h, double tol) {
  const int n = h.size();
  const std::size_t nn = static_cast<std::size_t>(n);
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  if (h.mat.size() != nn * nn)
    throw std::invalid_argument("hamiltonian storage has wrong size");
  for (double x : h.mat)
    if (!std::isfinite(x))
      throw std::invalid_argument("hamiltonian has a non-finite entry");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (h.mat[i * nn + j] != h.mat[j * nn + i])
        throw std::invalid_argument("hamiltonian is not symmetric");

  std::vector<double> a = h.mat;
  std::vector<double> v;
  jacobi_sym(n, a, v);
  SpectralDecomposition d = assemble(n, a, v);

  // Residual checks; failing them means the solver lost the matrix, which
  // callers should see as an error rather than as quietly wrong output.
  double recon = 0.0, ortho = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double hij = 0.0, gij = 0.0;
      for (int k = 0; k < n; ++k) {
        hij += d.vec(i, k) * d.eigenvalues[k] * d.vec(j, k);
        gij += d.vec(k, i) * d.vec(k, j);
      }
      recon = std::max(recon, std::abs(hij - h.mat[i * nn + j]));
      ortho = std::max(ortho, std::abs(gij - (i == j ? 1.0 : 0.0)));
    }
  }
  const double scale = std::max(1.0, frobenius(h.mat));
  if (recon > tol * scale || ortho > tol)
    throw std::runtime_error("eigendecomposition residual above tolerance");
  return d;
}

double eigenvalue_derivative(const SpectralDecomposition& d, int i, int v) {
  if (i < 0 || i >= d.n) throw std::out_of_range("eigenvalue index out of range");
  if (v < 0 || v >= d.n) throw std::out_of_range("vertex out of range");
  const double gap_lo =
      i > 0 ? d.eigenvalues[i] - d.eigenvalues[i - 1]
            : std::numeric_limits<double>::infinity();
  const double gap_hi =
      i + 1 < d.n ? d.eigenvalues[i + 1] - d.eigenvalues[i]
                  : std::numeric_limits<double>::infinity();
  if (std::min(gap_lo, gap_hi) <= 1e-8)
    throw std::runtime_error("eigenvalue is not simple");
  const double x = d.vec(v, i);
  return x * x;
}

double char_poly_path(double x, std::span<const double> q) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite sample point");
  for (double e : q)
    if (!std::isfinite(e))
      throw std::invalid_argument("potential has a non-finite entry");

  double pm2 = 0.0;  // p_{-1}
  double pm1 = 1.0;  // p_0
  for (double e : q) {
    const double p = (x - e) * pm1 - pm2;
    pm2 = pm1;
    pm1 = p;
  }
  return pm1;
}

PathHalfSpectra path_half_spectra(std::span<const double> q_full) {
  const int m = static_cast<int>(q_full.size());
  if (m < 1) throw std::invalid_argument("empty path potential");
  for (double e : q_full)
    if (!std::isfinite(e))
      throw std::invalid_argument("potential has a non-finite entry");
  for (int i = 0; i < m / 2; ++i)
    if (std::abs(q_full[i] - q_full[m - 1 - i]) > 1e-12)
      throw std::invalid_argument("potential is not mirror symmetric");

  auto tridiag = [](int size, std::span<const double> diag, double last_coupling) {
    std::vector<double> t(static_cast<std::size_t>(size) * size, 0.0);
    for (int i = 0; i < size; ++i) t[static_cast<std::size_t>(i) * size + i] = diag[i];
    for (int i = 0; i + 1 < size; ++i) {
      const double c = (i + 2 == size) ? last_coupling : 1.0;
      t[static_cast<std::size_t>(i) * size + i + 1] = c;
      t[static_cast<std::size_t>(i + 1) * size + i] = c;
    }
    return t;
  };

  PathHalfSpectra out;
  if (m % 2 == 0) {
    const int half = m / 2;
    auto plus = tridiag(half, q_full.subspan(0, half), 1.0);
    auto minus = plus;
    plus[static_cast<std::size_t>(half - 1) * half + half - 1] += 1.0;
    minus[static_cast<std::size_t>(half - 1) * half + half - 1] -= 1.0;
    out.symmetric_eigenvalues = eigenvalues_of(half, std::move(plus));
    out.antisymmetric_eigenvalues = eigenvalues_of(half, std::move(minus));
  } else {
    const int half = (m - 1) / 2;
    // Symmetric block after the diag(1,..,1,sqrt(2)) similarity that makes
    // it symmetric: plain tridiagonal except the final coupling sqrt(2).
    auto sym = tridiag(half + 1, q_full.subspan(0, half + 1), std::sqrt(2.0));
    out.symmetric_eigenvalues = eigenvalues_of(half + 1, std::move(sym));
    if (half > 0) {
      auto anti = tridiag(half, q_full.subspan(0, half), 1.0);
      out.antisymmetric_eigenvalues = eigenvalues_of(half, std::move(anti));
    }
  }
  return out;
}

}  // namespace pst
