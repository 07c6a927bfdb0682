#pragma once

#include <span>
#include <vector>

#include "pst/graph.hpp"

namespace pst {

// Eigensystem of a real symmetric Hamiltonian. Eigenvalues ascend and
// eigenvector j is the column vec(., j) of `vectors`. Each eigenvector is
// sign-fixed so its largest-magnitude component is positive (ties break to
// the lowest index); together with the fixed sweep order of the solver this
// makes the decomposition a pure function of the matrix.
struct SpectralDecomposition {
  int n = 0;
  std::vector<double> eigenvalues;
  std::vector<double> vectors;  // row-major n*n, columns are eigenvectors
  double simplicity_gap = 0.0;  // smallest gap between consecutive eigenvalues

  double vec(int i, int j) const {
    return vectors[static_cast<std::size_t>(i) * n + j];
  }
};

// Cyclic Jacobi rotations on the dense matrix, iterated until the
// off-diagonal Frobenius norm falls below 1e-13 * ||H||_F. tol bounds the
// final residuals max|V diag(w) V^T - H| and max|V^T V - I|; exceeding it
// is reported as an error rather than returned silently.
SpectralDecomposition decompose(const Hamiltonian& h, double tol = 1e-10);

// First-order perturbation: d lambda_i / d Q_v = x_i(v)^2. Requires
// eigenvalue i to be simple (gap to its neighbors > 1e-8).
double eigenvalue_derivative(const SpectralDecomposition& d, int i, int v);

// Characteristic polynomial det(xI - H) of the path with potential q,
// evaluated through the three-term recurrence
//   p_k = (x - q_k) p_{k-1} - p_{k-2},   p_0 = 1, p_{-1} = 0.
double char_poly_path(double x, std::span<const double> q);

struct PathHalfSpectra {
  std::vector<double> symmetric_eigenvalues;    // eigenvectors with x(1) = x(n)
  std::vector<double> antisymmetric_eigenvalues;  // x(1) = -x(n)
};

// Spectrum of a path whose potential is mirror symmetric, split by the
// reflection symmetry of the eigenvectors and computed from half-size
// blocks. For even length 2m the blocks are the leading m x m tridiagonal
// with +1 (symmetric) or -1 (antisymmetric) added to the last diagonal
// entry. For odd length 2m+1 the symmetric block is the leading
// (m+1) x (m+1) tridiagonal with the last coupling replaced by sqrt(2),
// and the antisymmetric block is the plain leading m x m tridiagonal.
// Entries that break the mirror symmetry by more than 1e-12 are rejected.
PathHalfSpectra path_half_spectra(std::span<const double> q_full);

}  // namespace pst
