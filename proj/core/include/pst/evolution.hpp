#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "pst/spectral.hpp"

namespace pst {

struct FidelityRecord {
  double time = 0.0;
  double fidelity = 0.0;
  int source = 0;
  int target = 0;
};

// U(t) = exp(itH) assembled from the eigendecomposition, row-major n x n.
std::vector<std::complex<double>> propagator(const SpectralDecomposition& d,
                                             double t);

// Transfer fidelity |U(t)_{vu}|^2.
double fidelity(const SpectralDecomposition& d, int u, int v, double t);

// Sample count for which the grid spacing on [0, t_max] is at most
// pi / (10 * spectral spread); at least 2.
int default_samples(const SpectralDecomposition& d, double t_max);

// Scans fidelity on a uniform grid over [0, t_max] and refines the best
// grid point by golden-section search down to a time window of 1e-10.
FidelityRecord max_fidelity(const SpectralDecomposition& d, int u, int v,
                            double t_max, int samples);
FidelityRecord max_fidelity(const SpectralDecomposition& d, int u, int v,
                            double t_max);

// Writes the scan grid as CSV rows "t,fidelity", 12 significant digits.
void write_fidelity_trace(std::ostream& os, const SpectralDecomposition& d,
                          int u, int v, double t_max, int samples);

}  // namespace pst
