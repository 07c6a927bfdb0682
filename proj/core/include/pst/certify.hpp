#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pst/evolution.hpp"

namespace pst {

struct Fraction {
  long long num = 0;
  long long den = 1;  // positive, fraction in lowest terms
};

// Walks the continued-fraction convergents of x and returns the first one
// with |x - num/den| <= tol among those with den <= max_den; none when no
// convergent under the cap fits.
std::optional<Fraction> rational_reconstruct(double x, long long max_den,
                                             double tol);

enum class RefusalReason {
  none,
  symmetry_failure,
  irrational_ratio,
  parity_failure,
  degenerate_ambiguity,
};
std::string to_string(RefusalReason r);

enum class ParityClass { odd_odd, odd_even, even_odd, even_even };

struct RatioEntry {
  double value = 0.0;     // (lambda_i - lambda_min) / base_gap
  long long num = 0;      // best convergent found, reduced, den > 0
  long long den = 1;
  double residual = 0.0;  // |value - num/den|; > tol marks a failed entry
  ParityClass parity = ParityClass::even_odd;  // parities of (num, den)
};

struct RatioReport {
  double base_gap = 0.0;
  std::vector<RatioEntry> ratios;
};

// Outcome of sorting the spectrum into eigenvector symmetry classes with
// respect to the pair (u, v). Eigenvalues closer than 1e-8 are treated as
// one cluster and classified through the spectral projections E_C 1_u and
// E_C 1_v; clusters supported at neither vertex are ignored. `plus` holds
// the cluster representatives acting with the same sign at u and v,
// `minus` those acting with opposite signs.
struct SpectralClasses {
  bool ok = false;
  RefusalReason reason = RefusalReason::none;
  std::vector<double> plus;
  std::vector<double> minus;
};

SpectralClasses cospectral_classify(const SpectralDecomposition& d, int u,
                                    int v, double tol);

struct PSTCertificate {
  bool certified = false;
  RefusalReason refusal_reason = RefusalReason::none;
  double transfer_time = 0.0;  // NaN when refused
  std::vector<double> plus;
  std::vector<double> minus;
  RatioReport ratio_report;
};

// Decides perfect state transfer u -> v for the decomposed Hamiltonian:
// classifies the spectrum, reconstructs the supported eigenvalue ratios as
// fractions with a common denominator <= max_den, checks the parity split
// of the scaled integers (plus class one parity, minus class the other),
// and searches the minimal time T = pi * m / base_gap realizing the phase
// alignment. A certificate is only issued when the dynamics confirm it:
// fidelity(u, v, T) >= 1 - 1e-8. When the dynamic check refutes the
// reconstructed model the refusal is reported as irrational_ratio with the
// ratio diagnostics attached.
PSTCertificate certify(const SpectralDecomposition& d, int u, int v,
                       long long max_den = 1000000, double tol = 1e-9);

}  // namespace pst
