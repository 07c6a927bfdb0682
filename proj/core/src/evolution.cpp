#include "pst/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "pst/io.hpp"

namespace pst {

namespace {

void check_pair(const SpectralDecomposition& d, int u, int v) {
  if (u < 0 || u >= d.n || v < 0 || v >= d.n)
    throw std::out_of_range("vertex out of range");
}

// One amplitude U(t)_{vu} through the spectral sum.
std::complex<double> amplitude(const SpectralDecomposition& d, int u, int v,
                               double t) {
  std::complex<double> a{0.0, 0.0};
  for (int j = 0; j < d.n; ++j)
    a += std::polar(1.0, t * d.eigenvalues[j]) * d.vec(u, j) * d.vec(v, j);
  return a;
}

// Walks the uniform grid over [0, t_max] calling visit(index, t, fidelity).
// Phases advance by complex rotation instead of per-point trig, resyncing
// against std::polar every so often to stop the drift from accumulating.
template <typename Visit>
void scan_grid(const SpectralDecomposition& d, int u, int v, double t_max,
               int samples, Visit visit) {
  const double dt = t_max / (samples - 1);
  const int resync = 4096;

  std::vector<double> w(d.n);
  std::vector<std::complex<double>> phase(d.n), step(d.n);
  for (int j = 0; j < d.n; ++j) {
    w[j] = d.vec(u, j) * d.vec(v, j);
    step[j] = std::polar(1.0, dt * d.eigenvalues[j]);
  }

  for (int k = 0; k < samples; ++k) {
    const double t = k * dt;
    if (k % resync == 0) {
      for (int j = 0; j < d.n; ++j)
        phase[j] = std::polar(1.0, t * d.eigenvalues[j]);
    }
    std::complex<double> a{0.0, 0.0};
    for (int j = 0; j < d.n; ++j) a += phase[j] * w[j];
    visit(k, t, std::norm(a));
    for (int j = 0; j < d.n; ++j) phase[j] *= step[j];
  }
}

}  // namespace

std::vector<std::complex<double>> propagator(const SpectralDecomposition& d,
                                             double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("non-finite time");
  const int n = d.n;
  std::vector<std::complex<double>> u(static_cast<std::size_t>(n) * n);
  std::vector<std::complex<double>> ph(n);
  for (int j = 0; j < n; ++j) ph[j] = std::polar(1.0, t * d.eigenvalues[j]);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::complex<double> s{0.0, 0.0};
      for (int j = 0; j < n; ++j) s += ph[j] * d.vec(r, j) * d.vec(c, j);
      u[static_cast<std::size_t>(r) * n + c] = s;
    }
  return u;
}

double fidelity(const SpectralDecomposition& d, int u, int v, double t) {
  check_pair(d, u, v);
  if (!std::isfinite(t)) throw std::invalid_argument("non-finite time");
  return std::norm(amplitude(d, u, v, t));
}

int default_samples(const SpectralDecomposition& d, double t_max) {
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  const double spread = d.eigenvalues.empty()
                            ? 0.0
                            : d.eigenvalues.back() - d.eigenvalues.front();
  if (spread <= 0.0) return 2;
  const double pts = std::ceil(t_max * 10.0 * spread / std::numbers::pi) + 1.0;
  return std::max(2, static_cast<int>(pts));
}

FidelityRecord max_fidelity(const SpectralDecomposition& d, int u, int v,
                            double t_max, int samples) {
  check_pair(d, u, v);
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (samples < 2) throw std::invalid_argument("need at least two samples");

  double best_f = -1.0;
  int best_k = 0;
  scan_grid(d, u, v, t_max, samples, [&](int k, double, double f) {
    if (f > best_f) {
      best_f = f;
      best_k = k;
    }
  });

  const double dt = t_max / (samples - 1);
  double best_t = best_k * dt;
  best_f = fidelity(d, u, v, best_t);  // exact value at the grid winner

  // Golden-section refinement inside the bracket around the best grid point.
  double lo = std::max(0.0, best_t - dt);
  double hi = std::min(t_max, best_t + dt);
  const double invphi = 0.6180339887498949;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = fidelity(d, u, v, x1);
  double f2 = fidelity(d, u, v, x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = fidelity(d, u, v, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = fidelity(d, u, v, x1);
    }
    if (f1 > best_f) {
      best_f = f1;
      best_t = x1;
    }
    if (f2 > best_f) {
      best_f = f2;
      best_t = x2;
    }
  }
  return FidelityRecord{best_t, best_f, u, v};
}

FidelityRecord max_fidelity(const SpectralDecomposition& d, int u, int v,
                            double t_max) {
  return max_fidelity(d, u, v, t_max, default_samples(d, t_max));
}

void write_fidelity_trace(std::ostream& os, const SpectralDecomposition& d,
                          int u, int v, double t_max, int samples) {
  check_pair(d, u, v);
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  os << "t,fidelity\n";
  scan_grid(d, u, v, t_max, samples, [&](int, double t, double f) {
    os << format_double(t) << ',' << format_double(f) << '\n';
  });
}

}  // namespace pst
