#include "pst/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace pst {

namespace {

constexpr double kClusterGap = 1e-8;       // eigenvalues closer than this merge
constexpr double kDynamicCheck = 1e-8;     // certified needs fidelity >= 1 - this

struct Convergent {
  bool ok = false;      // met the tolerance under the cap
  long long num = 0;    // best (last) convergent walked, reduced
  long long den = 1;
  double residual = std::numeric_limits<double>::infinity();
};

// Continued-fraction walk. Convergent residuals decrease monotonically, so
// the first one inside tol is also the smallest-denominator fit, and when
// none fits the last one under the cap is the best diagnostic.
Convergent cf_walk(double x, long long max_den, double tol) {
  Convergent best;
  long long h0 = 1, h1 = static_cast<long long>(std::floor(x));
  long long k0 = 0, k1 = 1;
  double y = x - std::floor(x);

  for (int it = 0; it < 64; ++it) {
    best.num = h1;
    best.den = k1;
    best.residual = std::abs(x - static_cast<double>(h1) / static_cast<double>(k1));
    if (best.residual <= tol) {
      best.ok = true;
      return best;
    }
    if (y <= 1e-15) break;  // expansion terminated (x is this rational)

    y = 1.0 / y;
    const double af = std::floor(y);
    // next denominator would be a*k1 + k0; bail out before overflowing or
    // passing the cap
    if (af > static_cast<double>((max_den - k0) / k1) + 1.0) break;
    const long long a = static_cast<long long>(af);
    if (a < 1) break;
    const long long k2 = a * k1 + k0;
    if (k2 > max_den) break;
    const long long h2 = a * h1 + h0;
    h0 = h1; h1 = h2;
    k0 = k1; k1 = k2;
    y -= af;
  }
  return best;
}

ParityClass parity_of(long long num, long long den) {
  const bool num_odd = std::abs(num) % 2 == 1;
  const bool den_odd = std::abs(den) % 2 == 1;
  if (num_odd) return den_odd ? ParityClass::odd_odd : ParityClass::odd_even;
  return den_odd ? ParityClass::even_odd : ParityClass::even_even;
}

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

std::optional<Fraction> rational_reconstruct(double x, long long max_den,
                                             double tol) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite input");
  if (max_den < 1) throw std::invalid_argument("max_den must be >= 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  const Convergent c = cf_walk(x, max_den, tol);
  if (!c.ok) return std::nullopt;
  return Fraction{c.num, c.den};
}

std::string to_string(RefusalReason r) {
  switch (r) {
    case RefusalReason::none: return "none";
    case RefusalReason::symmetry_failure: return "symmetry-failure";
    case RefusalReason::irrational_ratio: return "irrational-ratio";
    case RefusalReason::parity_failure: return "parity-failure";
    case RefusalReason::degenerate_ambiguity: return "degenerate-ambiguity";
  }
  return "unknown";
}

SpectralClasses cospectral_classify(const SpectralDecomposition& d, int u,
                                    int v, double tol) {
  if (u < 0 || u >= d.n || v < 0 || v >= d.n)
    throw std::out_of_range("vertex out of range");
  if (u == v) throw std::invalid_argument("source and target coincide");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  SpectralClasses out;
  int lo = 0;
  while (lo < d.n) {
    int hi = lo + 1;
    while (hi < d.n && d.eigenvalues[hi] - d.eigenvalues[hi - 1] < kClusterGap)
      ++hi;

    // projections of the two indicator vectors onto the cluster eigenspace
    std::vector<double> pu(d.n, 0.0), pv(d.n, 0.0);
    for (int j = lo; j < hi; ++j)
      for (int r = 0; r < d.n; ++r) {
        pu[r] += d.vec(u, j) * d.vec(r, j);
        pv[r] += d.vec(v, j) * d.vec(r, j);
      }
    double nu = 0.0, nv = 0.0, diff = 0.0, sum = 0.0;
    for (int r = 0; r < d.n; ++r) {
      nu += pu[r] * pu[r];
      nv += pv[r] * pv[r];
      diff += (pu[r] - pv[r]) * (pu[r] - pv[r]);
      sum += (pu[r] + pv[r]) * (pu[r] + pv[r]);
    }
    nu = std::sqrt(nu);
    nv = std::sqrt(nv);

    double rep = 0.0;
    for (int j = lo; j < hi; ++j) rep += d.eigenvalues[j];
    rep /= hi - lo;

    const bool u_supported = nu > tol;
    const bool v_supported = nv > tol;
    if (u_supported != v_supported) {
      out.reason = RefusalReason::symmetry_failure;
      return out;
    }
    if (u_supported) {
      if (std::sqrt(diff) <= tol * nu) {
        out.plus.push_back(rep);
      } else if (std::sqrt(sum) <= tol * nu) {
        out.minus.push_back(rep);
      } else {
        out.reason = hi - lo > 1
                         ? RefusalReason::degenerate_ambiguity
                         : RefusalReason::symmetry_failure;
        return out;
      }
    }
    lo = hi;
  }
  out.ok = true;
  return out;
}

PSTCertificate certify(const SpectralDecomposition& d, int u, int v,
                       long long max_den, double tol) {
  if (max_den < 1) throw std::invalid_argument("max_den must be >= 1");

  PSTCertificate cert;
  cert.transfer_time = quiet_nan();

  const SpectralClasses classes = cospectral_classify(d, u, v, tol);
  cert.plus = classes.plus;
  cert.minus = classes.minus;
  if (!classes.ok) {
    cert.refusal_reason = classes.reason;
    return cert;
  }

  // supported eigenvalues with their class sign, ascending
  std::vector<std::pair<double, bool>> supported;  // (value, is_plus)
  for (double x : classes.plus) supported.emplace_back(x, true);
  for (double x : classes.minus) supported.emplace_back(x, false);
  std::sort(supported.begin(), supported.end());
  if (supported.size() < 2 || classes.plus.empty() || classes.minus.empty()) {
    cert.refusal_reason = RefusalReason::degenerate_ambiguity;
    return cert;
  }

  const double lam_min = supported.front().first;
  const double gap = supported.back().first - lam_min;
  cert.ratio_report.base_gap = gap;

  bool all_fit = true;
  for (const auto& [lam, is_plus] : supported) {
    const double r = (lam - lam_min) / gap;
    const Convergent c = cf_walk(r, max_den, tol);
    RatioEntry e;
    e.value = r;
    e.num = c.num;
    e.den = c.den;
    e.residual = c.residual;
    e.parity = parity_of(c.num, c.den);
    cert.ratio_report.ratios.push_back(e);
    all_fit = all_fit && c.ok;
  }
  if (!all_fit) {
    cert.refusal_reason = RefusalReason::irrational_ratio;
    return cert;
  }

  // common denominator; rationality at the cap means lcm must stay under it
  long long den = 1;
  for (const auto& e : cert.ratio_report.ratios) {
    const long long g = std::gcd(den, e.den);
    if (e.den / g > max_den / den) {  // lcm would exceed the cap
      cert.refusal_reason = RefusalReason::irrational_ratio;
      return cert;
    }
    den = den / g * e.den;
  }

  const int m = static_cast<int>(supported.size());
  std::vector<long long> scaled(m);
  for (int i = 0; i < m; ++i) {
    const auto& e = cert.ratio_report.ratios[i];
    scaled[i] = e.num * (den / e.den);
  }

  // parity split: plus-class integers share one parity, minus the other
  long long plus_par = -1, minus_par = -1;
  bool parity_ok = true;
  for (int i = 0; i < m; ++i) {
    const long long p = std::abs(scaled[i]) % 2;
    long long& slot = supported[i].second ? plus_par : minus_par;
    if (slot == -1) slot = p;
    parity_ok = parity_ok && slot == p;
  }
  parity_ok = parity_ok && plus_par != minus_par;
  if (!parity_ok) {
    cert.refusal_reason = RefusalReason::parity_failure;
    return cert;
  }

  // smallest multiplier aligning every phase: L*scaled_i/den must be an
  // integer whose parity matches the class split
  long long found = 0;
  for (long long L = 1; L <= 2 * den && found == 0; ++L) {
    bool ok = true;
    long long lp = -1, lm = -1;
    for (int i = 0; i < m && ok; ++i) {
      const long long num = L * scaled[i];
      if (num % den != 0) {
        ok = false;
        break;
      }
      const long long par = std::abs(num / den) % 2;
      long long& slot = supported[i].second ? lp : lm;
      if (slot == -1) slot = par;
      ok = slot == par;
    }
    if (ok && lp != -1 && lm != -1 && lp != lm) found = L;
  }
  if (found == 0) {  // cannot happen once the parity split holds; be safe
    cert.refusal_reason = RefusalReason::parity_failure;
    return cert;
  }

  const double T = std::numbers::pi * static_cast<double>(found) / gap;
  if (fidelity(d, u, v, T) < 1.0 - kDynamicCheck) {
    // the rational model fit the spectrum at this tolerance but the
    // dynamics refute it
    cert.refusal_reason = RefusalReason::irrational_ratio;
    return cert;
  }

  cert.certified = true;
  cert.refusal_reason = RefusalReason::none;
  cert.transfer_time = T;
  return cert;
}

}  // namespace pst
