#include "pst/twin_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pst {

namespace {

using Kind = SynthesisError::Kind;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_twins(const Graph& g, int u, int v) {
  const int n = g.num_vertices();
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw std::out_of_range("vertex out of range");
  if (u == v || g.has_edge(u, v) || g.neighbors(u) != g.neighbors(v))
    throw SynthesisError(Kind::not_twins,
                         "vertices are not non-adjacent twins");
}

std::vector<int> free_vertices(int n, int u, int v) {
  std::vector<int> f;
  for (int w = 0; w < n; ++w)
    if (w != u && w != v) f.push_back(w);
  return f;
}

// ratio_map plus the bookkeeping Newton needs: which columns of the
// decomposition hold the kept eigenvalues, in ascending eigenvalue order.
struct RatioDecomp {
  int twin_column = -1;
  std::vector<int> columns;    // n+1 kept columns, eigenvalues ascending
  std::vector<double> ratios;  // lambda_i / lambda_{n+1}, i = 1..n
  double lambda_top = 0.0;
};

RatioDecomp ratio_decomp(const SpectralDecomposition& d, int u, int v) {
  if (u < 0 || u >= d.n || v < 0 || v >= d.n)
    throw std::out_of_range("vertex out of range");
  if (d.simplicity_gap <= 1e-10)
    throw SynthesisError(Kind::simplicity_lost, "spectrum is not simple");

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  RatioDecomp rd;
  for (int j = 0; j < d.n; ++j) {
    const double overlap = std::abs((d.vec(u, j) - d.vec(v, j)) * inv_sqrt2);
    if (overlap >= 1.0 - 1e-8) {
      rd.twin_column = j;
      break;
    }
  }
  if (rd.twin_column < 0)
    throw SynthesisError(Kind::not_good_potential,
                         "no eigenvector matches the twin difference mode");

  for (int j = 0; j < d.n; ++j)
    if (j != rd.twin_column) rd.columns.push_back(j);  // already ascending

  rd.lambda_top = d.eigenvalues[rd.columns.back()];
  if (std::abs(rd.lambda_top) <= 1e-10)
    throw SynthesisError(Kind::degenerate_scale,
                         "largest kept eigenvalue is numerically zero");
  for (std::size_t i = 0; i + 1 < rd.columns.size(); ++i)
    rd.ratios.push_back(d.eigenvalues[rd.columns[i]] / rd.lambda_top);
  return rd;
}

// Solves a.x = b by Gauss elimination with partial pivoting and also forms
// the inverse for a 1-norm condition estimate. Small dense systems only.
struct LinearSolve {
  bool singular = false;
  double condition = 0.0;
  std::vector<double> x;
};

LinearSolve solve_with_condition(std::vector<double> a, std::vector<double> b,
                                 int n) {
  LinearSolve out;
  std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;

  double norm_a = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += std::abs(a[i * n + j]);
    norm_a = std::max(norm_a, col);
  }

  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0.0) {
      out.singular = true;
      return out;
    }
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a[piv * n + c], a[col * n + c]);
        std::swap(inv[piv * n + c], inv[col * n + c]);
      }
      std::swap(b[piv], b[col]);
    }
    const double p = a[col * n + col];
    for (int c = 0; c < n; ++c) {
      a[col * n + c] /= p;
      inv[col * n + c] /= p;
    }
    b[col] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r * n + col];
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a[r * n + c] -= f * a[col * n + c];
        inv[r * n + c] -= f * inv[col * n + c];
      }
      b[r] -= f * b[col];
    }
  }

  double norm_inv = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += std::abs(inv[i * n + j]);
    norm_inv = std::max(norm_inv, col);
  }
  out.condition = norm_a * norm_inv;
  out.x = std::move(b);
  return out;
}

double uniform(std::mt19937_64& eng, double lo, double hi) {
  const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace

Potential initial_potential(const Graph& g, int u, int v, double scale,
                            std::uint64_t seed) {
  check_twins(g, u, v);
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("scale must be positive and finite");

  const auto free = free_vertices(g.num_vertices(), u, v);
  const int n = static_cast<int>(free.size());
  if (n == 0)
    throw SynthesisError(Kind::initialization,
                         "no free vertices to carry the potential");

  for (int attempt = 0; attempt < 16; ++attempt) {
    std::mt19937_64 eng(splitmix64(seed + static_cast<std::uint64_t>(attempt)));
    Potential q(g.num_vertices(), 0.0);
    for (int i = 0; i < n; ++i)
      q[free[i]] = scale * (1.0 + static_cast<double>(i + 1) / n) +
                   uniform(eng, 0.0, scale / (10.0 * n));
    const SpectralDecomposition d = decompose(build_hamiltonian(g, q));
    if (d.simplicity_gap >= 1e-6) return q;
  }
  throw SynthesisError(Kind::initialization,
                       "no simple spectrum after 16 jitter draws");
}

std::vector<double> ratio_map(const SpectralDecomposition& d, int u, int v) {
  return ratio_decomp(d, u, v).ratios;
}

std::vector<double> ratio_jacobian(const SpectralDecomposition& d, int u,
                                   int v) {
  const RatioDecomp rd = ratio_decomp(d, u, v);
  const int m = static_cast<int>(rd.ratios.size());
  const int ct = rd.columns.back();
  const double top = rd.lambda_top;
  std::vector<double> jac(static_cast<std::size_t>(m) * d.n);
  for (int i = 0; i < m; ++i) {
    const int ci = rd.columns[i];
    const double lam = d.eigenvalues[ci];
    for (int w = 0; w < d.n; ++w) {
      const double dli = d.vec(w, ci) * d.vec(w, ci);
      const double dlt = d.vec(w, ct) * d.vec(w, ct);
      jac[i * d.n + w] = (dli * top - lam * dlt) / (top * top);
    }
  }
  return jac;
}

std::optional<RatioTarget> select_targets(const std::vector<double>& ratios,
                                          long long d_max, double radius) {
  if (d_max < 3 || d_max % 2 == 0)
    throw std::invalid_argument("denominator bound must be odd and >= 3");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (ratios.empty()) throw std::invalid_argument("no ratios to target");

  std::optional<RatioTarget> best;
  for (long long den = 3; den <= d_max; den += 2) {
    RatioTarget cand;
    cand.denominator = den;
    cand.score = 0.0;
    bool valid = true;
    long long prev = std::numeric_limits<long long>::min();
    for (double r : ratios) {
      // nearest odd integer to r*den
      const long long num =
          2 * static_cast<long long>(std::llround((r * den - 1.0) / 2.0)) + 1;
      if (num <= prev || num >= den) {  // keep targets increasing and < 1
        valid = false;
        break;
      }
      prev = num;
      cand.numerators.push_back(num);
      cand.score = std::max(cand.score, std::abs(r - static_cast<double>(num) / den));
    }
    if (valid && (!best || cand.score < best->score)) best = cand;
  }
  if (!best || best->score > radius) return std::nullopt;
  return best;
}

NewtonResult newton_solve(const Graph& g, int u, int v,
                          const RatioTarget& target, const Potential& q0,
                          double tol, int max_iter) {
  check_twins(g, u, v);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iter < 1) throw std::invalid_argument("need at least one iteration");
  const auto free = free_vertices(g.num_vertices(), u, v);
  const int n = static_cast<int>(free.size());
  if (static_cast<int>(target.numerators.size()) != n)
    throw std::invalid_argument("target length does not match free vertices");
  if (static_cast<int>(q0.size()) != g.num_vertices())
    throw std::invalid_argument("potential length does not match graph");
  if (std::abs(q0[u]) > 1e-12 || std::abs(q0[v]) > 1e-12)
    throw std::invalid_argument("starting potential must vanish at the twins");

  std::vector<double> want(n);
  for (int i = 0; i < n; ++i)
    want[i] = static_cast<double>(target.numerators[i]) / target.denominator;

  auto eval = [&](const Potential& q) {
    const SpectralDecomposition d = decompose(build_hamiltonian(g, q));
    RatioDecomp rd = ratio_decomp(d, u, v);
    double res = 0.0;
    for (int i = 0; i < n; ++i)
      res = std::max(res, std::abs(rd.ratios[i] - want[i]));
    return std::tuple<SpectralDecomposition, RatioDecomp, double>(
        d, std::move(rd), res);
  };

  Potential q = q0;
  auto [d, rd, res] = eval(q);

  for (int iter = 0; iter < max_iter; ++iter) {
    if (res <= tol) return NewtonResult{q, iter, res};

    // J_ij = d(lambda_i / lambda_top) / d Q_{free_j}
    const std::vector<double> jfull = ratio_jacobian(d, u, v);
    std::vector<double> jac(static_cast<std::size_t>(n) * n);
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) jac[i * n + j] = jfull[i * d.n + free[j]];
      rhs[i] = rd.ratios[i] - want[i];
    }

    const LinearSolve sol = solve_with_condition(jac, rhs, n);
    if (sol.singular || sol.condition > 1e12)
      throw SynthesisError(Kind::jacobian_singular,
                           "jacobian condition exceeds 1e12");

    bool stepped = false;
    bool saw_simplicity_loss = false;
    for (double alpha = 1.0; alpha >= 1e-4; alpha /= 2.0) {
      Potential cand = q;
      for (int j = 0; j < n; ++j) cand[free[j]] -= alpha * sol.x[j];
      try {
        auto [dc, rdc, resc] = eval(cand);
        if (resc < res) {
          q = std::move(cand);
          d = std::move(dc);
          rd = std::move(rdc);
          res = resc;
          stepped = true;
          break;
        }
      } catch (const SynthesisError& e) {
        if (e.kind == Kind::simplicity_lost) saw_simplicity_loss = true;
        // shrink and retry
      }
    }
    if (!stepped) {
      if (saw_simplicity_loss)
        throw SynthesisError(Kind::simplicity_lost,
                             "every damped step collided eigenvalues");
      throw SynthesisError(Kind::no_convergence,
                           "residual stopped decreasing at the damping floor");
    }
  }
  if (res <= tol) return NewtonResult{q, max_iter, res};
  throw SynthesisError(Kind::no_convergence, "iteration budget exhausted");
}

SynthesisResult synthesize(const Graph& g, int u, int v, long long d_max,
                           int seeds, double tol) {
  check_twins(g, u, v);
  if (d_max < 3 || d_max % 2 == 0)
    throw std::invalid_argument("denominator bound must be odd and >= 3");
  if (seeds < 1) throw std::invalid_argument("need at least one seed");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const long long d_cap = 10 * d_max;
  long long d_cur = d_max;
  double scale = 10.0;
  std::ostringstream diagnostics;

  for (int seed = 0; seed < seeds; ++seed) {
    try {
      const Potential q0 =
          initial_potential(g, u, v, scale, static_cast<std::uint64_t>(seed));
      const SpectralDecomposition d0 = decompose(build_hamiltonian(g, q0));
      const std::vector<double> ratios = ratio_map(d0, u, v);

      const auto target = select_targets(ratios, d_cur, 0.02);
      if (!target) throw SynthesisError(Kind::no_convergence,
                                        "no target within radius");

      const NewtonResult nr = newton_solve(g, u, v, *target, q0, tol, 64);

      const SpectralDecomposition d = decompose(build_hamiltonian(g, nr.q));
      const RatioDecomp rd = ratio_decomp(d, u, v);
      const double t = std::numbers::pi *
                       static_cast<double>(target->denominator) / rd.lambda_top;
      const double fid = fidelity(d, u, v, t);
      if (fid < 1.0 - 1e-6)
        throw SynthesisError(Kind::no_convergence,
                             "fidelity below 1 - 1e-6 at the predicted time");

      SynthesisResult out;
      out.potential = nr.q;
      out.target = *target;
      out.transfer_time = t;
      out.achieved_fidelity = fid;
      out.newton_iterations = nr.iterations;
      out.residual = nr.residual;
      out.seed = static_cast<std::uint64_t>(seed);
      return out;
    } catch (const SynthesisError& e) {
      diagnostics << "seed " << seed << " (scale " << scale << ", d_max "
                  << d_cur << "): " << e.what() << "\n";
    }
    d_cur = std::min(2 * d_cur + 1, d_cap % 2 == 0 ? d_cap - 1 : d_cap);
    scale *= 1.5;
  }
  throw SynthesisError(Kind::exhausted,
                       "all seeds failed:\n" + diagnostics.str());
}

}  // namespace pst
