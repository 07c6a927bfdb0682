#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pst/certify.hpp"

namespace pst {

// Potential design for a non-adjacent twin pair (u, v): with Q(u) = Q(v) = 0
// the vector 1_u - 1_v is an eigenvector for eigenvalue 0, and transfer
// u -> v holds at time T as soon as T * lambda is an odd multiple of pi for
// every other eigenvalue lambda supported at u. The synthesis drives the
// eigenvalue ratios lambda_i / lambda_{n+1} onto odd/odd rationals with a
// shared odd denominator; the transfer time is then
// pi * denominator / lambda_{n+1}.

struct RatioTarget {
  std::vector<long long> numerators;  // odd, strictly increasing
  long long denominator = 1;          // odd, >= 3
  double score = 0.0;                 // max_i |ratio_i - num_i/denominator|
};

struct SynthesisError : std::runtime_error {
  enum class Kind {
    not_twins,
    initialization,     // no simple spectrum after jitter retries
    not_good_potential, // no eigenvector matches 1_u - 1_v
    degenerate_scale,   // largest kept eigenvalue too close to 0
    jacobian_singular,
    simplicity_lost,
    no_convergence,
    exhausted,          // every seed failed
  };

  SynthesisError(Kind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}

  Kind kind;
};

// Zero at u and v, distinct values scale*(1 + i/n) at the n remaining
// vertices (i = 1..n in vertex order) plus jitter uniform in
// [0, scale/(10n)]. Redraws the jitter with stepped seeds, up to 16 times,
// until the spectrum is simple (gap >= 1e-6).
Potential initial_potential(const Graph& g, int u, int v, double scale,
                            std::uint64_t seed);

// Removes the eigenvalue whose eigenvector matches (1_u - 1_v)/sqrt(2)
// (inner product >= 1 - 1e-8), sorts the remaining eigenvalues ascending
// as lambda_1..lambda_{n+1}, and returns lambda_i / lambda_{n+1} for
// i = 1..n.
std::vector<double> ratio_map(const SpectralDecomposition& d, int u, int v);

// Row-major derivative matrix of ratio_map with respect to the potential:
// one row per ratio, one column per vertex. Combines the first-order
// eigenvalue perturbation dlambda/dQ(w) = x(w)^2 through the quotient rule.
std::vector<double> ratio_jacobian(const SpectralDecomposition& d, int u,
                                   int v);

// Picks, over odd denominators d = 3, 5, ..., d_max, the vector of nearest
// odd numerators minimizing the sup-norm distance to `ratios` (ties to the
// smaller d). Candidates must be strictly increasing with the top numerator
// below d, so the implied spectrum stays simple. Returns none when the best
// score exceeds radius.
std::optional<RatioTarget> select_targets(const std::vector<double>& ratios,
                                          long long d_max, double radius);

struct NewtonResult {
  Potential q;
  int iterations = 0;
  double residual = 0.0;
};

// Damped Newton iteration on the free coordinates (u, v stay pinned at 0)
// driving ratio_map onto the target. The Jacobian combines the first-order
// eigenvalue derivatives through the quotient rule,
//   J_ij = (dlambda_i * lambda_{n+1} - lambda_i * dlambda_{n+1}) / lambda_{n+1}^2.
// Steps halve until the sup-norm residual decreases (factor floor 1e-4) and
// every accepted iterate must keep simplicity_gap >= 1e-10.
NewtonResult newton_solve(const Graph& g, int u, int v,
                          const RatioTarget& target, const Potential& q0,
                          double tol, int max_iter);

struct SynthesisResult {
  Potential potential;
  RatioTarget target;
  double transfer_time = 0.0;
  double achieved_fidelity = 0.0;
  int newton_iterations = 0;
  double residual = 0.0;
  std::uint64_t seed = 0;  // the seed that succeeded
};

// Full pipeline over seeds 0..seeds-1: initial_potential -> ratio_map ->
// select_targets (radius 0.02) -> newton_solve -> dynamic verification at
// t = pi * denominator / lambda_{n+1}, accepting fidelity >= 1 - 1e-6.
// On failure the denominator budget doubles (capped at 10 * d_max) and the
// potential scale grows before the next seed. Throws SynthesisError with
// kind exhausted, carrying one diagnostic line per seed, when no seed
// succeeds.
SynthesisResult synthesize(const Graph& g, int u, int v, long long d_max = 15,
                           int seeds = 64, double tol = 1e-10);

}  // namespace pst
