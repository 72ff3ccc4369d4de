#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gfbbm/model.hpp"
#include "gfbbm/spectral.hpp"

namespace gfbbm::petviashvili {

struct SolverConfig {
  double tol_increment = 1e-12;  // threshold on Error(n) = ||Q_n - Q_{n-1}||_inf
  double tol_residual = 1e-6;    // threshold on RES(n) = ||S Q_n||_inf
  double tol_factor = 1e-10;     // recorded against |1 - M_n|; does not gate
  std::size_t max_iterations = 500;
  std::optional<double> nu;      // stabilizing exponent, default (p+1)/p
  bool allow_inadmissible = false;
};

struct IterationRecord {
  std::size_t iteration;
  double increment_error;  // Error(n)
  double factor_error;     // |1 - M_n|
  double residual_error;   // RES(n)
};

enum class SolveStatus {
  converged,
  iteration_limit,
  diverged,
  degenerate,
};

struct SolverResult {
  WaveProfile profile;
  std::vector<IterationRecord> history;
  SolveStatus status = SolveStatus::iteration_limit;
  bool converged = false;
  std::size_t iterations_used = 0;
};

/// Rayleigh-type stabilizing factor
///   M = sum_k l(kappa) |Q^(k)|^2 / sum_k (1/2) (Q^{p+1})^(k) conj(Q^(k)),
/// l(kappa) = (5c/4 - 3/4)|kappa|^a + c - 1. Equals 1 at a fixed point.
double stabilizing_factor(const WaveProfile& q, const ModelParams& params);

/// One stabilized update: Q_next^(k) = M^nu (Q^{p+1})^(k) / (2 l(kappa)).
WaveProfile iterate_once(const WaveProfile& q, const ModelParams& params, double nu);

/// Iterate until Error(n) <= tol_increment and RES(n) <= tol_residual, or the
/// iteration budget runs out. The full history is returned either way;
/// divergence and degenerate denominators end the run with the corresponding
/// status and the last finite iterate.
SolverResult solve(const WaveProfile& initial, const ModelParams& params,
                   const SolverConfig& config = {});

/// Gaussian seed A exp(-x^2/w^2) with the soliton family's amplitude and
/// width scales A = 4(c-1), w = (5c-3)/(4(c-1)).
WaveProfile default_seed(const GridPtr& grid, const ModelParams& params);

}  // namespace gfbbm::petviashvili
