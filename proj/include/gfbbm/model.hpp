#pragma once

#include "gfbbm/spectral.hpp"

namespace gfbbm {

/// Parameters of u_t + u_x + (1/2)(u^{p+1})_x + (3/4)D^a u_x + (5/4)D^a u_t = 0:
/// fractional order alpha in (0,2), integer nonlinearity p >= 1, wave speed c.
struct ModelParams {
  double alpha;
  int p;
  double c;

  ModelParams(double alpha, int p, double c);

  /// Solitary-wave existence window: c > 1 and alpha > p/(p+2) (the latter is
  /// equivalent to p < p_max(alpha)). Detailed findings come from
  /// theory::validate_params.
  bool admissible() const noexcept {
    return c > 1.0 && alpha > static_cast<double>(p) / static_cast<double>(p + 2);
  }
};

struct ConservedSnapshot {
  double i0;           // integral of u
  double i1;           // integral of u^2 + (5/4)|D^{a/2}u|^2
  double hamiltonian;  // (1/2) integral of u^2 + u^{p+2}/(p+2) + (3/4)|D^{a/2}u|^2
};

/// Pointwise u^{p+1}; 2/3-rule truncation applied when the grid flag is set.
/// Overflow to non-finite values is reported as divergence.
WaveProfile nonlinear_power(const WaveProfile& u, int p);

/// Traveling-wave residual S(Q) = (3/4 - 5c/4) D^a Q + (1-c) Q + (1/2) Q^{p+1},
/// which vanishes on solutions of the solitary-wave equation.
WaveProfile residual_operator(const WaveProfile& q, const ModelParams& params);

ConservedSnapshot conserved_quantities(const WaveProfile& u, const ModelParams& params);

}  // namespace gfbbm
