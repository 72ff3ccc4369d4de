#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gfbbm/model.hpp"
#include "gfbbm/spectral.hpp"

namespace gfbbm::evolution {

struct TimeGrid {
  double t_final;
  std::size_t n_steps;

  TimeGrid(double t_final, std::size_t n_steps);
  double dt() const noexcept { return t_final / static_cast<double>(n_steps); }
};

enum class EvolveStatus {
  completed,
  diverged,
};

struct EvolutionTrace {
  std::vector<double> times;           // snapped snapshot times
  std::vector<WaveProfile> snapshots;  // one per requested output time
  std::vector<double> drift_times;
  std::vector<double> i0_drift;  // (I_0(t) - I_0(0)) / |I_0(0)|
  std::vector<double> i1_drift;  // (I_1(t) - I_1(0)) / |I_1(0)|
  EvolveStatus status = EvolveStatus::completed;
  std::size_t steps_completed = 0;
};

/// Right-hand side of the Fourier-space ODE: per mode
///   dU^/dt = -i kappa [ (1 + (3/4)|kappa|^a) U^ + (1/2)(U^{p+1})^ ]
///            / (1 + (5/4)|kappa|^a),
/// with the nonlinear term formed pseudo-spectrally and the unpaired Nyquist
/// mode zeroed.
Spectrum rhs(const Spectrum& state, const ModelParams& params);

/// Classical fourth-order Runge-Kutta step in spectral space. dt may be zero
/// (identity) or negative (backward step).
Spectrum rk4_step(const Spectrum& state, const ModelParams& params, double dt);

/// March n_steps of RK4, recording conserved-quantity drift every
/// drift_stride steps (and at the first and last step) and snapshots at the
/// steps nearest to the requested output times. Divergence aborts cleanly
/// with the partial trace.
EvolutionTrace evolve(const WaveProfile& initial, const ModelParams& params,
                      const TimeGrid& time, std::span<const double> output_times,
                      std::size_t drift_stride = 1);

}  // namespace gfbbm::evolution
