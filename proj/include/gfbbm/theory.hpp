#pragma once

#include <string_view>
#include <vector>

#include "gfbbm/model.hpp"
#include "gfbbm/spectral.hpp"

namespace gfbbm::theory {

enum class AdmissibilityTag {
  ok,
  nonexist_case_i,    // c in (3/5,1) and alpha >= p/(p+2)
  nonexist_case_ii,   // c outside [3/5,1] and alpha < p/(p+2)
  nonexist_case_iii,  // c = 3/5 or c = 1
  no_positive_wave,   // c <= 1 with no nonexistence case triggered
  supercritical_p,    // 0 < alpha < 1 and p >= p_max(alpha)
  hamiltonian_ill_defined,
};

std::string_view to_string(AdmissibilityTag tag) noexcept;

struct AdmissibilityReport {
  bool admissible = false;
  std::vector<AdmissibilityTag> reasons;
  AdmissibilityTag tag() const noexcept { return reasons.front(); }
};

/// Classify (alpha, p, c) against the nonexistence theorem, the positivity
/// requirement c > 1, and the critical exponent. Cases are checked in a fixed
/// priority order with exact comparisons on the boundary values, so exactly
/// one tag is reported per point.
AdmissibilityReport validate_params(const ModelParams& params);

/// p_max(alpha): 2*alpha/(1-alpha) for alpha in (0,1), infinity for alpha >= 1.
double critical_exponent(double alpha);

/// Closed-form solitary wave for alpha = 1, p = 1:
/// Q(x,t) = 4(c-1) / (1 + [4(c-1)/(5c-3)]^2 (x-ct)^2). Rejects c <= 3/5.
double exact_soliton(double x, double t, double c);

/// Relative defect of the Pohozaev identity
///   integral |D^{a/2}Q|^2 = [4p(c-1) / ((5c-3)(a(p+2)-p))] integral Q^2,
/// as |lhs - ratio*rhs| / (|lhs| + |ratio*rhs|). Rejects a(p+2) = p.
double pohozaev_check(const WaveProfile& q, const ModelParams& params);

/// Relative defect of the energy identity
///   (5c/4 - 3/4) integral |D^{a/2}Q|^2 + (c-1) integral Q^2 = (1/2) integral Q^{p+2}.
double energy_identity_check(const WaveProfile& q, const ModelParams& params);

/// Map a normalized ground state Q (solution of D^a Q + Q - Q^{p+1} = 0) to
/// the speed-c profile (2(c-1))^{1/p} Q(beta^{1/a} x), beta = 4(c-1)/(5c-3),
/// resampled onto the input grid by spectral interpolation.
WaveProfile ground_state_scaling(const WaveProfile& q_normalized, const ModelParams& params);

}  // namespace gfbbm::theory
