#include "gfbbm/theory.hpp"

#include <cmath>
#include <limits>

#include "spectral_internal.hpp"

namespace gfbbm::theory {

namespace {

constexpr double kThreeFifths = 0.6;

double integral_sq(const WaveProfile& u) {
  detail::KahanSum s;
  for (double x : u.values()) s.add(x * x);
  return s.value() * u.grid().spacing();
}

double integral_pow(const WaveProfile& u, int e) {
  detail::KahanSum s;
  for (double x : u.values()) s.add(detail::int_pow(x, e));
  return s.value() * u.grid().spacing();
}

double relative_defect(double lhs, double rhs) {
  const double scale = std::abs(lhs) + std::abs(rhs);
  if (scale == 0.0) return 0.0;
  return std::abs(lhs - rhs) / scale;
}

}  // namespace

std::string_view to_string(AdmissibilityTag tag) noexcept {
  switch (tag) {
    case AdmissibilityTag::ok: return "OK";
    case AdmissibilityTag::nonexist_case_i: return "NONEXIST_CASE_I";
    case AdmissibilityTag::nonexist_case_ii: return "NONEXIST_CASE_II";
    case AdmissibilityTag::nonexist_case_iii: return "NONEXIST_CASE_III";
    case AdmissibilityTag::no_positive_wave: return "NO_POSITIVE_WAVE";
    case AdmissibilityTag::supercritical_p: return "SUPERCRITICAL_P";
    case AdmissibilityTag::hamiltonian_ill_defined: return "HAMILTONIAN_ILL_DEFINED";
  }
  return "UNKNOWN";
}

AdmissibilityReport validate_params(const ModelParams& params) {
  const double alpha = params.alpha;
  const double c = params.c;
  // Both the p >= p_max test and the theorem's alpha-vs-p/(p+2) comparisons
  // share this one boundary value so the cases cannot disagree in rounding.
  const double ratio = static_cast<double>(params.p) / static_cast<double>(params.p + 2);

  AdmissibilityTag tag = AdmissibilityTag::ok;
  if (c > kThreeFifths && c < 1.0 && alpha >= ratio) {
    tag = AdmissibilityTag::nonexist_case_i;
  } else if ((c < kThreeFifths || c > 1.0) && alpha < ratio) {
    tag = AdmissibilityTag::nonexist_case_ii;
  } else if (c == kThreeFifths || c == 1.0) {
    tag = AdmissibilityTag::nonexist_case_iii;
  } else if (c <= 1.0) {
    tag = AdmissibilityTag::no_positive_wave;
  } else if (alpha < 1.0 && alpha <= ratio) {
    tag = AdmissibilityTag::supercritical_p;  // p >= p_max(alpha)
  }
  AdmissibilityReport report;
  report.admissible = (tag == AdmissibilityTag::ok);
  report.reasons = {tag};
  return report;
}

double critical_exponent(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    fail(ErrorCode::invalid_argument, "alpha must lie in (0, 2)");
  if (alpha >= 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 * alpha / (1.0 - alpha);
}

double exact_soliton(double x, double t, double c) {
  if (!(c > kThreeFifths))
    fail(ErrorCode::invalid_argument, "exact soliton requires c > 3/5");
  const double b = 4.0 * (c - 1.0) / (5.0 * c - 3.0);
  const double s = x - c * t;
  return 4.0 * (c - 1.0) / (1.0 + b * b * s * s);
}

double pohozaev_check(const WaveProfile& q, const ModelParams& params) {
  const double ratio = static_cast<double>(params.p) / static_cast<double>(params.p + 2);
  if (params.alpha == ratio)
    fail(ErrorCode::invalid_argument, "Pohozaev ratio is singular at alpha(p+2) = p");
  const WaveProfile d = apply_fractional(q, 0.5 * params.alpha);
  const double lhs = integral_sq(d);
  const double rhs = integral_sq(q);
  const double factor = 4.0 * params.p * (params.c - 1.0) /
                        ((5.0 * params.c - 3.0) *
                         (params.alpha * (params.p + 2) - params.p));
  return relative_defect(lhs, factor * rhs);
}

double energy_identity_check(const WaveProfile& q, const ModelParams& params) {
  const WaveProfile d = apply_fractional(q, 0.5 * params.alpha);
  const double lhs = (1.25 * params.c - 0.75) * integral_sq(d) +
                     (params.c - 1.0) * integral_sq(q);
  const double rhs = 0.5 * integral_pow(q, params.p + 2);
  return relative_defect(lhs, rhs);
}

WaveProfile ground_state_scaling(const WaveProfile& q_normalized, const ModelParams& params) {
  if (params.c == 1.0 || params.c == kThreeFifths)
    fail(ErrorCode::invalid_argument, "scaling is undefined at c = 3/5 and c = 1");
  if (!params.admissible())
    fail(ErrorCode::inadmissible_params, "ground-state scaling requires admissible parameters");
  const double amplitude = std::pow(2.0 * (params.c - 1.0), 1.0 / params.p);
  const double beta = 4.0 * (params.c - 1.0) / (5.0 * params.c - 3.0);
  const double stretch = std::pow(beta, 1.0 / params.alpha);
  const SpectralGrid& g = q_normalized.grid();
  const Spectrum spec = forward_transform(q_normalized);
  std::vector<double> out = trig_interpolate_equispaced(
      spec, stretch * g.nodes().front(), stretch * g.spacing(), g.size());
  for (double& v : out) v *= amplitude;
  return {q_normalized.grid_ptr(), std::move(out)};
}

}  // namespace gfbbm::theory
