// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Heavy solver/evolution runs are shared through small caches so the
// whole suite stays within a few minutes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "gfbbm/evolution.hpp"
#include "gfbbm/petviashvili.hpp"
#include "gfbbm/theory.hpp"
#include "oracles.hpp"

using namespace gfbbm;
using oracle::pi;

namespace {

struct Criterion {
  const char* id;
  bool ok = true;
  ~Criterion() {
    std::printf("[acceptance] criterion %s: %s\n", id, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
  }
};

#define EXPECT(crit, cond)            \
  do {                                \
    const bool expect_ok_ = (cond);   \
    (crit).ok &= expect_ok_;          \
    CHECK_MESSAGE(expect_ok_, #cond); \
  } while (0)

struct SolveKey {
  double alpha;
  int p;
  double c;
  std::size_t n;
  double l;
  auto operator<=>(const SolveKey&) const = default;
};

struct SolveEntry {
  petviashvili::SolverResult result;
  double seconds = 0.0;
};

const SolveEntry& solved(double alpha, int p, double c, std::size_t n, double l) {
  static std::map<SolveKey, SolveEntry> cache;
  const SolveKey key{alpha, p, c, n, l};
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto grid = make_grid(n, l);
    const ModelParams params(alpha, p, c);
    const auto t0 = std::chrono::steady_clock::now();
    auto result = petviashvili::solve(petviashvili::default_seed(grid, params), params, {});
    const auto t1 = std::chrono::steady_clock::now();
    it = cache.emplace(key, SolveEntry{std::move(result),
                                       std::chrono::duration<double>(t1 - t0).count()})
             .first;
  }
  return it->second;
}

// Shared evolution runs for criteria 6 and 7: T = 20 at dt = 0.005 on the
// desk-scale grid, drift monitored every step.
const evolution::EvolutionTrace& evolved(double alpha) {
  static std::map<double, evolution::EvolutionTrace> cache;
  auto it = cache.find(alpha);
  if (it == cache.end()) {
    const std::size_t n = std::size_t{1} << 16;
    const double l = 2048.0;
    const ModelParams params(alpha, 1, 1.1);
    const auto& wave = solved(alpha, 1, 1.1, n, l).result;
    REQUIRE(wave.converged);
    const evolution::TimeGrid time(20.0, 4000);
    const double out_times[] = {0.0, 10.0, 20.0};
    it = cache.emplace(alpha, evolution::evolve(wave.profile, params, time, out_times, 1))
             .first;
  }
  return it->second;
}

WaveProfile perturb_long_wave(const WaveProfile& q) {
  const double l = q.grid().half_length();
  const auto xs = q.grid().nodes();
  std::vector<double> bent(q.values().begin(), q.values().end());
  for (std::size_t j = 0; j < bent.size(); ++j)
    bent[j] *= 1.0 + 0.1 * std::cos(pi * xs[j] / l);
  return {q.grid_ptr(), std::move(bent)};
}

// Per-combination grids for the identity suite: the alpha = 0.6 waves need a
// wider box (p = 1, algebraic tails) or a finer core (p = 2, sharp peak) to
// meet the 1e-3 defect bound (tail truncation vs. core resolution).
struct IdentityCase {
  double alpha;
  int p;
  std::size_t n;
  double l;
};
constexpr IdentityCase kIdentityMatrix[] = {
    {0.6, 1, std::size_t{1} << 17, 8192.0}, {0.6, 2, std::size_t{1} << 17, 2048.0},
    {0.8, 1, std::size_t{1} << 16, 2048.0}, {0.8, 2, std::size_t{1} << 16, 2048.0},
    {1.0, 1, std::size_t{1} << 16, 2048.0}, {1.0, 2, std::size_t{1} << 16, 2048.0},
};

theory::AdmissibilityTag reference_tag(double alpha, int p, double c) {
  using theory::AdmissibilityTag;
  const double r = static_cast<double>(p) / static_cast<double>(p + 2);
  if (c == 0.6 || c == 1.0) return AdmissibilityTag::nonexist_case_iii;
  if (c > 0.6 && c < 1.0)
    return alpha >= r ? AdmissibilityTag::nonexist_case_i
                      : AdmissibilityTag::no_positive_wave;
  if (alpha < r) return AdmissibilityTag::nonexist_case_ii;
  if (c < 1.0) return AdmissibilityTag::no_positive_wave;
  if (alpha == r) return AdmissibilityTag::supercritical_p;
  return AdmissibilityTag::ok;
}

}  // namespace

TEST_CASE("criterion 1: exact-solution recovery at desk scale") {
  Criterion crit{"1 (exact-solution recovery)"};
  const std::size_t n = std::size_t{1} << 16;
  const double l = 2048.0;
  const auto& entry = solved(1.0, 1, 1.1, n, l);
  EXPECT(crit, entry.result.converged);
  EXPECT(crit, entry.result.iterations_used <= 200);
  EXPECT(crit, entry.seconds <= 60.0);

  auto grid = entry.result.profile.grid_ptr();
  double diff = 0.0;
  for (std::size_t j = 0; j < grid->size(); ++j)
    diff = std::max(diff, std::abs(entry.result.profile[j] -
                                   theory::exact_soliton(grid->nodes()[j], 0.0, 1.1)));
  EXPECT(crit, diff <= 1e-4);
  MESSAGE("iterations=", entry.result.iterations_used, " wall=", entry.seconds,
          "s sup-diff=", diff);
}

TEST_CASE("criterion 2: monitor decay in the same run") {
  Criterion crit{"2 (monitor decay)"};
  const auto& h = solved(1.0, 1, 1.1, std::size_t{1} << 16, 2048.0).result.history;
  REQUIRE(h.size() >= 11);
  EXPECT(crit, h.back().increment_error <= 1e-12);
  EXPECT(crit, h.back().factor_error <= 1e-10);
  EXPECT(crit, h.back().residual_error <= 1e-6);
  // |1-M_n| reaches machine zero long before the others; ratio-based decay is
  // checked above a 1e-14 round-off floor.
  const double floor = 1e-14;
  auto clamped = [&](double x) { return std::max(x, floor); };
  for (std::size_t i = h.size() - 10; i < h.size(); ++i) {
    EXPECT(crit, h[i].increment_error <= 1.01 * h[i - 1].increment_error);
    EXPECT(crit, h[i].residual_error <= 1.01 * h[i - 1].residual_error);
    EXPECT(crit, clamped(h[i].factor_error) <= 1.01 * clamped(h[i - 1].factor_error));
  }
}

TEST_CASE("criterion 3: identity suite over the acceptance matrix") {
  Criterion crit{"3 (identity suite)"};
  for (const auto& which : kIdentityMatrix) {
    const ModelParams params(which.alpha, which.p, 1.1);
    const auto& entry = solved(which.alpha, which.p, 1.1, which.n, which.l);
    EXPECT(crit, entry.result.converged);
    const double poh = theory::pohozaev_check(entry.result.profile, params);
    const double en = theory::energy_identity_check(entry.result.profile, params);
    EXPECT(crit, poh <= 1e-3);
    EXPECT(crit, en <= 1e-3);
    const auto perturbed = perturb_long_wave(entry.result.profile);
    const double en_p = theory::energy_identity_check(perturbed, params);
    EXPECT(crit, en_p >= 1e-2);
    MESSAGE("alpha=", which.alpha, " p=", which.p, " poh=", poh, " en=", en,
            " perturbed en=", en_p);
  }
}

// The remaining clause of criterion 3 demands that the *Pohozaev* defect of
// the long-wave-perturbed profiles also reach 1e-2. The Pohozaev ratio is
// invariant under uniform rescaling, and on any grid wide enough for the
// converged bound the factor 1+0.1cos(pi x/L) is constant to O((W/L)^2) over
// the soliton support, so the perturbation is invisible to it. The clause is
// kept here verbatim and is expected to fail; if it ever passes, that
// analysis is wrong and must be revisited.
TEST_CASE("criterion 3 (perturbed-Pohozaev clause, expected to fail)" *
          doctest::should_fail()) {
  Criterion crit{"3b (perturbed-Pohozaev clause; expected FAIL: scale-invariant certificate)"};
  for (const auto& which : kIdentityMatrix) {
    const ModelParams params(which.alpha, which.p, 1.1);
    const auto& entry = solved(which.alpha, which.p, 1.1, which.n, which.l);
    const auto perturbed = perturb_long_wave(entry.result.profile);
    const double poh_p = theory::pohozaev_check(perturbed, params);
    MESSAGE("alpha=", which.alpha, " p=", which.p, " perturbed poh=", poh_p);
    EXPECT(crit, poh_p >= 1e-2);
  }
}

TEST_CASE("criterion 4: peak amplitude ordering in alpha") {
  Criterion crit{"4 (alpha-peakedness ordering)"};
  const std::size_t n = std::size_t{1} << 16;
  const double l = 2048.0;
  const double a06 = sup_norm(solved(0.6, 1, 1.1, n, l).result.profile);
  const double a08 = sup_norm(solved(0.8, 1, 1.1, n, l).result.profile);
  const double a10 = sup_norm(solved(1.0, 1, 1.1, n, l).result.profile);
  EXPECT(crit, a06 > a08);
  EXPECT(crit, a08 > a10);
  EXPECT(crit, std::abs(a10 - 0.4) <= 1e-4);
  MESSAGE("amp(0.6)=", a06, " amp(0.8)=", a08, " amp(1.0)=", a10);
}

TEST_CASE("criterion 5: speed-amplitude ordering reverses near c = 1.5") {
  Criterion crit{"5 (speed-amplitude crossing)"};
  const std::size_t n = std::size_t{1} << 14;
  const double l = 512.0;
  // c = 1.05, 1.10, ..., 2.00
  for (int i = 0; i <= 19; ++i) {
    const double c = static_cast<double>(105 + 5 * i) / 100.0;
    double amp[3];
    for (int p : {1, 2, 3}) {
      const auto& entry = solved(0.8, p, c, n, l);
      EXPECT(crit, entry.result.converged);
      amp[p - 1] = sup_norm(entry.result.profile);
    }
    if (c <= 1.3) {
      EXPECT(crit, amp[0] < amp[1]);
      EXPECT(crit, amp[1] < amp[2]);
    }
    if (c >= 1.7) {
      EXPECT(crit, amp[0] > amp[1]);
      EXPECT(crit, amp[1] > amp[2]);
    }
  }
  // the reversal therefore happens somewhere inside [1.3, 1.7]
}

TEST_CASE("criterion 6: conserved quantities along the evolution") {
  Criterion crit{"6 (conservation in evolution)"};
  for (double alpha : {1.0, 0.6}) {
    const auto& trace = evolved(alpha);
    EXPECT(crit, trace.status == evolution::EvolveStatus::completed);
    EXPECT(crit, trace.drift_times.size() == 4001);
    double worst0 = 0.0, worst1 = 0.0;
    for (double d : trace.i0_drift) worst0 = std::max(worst0, std::abs(d));
    for (double d : trace.i1_drift) worst1 = std::max(worst1, std::abs(d));
    EXPECT(crit, worst0 <= 1e-12);
    EXPECT(crit, worst1 <= 1e-6);
    MESSAGE("alpha=", alpha, " max|dI0|=", worst0, " max|dI1|=", worst1);
  }
}

TEST_CASE("criterion 7: traveling-wave transport to t = 20") {
  Criterion crit{"7 (traveling-wave transport)"};
  const auto& trace = evolved(0.6);
  REQUIRE(trace.snapshots.size() == 3);
  const auto& start = trace.snapshots.front();
  const auto& finish = trace.snapshots.back();
  CHECK(trace.times.back() == doctest::Approx(20.0).epsilon(1e-15));

  // c*t = 22 is exactly 352 grid spacings at h = 1/16
  const std::size_t n = start.size();
  const double shift_real = 1.1 * 20.0 / start.grid().spacing();
  const auto shift = static_cast<std::size_t>(std::llround(shift_real));
  CHECK(std::abs(shift_real - static_cast<double>(shift)) < 1e-9);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    worst = std::max(worst, std::abs(finish[j] - start[(j + n - shift) % n]));
  const double rel = worst / sup_norm(start);
  EXPECT(crit, rel <= 1e-3);
  MESSAGE("relative transport defect = ", rel);
}

TEST_CASE("criterion 8: nonexistence gate over the parameter lattice") {
  Criterion crit{"8 (nonexistence gate)"};
  using theory::AdmissibilityTag;
  auto tag_of = [](double alpha, int p, double c) {
    return theory::validate_params(ModelParams(alpha, p, c)).tag();
  };

  // 10 x 10 x 10 lattice; the axis values include the exact boundaries
  // (c = 3/5, c = 1, alpha = p/(p+2) for p = 1, 2, 3) so every region of the
  // classification, including the measure-zero ones, appears.
  const double alphas[10] = {0.1, 0.25, 1.0 / 3.0, 0.45, 0.5,
                             0.6, 0.75, 1.0,       1.4,  1.9};
  const double cs[10] = {0.2, 0.4, 3.0 / 5.0, 0.7, 0.8, 0.9, 1.0, 1.2, 1.6, 2.0};
  std::size_t count = 0;
  bool seen[7] = {};
  for (double alpha : alphas) {
    for (double c : cs) {
      for (int p = 1; p <= 10; ++p) {
        const auto report = theory::validate_params(ModelParams(alpha, p, c));
        EXPECT(crit, report.reasons.size() == 1);
        EXPECT(crit, report.tag() == reference_tag(alpha, p, c));
        seen[static_cast<int>(report.tag())] = true;
        ++count;
      }
    }
  }
  EXPECT(crit, count == 1000);
  // all five findings plus OK appear; HAMILTONIAN_ILL_DEFINED never does
  using Tag = AdmissibilityTag;
  for (Tag t : {Tag::ok, Tag::nonexist_case_i, Tag::nonexist_case_ii,
                Tag::nonexist_case_iii, Tag::no_positive_wave, Tag::supercritical_p})
    EXPECT(crit, seen[static_cast<int>(t)]);
  EXPECT(crit, !seen[static_cast<int>(Tag::hamiltonian_ill_defined)]);

  // hand-checked corners, exact boundary values
  EXPECT(crit, tag_of(0.8, 1, 3.0 / 5.0) == AdmissibilityTag::nonexist_case_iii);
  EXPECT(crit, tag_of(0.8, 1, 1.0) == AdmissibilityTag::nonexist_case_iii);
  EXPECT(crit, tag_of(1.0 / 3.0, 1, 0.9) == AdmissibilityTag::nonexist_case_i);   // alpha = p/(p+2)
  EXPECT(crit, tag_of(0.5, 2, 1.7) == AdmissibilityTag::supercritical_p);         // p = p_max
  EXPECT(crit, tag_of(0.6, 3, 2.0) == AdmissibilityTag::supercritical_p);         // p = p_max
  EXPECT(crit, tag_of(0.2, 1, 1.5) == AdmissibilityTag::nonexist_case_ii);
  EXPECT(crit, tag_of(0.2, 1, 0.7) == AdmissibilityTag::no_positive_wave);
  EXPECT(crit, tag_of(0.8, 1, 1.1) == AdmissibilityTag::ok);
}

TEST_CASE("criterion 9: operator properties beneath the figures") {
  Criterion crit{"9 (operator properties)"};
  // spectral round trip
  {
    auto g = make_grid(2048, 100.0);
    WaveProfile u(g, oracle::random_profile(2048, 7777));
    EXPECT(crit, sup_diff(u, inverse_transform(forward_transform(u))) < 1e-12);
  }
  // Parseval
  {
    auto g = make_grid(1024, 25.0);
    auto vals = oracle::random_profile(1024, 8888);
    WaveProfile u(g, vals);
    auto spec = forward_transform(u);
    double phys = 0.0;
    for (double x : vals) phys += x * x * g->spacing();
    double spectral = 0.0;
    for (auto z : spec.coeffs()) spectral += std::norm(z);
    spectral *= 2.0 * g->half_length();
    EXPECT(crit, std::abs(phys - spectral) / std::abs(spectral) < 1e-10);
  }
  // multiplier semigroup
  {
    auto g = make_grid(1024, 30.0);
    WaveProfile u(g, oracle::random_zero_mean(1024, 9999));
    auto once = apply_fractional(u, 1.1);
    auto split = apply_fractional(apply_fractional(u, 0.7), 0.4);
    EXPECT(crit, sup_diff(once, split) < 1e-10);
  }
  // RK4 order on the linearized dispersion rotation
  {
    auto g = make_grid(32, pi);
    const ModelParams params(0.8, 1, 1.1);
    auto s0 = forward_transform(sample(g, [](double x) { return 1e-8 * std::cos(x); }));
    const double omega = oracle::dispersion_omega(1.0, 0.8);
    auto err = [&](double dt) {
      auto s1 = evolution::rk4_step(s0, params, dt);
      return std::abs(s1.coeff(1) - s0.coeff(1) * std::polar(1.0, -omega * dt)) / 5e-9;
    };
    const double order = std::log2(err(1e-2) / err(5e-3));
    EXPECT(crit, order >= 3.9);
    MESSAGE("observed RK4 order = ", order);
  }
}
