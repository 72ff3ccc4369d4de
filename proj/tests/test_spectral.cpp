#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gfbbm/spectral.hpp"
#include "oracles.hpp"

using namespace gfbbm;
using oracle::pi;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("grid construction and invariants") {
  auto g = make_grid(4, pi);
  CHECK(g->size() == 4);
  CHECK(g->nodes()[0] == doctest::Approx(-pi).epsilon(1e-15));
  CHECK(g->nodes()[1] == doctest::Approx(-pi / 2).epsilon(1e-15));
  CHECK(g->nodes()[2] == doctest::Approx(0.0));
  CHECK(g->nodes()[3] == doctest::Approx(pi / 2).epsilon(1e-15));
  // pi/L = 1 here, so the wavenumbers are the integers -2..1
  CHECK(g->wavenumbers()[0] == doctest::Approx(-2.0));
  CHECK(g->wavenumbers()[1] == doctest::Approx(-1.0));
  CHECK(g->wavenumbers()[2] == 0.0);
  CHECK(g->wavenumbers()[3] == doctest::Approx(1.0));

  auto g6 = make_grid(6, 1.0);
  const double k0 = pi;
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(g6->wavenumbers()[i] ==
          doctest::Approx((static_cast<double>(i) - 3.0) * k0).epsilon(1e-15));

  auto big = make_grid(std::size_t{1} << 18, 2048.0);
  CHECK(big->spacing() == doctest::Approx(0.015625).epsilon(1e-15));
  CHECK(big->nodes()[0] == -2048.0);

  // exactly one zero wavenumber, symmetric except the unpaired -N/2 mode
  auto g8 = make_grid(8, 3.0);
  int zeros = 0;
  for (double k : g8->wavenumbers())
    if (k == 0.0) ++zeros;
  CHECK(zeros == 1);
  for (long k = 1; k < 4; ++k)
    CHECK(g8->wavenumbers()[static_cast<std::size_t>(4 + k)] ==
          -g8->wavenumbers()[static_cast<std::size_t>(4 - k)]);

  CHECK_THROWS_AS(make_grid(5, 1.0), Error);
  CHECK_THROWS_AS(make_grid(2, 1.0), Error);
  CHECK_THROWS_AS(make_grid(0, 1.0), Error);
  CHECK_THROWS_AS(make_grid(8, 0.0), Error);
  CHECK_THROWS_AS(make_grid(8, -2.0), Error);
}

TEST_CASE("profile validation") {
  auto g = make_grid(8, 1.0);
  CHECK_THROWS_AS(WaveProfile(g, std::vector<double>(4, 0.0)), Error);
  std::vector<double> bad(8, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(WaveProfile(g, bad), Error);
}

TEST_CASE("forward transform: constant and single harmonics") {
  auto g = make_grid(32, 5.0);

  auto c3 = forward_transform(sample(g, [](double) { return 3.0; }));
  CHECK(std::abs(c3.coeff(0) - std::complex<double>{3.0, 0.0}) < 1e-14);
  for (long k = -16; k < 16; ++k)
    if (k != 0) CHECK(std::abs(c3.coeff(k)) < 1e-14);

  const double l = g->half_length();
  auto cc = forward_transform(sample(g, [l](double x) { return std::cos(pi * x / l); }));
  CHECK(std::abs(cc.coeff(1) - std::complex<double>{0.5, 0.0}) < 1e-14);
  CHECK(std::abs(cc.coeff(-1) - std::complex<double>{0.5, 0.0}) < 1e-14);
  for (long k = -16; k < 16; ++k)
    if (k != 1 && k != -1) CHECK(std::abs(cc.coeff(k)) < 1e-13);

  auto cs = forward_transform(sample(g, [l](double x) { return std::sin(pi * x / l); }));
  CHECK(std::abs(cs.coeff(1) - std::complex<double>{0.0, -0.5}) < 1e-14);
  CHECK(std::abs(cs.coeff(-1) - std::complex<double>{0.0, 0.5}) < 1e-14);
}

TEST_CASE("inverse transform: zero spectrum and single harmonic") {
  auto g = make_grid(16, 2.0);
  std::vector<std::complex<double>> zero(16, {0.0, 0.0});
  auto u0 = inverse_transform(Spectrum(g, zero));
  for (double v : u0.values()) CHECK(v == 0.0);

  std::vector<std::complex<double>> one(16, {0.0, 0.0});
  one[1] = {0.5, 0.0};
  one[15] = {0.5, 0.0};
  auto uc = inverse_transform(Spectrum(g, one));
  for (std::size_t j = 0; j < 16; ++j)
    CHECK(uc[j] == doctest::Approx(std::cos(pi * g->nodes()[j] / 2.0)).epsilon(1e-13));
}

TEST_CASE("transforms match the naive DFT oracle") {
  for (std::size_t n : {8u, 16u, 64u}) {
    const double l = 3.0;
    auto g = make_grid(n, l);
    auto vals = oracle::random_profile(n, 1234 + static_cast<unsigned>(n));
    auto spec = forward_transform(WaveProfile(g, vals));
    auto want = oracle::naive_forward(vals, l);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(spec.coeffs()[i] - want[i]) < 1e-12);
  }
}

TEST_CASE("non-power-of-two sizes are correct (Bluestein)") {
  for (std::size_t n : {6u, 10u, 12u, 30u, 48u}) {
    const double l = 2.5;
    auto g = make_grid(n, l);
    auto vals = oracle::random_profile(n, 77 + static_cast<unsigned>(n));
    auto spec = forward_transform(WaveProfile(g, vals));
    auto want = oracle::naive_forward(vals, l);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(spec.coeffs()[i] - want[i]) < 1e-12);
    auto back = inverse_transform(spec);
    for (std::size_t j = 0; j < n; ++j)
      CHECK(std::abs(back[j] - vals[j]) < 1e-12);
  }
}

TEST_CASE("round trip is the identity to 1e-12") {
  auto g = make_grid(1024, 40.0);
  auto vals = oracle::random_profile(1024, 99);
  WaveProfile u(g, vals);
  auto back = inverse_transform(forward_transform(u));
  CHECK(sup_diff(u, back) < 1e-12);

  // same on closed-form soliton samples
  auto gs = make_grid(4096, 512.0);
  auto q = sample(gs, [](double x) { return oracle::soliton(x, 0.0, 1.1); });
  CHECK(sup_diff(q, inverse_transform(forward_transform(q))) < 1e-12);
}

TEST_CASE("inverse transform rejects asymmetric spectra") {
  auto g = make_grid(16, 1.0);
  std::vector<std::complex<double>> c(16, {0.0, 0.0});
  c[2] = {1.0, 0.4};  // no conjugate partner at -2
  CHECK_THROWS_AS(inverse_transform(Spectrum(g, c)), Error);
  try {
    inverse_transform(Spectrum(g, c));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::symmetry_violation);
  }
}

TEST_CASE("spectra of real profiles are conjugate-symmetric") {
  auto g = make_grid(128, 7.0);
  auto spec = forward_transform(WaveProfile(g, oracle::random_profile(128, 5)));
  CHECK(spec.conjugate_asymmetry() == 0.0);  // symmetric by construction
}

TEST_CASE("fractional derivative: eigenfunctions and multipliers") {
  auto g = make_grid(64, 6.0);
  const double l = g->half_length();
  for (double alpha : {0.4, 0.8, 1.0, 1.6}) {
    auto u = sample(g, [l](double x) { return std::sin(pi * x / l); });
    auto du = apply_fractional(u, alpha);
    const double factor = std::pow(pi / l, alpha);
    for (std::size_t j = 0; j < u.size(); ++j)
      CHECK(du[j] == doctest::Approx(factor * u[j]).epsilon(1e-11));
  }

  auto u2 = sample(g, [l](double x) { return std::cos(2.0 * pi * x / l); });
  auto du2 = apply_fractional(u2, 1.0);
  for (std::size_t j = 0; j < u2.size(); ++j)
    CHECK(du2[j] == doctest::Approx(2.0 * pi / l * u2[j]).epsilon(1e-11));
}

TEST_CASE("fractional derivative: order 0 is the identity, negative rejected") {
  auto g = make_grid(32, 2.0);
  WaveProfile u(g, oracle::random_profile(32, 31));
  auto same = apply_fractional(u, 0.0);
  CHECK(sup_diff(u, same) == 0.0);
  CHECK_THROWS_AS(apply_fractional(u, -0.5), Error);
}

TEST_CASE("fractional semigroup and half-order composition") {
  auto g = make_grid(256, 10.0);
  WaveProfile u(g, oracle::random_zero_mean(256, 42));
  const double alpha = 0.8;
  auto once = apply_fractional(u, alpha);
  auto twice = apply_fractional(apply_fractional(u, alpha / 2), alpha / 2);
  CHECK(sup_diff(once, twice) < 1e-10);

  auto ab = apply_fractional(apply_fractional(u, 0.3), 0.9);
  auto sum = apply_fractional(u, 1.2);
  CHECK(sup_diff(ab, sum) < 1e-10);
}

TEST_CASE("linearity of the fractional multiplier") {
  auto g = make_grid(128, 4.0);
  auto va = oracle::random_profile(128, 7);
  auto vb = oracle::random_profile(128, 8);
  const double a = 1.7, b = -0.6;
  std::vector<double> combo(128);
  for (std::size_t j = 0; j < 128; ++j) combo[j] = a * va[j] + b * vb[j];
  auto lhs = apply_fractional(WaveProfile(g, combo), 0.7);
  auto da = apply_fractional(WaveProfile(g, va), 0.7);
  auto db = apply_fractional(WaveProfile(g, vb), 0.7);
  for (std::size_t j = 0; j < 128; ++j)
    CHECK(lhs[j] == doctest::Approx(a * da[j] + b * db[j]).epsilon(1e-10));
}

TEST_CASE("derivative and D^alpha annihilate constants") {
  auto g = make_grid(64, 3.0);
  auto u = sample(g, [](double) { return 2.5; });
  CHECK(sup_norm(apply_x_derivative(u)) < 1e-13);
  CHECK(sup_norm(apply_fractional(u, 0.8)) < 1e-13);
}

TEST_CASE("x-derivative of single harmonics") {
  auto g = make_grid(64, 5.0);
  const double l = g->half_length();
  auto u = sample(g, [l](double x) { return std::sin(pi * x / l); });
  auto du = apply_x_derivative(u);
  for (std::size_t j = 0; j < u.size(); ++j)
    CHECK(du[j] == doctest::Approx(pi / l * std::cos(pi * g->nodes()[j] / l)).epsilon(1e-11));
}

TEST_CASE("x-derivative of the soliton matches the closed-form derivative") {
  const double c = 1.1;
  auto g = make_grid(std::size_t{1} << 16, 2048.0);
  auto u = sample(g, [c](double x) { return oracle::soliton(x, 0.0, c); });
  auto du = apply_x_derivative(u);
  double worst = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j)
    worst = std::max(worst, std::abs(du[j] - oracle::soliton_dx(g->nodes()[j], 0.0, c)));
  CHECK(worst <= 1e-8);
}

TEST_CASE("Nyquist mode: zeroed by d/dx, kept by |kappa|^alpha") {
  auto g = make_grid(16, 1.0);
  std::vector<std::complex<double>> c(16, {0.0, 0.0});
  c[8] = {1.0, 0.0};  // pure Nyquist content
  auto u = inverse_transform(Spectrum(g, c));
  CHECK(sup_norm(apply_x_derivative(u)) < 1e-12);
  CHECK(sup_norm(apply_fractional(u, 1.0)) > 1.0);
}

TEST_CASE("Parseval identity") {
  auto g = make_grid(512, 17.0);
  auto vals = oracle::random_profile(512, 1001);
  WaveProfile u(g, vals);
  auto spec = forward_transform(u);
  const double h = g->spacing();
  double phys = 0.0;
  for (double x : vals) phys += x * x * h;
  double spectral = 0.0;
  for (auto z : spec.coeffs()) spectral += std::norm(z);
  spectral *= 2.0 * g->half_length();
  CHECK(rel_err(phys, spectral) < 1e-10);
}

TEST_CASE("realness: operations on real profiles stay real") {
  auto g = make_grid(256, 9.0);
  WaveProfile u(g, oracle::random_profile(256, 17));
  // each of these round-trips through spectral space; inverse_transform
  // enforces the imaginary-residue bound internally
  CHECK_NOTHROW(inverse_transform(forward_transform(u)));
  CHECK_NOTHROW(apply_fractional(u, 1.3));
  CHECK_NOTHROW(apply_x_derivative(u));
}

TEST_CASE("trig interpolation reproduces node values and band-limited functions") {
  auto g = make_grid(64, 4.0);
  const double l = g->half_length();
  auto u = sample(g, [l](double x) {
    return 0.3 + std::cos(pi * x / l) - 0.25 * std::sin(3.0 * pi * x / l);
  });
  auto spec = forward_transform(u);

  std::vector<double> pts(g->nodes().begin(), g->nodes().end());
  auto at_nodes = trig_interpolate(spec, pts);
  for (std::size_t j = 0; j < pts.size(); ++j)
    CHECK(at_nodes[j] == doctest::Approx(u[j]).epsilon(1e-12));

  std::vector<double> off = {-3.97, -1.234, 0.001, 0.7, 2.5, 3.99};
  auto vals = trig_interpolate(spec, off);
  for (std::size_t i = 0; i < off.size(); ++i) {
    const double want =
        0.3 + std::cos(pi * off[i] / l) - 0.25 * std::sin(3.0 * pi * off[i] / l);
    CHECK(vals[i] == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("equispaced interpolation matches the direct sum") {
  auto g = make_grid(200, 6.0);
  WaveProfile u(g, oracle::random_profile(200, 314));
  auto spec = forward_transform(u);
  const double start = -5.3, step = 0.0721;
  const std::size_t count = 173;
  std::vector<double> pts(count);
  for (std::size_t m = 0; m < count; ++m) pts[m] = start + step * static_cast<double>(m);
  auto direct = trig_interpolate(spec, pts);
  auto fast = trig_interpolate_equispaced(spec, start, step, count);
  for (std::size_t m = 0; m < count; ++m)
    CHECK(fast[m] == doctest::Approx(direct[m]).epsilon(1e-10));
}

TEST_CASE("equispaced interpolation at the grid itself is the identity") {
  auto g = make_grid(256, 11.0);
  WaveProfile u(g, oracle::random_profile(256, 2718));
  auto spec = forward_transform(u);
  auto back = trig_interpolate_equispaced(spec, g->nodes().front(), g->spacing(), g->size());
  for (std::size_t j = 0; j < back.size(); ++j)
    CHECK(back[j] == doctest::Approx(u[j]).epsilon(1e-11));
}
