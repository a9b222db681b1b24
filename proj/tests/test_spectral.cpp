#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <thread>

#include "dww/spectral.hpp"
#include "dww/verify.hpp"
#include "helpers.hpp"

using namespace dww;
using dww::test::field_from;
using dww::test::max_coeff_diff;
using dww::test::pi;
using dww::verify::random_band_field;

TEST_SUITE("spectral") {

TEST_CASE("grid validation and index mapping") {
  CHECK_THROWS_AS(Grid(3), std::invalid_argument);
  CHECK_THROWS_AS(Grid(5), std::invalid_argument);
  CHECK_THROWS_AS(Grid(0), std::invalid_argument);
  const Grid g(16);
  CHECK(g.min_wavenumber() == -7);
  CHECK(g.max_wavenumber() == 8);
  for (int k = g.min_wavenumber(); k <= g.max_wavenumber(); ++k)
    CHECK(g.wavenumber_at(g.index_of(k)) == k);
}

TEST_CASE("transform of cos x hits the +-1 modes only") {
  const Grid g(32);
  const SpectralField f = field_from(g, [](double x) { return std::cos(x); });
  CHECK(std::abs(f.coeff(1) - cd(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(f.coeff(-1) - cd(0.5, 0.0)) < 1e-14);
  for (int k = g.min_wavenumber(); k <= g.max_wavenumber(); ++k) {
    if (k == 1 || k == -1) continue;
    CHECK(std::abs(f.coeff(k)) < 1e-14);
  }
}

TEST_CASE("all-zero samples give all-zero coefficients") {
  const Grid g(16);
  const std::vector<double> zeros(16, 0.0);
  const SpectralField f = to_spectral(zeros, g);
  CHECK(f.max_abs() == 0.0);
}

TEST_CASE("round trip is the identity on smooth random samples") {
  const Grid g(64);
  std::mt19937_64 rng(42);
  std::vector<double> samples(64, 0.0);
  // Smooth pseudorandom signal: a handful of low modes with random weights.
  for (int k = 1; k <= 10; ++k) {
    const double a = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    const double b = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    for (int j = 0; j < 64; ++j) {
      const double x = g.point(j);
      samples[static_cast<size_t>(j)] += a * std::cos(k * x) + b * std::sin(k * x);
    }
  }
  const auto back = to_real(to_spectral(samples, g));
  double scale = 0.0;
  for (double v : samples) scale = std::max(scale, std::abs(v));
  CHECK(dww::test::max_sample_diff(samples, back) < 1e-13 * (1.0 + scale));
}

TEST_CASE("sample count mismatch is rejected") {
  const Grid g(16);
  const std::vector<double> wrong(15, 0.0);
  CHECK_THROWS_AS(to_spectral(wrong, g), std::invalid_argument);
}

TEST_CASE("Parseval under the 2*pi convention") {
  const Grid g(32);
  const SpectralField f = random_band_field(g, 9, 1.0, 3);
  const auto samples = to_real(f);
  double quad = 0.0;
  for (double v : samples) quad += v * v;
  quad *= 2.0 * pi / static_cast<double>(g.size());
  double spec = 0.0;
  for (const cd& c : f.data()) spec += std::norm(c);
  spec *= 2.0 * pi;
  CHECK(quad == doctest::Approx(spec).epsilon(1e-12));
}

TEST_CASE("apply_multiplier: identity, derivative of cosine, annihilation") {
  const Grid g(32);
  const SpectralField f = field_from(g, [](double x) { return std::cos(x); });
  CHECK(max_coeff_diff(apply_multiplier(f, [](int) { return cd(1.0); }), f) == 0.0);

  const SpectralField msin = apply_multiplier(f, [](int k) { return cd(0.0, k); });
  const SpectralField want = field_from(g, [](double x) { return -std::sin(x); });
  CHECK(max_coeff_diff(msin, want) < 1e-14);

  CHECK(apply_multiplier(f, [](int) { return cd(0.0); }).max_abs() == 0.0);
}

TEST_CASE("hilbert transform on cosines and constants") {
  const Grid g(32);
  const SpectralField cosx = field_from(g, [](double x) { return std::cos(x); });
  const SpectralField sinx = field_from(g, [](double x) { return std::sin(x); });

  CHECK(max_coeff_diff(hilbert(cosx), sinx) < 1e-14);
  CHECK(max_coeff_diff(hilbert(sinx), -1.0 * cosx) < 1e-14);

  SpectralField constant(g);
  constant.set_coeff(0, 2.5);
  CHECK(hilbert(constant).max_abs() == 0.0);
}

TEST_CASE("hilbert twice is minus the identity off the mean") {
  const Grid g(32);
  const SpectralField f = random_band_field(g, 10, 1.0, 9);
  CHECK(max_coeff_diff(hilbert(hilbert(f)), -1.0 * f) < 1e-14);
}

TEST_CASE("lambda_pow on single modes") {
  const Grid g(32);
  const SpectralField cosx = field_from(g, [](double x) { return std::cos(x); });
  CHECK(max_coeff_diff(lambda_pow(cosx, 1.0), cosx) < 1e-14);

  const SpectralField cos2x = field_from(g, [](double x) { return std::cos(2 * x); });
  CHECK(max_coeff_diff(lambda_pow(cos2x, 2.0), 4.0 * cos2x) < 1e-13);

  const SpectralField sin3x = field_from(g, [](double x) { return std::sin(3 * x); });
  CHECK(max_coeff_diff(lambda_pow(sin3x, -1.0), (1.0 / 3.0) * sin3x) < 1e-14);
}

TEST_CASE("lambda_pow with negative power rejects nonzero mean") {
  const Grid g(16);
  SpectralField f(g);
  f.set_coeff(0, 1.0);
  f.set_coeff(1, 0.5);
  f.set_coeff(-1, 0.5);
  CHECK_THROWS_AS(lambda_pow(f, -1.0), std::domain_error);
  CHECK_NOTHROW(lambda_pow(f, 2.0));
}

TEST_CASE("lambda equals hilbert of the derivative") {
  const Grid g(32);
  const SpectralField f = random_band_field(g, 12, 1.0, 17);
  CHECK(max_coeff_diff(lambda_pow(f, 1.0), hilbert(derivative(f))) < 1e-13);
}

TEST_CASE("op_N: delta limits and the k=1 value") {
  const Grid g(16);
  const SpectralField f = random_band_field(g, 5, 1.0, 4);
  CHECK(max_coeff_diff(op_N(f, ModelParams{0.0, 0.0, 1.0}), f) == 0.0);

  SpectralField mode(g);
  mode.set_coeff(1, 1.0);
  const SpectralField out = op_N(mode, ModelParams{1.0, 0.0, 1.0});
  CHECK(std::abs(out.coeff(1) - cd(0.5, -0.5)) < 1e-15);  // (1 - i)/2

  SpectralField mean(g);
  mean.set_coeff(0, 3.0);
  CHECK(std::abs(op_N(mean, ModelParams{2.0, 0.0, 1.0}).coeff(0) - cd(3.0)) < 1e-15);
}

TEST_CASE("op_N factorizes as op_P composed with (1 - delta dx)") {
  const Grid g(32);
  const ModelParams p{0.7, 0.0, 1.0};
  const SpectralField f = random_band_field(g, 12, 1.0, 21);
  const SpectralField lhs = op_N(f, p);
  const SpectralField rhs = op_P(f - p.delta * derivative(f), p);
  CHECK(max_coeff_diff(lhs, rhs) < 1e-15);
}

TEST_CASE("op_P: delta limits, k=2 value, and the resolvent identity") {
  const Grid g(32);
  const SpectralField f = random_band_field(g, 12, 1.0, 6);
  CHECK(max_coeff_diff(op_P(f, ModelParams{0.0, 0.0, 1.0}), f) == 0.0);

  SpectralField mode(g);
  mode.set_coeff(2, 1.0);
  CHECK(std::abs(op_P(mode, ModelParams{1.0, 0.0, 1.0}).coeff(2) - cd(0.2)) < 1e-15);

  const ModelParams p{0.9, 0.0, 1.0};
  const SpectralField resolvent =
      f + p.delta * p.delta * op_P(derivative(f, 2), p);  // Id + P d^2 dxx
  CHECK(max_coeff_diff(op_P(f, p), resolvent) < 1e-13);
}

TEST_CASE("dealiased product of cos x with itself") {
  const Grid g(16);
  const SpectralField cosx = field_from(g, [](double x) { return std::cos(x); });
  const SpectralField prod = dealiased_product(cosx, cosx);
  const SpectralField want =
      field_from(g, [](double x) { return 0.5 + 0.5 * std::cos(2 * x); });
  CHECK(max_coeff_diff(prod, want) < 1e-14);
  CHECK(dealiased_product(cosx, SpectralField(g)).max_abs() == 0.0);
}

TEST_CASE("dealiased product equals the convolution oracle") {
  const Grid g(16);
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const SpectralField f = random_band_field(g, 5, 1.0, seed);
    const SpectralField h = random_band_field(g, 5, 1.0, seed + 40);
    CHECK(max_coeff_diff(dealiased_product(f, h), naive_convolution(f, h)) < 1e-12);
  }
}

TEST_CASE("naive convolution basics") {
  const Grid g(16);
  const SpectralField cosx = field_from(g, [](double x) { return std::cos(x); });
  const SpectralField want =
      field_from(g, [](double x) { return 0.5 + 0.5 * std::cos(2 * x); });
  CHECK(max_coeff_diff(naive_convolution(cosx, cosx), want) < 1e-14);

  SpectralField a(g), b(g);
  a.set_coeff(3, cd(2.0, 1.0));
  b.set_coeff(-1, cd(0.5, -0.5));
  const SpectralField c = naive_convolution(a, b);
  CHECK(std::abs(c.coeff(2) - cd(2.0, 1.0) * cd(0.5, -0.5)) < 1e-15);
  for (int k = g.min_wavenumber(); k <= g.max_wavenumber(); ++k)
    if (k != 2) CHECK(std::abs(c.coeff(k)) == 0.0);

  CHECK(naive_convolution(a, SpectralField(g)).max_abs() == 0.0);
}

TEST_CASE("commutator with the Hilbert transform") {
  const Grid g(32);
  const SpectralField cosx = field_from(g, [](double x) { return std::cos(x); });
  const SpectralField sinx = field_from(g, [](double x) { return std::sin(x); });

  CHECK(commutator_H(cosx, cosx).max_abs() < 1e-15);
  CHECK(commutator_H(cosx, SpectralField(g)).max_abs() == 0.0);

  const SpectralField c = commutator_H(cosx, sinx);
  CHECK(std::abs(c.coeff(0) - cd(0.5)) < 1e-14);
  for (int k = 1; k <= g.max_wavenumber(); ++k) {
    CHECK(std::abs(c.coeff(k)) < 1e-14);
    if (-k >= g.min_wavenumber()) CHECK(std::abs(c.coeff(-k)) < 1e-14);
  }
}

TEST_CASE("commutator_H kernel support: only sign changes contribute") {
  const Grid g(16);
  const SpectralField a = random_band_field(g, 5, 1.0, 11);
  const SpectralField b = random_band_field(g, 5, 1.0, 12);
  SpectralField kernel(g);
  for (int k = g.min_wavenumber(); k <= g.max_wavenumber(); ++k) {
    cd acc{};
    for (int n = g.min_wavenumber(); n <= g.max_wavenumber(); ++n) {
      const int r = k - n;
      if (r < g.min_wavenumber() || r > g.max_wavenumber()) continue;
      if (sgn(k) == sgn(r)) continue;  // kernel vanishes unless sgn k != sgn(k-n)
      acc += cd(0.0, -static_cast<double>(sgn(k) - sgn(r))) * a.coeff(n) * b.coeff(r);
    }
    kernel.set_coeff(k, acc);
  }
  CHECK(max_coeff_diff(commutator_H(a, b), kernel) < 1e-12);
}

TEST_CASE("commutator with dxx in expanded form") {
  const Grid g(32);
  const SpectralField cosx = field_from(g, [](double x) { return std::cos(x); });
  const SpectralField want =
      field_from(g, [](double x) { return 0.5 - 1.5 * std::cos(2 * x); });
  CHECK(max_coeff_diff(commutator_dxx(cosx, cosx), want) < 1e-14);

  SpectralField constant(g);
  constant.set_coeff(0, 4.0);
  const SpectralField b = random_band_field(g, 8, 1.0, 5);
  CHECK(commutator_dxx(constant, b).max_abs() < 1e-15);
}

TEST_CASE("expanded commutator_dxx equals dxx(ab) - a dxx b") {
  const Grid g(16);
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    const SpectralField a = random_band_field(g, 5, 1.0, seed);
    const SpectralField b = random_band_field(g, 5, 1.0, seed + 7);
    const SpectralField unexpanded =
        derivative(naive_convolution(a, b), 2) - naive_convolution(a, derivative(b, 2));
    CHECK(max_coeff_diff(commutator_dxx(a, b), unexpanded) < 1e-12);
  }
}

TEST_CASE("operations preserve Hermitian symmetry") {
  const Grid g(32);
  const ModelParams p{0.6, 0.4, 1.0};
  const SpectralField f = random_band_field(g, 10, 1.0, 8);
  const SpectralField h = random_band_field(g, 10, 1.0, 18);
  for (const SpectralField& out :
       {hilbert(f), lambda_pow(f, 1.5), derivative(f, 3), op_N(f, p), op_P(f, p),
        dealiased_product(f, h), naive_convolution(f, h), commutator_H(f, h),
        commutator_dxx(f, h)}) {
    CHECK(out.hermitian_defect() < 1e-13);
  }
}

TEST_CASE("grid mismatch raises") {
  const SpectralField a{Grid(16)};
  const SpectralField b{Grid(32)};
  CHECK_THROWS_AS(dealiased_product(a, b), std::invalid_argument);
  CHECK_THROWS_AS(naive_convolution(a, b), std::invalid_argument);
  CHECK_THROWS_AS(commutator_H(a, b), std::invalid_argument);
}

TEST_CASE("resample keeps the shared band") {
  const Grid coarse(16), fine(64);
  const SpectralField f = random_band_field(coarse, 5, 1.0, 2);
  const SpectralField up = resample(f, fine);
  for (int k = coarse.min_wavenumber(); k <= coarse.max_wavenumber(); ++k)
    CHECK(up.coeff(k) == f.coeff(k));
  CHECK(std::abs(up.coeff(20)) == 0.0);
  CHECK(max_coeff_diff(resample(up, coarse), f) == 0.0);
}

TEST_CASE("operator pipeline is safe to run from concurrent threads") {
  const Grid g(32);
  const SpectralField f = random_band_field(g, 9, 1.0, 14);
  const SpectralField h = random_band_field(g, 9, 1.0, 15);
  const SpectralField serial = commutator_H(f, dealiased_product(f, h));

  std::vector<std::thread> pool;
  std::array<double, 4> defects{};
  for (int w = 0; w < 4; ++w)
    pool.emplace_back([&, w] {
      for (int rep = 0; rep < 25; ++rep) {
        const SpectralField out = commutator_H(f, dealiased_product(f, h));
        defects[static_cast<size_t>(w)] =
            std::max(defects[static_cast<size_t>(w)], max_coeff_diff(out, serial));
      }
    });
  for (auto& th : pool) th.join();
  for (double d : defects) CHECK(d == 0.0);
}

TEST_CASE("resolution guard fires on energetic top modes") {
  const Grid g(32);
  SpectralField f = random_band_field(g, 5, 1e-3, 1);
  CHECK_NOTHROW(check_resolution(f));
  f.set_coeff(15, 1e-8);
  f.set_coeff(-15, 1e-8);
  CHECK_THROWS_AS(check_resolution(f), UnderResolvedError);
}

}  // TEST_SUITE
