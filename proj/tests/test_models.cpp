#include <doctest.h>

#include <cmath>

#include "dww/linear.hpp"
#include "dww/models.hpp"
#include "dww/verify.hpp"
#include "helpers.hpp"

using namespace dww;
using dww::test::field_from;
using dww::test::max_coeff_diff;
using dww::verify::random_band_field;

TEST_SUITE("models") {

TEST_CASE("forcing of the zero state vanishes") {
  const Grid g(16);
  const BiState zero{SpectralField(g), SpectralField(g)};
  for (const ModelKind kind : {ModelKind::BiQuadratic, ModelKind::BiCubic})
    CHECK(bi_forcing(zero, ModelParams{0.7, 0.5, 1.0}, kind).max_abs() == 0.0);
}

TEST_CASE("cos x with zero velocity forces nothing in the quadratic model") {
  const Grid g(32);
  const BiState state{field_from(g, [](double x) { return std::cos(x); }), SpectralField(g)};
  const SpectralField F = bi_forcing(state, ModelParams{1.0, 0.0, 1.0}, ModelKind::BiQuadratic);
  CHECK(F.max_abs() < 1e-14);
}

TEST_CASE("cos x with zero velocity in the cubic model gives 3 cos 2x") {
  const Grid g(32);
  const BiState state{field_from(g, [](double x) { return std::cos(x); }), SpectralField(g)};
  const SpectralField F = bi_forcing(state, ModelParams{1.0, 0.0, 1.0}, ModelKind::BiCubic);
  const SpectralField want = field_from(g, [](double x) { return 3.0 * std::cos(2 * x); });
  CHECK(max_coeff_diff(F, want) < 1e-11);
}

TEST_CASE("quadratic and cubic variants share the first six terms exactly") {
  const Grid g(16);
  const ModelParams p{0.9, 0.4, 1.2};
  const BiState state{random_band_field(g, 5, 1e-2, 3), random_band_field(g, 5, 1e-2, 4)};
  const auto quad = bi_forcing_terms(state, p, ModelKind::BiQuadratic);
  const auto cubic = bi_forcing_terms(state, p, ModelKind::BiCubic);
  REQUIRE(quad.size() == 6);
  REQUIRE(cubic.size() == 8);
  for (std::size_t i = 0; i < 6; ++i)
    for (int j = 0; j < g.size(); ++j) CHECK(quad[i].data()[j] == cubic[i].data()[j]);
}

TEST_CASE("forcing is quadratic in the state") {
  const Grid g(16);
  const ModelParams p{0.6, 0.3, 1.0};
  const BiState state{random_band_field(g, 5, 1e-2, 11), random_band_field(g, 5, 1e-2, 12)};
  const BiState scaled{3.0 * state.f, 3.0 * state.ft};
  const SpectralField once = bi_forcing(state, p, ModelKind::BiQuadratic);
  const SpectralField nine = bi_forcing(scaled, p, ModelKind::BiQuadratic);
  CHECK(max_coeff_diff(nine, 9.0 * once) < 1e-12 * (1.0 + nine.max_abs()));
}

TEST_CASE("forcing output is zero-mean and real") {
  const Grid g(16);
  const ModelParams p{0.8, 0.7, 1.0};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const BiState state{random_band_field(g, 5, 1e-2, seed),
                        random_band_field(g, 5, 1e-2, seed + 9)};
    for (const ModelKind kind : {ModelKind::BiQuadratic, ModelKind::BiCubic}) {
      const SpectralField F = bi_forcing(state, p, kind);
      CHECK(F.mean_abs() < 1e-14);
      CHECK(F.hermitian_defect() < 1e-13);
    }
  }
}

TEST_CASE("forcing enforces the resolution guard") {
  const Grid g(32);
  SpectralField f = random_band_field(g, 5, 1e-2, 2);
  f.set_coeff(15, 1e-8);
  f.set_coeff(-15, 1e-8);
  const BiState state{f, SpectralField(g)};
  CHECK_THROWS_AS(bi_forcing(state, ModelParams{0.5, 0.0, 1.0}, ModelKind::BiQuadratic),
                  UnderResolvedError);
  CHECK_NOTHROW(bi_forcing(state, ModelParams{0.5, 0.0, 1.0}, ModelKind::BiQuadratic,
                           ResolutionGuard::Off));
}

TEST_CASE("unidirectional nonlinearity on simple data") {
  const Grid g(32);
  CHECK(uni_rhs_nonlinear(SpectralField(g), ModelParams{0.5, 0.0, 1.0}).max_abs() == 0.0);

  const SpectralField u = field_from(g, [](double x) { return std::cos(x); });

  // Vanishing viscosity: the brace collapses to 2 u u_x = -sin 2x.
  ModelParams inviscid{0.5, 0.0, 1.0};
  inviscid.delta = 0.0;
  const SpectralField r0 = uni_rhs_nonlinear(u, inviscid);
  const SpectralField want0 = field_from(g, [](double x) { return std::sin(2 * x); });
  CHECK(max_coeff_diff(r0, want0) < 1e-14);

  // General delta: brace = -sin 2x - 4 delta cos 2x, output = -N(brace).
  const double d = 0.37;
  const ModelParams p{d, 0.0, 1.0};
  const SpectralField brace =
      field_from(g, [d](double x) { return -std::sin(2 * x) - 4.0 * d * std::cos(2 * x); });
  const SpectralField want = -1.0 * op_N(brace, p);
  CHECK(max_coeff_diff(uni_rhs_nonlinear(u, p), want) < 1e-14);
}

TEST_CASE("unidirectional nonlinearity rejects nonzero mean and keeps mean zero") {
  const Grid g(16);
  SpectralField bad = random_band_field(g, 4, 1e-2, 5);
  bad.set_coeff(0, 0.1);
  CHECK_THROWS_AS(uni_rhs_nonlinear(bad, ModelParams{0.5, 0.0, 1.0}), std::domain_error);

  for (std::uint64_t seed = 21; seed <= 24; ++seed) {
    const SpectralField u = random_band_field(g, 5, 1e-2, seed);
    const SpectralField r = uni_rhs_nonlinear(u, ModelParams{0.4, 0.8, 1.0});
    CHECK(r.mean_abs() < 1e-14);
    CHECK(r.hermitian_defect() < 1e-13);
  }
}

TEST_CASE("split linear form agrees with the assembled symbol") {
  const Grid g(32);
  const ModelParams p{0.3, 0.7, 1.0};
  const SpectralField u = random_band_field(g, 12, 1.0, 31);
  const SpectralField split = uni_split_linear(u, p);
  SpectralField bySymbol(g);
  for (int k = g.min_wavenumber(); k <= g.max_wavenumber(); ++k) {
    if (k == 0) continue;
    bySymbol.set_coeff(k, -uni_symbol(k, p).lambda * u.coeff(k));
  }
  CHECK(max_coeff_diff(split, bySymbol) < 1e-12);

  // k = +-1 is dispersion-neutral without viscosity and surface tension.
  ModelParams free{0.5, 0.0, 1.0};
  free.delta = 0.0;
  const SpectralField cosx = field_from(g, [](double x) { return std::cos(x); });
  CHECK(uni_split_linear(cosx, free).max_abs() < 1e-15);

  CHECK(uni_split_linear(SpectralField(g), p).max_abs() == 0.0);
}

TEST_CASE("initial data presets") {
  const Grid g(32);
  const SpectralField f = initial_single_mode(g, 1, 2e-3);
  CHECK(std::abs(f.coeff(1) - cd(1e-3)) == 0.0);
  CHECK(std::abs(f.coeff(-1) - cd(1e-3)) == 0.0);

  CHECK_THROWS_AS(initial_single_mode(g, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(initial_single_mode(g, 16, 1.0), std::invalid_argument);

  const SpectralField two = initial_two_mode(g, 1, 1e-3, 3, 2e-3);
  CHECK(std::abs(two.coeff(3) - cd(1e-3)) == 0.0);
  CHECK_THROWS_AS(initial_two_mode(g, 2, 1.0, 2, 1.0), std::invalid_argument);

  const SpectralField r1 = initial_random_smooth(g, 1.0, 1e-3, 99);
  const SpectralField r2 = initial_random_smooth(g, 1.0, 1e-3, 99);
  for (int i = 0; i < g.size(); ++i) CHECK(r1.data()[i] == r2.data()[i]);
  CHECK(r1.mean_abs() == 0.0);
  CHECK(r1.hermitian_defect() == 0.0);
  CHECK(initial_random_smooth(g, 1.0, 1e-3, 100).coeff(1) != r1.coeff(1));

  // A coarse draw is the prefix of a fine draw with the same seed.
  const Grid coarse(16);
  const SpectralField rc = initial_random_smooth(coarse, 1.0, 1e-3, 99);
  for (int k = 1; k < coarse.max_wavenumber(); ++k) CHECK(rc.coeff(k) == r1.coeff(k));

  CHECK_THROWS_AS(initial_from_modes(g, {{0, cd(1.0)}}), std::invalid_argument);
  const SpectralField m = initial_from_modes(g, {{2, cd(0.1, 0.2)}});
  CHECK(m.coeff(-2) == std::conj(cd(0.1, 0.2)));
}

TEST_CASE("velocity construction modes for the bidirectional state") {
  const Grid g(32);
  const ModelParams p{0.5, 0.0, 1.0};
  const SpectralField f0 = initial_single_mode(g, 1, 1e-3);

  const BiState zero = make_bi_state(f0, FtMode::Zero, p);
  CHECK(zero.ft.max_abs() == 0.0);

  const BiState same = make_bi_state(f0, FtMode::Same, p);
  CHECK(max_coeff_diff(same.ft, f0) == 0.0);

  const BiState eigen = make_bi_state(f0, FtMode::EigenMinus, p);
  const cd want = -bi_symbol(1, p).lambda_minus * f0.coeff(1);
  CHECK(std::abs(eigen.ft.coeff(1) - want) < 1e-18);
  CHECK(eigen.ft.hermitian_defect() == 0.0);
}

TEST_CASE("bi-state grids must match") {
  CHECK_THROWS_AS(BiState(SpectralField(Grid(16)), SpectralField(Grid(32))),
                  std::invalid_argument);
}

}  // TEST_SUITE
