#include "dww/models.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dww/linear.hpp"

namespace dww {

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::BiQuadratic: return "bi_quadratic";
    case ModelKind::BiCubic: return "bi_cubic";
    case ModelKind::Unidirectional: return "unidirectional";
  }
  return "?";
}

BiState::BiState(SpectralField f_, SpectralField ft_) : f(std::move(f_)), ft(std::move(ft_)) {
  if (!(f.grid() == ft.grid())) throw std::invalid_argument("BiState: grid mismatch");
}

namespace {

SpectralField zero_like(const SpectralField& f) { return SpectralField(f.grid()); }

}  // namespace

std::vector<SpectralField> bi_forcing_terms(const BiState& state, const ModelParams& p,
                                            ModelKind kind, ResolutionGuard guard) {
  if (kind == ModelKind::Unidirectional)
    throw std::invalid_argument("bi_forcing_terms: bidirectional kinds only");
  if (guard == ResolutionGuard::Enforce) {
    check_resolution(state.f);
    check_resolution(state.ft);
  }

  const auto& f = state.f;
  const auto& ft = state.ft;
  const double d = p.delta;
  const double b = p.beta;
  const double e = p.epsilon;

  const SpectralField Hft = hilbert(ft);
  const SpectralField Hfxx = hilbert(derivative(f, 2));

  std::vector<SpectralField> terms;
  terms.reserve(kind == ModelKind::BiCubic ? 8 : 6);

  terms.push_back(-e * lambda_pow(dealiased_product(Hft, Hft), 1.0));
  terms.push_back(e * derivative(commutator_H(f, lambda_pow(f, 1.0))));
  terms.push_back(b == 0.0 ? zero_like(f)
                           : (e * b) * derivative(commutator_H(f, lambda_pow(f, 3.0))));
  terms.push_back((e * d) * derivative(commutator_H(Hft, Hfxx)));
  terms.push_back((e * d) * lambda_pow(dealiased_product(Hft, Hfxx), 1.0));
  terms.push_back((-e * d) * derivative(commutator_dxx(f, Hft)));

  if (kind == ModelKind::BiCubic) {
    terms.push_back((e * d * d) *
                    derivative(commutator_dxx(f, lambda_pow(derivative(f), 1.0))));
    terms.push_back((-e * d * d) *
                    derivative(commutator_H(derivative(f, 2), derivative(f, 2))));
  }
  return terms;
}

SpectralField bi_forcing(const BiState& state, const ModelParams& p, ModelKind kind,
                         ResolutionGuard guard) {
  auto terms = bi_forcing_terms(state, p, kind, guard);
  SpectralField sum(state.grid());
  for (const auto& t : terms) sum += t;
  return sum;
}

SpectralField uni_rhs_nonlinear(const SpectralField& u, const ModelParams& p,
                                ResolutionGuard guard) {
  if (!u.has_zero_mean())
    throw std::domain_error("uni_rhs_nonlinear: input must have zero mean");
  if (guard == ResolutionGuard::Enforce) check_resolution(u);

  const double d = p.delta;
  const double b = p.beta;

  const SpectralField ux = derivative(u);
  const SpectralField linv = lambda_pow(u, -1.0);

  SpectralField brace = 2.0 * dealiased_product(u, ux);
  brace += lambda_pow(commutator_H(linv, u), 1.0);
  if (b != 0.0) brace += b * lambda_pow(commutator_H(linv, lambda_pow(u, 2.0)), 1.0);
  if (d != 0.0) {
    brace -= d * lambda_pow(commutator_H(u, ux), 1.0);
    brace += d * derivative(dealiased_product(u, ux));
    brace += d * lambda_pow(commutator_dxx(linv, u), 1.0);
  }
  return (-p.epsilon) * op_N(brace, p);
}

SpectralField uni_split_linear(const SpectralField& u, const ModelParams& p) {
  const double d = p.delta;
  const double b = p.beta;
  SpectralField out = op_N(derivative(u), p);
  out += 2.0 * d * op_N(derivative(u, 2), p);
  out += op_N(hilbert(u), p);
  out -= b * op_P(hilbert(derivative(u, 2)), p);
  out += (b * d) * op_P(lambda_pow(derivative(u, 2), 1.0), p);
  out += (d * d) * op_P(derivative(u, 3), p);
  out -= (d * d * d) * op_P(derivative(u, 4), p);
  return out;
}

SpectralField initial_single_mode(const Grid& grid, int k, double amplitude) {
  if (k == 0) throw std::invalid_argument("initial_single_mode: mean offsets are rejected");
  // The unpaired Nyquist mode cannot hold a cosine of arbitrary phase.
  if (k < 1 || k >= grid.max_wavenumber())
    throw std::invalid_argument("initial_single_mode: wavenumber outside the usable band");
  SpectralField f(grid);
  f.set_coeff(k, 0.5 * amplitude);
  f.set_coeff(-k, 0.5 * amplitude);
  return f;
}

SpectralField initial_two_mode(const Grid& grid, int k1, double a1, int k2, double a2) {
  SpectralField f = initial_single_mode(grid, k1, a1);
  if (k2 == k1) throw std::invalid_argument("initial_two_mode: wavenumbers must differ");
  SpectralField g = initial_single_mode(grid, k2, a2);
  return f + g;
}

SpectralField initial_random_smooth(const Grid& grid, double decay, double amplitude,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Map engine output to [0,1) directly so the draw sequence is fixed by the
  // standard, not by the library's distribution implementation.
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  SpectralField f(grid);
  // Draw in increasing k so a finer grid extends (not reshuffles) a coarser one.
  for (int k = 1; k < grid.max_wavenumber(); ++k) {
    const double mag = amplitude * std::exp(-decay * k) * (0.5 + 0.5 * unit());
    const double phase = 2.0 * std::numbers::pi * unit();
    const cd c = 0.5 * mag * std::polar(1.0, phase);
    f.set_coeff(k, c);
    f.set_coeff(-k, std::conj(c));
  }
  return f;
}

SpectralField initial_from_modes(const Grid& grid,
                                 const std::vector<std::pair<int, cd>>& modes) {
  SpectralField f(grid);
  for (const auto& [k, c] : modes) {
    if (k == 0) throw std::invalid_argument("initial_from_modes: mean offsets are rejected");
    if (k < 1 || k >= grid.max_wavenumber())
      throw std::invalid_argument("initial_from_modes: wavenumber outside the usable band");
    f.set_coeff(k, c);
    f.set_coeff(-k, std::conj(c));
  }
  return f;
}

BiState make_bi_state(SpectralField f0, FtMode mode, const ModelParams& p) {
  switch (mode) {
    case FtMode::Zero: {
      SpectralField ft(f0.grid());
      return BiState(std::move(f0), std::move(ft));
    }
    case FtMode::Same: {
      SpectralField ft = f0;
      return BiState(std::move(f0), std::move(ft));
    }
    case FtMode::EigenMinus: {
      SpectralField ft(f0.grid());
      for (int k = 1; k <= f0.grid().max_wavenumber(); ++k) {
        const cd c = f0.coeff(k);
        if (c == cd{}) continue;
        const cd v = -bi_symbol(k, p).lambda_minus * c;
        ft.set_coeff(k, v);
        if (-k >= f0.grid().min_wavenumber()) ft.set_coeff(-k, std::conj(v));
      }
      return BiState(std::move(f0), std::move(ft));
    }
  }
  throw std::logic_error("make_bi_state: unknown FtMode");
}

}  // namespace dww
