#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dww/params.hpp"
#include "dww/spectral.hpp"

namespace dww {

enum class ModelKind { BiQuadratic, BiCubic, Unidirectional };

const char* to_string(ModelKind kind);

// State of the bidirectional models: the surface proxy f and its time
// derivative, both zero-mean real fields on the same grid.
struct BiState {
  SpectralField f;
  SpectralField ft;

  BiState(SpectralField f_, SpectralField ft_);
  const Grid& grid() const { return f.grid(); }
};

// Controls the top-decade coefficient check on forcing inputs.
enum class ResolutionGuard { Enforce, Off };

// The bidirectional forcing terms, each scaled by epsilon:
//   T1 = -Lambda((H ft)^2)
//   T2 = dx [H, f] Lambda f
//   T3 = beta dx [H, f] Lambda^3 f
//   T4 = delta dx [H, H ft] H dxx f
//   T5 = delta Lambda(H ft * H dxx f)
//   T6 = -delta dx [dxx, f] H ft
// and for the cubic variant additionally
//   T7 = +delta^2 dx [dxx, f] Lambda dx f
//   T8 = -delta^2 dx [H, dxx f] dxx f.
// Returns 6 fields for BiQuadratic, 8 for BiCubic.
std::vector<SpectralField> bi_forcing_terms(const BiState& state, const ModelParams& p,
                                            ModelKind kind,
                                            ResolutionGuard guard = ResolutionGuard::Enforce);

// Sum of the terms above; the full right-hand side of f_tt + 2 delta Lambda^2 f_t
// + Lambda f + beta Lambda^3 f + delta^2 Lambda^4 f = F.
SpectralField bi_forcing(const BiState& state, const ModelParams& p, ModelKind kind,
                         ResolutionGuard guard = ResolutionGuard::Enforce);

// Nonlinear part of the unidirectional equation,
//   -epsilon N{ 2 u u_x + Lambda [H, Lambda^{-1}u] u + beta Lambda [H, Lambda^{-1}u] Lambda^2 u
//               - delta Lambda [H, u] u_x + delta dx(u u_x) + delta Lambda [dxx, Lambda^{-1}u] u }.
// Requires zero-mean input (Lambda^{-1} appears inside).
SpectralField uni_rhs_nonlinear(const SpectralField& u, const ModelParams& p,
                                ResolutionGuard guard = ResolutionGuard::Enforce);

// Split form of the unidirectional linear right-hand side,
//   N u_x + 2 delta N u_xx + N H u - beta P H dxx u + beta delta P Lambda dxx u
//   + delta^2 P dx^3 u - delta^3 P dx^4 u.
// Agrees modewise with -lambda(k) uhat(k) from uni_symbol.
SpectralField uni_split_linear(const SpectralField& u, const ModelParams& p);

// ---- initial data -----------------------------------------------------------

// amplitude * cos(kx); k >= 1.
SpectralField initial_single_mode(const Grid& grid, int k, double amplitude);

SpectralField initial_two_mode(const Grid& grid, int k1, double a1, int k2, double a2);

// Coefficients amplitude * e^{-decay*k} with random phases, reproducible for a
// fixed seed independently of platform.
SpectralField initial_random_smooth(const Grid& grid, double decay, double amplitude,
                                    std::uint64_t seed);

// Builds a zero-mean real field from explicit positive-wavenumber coefficients;
// negative modes are filled by conjugation. A k <= 0 entry is rejected.
SpectralField initial_from_modes(const Grid& grid,
                                 const std::vector<std::pair<int, cd>>& modes);

// How the velocity component of a bidirectional initial state is produced.
enum class FtMode {
  Zero,       // ft = 0
  Same,       // ft equals the f preset
  EigenMinus  // per-mode ft = -lambda_-(|k|) fhat(k): each mode rides the
              // decaying lambda_- branch, |fhat| decays as e^{-delta k^2 t}
};

BiState make_bi_state(SpectralField f0, FtMode mode, const ModelParams& p);

}  // namespace dww
