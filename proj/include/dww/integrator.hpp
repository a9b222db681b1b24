#pragma once

#include <functional>
#include <vector>

#include "dww/linear.hpp"
#include "dww/models.hpp"
#include "dww/record.hpp"
#include "dww/spectral.hpp"

namespace dww {

enum class Scheme { Etd1, EtdRk2 };

const char* to_string(Scheme s);

struct StepConfig {
  double dt = 0.0;
  Scheme scheme = Scheme::EtdRk2;
  double t_final = 0.0;
  bool resolution_guard = true;

  // The linear part is integrated exactly, so dt only controls nonlinear
  // accuracy; this default just keeps the forcing well sampled.
  static double default_dt(double delta, int k_max) {
    const double k2 = static_cast<double>(k_max) * static_cast<double>(k_max);
    return 0.5 * std::min(1.0, 1.0 / (delta * k2)) * 0.5;
  }

  void validate() const;
};

// One-step integrators built on the exact per-mode semigroup with explicit
// treatment of the nonlinear forcing (Lawson/exponential-Euler quadrature of
// the Duhamel integral).
class BiStepper {
 public:
  BiStepper(Grid grid, ModelParams p, ModelKind kind, StepConfig cfg);

  BiState step(const BiState& state) const;

  // Advances the pair with the forcing held at zero (exact linear flow).
  BiState step_linear_only(const BiState& state) const;

  double dt() const { return cfg_.dt; }

 private:
  Grid grid_;
  ModelParams params_;
  ModelKind kind_;
  StepConfig cfg_;
  // Per-storage-index tables; the k = 0 entries are unused.
  std::vector<std::array<cd, 4>> prop_;   // e^{-dt L(k)}
  std::vector<ForcingWeight> etd1_;       // integrated kernel column

  BiState apply(const BiState& state, bool with_forcing) const;
};

class UniStepper {
 public:
  UniStepper(Grid grid, ModelParams p, StepConfig cfg);

  SpectralField step(const SpectralField& u) const;
  SpectralField step_linear_only(const SpectralField& u) const;

  double dt() const { return cfg_.dt; }

 private:
  Grid grid_;
  ModelParams params_;
  StepConfig cfg_;
  std::vector<cd> decay_;  // e^{-lambda(k) dt/(2 eps)}
  std::vector<cd> etd1_;   // dt phi1(-lambda dt/(2 eps))

  SpectralField apply(const SpectralField& u, bool with_forcing) const;
};

// Free-function forms of a single step.
BiState step_bi(const BiState& state, const ModelParams& p, ModelKind kind,
                const StepConfig& cfg);
SpectralField step_uni(const SpectralField& u, const ModelParams& p, const StepConfig& cfg);

struct EvolveOptions {
  int diag_every = 1;      // diagnostics cadence in steps
  int snapshot_every = 0;  // 0: initial and final snapshots only
  double blowup_factor = 1e6;
  bool linear_only = false;  // zero the forcing (exact semigroup runs)
  std::function<void(const DiagRow&)> on_row;
};

RunRecord evolve(const BiState& initial, const ModelParams& p, ModelKind kind,
                 const StepConfig& cfg, const EvolveOptions& opts = {});
RunRecord evolve(const SpectralField& initial, const ModelParams& p, const StepConfig& cfg,
                 const EvolveOptions& opts = {});

}  // namespace dww
