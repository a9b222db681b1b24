#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "dww/models.hpp"
#include "dww/params.hpp"

namespace dww {

// One diagnostics sample. For unidirectional runs a0_f carries the A0 norm of
// u, a0_ft is zero and the energy block is unused.
struct DiagRow {
  double t = 0.0;
  double a0_f = 0.0;
  double a0_ft = 0.0;
  double h2 = 0.0;
  double h4 = 0.0;
  double h6 = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  std::array<double, 6> terms_I{};
  double forcing_power = 0.0;  // <F, Lambda^8 ft>; equals sum(I) for the quadratic model
  double residual = 0.0;       // |E'/2 + D - power| at interior sample times
};

struct Snapshot {
  double t = 0.0;
  long step = 0;
  std::vector<std::complex<double>> f;   // spectrum of f (or of u)
  std::vector<std::complex<double>> ft;  // empty for unidirectional runs
};

enum class RunStatus { Completed, BlowUp, GuardTripped };

const char* to_string(RunStatus s);

struct RunRecord {
  ModelKind kind = ModelKind::BiQuadratic;
  ModelParams params;
  int n_modes = 0;
  double dt = 0.0;

  std::vector<DiagRow> rows;
  std::vector<Snapshot> snapshots;

  RunStatus status = RunStatus::Completed;
  double t_end = 0.0;
  std::string message;  // empty on clean completion
};

}  // namespace dww
