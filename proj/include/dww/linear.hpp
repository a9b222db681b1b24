#pragma once

#include <array>
#include <complex>

#include "dww/params.hpp"

namespace dww {

using cd = std::complex<double>;

// phi1(z) = (e^z - 1)/z, continued by 1 at z = 0; series evaluation near the
// origin to avoid cancellation.
cd phi1(cd z);

// Per-mode data of the bidirectional linear operator
//   L(n) = [[0, -1], [omega(n), 2*delta*n^2]],  omega = |n| + beta|n|^3 + delta^2 n^4,
// with eigenvalues lambda_pm = delta n^2 +- i sqrt(|n|(1 + beta n^2)) and
// eigenvector matrix S = [[1, 1], [-lambda_-, -lambda_+]], L = S D S^{-1}.
struct BiModeSymbol {
  int n = 0;
  double delta = 0.0;
  double beta = 0.0;
  cd lambda_minus;
  cd lambda_plus;

  // S and S_inv stored row-major: {m00, m01, m10, m11}.
  std::array<cd, 4> S{};
  std::array<cd, 4> S_inv{};

  double omega() const { return (lambda_minus * lambda_plus).real(); }
};

BiModeSymbol bi_symbol(int n, const ModelParams& p);

struct ModePair {
  cd f{};
  cd ft{};
};

// Entries of the exact propagator e^{-tL(n)}, row-major.
std::array<cd, 4> bi_propagator(double t, const BiModeSymbol& sym);

ModePair bi_propagate(const ModePair& state, double t, const BiModeSymbol& sym);

// Forcing enters the velocity slot only; the Duhamel kernel column is
// e^{-sL(n)} (0,1)^T.
struct ForcingWeight {
  cd on_f{};
  cd on_ft{};
};

ForcingWeight bi_duhamel_weight(double elapsed, const BiModeSymbol& sym);

// Integral of the kernel column over one step, int_0^dt e^{-sL} (0,1)^T ds;
// the exponential-Euler weight.
ForcingWeight bi_etd1_weight(double dt, const BiModeSymbol& sym);

// Sweep of |lambda_pm| / |lambda_- - lambda_+| against the candidate bound
// (1 + delta sqrt(n/(1+beta)))/2 for 1 <= n <= n_max.
struct RatioBoundReport {
  int n_max = 0;
  double min_slack = 0.0;  // min over n of (bound - ratio)
  int min_slack_n = 0;
  int first_violation_n = 0;  // 0 when the bound holds everywhere
  long violations = 0;

  bool holds() const { return violations == 0; }
};

RatioBoundReport ratio_bound_check(int n_max, const ModelParams& p);

// Scalar symbol lambda(k) of the unidirectional linear operator, evaluated
// term by term:
//   lambda(k) = -(1 - i delta k)/(1 + delta^2 k^2) (ik - 2 delta k^2 - i sgn k)
//             + beta i k|k|/(1+delta^2 k^2) + beta delta |k|^3/(1+delta^2 k^2)
//             + i delta^2 k^3/(1+delta^2 k^2) + delta^3 k^4/(1+delta^2 k^2).
// Re lambda(k) >= delta for every |k| >= 1 (checked on construction).
struct UniModeSymbol {
  int k = 0;
  cd lambda;
};

UniModeSymbol uni_symbol(int k, const ModelParams& p);

// Homogeneous propagation over time t: u * e^{-lambda t/(2 epsilon)}. The
// factor 2 comes from the 2*epsilon*u_t normalization of the evolution.
cd uni_propagate(cd u_hat, double t, const UniModeSymbol& sym, double epsilon = 1.0);

}  // namespace dww
