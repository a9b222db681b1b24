#pragma once

#include <array>
#include <span>

#include "dww/models.hpp"
#include "dww/record.hpp"
#include "dww/spectral.hpp"

namespace dww {

enum class NormFamily {
  WienerA,   // sum_k |k|^s |fhat(k)|
  SobolevH,  // sqrt(2 pi sum_k |k|^{2s} |fhat(k)|^2), homogeneous
};

struct NormSpec {
  NormFamily family = NormFamily::WienerA;
  double order = 0.0;
};

// The mean mode is excluded throughout (all evolved states are zero-mean);
// a negative order on a field with nonzero mean is a domain error.
double norm(const SpectralField& f, const NormSpec& spec);

double wiener_norm(const SpectralField& f, double s);
double sobolev_norm(const SpectralField& f, double s);

// L2 pairing integral(a b dx) = 2 pi sum_k ahat(k) conj(bhat(k)) for real fields.
double pairing_l2(const SpectralField& a, const SpectralField& b);

struct EnergyReport {
  double E = 0.0;
  double D = 0.0;
  std::array<double, 6> I{};
  double residual = 0.0;
};

// E = |ft|_{H4}^2 + beta |f|_{H5.5}^2 + delta^2 |f|_{H6}^2 + |f|_{H4.5}^2,
// D = 2 delta |ft|_{H5}^2  (homogeneous norms).
EnergyReport energy_bi(const BiState& state, const ModelParams& p);

// I_i = <T_i, Lambda^8 ft> over the six terms of the quadratic forcing
// (epsilon included), making the balance dE/dt/2 + D = sum I_i an identity.
std::array<double, 6> energy_terms_I(const BiState& state, const ModelParams& p);

// <F, Lambda^8 ft> with the full forcing of the given kind; equals
// sum(energy_terms_I) for BiQuadratic and adds the two delta^2 pairings for
// BiCubic.
double forcing_power(const BiState& state, const ModelParams& p, ModelKind kind);

// Max over interior rows of |E'/2 + D - forcing_power| with E' from a
// three-point centered difference. Needs at least 3 rows.
double balance_residual(std::span<const DiagRow> rows);

// Residual at one interior row (1 <= i <= rows.size()-2); handles a nonuniform
// final spacing.
double balance_residual_at(std::span<const DiagRow> rows, std::size_t i);

struct DecayFit {
  double rate = 0.0;       // minus the least-squares slope of log(value)
  double r_squared = 0.0;
  int samples = 0;
  double t_begin = 0.0;
  double t_end = 0.0;
  bool truncated = false;  // window was cut before a nonpositive value
};

// Least-squares fit of log(value) against t over [t0, t1]. Values that have
// decayed to the rounding floor (<= 0) truncate the window.
DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> value, double t0,
                        double t1);

}  // namespace dww
