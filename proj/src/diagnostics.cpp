#include "dww/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dww {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_mean_ok(const SpectralField& f, double s) {
  if (s < 0.0 && !f.has_zero_mean())
    throw std::domain_error("norm: negative order requires a zero-mean field");
}

}  // namespace

double wiener_norm(const SpectralField& f, double s) {
  require_mean_ok(f, s);
  double acc = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const int k = f.grid().wavenumber_at(i);
    if (k == 0) continue;
    acc += std::pow(std::abs(static_cast<double>(k)), s) * std::abs(f.data()[i]);
  }
  return acc;
}

double sobolev_norm(const SpectralField& f, double s) {
  require_mean_ok(f, s);
  double acc = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const int k = f.grid().wavenumber_at(i);
    if (k == 0) continue;
    acc += std::pow(std::abs(static_cast<double>(k)), 2.0 * s) * std::norm(f.data()[i]);
  }
  return std::sqrt(two_pi * acc);
}

double norm(const SpectralField& f, const NormSpec& spec) {
  return spec.family == NormFamily::WienerA ? wiener_norm(f, spec.order)
                                            : sobolev_norm(f, spec.order);
}

double pairing_l2(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("pairing_l2: grid mismatch");
  double acc = 0.0;
  for (int i = 0; i < a.size(); ++i)
    acc += (a.data()[i] * std::conj(b.data()[i])).real();
  return two_pi * acc;
}

EnergyReport energy_bi(const BiState& state, const ModelParams& p) {
  EnergyReport r;
  const double ft4 = sobolev_norm(state.ft, 4.0);
  const double f55 = sobolev_norm(state.f, 5.5);
  const double f6 = sobolev_norm(state.f, 6.0);
  const double f45 = sobolev_norm(state.f, 4.5);
  r.E = ft4 * ft4 + p.beta * f55 * f55 + p.delta * p.delta * f6 * f6 + f45 * f45;
  const double ft5 = sobolev_norm(state.ft, 5.0);
  r.D = 2.0 * p.delta * ft5 * ft5;
  return r;
}

std::array<double, 6> energy_terms_I(const BiState& state, const ModelParams& p) {
  const auto terms = bi_forcing_terms(state, p, ModelKind::BiQuadratic);
  const SpectralField weight = lambda_pow(state.ft, 8.0);
  std::array<double, 6> I{};
  for (std::size_t i = 0; i < 6; ++i) I[i] = pairing_l2(terms[i], weight);
  return I;
}

double forcing_power(const BiState& state, const ModelParams& p, ModelKind kind) {
  return pairing_l2(bi_forcing(state, p, kind), lambda_pow(state.ft, 8.0));
}

double balance_residual_at(std::span<const DiagRow> rows, std::size_t i) {
  if (i < 1 || i + 1 >= rows.size())
    throw std::out_of_range("balance_residual_at: interior rows only");
  const double hm = rows[i].t - rows[i - 1].t;
  const double hp = rows[i + 1].t - rows[i].t;
  if (!(hm > 0.0) || !(hp > 0.0))
    throw std::invalid_argument("balance_residual_at: rows must increase in t");
  // Three-point derivative, second order also for hm != hp.
  const double dE = (rows[i + 1].energy * hm * hm - rows[i - 1].energy * hp * hp +
                     rows[i].energy * (hp * hp - hm * hm)) /
                    (hm * hp * (hm + hp));
  return std::abs(0.5 * dE + rows[i].dissipation - rows[i].forcing_power);
}

double balance_residual(std::span<const DiagRow> rows) {
  if (rows.size() < 3)
    throw std::invalid_argument("balance_residual: need at least 3 diagnostic rows");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i)
    worst = std::max(worst, balance_residual_at(rows, i));
  return worst;
}

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> value, double t0,
                        double t1) {
  if (t.size() != value.size()) throw std::invalid_argument("fit_decay_rate: size mismatch");
  DecayFit fit;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1) continue;
    if (!(value[i] > 0.0)) {  // decayed to the rounding floor: stop here
      fit.truncated = true;
      break;
    }
    xs.push_back(t[i]);
    ys.push_back(std::log(value[i]));
  }
  if (xs.size() < 10)
    throw std::invalid_argument("fit_decay_rate: need at least 10 positive samples in window");

  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  fit.rate = -slope;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.samples = static_cast<int>(xs.size());
  fit.t_begin = xs.front();
  fit.t_end = xs.back();
  return fit;
}

}  // namespace dww
