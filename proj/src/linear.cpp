#include "dww/linear.hpp"

#include <cmath>
#include <stdexcept>

#include "dww/spectral.hpp"

namespace dww {

cd phi1(cd z) {
  if (std::abs(z) < 0.5) {
    // sum_{j>=0} z^j/(j+1)!
    cd sum = 1.0;
    cd term = 1.0;
    for (int j = 1; j < 40; ++j) {
      term *= z / static_cast<double>(j + 1);
      sum += term;
      if (std::abs(term) < 1e-20 * std::abs(sum)) break;
    }
    return sum;
  }
  return (std::exp(z) - 1.0) / z;
}

BiModeSymbol bi_symbol(int n, const ModelParams& p) {
  if (n == 0) throw std::domain_error("bi_symbol: the zero mode carries no dynamics");
  BiModeSymbol s;
  s.n = n;
  s.delta = p.delta;
  s.beta = p.beta;
  const double an = std::abs(static_cast<double>(n));
  const double re = p.delta * an * an;
  const double im = std::sqrt(an * (1.0 + p.beta * an * an));
  s.lambda_minus = cd(re, -im);
  s.lambda_plus = cd(re, im);
  const cd lm = s.lambda_minus, lp = s.lambda_plus;
  s.S = {cd(1.0), cd(1.0), -lm, -lp};
  const cd den = lm - lp;  // -2i*im, nonzero for n != 0
  s.S_inv = {-lp / den, -1.0 / den, lm / den, 1.0 / den};
  return s;
}

std::array<cd, 4> bi_propagator(double t, const BiModeSymbol& sym) {
  const cd lm = sym.lambda_minus, lp = sym.lambda_plus;
  // e^{-tL} = S e^{-tD} S^{-1}; written with phi1 so the (e^{-t lp} - e^{-t lm})
  // differences stay accurate when t|lp - lm| is small.
  const cd base = std::exp(-t * lm);
  const cd q = t * phi1(-t * (lp - lm)) * base;  // (e^{-t lp} - e^{-t lm})/(lm - lp)
  return {base + lm * q, q, -lm * lp * q, base - lp * q};
}

ModePair bi_propagate(const ModePair& state, double t, const BiModeSymbol& sym) {
  const auto m = bi_propagator(t, sym);
  return {m[0] * state.f + m[1] * state.ft, m[2] * state.f + m[3] * state.ft};
}

ForcingWeight bi_duhamel_weight(double elapsed, const BiModeSymbol& sym) {
  const auto m = bi_propagator(elapsed, sym);
  return {m[1], m[3]};
}

ForcingWeight bi_etd1_weight(double dt, const BiModeSymbol& sym) {
  const cd lm = sym.lambda_minus, lp = sym.lambda_plus;
  const cd gm = dt * phi1(-dt * lm);  // int_0^dt e^{-s lm} ds
  const cd gp = dt * phi1(-dt * lp);
  // Column int_0^dt e^{-sL} (0,1)^T ds of the integrated semigroup; the ft
  // entry collapses to the propagator's (1,2) entry at dt.
  ForcingWeight w;
  w.on_f = (gp - gm) / (lm - lp);
  w.on_ft = bi_propagator(dt, sym)[1];
  return w;
}

RatioBoundReport ratio_bound_check(int n_max, const ModelParams& p) {
  if (n_max < 1) throw std::invalid_argument("ratio_bound_check: n_max must be >= 1");
  RatioBoundReport r;
  r.n_max = n_max;
  bool first = true;
  for (int n = 1; n <= n_max; ++n) {
    const BiModeSymbol s = bi_symbol(n, p);
    const double ratio = std::abs(s.lambda_plus) / std::abs(s.lambda_minus - s.lambda_plus);
    const double bound =
        0.5 * (1.0 + p.delta * std::sqrt(static_cast<double>(n) / (1.0 + p.beta)));
    const double slack = bound - ratio;
    if (first || slack < r.min_slack) {
      r.min_slack = slack;
      r.min_slack_n = n;
      first = false;
    }
    if (slack < 0.0) {
      ++r.violations;
      if (r.first_violation_n == 0) r.first_violation_n = n;
    }
  }
  return r;
}

UniModeSymbol uni_symbol(int k, const ModelParams& p) {
  if (k == 0) throw std::domain_error("uni_symbol: the zero mode carries no dynamics");
  const double d = p.delta, b = p.beta;
  const double kk = static_cast<double>(k);
  const double ak = std::abs(kk);
  const double den = 1.0 + d * d * kk * kk;
  const cd front = cd(1.0, -d * kk) / den;
  cd lambda = -front * cd(-2.0 * d * ak * ak, kk - static_cast<double>(sgn(k)));
  lambda += cd(0.0, b * kk * ak) / den;
  lambda += b * d * ak * ak * ak / den;
  lambda += cd(0.0, d * d * kk * kk * kk) / den;
  lambda += d * d * d * kk * kk * kk * kk / den;
  if (lambda.real() < p.delta - 1e-12 * (1.0 + std::abs(lambda)))
    throw std::logic_error("uni_symbol: Re lambda(k) >= delta violated");
  return {k, lambda};
}

cd uni_propagate(cd u_hat, double t, const UniModeSymbol& sym, double epsilon) {
  return u_hat * std::exp(-sym.lambda * t / (2.0 * epsilon));
}

}  // namespace dww
