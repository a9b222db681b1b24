#include "dww/oracles.hpp"

#include <cmath>

namespace dww::oracles {

namespace {

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 add(const Mat2& a, const Mat2& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

Mat2 scale(const Mat2& a, cd s) { return {a[0] * s, a[1] * s, a[2] * s, a[3] * s}; }

double norm1(const Mat2& a) {
  return std::max(std::abs(a[0]) + std::abs(a[2]), std::abs(a[1]) + std::abs(a[3]));
}

}  // namespace

Mat2 companion_matrix(int n, const ModelParams& p) {
  const double an = std::abs(static_cast<double>(n));
  const double omega = an + p.beta * an * an * an + p.delta * p.delta * an * an * an * an;
  return {cd(0.0), cd(-1.0), cd(omega), cd(2.0 * p.delta * an * an)};
}

Mat2 expm(const Mat2& a) {
  int squarings = 0;
  double nrm = norm1(a);
  while (nrm > 0.5 && squarings < 80) {
    nrm *= 0.5;
    ++squarings;
  }
  const Mat2 b = scale(a, 1.0 / std::ldexp(1.0, squarings));

  Mat2 result{cd(1.0), cd(0.0), cd(0.0), cd(1.0)};
  Mat2 term = result;
  for (int j = 1; j <= 24; ++j) {
    term = scale(mul(term, b), 1.0 / static_cast<double>(j));
    result = add(result, term);
  }
  for (int j = 0; j < squarings; ++j) result = mul(result, result);
  return result;
}

Mat2 propagator_expm(int n, const ModelParams& p, double t) {
  return expm(scale(companion_matrix(n, p), -t));
}

ModePair integrate_forced_mode(ModePair initial, int n, const ModelParams& p, double t_final,
                               int substeps, cd (*forcing)(double t)) {
  const Mat2 L = companion_matrix(n, p);
  auto rhs = [&](double t, const ModePair& u) {
    ModePair d;
    d.f = -(L[0] * u.f + L[1] * u.ft);
    d.ft = -(L[2] * u.f + L[3] * u.ft) + forcing(t);
    return d;
  };
  const double h = t_final / static_cast<double>(substeps);
  ModePair u = initial;
  double t = 0.0;
  for (int s = 0; s < substeps; ++s) {
    const ModePair k1 = rhs(t, u);
    const ModePair k2 = rhs(t + 0.5 * h, {u.f + 0.5 * h * k1.f, u.ft + 0.5 * h * k1.ft});
    const ModePair k3 = rhs(t + 0.5 * h, {u.f + 0.5 * h * k2.f, u.ft + 0.5 * h * k2.ft});
    const ModePair k4 = rhs(t + h, {u.f + h * k3.f, u.ft + h * k3.ft});
    u.f += h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f);
    u.ft += h / 6.0 * (k1.ft + 2.0 * k2.ft + 2.0 * k3.ft + k4.ft);
    t += h;
  }
  return u;
}

}  // namespace dww::oracles
