#include "dww/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace dww {

namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* what) {
  if (!(a.grid() == b.grid()))
    throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace

Grid::Grid(int n_modes) : n_(n_modes) {
  if (n_modes < 4 || n_modes % 2 != 0)
    throw std::invalid_argument("Grid: n_modes must be even and >= 4");
}

double Grid::point(int j) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_);
}

SpectralField::SpectralField(Grid grid) : grid_(grid), c_(static_cast<size_t>(grid.size())) {}

bool SpectralField::has_zero_mean(double rel_tol) const {
  return mean_abs() <= rel_tol * (1.0 + max_abs());
}

double SpectralField::hermitian_defect() const {
  const int n = grid_.size();
  double d = std::abs(c_[0].imag());
  d = std::max(d, std::abs(c_[static_cast<size_t>(grid_.index_of(n / 2))].imag()));
  for (int k = 1; k < n / 2; ++k) {
    const cd pos = c_[static_cast<size_t>(grid_.index_of(k))];
    const cd neg = c_[static_cast<size_t>(grid_.index_of(-k))];
    d = std::max(d, std::abs(neg - std::conj(pos)));
  }
  return d;
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const cd& v : c_) m = std::max(m, std::abs(v));
  return m;
}

bool SpectralField::all_finite() const {
  for (const cd& v : c_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(*this, o, "operator+=");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(*this, o, "operator-=");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (cd& v : c_) v *= a;
  return *this;
}

SpectralField& SpectralField::operator*=(cd a) {
  for (cd& v : c_) v *= a;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }
SpectralField operator*(cd a, SpectralField f) { return f *= a; }

SpectralField to_spectral(std::span<const double> samples, const Grid& grid) {
  if (static_cast<int>(samples.size()) != grid.size())
    throw std::invalid_argument("to_spectral: sample count does not match grid size");
  std::vector<cd> in(samples.begin(), samples.end());
  SpectralField f(grid);
  detail::dft(in, f.data(), -1);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (cd& v : f.data()) v *= scale;
  return f;
}

std::vector<double> to_real(const SpectralField& f) {
  std::vector<cd> out(static_cast<size_t>(f.size()));
  detail::dft(f.data(), out, +1);
  std::vector<double> samples(out.size());
  for (size_t j = 0; j < out.size(); ++j) samples[j] = out[j].real();
  return samples;
}

SpectralField hilbert(const SpectralField& f) {
  return apply_multiplier(f, [](int k) { return cd(0.0, -static_cast<double>(sgn(k))); });
}

SpectralField lambda_pow(const SpectralField& f, double s) {
  if (s < 0.0 && !f.has_zero_mean())
    throw std::domain_error("lambda_pow: negative power requires a zero-mean field");
  SpectralField g = apply_multiplier(f, [s](int k) {
    return k == 0 ? cd{} : cd(std::pow(std::abs(static_cast<double>(k)), s));
  });
  return g;
}

SpectralField derivative(const SpectralField& f, int order) {
  return apply_multiplier(f, [order](int k) {
    return std::pow(cd(0.0, static_cast<double>(k)), order);
  });
}

SpectralField op_N(const SpectralField& f, const ModelParams& p) {
  const double d = p.delta;
  return apply_multiplier(f, [d](int k) {
    const double kk = static_cast<double>(k);
    return cd(1.0, -d * kk) / (1.0 + d * d * kk * kk);
  });
}

SpectralField op_P(const SpectralField& f, const ModelParams& p) {
  const double d = p.delta;
  return apply_multiplier(f, [d](int k) {
    const double kk = static_cast<double>(k);
    return cd(1.0 / (1.0 + d * d * kk * kk));
  });
}

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g, "dealiased_product");
  const int n = f.size();
  const int m = 2 * n;
  const Grid& grid = f.grid();
  const Grid wide(m);

  std::vector<cd> fw(static_cast<size_t>(m)), gw(static_cast<size_t>(m));
  for (int i = 0; i < n; ++i) {
    const int k = grid.wavenumber_at(i);
    fw[static_cast<size_t>(wide.index_of(k))] = f.data()[static_cast<size_t>(i)];
    gw[static_cast<size_t>(wide.index_of(k))] = g.data()[static_cast<size_t>(i)];
  }

  std::vector<cd> fp(static_cast<size_t>(m)), gp(static_cast<size_t>(m));
  detail::dft(fw, fp, +1);
  detail::dft(gw, gp, +1);
  for (int j = 0; j < m; ++j) fp[static_cast<size_t>(j)] *= gp[static_cast<size_t>(j)];
  detail::dft(fp, fw, -1);

  SpectralField h(grid);
  const double scale = 1.0 / static_cast<double>(m);
  for (int i = 0; i < n; ++i) {
    const int k = grid.wavenumber_at(i);
    h.data()[static_cast<size_t>(i)] = scale * fw[static_cast<size_t>(wide.index_of(k))];
  }
  // The +n/2 mode has no -n/2 partner on this grid; a real product cannot
  // keep a one-sided harmonic there.
  h.set_coeff(n / 2, cd{});
  return h;
}

SpectralField naive_convolution(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g, "naive_convolution");
  const Grid& grid = f.grid();
  const int lo = grid.min_wavenumber();
  const int hi = grid.max_wavenumber();
  SpectralField h(grid);
  for (int k = lo; k <= hi; ++k) {
    cd acc{};
    for (int n = lo; n <= hi; ++n) {
      const int r = k - n;
      if (r < lo || r > hi) continue;
      acc += f.coeff(n) * g.coeff(r);
    }
    h.set_coeff(k, acc);
  }
  h.set_coeff(hi, cd{});  // unpaired Nyquist mode, as in dealiased_product
  return h;
}

SpectralField commutator_H(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b, "commutator_H");
  return hilbert(dealiased_product(a, b)) - dealiased_product(a, hilbert(b));
}

SpectralField commutator_dxx(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b, "commutator_dxx");
  return dealiased_product(derivative(a, 2), b) +
         2.0 * dealiased_product(derivative(a, 1), derivative(b, 1));
}

SpectralField resample(const SpectralField& f, const Grid& target) {
  SpectralField g(target);
  const int lo = std::max(f.grid().min_wavenumber(), target.min_wavenumber());
  const int hi = std::min(f.grid().max_wavenumber(), target.max_wavenumber());
  for (int k = lo; k <= hi; ++k) g.set_coeff(k, f.coeff(k));
  return g;
}

void check_resolution(const SpectralField& f) {
  const int kmax = f.grid().max_wavenumber();
  const int k_lo = std::max(1, static_cast<int>(std::ceil(0.9 * kmax)));
  double top = 0.0;
  for (int k = k_lo; k <= kmax; ++k) {
    top = std::max(top, std::abs(f.coeff(k)));
    if (-k >= f.grid().min_wavenumber()) top = std::max(top, std::abs(f.coeff(-k)));
  }
  if (top >= 1e-10)
    throw UnderResolvedError("field is under-resolved: top-decade coefficient magnitude " +
                             std::to_string(top));
}

}  // namespace dww
