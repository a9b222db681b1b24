#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dww/params.hpp"

namespace dww {

using cd = std::complex<double>;

inline int sgn(int k) { return (k > 0) - (k < 0); }

// Uniform periodic grid on the circle, collocation points x_j = 2*pi*j/n.
// The retained wavenumbers are the integers -n/2+1 .. n/2.
class Grid {
 public:
  explicit Grid(int n_modes);

  int size() const noexcept { return n_; }
  int max_wavenumber() const noexcept { return n_ / 2; }
  int min_wavenumber() const noexcept { return -n_ / 2 + 1; }
  double point(int j) const noexcept;

  // FFT storage layout: index i holds wavenumber i for i <= n/2, i-n above.
  int index_of(int k) const noexcept { return k >= 0 ? k : k + n_; }
  int wavenumber_at(int i) const noexcept { return i <= n_ / 2 ? i : i - n_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
};

// Complex Fourier coefficients of a real periodic function under the
// convention f(x) = sum_k fhat(k) e^{ikx}, so fhat(-k) = conj(fhat(k)).
class SpectralField {
 public:
  explicit SpectralField(Grid grid);

  const Grid& grid() const noexcept { return grid_; }
  int size() const noexcept { return grid_.size(); }

  cd coeff(int k) const { return c_[grid_.index_of(k)]; }
  void set_coeff(int k, cd v) { c_[grid_.index_of(k)] = v; }

  std::span<cd> data() noexcept { return c_; }
  std::span<const cd> data() const noexcept { return c_; }

  double mean_abs() const { return std::abs(c_[0]); }
  bool has_zero_mean(double rel_tol = 1e-13) const;
  void clear_mean() { c_[0] = cd{}; }

  // max_k |fhat(-k) - conj(fhat(k))|, including Im fhat(0) and the Nyquist mode.
  double hermitian_defect() const;

  double max_abs() const;
  bool all_finite() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
  SpectralField& operator*=(cd a);

 private:
  Grid grid_;
  std::vector<cd> c_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);
SpectralField operator*(cd a, SpectralField f);

// Trigonometric interpolation of point samples; inverse of to_real.
SpectralField to_spectral(std::span<const double> samples, const Grid& grid);
std::vector<double> to_real(const SpectralField& f);

// Modewise symbol application: ghat(k) = symbol(k) * fhat(k).
template <typename Symbol>
SpectralField apply_multiplier(const SpectralField& f, Symbol&& symbol) {
  SpectralField g(f.grid());
  auto in = f.data();
  auto out = g.data();
  const int n = f.size();
  for (int i = 0; i < n; ++i) out[i] = cd(symbol(f.grid().wavenumber_at(i))) * in[i];
  return g;
}

// Hilbert transform, symbol -i*sgn(k); annihilates the mean mode.
SpectralField hilbert(const SpectralField& f);

// Lambda^s = |k|^s with the mean mode mapped to zero. Negative s requires a
// zero-mean input.
SpectralField lambda_pow(const SpectralField& f, double s);

// d^m/dx^m, symbol (ik)^m.
SpectralField derivative(const SpectralField& f, int order = 1);

// Rational multipliers (1 - i*delta*k)/(1 + delta^2 k^2) and 1/(1 + delta^2 k^2).
SpectralField op_N(const SpectralField& f, const ModelParams& p);
SpectralField op_P(const SpectralField& f, const ModelParams& p);

// Pointwise product evaluated on a zero-padded grid (padding factor 2, beyond
// the 3/2 minimum), so retained-mode coefficients are free of aliasing.
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

// Direct O(n^2) convolution sum over retained-mode pairs; ground truth for
// dealiased_product and the commutators.
SpectralField naive_convolution(const SpectralField& f, const SpectralField& g);

// [H, a]b = H(ab) - a Hb. The output can carry a nonzero mean.
SpectralField commutator_H(const SpectralField& a, const SpectralField& b);

// [dxx, a]b = a''b + 2a'b' (expanded Leibniz form).
SpectralField commutator_dxx(const SpectralField& a, const SpectralField& b);

// Copies the shared wavenumber band onto another grid; new modes are zero,
// modes outside the target band are dropped.
SpectralField resample(const SpectralField& f, const Grid& target);

// Throws UnderResolvedError when the top decade of modes (|k| >= 0.9*kmax)
// carries coefficients of magnitude >= 1e-10.
void check_resolution(const SpectralField& f);

}  // namespace dww
