#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "dww/spectral.hpp"

namespace dww::test {

inline SpectralField field_from(const Grid& grid,
                                const std::function<double(double)>& fn) {
  std::vector<double> samples(static_cast<size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j) samples[static_cast<size_t>(j)] = fn(grid.point(j));
  return to_spectral(samples, grid);
}

inline double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double max_sample_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline constexpr double pi = std::numbers::pi;

}  // namespace dww::test
