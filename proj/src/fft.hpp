#pragma once

#include <complex>
#include <span>

namespace dww::detail {

// Unnormalized DFT: sign=-1 computes sum_j x_j e^{-2pi i jk/n} (analysis up to
// the 1/n factor), sign=+1 the synthesis sum. Thread-safe.
void dft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign);

}  // namespace dww::detail
