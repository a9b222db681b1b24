#pragma once

#include <array>
#include <complex>

#include "dww/linear.hpp"
#include "dww/params.hpp"

// Independent reference computations used by tests and the verification
// suites. Nothing here reuses the closed-form eigenvector formulas of
// linear.cpp; agreement between the two routes is the point.

namespace dww::oracles {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;  // row-major

// Companion matrix L(n) = [[0, -1], [|n| + beta|n|^3 + delta^2 n^4, 2 delta n^2]]
// assembled directly from the equation coefficients.
Mat2 companion_matrix(int n, const ModelParams& p);

// Matrix exponential by scaling and squaring with a Taylor kernel.
Mat2 expm(const Mat2& a);

// e^{-tL(n)} via the oracle expm.
Mat2 propagator_expm(int n, const ModelParams& p, double t);

// Integrates d/dt (f, ft) = -L(n) (f, ft) + (0, forcing(t)) with classical RK4
// at a fine fixed step; reference for the Duhamel quadrature.
ModePair integrate_forced_mode(ModePair initial, int n, const ModelParams& p, double t_final,
                               int substeps, cd (*forcing)(double t));

}  // namespace dww::oracles
