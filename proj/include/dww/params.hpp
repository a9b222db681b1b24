#pragma once

#include <stdexcept>

namespace dww {

// Physical parameters shared by all model variants.
struct ModelParams {
  double delta = 0.5;    // viscosity strength; runs require delta > 0
  double beta = 0.0;     // Bond number (capillary/gravity ratio), >= 0
  double epsilon = 1.0;  // wave steepness, > 0

  void validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("ModelParams: delta must be > 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("ModelParams: beta must be >= 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("ModelParams: epsilon must be > 0");
  }
};

// Input data carries non-negligible energy in the top modes of the grid.
class UnderResolvedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dww
