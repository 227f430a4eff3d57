#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "qte/matrix.hpp"

namespace qte {

// Gibbs state ρ(T) = e^{−βH}/Z with k_B = 1, computed by spectral
// decomposition (exact for Hermitian H — no series truncation).
//
// To keep β as large as 10⁶ overflow-free, the ground energy is subtracted
// before exponentiation. The reported partition function uses that shifted
// convention: Z_shifted = Σᵢ e^{−β(λᵢ−λ_min)} = e^{β·λ_min}·Tr e^{−βH},
// with the shift recorded alongside. ρ itself is unaffected by the shift.
struct ThermalState {
  ComplexMatrix rho;
  double temperature = 0.0;
  double beta = 0.0;
  double partition_function = 0.0;  // shifted convention, see above
  double energy_shift = 0.0;        // λ_min subtracted in the exponent
};

inline ThermalState gibbs_state(const ComplexMatrix& h, double temperature) {
  if (!(temperature > 0.0))
    throw NonPositiveTemperature("gibbs_state: temperature must be > 0, got " +
                                 std::to_string(temperature));
  const Spectrum s = hermitian_eigen(h);  // rejects non-Hermitian input
  const double beta = 1.0 / temperature;
  const double shift = s.values(0);  // eigenvalues ascend, so this is λ_min
  const RealVector weights = (-beta * (s.values.array() - shift)).exp();
  const double z = weights.sum();  // ≥ 1: the ground term contributes e⁰

  ComplexMatrix rho = s.vectors * (weights / z).asDiagonal() * s.vectors.adjoint();
  // The triple product leaves last-bit asymmetry; make ρ exactly Hermitian.
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return {std::move(rho), temperature, beta, z, shift};
}

}  // namespace qte
