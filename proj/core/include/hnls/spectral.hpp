#pragma once

#include <vector>

#include "hnls/field.hpp"

namespace hnls {

/// Forward DFT of the field samples (unnormalized FFT layout).
std::vector<cplx> spectrum(const Field& u);

Field field_from_spectrum(GridPtr grid, const std::vector<cplx>& spec);

/// Exact derivative of the trigonometric interpolant, order in {1,2,3}.
/// The Nyquist mode is zeroed for odd orders.
Field spectral_derivative(const Field& u, int order);

/// Pointwise multiplication in Fourier space: IFFT(mult .* FFT(u)).
Field apply_multiplier(const Field& u, const std::vector<cplx>& mult);

/// Zeroes modes with |k| > N/3 in place (2/3 dealiasing rule).
void dealias_two_thirds(std::vector<cplx>& spec);

}  // namespace hnls
