#pragma once

#include <complex>
#include <vector>

namespace hnls::fft {

using cplx = std::complex<double>;

/// Unnormalized DFT, u_hat[k] = sum_j u[j] exp(-2*pi*i*j*k/N).
/// Plans are cached per size; execution is thread safe.
void forward(const std::vector<cplx>& in, std::vector<cplx>& out);

/// Inverse DFT including the 1/N factor.
void inverse(const std::vector<cplx>& in, std::vector<cplx>& out);

std::vector<cplx> forward(const std::vector<cplx>& in);
std::vector<cplx> inverse(const std::vector<cplx>& in);

}  // namespace hnls::fft
