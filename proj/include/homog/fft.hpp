#pragma once

#include <complex>
#include <span>
#include <vector>

namespace homog::fft {

using cplx = std::complex<double>;

// Thin wrappers over FFTW's real transforms. Plans are cached per size and
// shared across threads (planning is serialized, execution is not).
//
// forward: out[k] = sum_j in[j] exp(-2 pi i j k / n), k = 0..n/2
// inverse: out[j] = sum_k c[k] exp(+2 pi i j k / n) over the Hermitian
//          extension of c (k = 0..n/2), unnormalized.
std::vector<cplx> forward(std::span<const double> in);
std::vector<double> inverse(std::span<const cplx> half, std::size_t n);

}  // namespace homog::fft
