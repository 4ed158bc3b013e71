#pragma once

#include <complex>
#include <cstddef>

namespace amblab::fft {

using cplx = std::complex<double>;

/// out[l] = sum_k in[k] exp(-2 pi i k l / n). No normalization.
void dft(const cplx* in, cplx* out, std::size_t n);

/// out[k] = sum_l in[l] exp(+2 pi i k l / n). No normalization.
void idft(const cplx* in, cplx* out, std::size_t n);

/// out[l] = sum_k in[k] exp(-2 pi i (k - n/2)(l - n/2) / n). No weights;
/// the centered indices only introduce exact sign flips around dft().
void centered_dft(const cplx* in, cplx* out, std::size_t n);

/// out[k] = sum_l in[l] exp(+2 pi i (k - n/2)(l - n/2) / n).
void centered_idft(const cplx* in, cplx* out, std::size_t n);

} // namespace amblab::fft
