#pragma once

#include <complex>
#include <vector>

namespace shredder {

using cvec = std::vector<std::complex<double>>;

/// Unitary discrete Fourier transform of any length:
///   forward  X_m = n^{-1/2} sum_j x_j e^{-2 pi i m j / n}
///   inverse  x_j = n^{-1/2} sum_m X_m e^{+2 pi i m j / n}
/// Backed by FFTW; safe to call from several threads at once.
cvec dft(const cvec& in);
cvec idft(const cvec& in);

} // namespace shredder
