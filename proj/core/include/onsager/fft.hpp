#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Thin wrapper over FFTW for the periodic slices used throughout the library.
// A slice is a dim-dimensional (1 or 2) cube of n points per axis stored
// row-major. Plans are created once per shape with FFTW_ESTIMATE, which keeps
// results bitwise reproducible between runs.
namespace onsager::fft {

using Complex = std::complex<double>;

/// Number of complex coefficients in the half spectrum of a real slice.
std::size_t half_spectrum_size(int dim, int n);

std::vector<Complex> forward(std::span<const double> slice, int dim, int n);

/// Inverse of forward(), including the 1/N normalization.
std::vector<double> inverse(std::span<const Complex> spectrum, int dim, int n);

/// Unnormalized complex backward transform, sum_k c_k exp(+2 pi i k.x / n).
std::vector<Complex> backward_complex(std::span<const Complex> coefficients, int dim, int n);

/// Signed wavenumber for an index along a full axis of length n.
inline int signed_wavenumber(std::size_t index, int n) {
  const int i = static_cast<int>(index);
  return i <= n / 2 ? i : i - n;
}

/// Spatial derivative along `axis` by spectral differentiation. The Nyquist
/// mode along the differentiated axis is zeroed.
std::vector<double> derivative(std::span<const double> slice, int dim, int n, double length,
                               int axis);

}  // namespace onsager::fft
