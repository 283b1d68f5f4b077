#pragma once

#include <complex>
#include <span>
#include <vector>

namespace landau::fft {

using cplx = std::complex<double>;

// Forward uses the e^{-i} kernel, Backward e^{+i}; neither is normalized.
enum class Direction { Forward, Backward };

// In-place 1D transform of a contiguous sequence.
void transform(std::span<cplx> data, Direction dir);

// In-place batched transform along one axis of a row-major (n_x, n_y) array
// (index i*n_y + j). axis 0 transforms along x, axis 1 along y.
void transform_axis(std::span<cplx> data, int n_x, int n_y, int axis, Direction dir);

// Angular wavenumbers in FFT storage order for n samples at the given spacing.
std::vector<double> wavenumbers(int n, double spacing);

}  // namespace landau::fft
