#pragma once

#include <complex>
#include <vector>

namespace dglab::detail {

// Real <-> half-complex DFT of length M on the grid theta_j = -pi + 2 pi j / M.
// forward: spec[k] = (1/M) sum_j x_j e^{-ik theta_j}, k = 0..M/2
// backward: x_j = sum_{|k| <= M/2} spec_k e^{ik theta_j} (Hermitian extension; spec[M/2] must be
// real when M is even)
void grid_forward(const double* x, std::complex<double>* spec, int M);
void grid_backward(const std::complex<double>* spec, int nspec, double* x, int M);

// Smallest M' >= M whose prime factors are 2, 3, 5 or 7.
int fft_friendly_size(int M);

}  // namespace dglab::detail
