#pragma once

// Cauchy products of matrix coefficient sequences: c[s] = sum_{i+j=s} a[i] b[j].

#include <cstddef>
#include <vector>

#include "turrittin/matrix.hpp"

namespace turrittin::kernels {

std::vector<Matrix> convolve_serial(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t count);
// OpenMP over output coefficients; bit-identical to the serial version.
std::vector<Matrix> convolve_parallel(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t count);
// Picks one of the above by problem size.
std::vector<Matrix> convolve(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t count);

}  // namespace turrittin::kernels
