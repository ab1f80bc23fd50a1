#include "turrittin/kernels.hpp"

#include <algorithm>
#include <exception>

namespace turrittin::kernels {

namespace {

Matrix coefficient(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t s, int rows, int cols) {
  Matrix c(rows, cols);
  std::size_t lo = s >= b.size() ? s - b.size() + 1 : 0;
  std::size_t hi = std::min(s, a.size() - 1);
  for (std::size_t i = lo; i <= hi; ++i) {
    const Matrix& x = a[i];
    const Matrix& y = b[s - i];
    if (x.is_zero() || y.is_zero()) continue;
    c += x * y;
  }
  return c;
}

}  // namespace

std::vector<Matrix> convolve_serial(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t count) {
  if (a.empty() || b.empty()) return {};
  count = std::min(count, a.size() + b.size() - 1);
  std::vector<Matrix> out(count);
  for (std::size_t s = 0; s < count; ++s) out[s] = coefficient(a, b, s, a[0].rows(), b[0].cols());
  return out;
}

std::vector<Matrix> convolve_parallel(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t count) {
  if (a.empty() || b.empty()) return {};
  count = std::min(count, a.size() + b.size() - 1);
  std::vector<Matrix> out(count);
  const long total = static_cast<long>(count);
  const int rows = a[0].rows(), cols = b[0].cols();
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < total; ++s) {
    try {
      out[static_cast<std::size_t>(s)] = coefficient(a, b, static_cast<std::size_t>(s), rows, cols);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

std::vector<Matrix> convolve(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t count) {
  if (a.empty() || b.empty()) return {};
  std::size_t work = std::min(count, a.size() + b.size() - 1) * static_cast<std::size_t>(a[0].rows());
  return work >= 64 ? convolve_parallel(a, b, count) : convolve_serial(a, b, count);
}

}  // namespace turrittin::kernels
