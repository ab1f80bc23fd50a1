#pragma once

#include <random>
#include <string>
#include <vector>

#include "turrittin/system.hpp"

namespace testutil {

using namespace turrittin;

inline Matrix M(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Scalar>> r;
  for (auto row : rows) {
    std::vector<Scalar> v;
    for (const char* s : row) v.push_back(parse_scalar(s));
    r.push_back(v);
  }
  return Matrix::from_rows(r);
}

inline Matrix Mi(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Scalar>> r;
  for (auto row : rows) {
    std::vector<Scalar> v;
    for (long s : row) v.push_back(Scalar(s));
    r.push_back(v);
  }
  return Matrix::from_rows(r);
}

// sum_j x^(val + j) coef[j]
inline System Sys(long val, std::vector<Matrix> coef, long order = kExact) {
  int n = coef.empty() ? 0 : coef[0].rows();
  return System(n, val, std::move(coef), order);
}

inline Rational small_rational(std::mt19937_64& rng, int num = 5, int den = 3) {
  std::uniform_int_distribution<int> a(-num, num), b(1, den);
  Rational q(a(rng), b(rng));
  q.canonicalize();
  return q;
}

inline Matrix random_matrix(std::mt19937_64& rng, int n, int num = 5, int den = 3) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Scalar(small_rational(rng, num, den));
  return m;
}

inline Matrix random_invertible(std::mt19937_64& rng, int n) {
  for (;;) {
    Matrix m = random_matrix(rng, n, 3, 2);
    if (!m.det().is_zero()) return m;
  }
}

inline System random_system(std::mt19937_64& rng, int n, long val, int terms, long order) {
  std::vector<Matrix> c;
  for (int i = 0; i < terms; ++i) c.push_back(random_matrix(rng, n));
  return System(n, val, c, order);
}

inline bool jets_agree(const System& a, const System& b) {
  long o = std::min(a.order(), b.order());
  return a.truncated_abs(o) == b.truncated_abs(o);
}

}  // namespace testutil
