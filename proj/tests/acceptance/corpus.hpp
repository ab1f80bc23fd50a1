#pragma once

// Seeded generators for the acceptance corpora.

#include <random>
#include <vector>

#include "turrittin/const_linalg.hpp"
#include "turrittin/system.hpp"

namespace acceptance {

using namespace turrittin;
using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational rational(Rng& rng, long num = 5, long den = 3) {
  Rational q(uniform(rng, -num, num), uniform(rng, 1, den));
  q.canonicalize();
  return q;
}

inline Scalar gaussian(Rng& rng, long num = 3) {
  return Scalar(FieldDescriptor::gaussian(), rational(rng, num, 2), 0, rational(rng, num, 2));
}

inline Matrix dense(Rng& rng, int n, long num = 5, long den = 3) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Scalar(rational(rng, num, den));
  return m;
}

inline Matrix dense_gaussian(Rng& rng, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = gaussian(rng);
  return m;
}

inline Matrix invertible(Rng& rng, int n) {
  for (;;) {
    Matrix m = dense(rng, n, 3, 2);
    if (!m.det().is_zero()) return m;
  }
}

inline Matrix conjugate(Rng& rng, const Matrix& m) {
  Matrix t = invertible(rng, m.rows());
  return t.inverse() * m * t;
}

// Block diagonal assembly of square blocks.
inline Matrix blocks(const std::vector<Matrix>& bs) {
  int n = 0;
  for (const auto& b : bs) n += b.rows();
  Matrix m(n, n);
  int o = 0;
  for (const auto& b : bs) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m(o + i, o + j) = b(i, j);
    o += b.rows();
  }
  return m;
}

// Companion matrix of t^2 - s t + p.
inline Matrix companion2(const Scalar& s, const Scalar& p) {
  Matrix m(2, 2);
  m(0, 1) = Scalar(1);
  m(1, 0) = -p;
  m(1, 1) = s;
  return m;
}

inline Matrix nilpotent_jordan(int n) {
  Matrix m(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = Scalar(1);
  return m;
}

// A leading coefficient with eigenvalues in the supported tower: rational, repeated,
// nilpotent, or a conjugate pair from t^2 - d, conjugated by a dense rational matrix.
inline Matrix supported_head(Rng& rng, int n) {
  std::vector<Matrix> bs;
  int left = n;
  while (left > 0) {
    long kind = uniform(rng, 0, left >= 2 ? 4 : 1);
    if (kind <= 1) {
      bs.push_back(Matrix::identity(1, Scalar(uniform(rng, -3, 3))));
      left -= 1;
    } else if (kind == 2) {
      static const long ds[] = {-1, 2, 3, -2, 5};
      long d = ds[uniform(rng, 0, 4)];
      Scalar a(uniform(rng, -2, 2));
      bs.push_back(companion2(a * Scalar(2), a * a - Scalar(d)));
      left -= 2;
    } else if (kind == 3) {
      int s = static_cast<int>(uniform(rng, 2, left));
      Matrix j = nilpotent_jordan(s) + Matrix::identity(s, Scalar(uniform(rng, -2, 2)));
      bs.push_back(j);
      left -= s;
    } else {
      Scalar c(uniform(rng, -2, 2));
      bs.push_back(Matrix::identity(2, c));
      left -= 2;
    }
  }
  return conjugate(rng, blocks(bs));
}

// x^-(q+1) (A_0 + A_1 x + ...) through relative order `rel`, A_0 from supported_head, dense tail.
// With radial = true the first coefficient is scalar and the head sits at A_1.
inline System supported_system(Rng& rng, int n, long q, long rel, bool radial = false) {
  std::vector<Matrix> c;
  if (radial && q > 0) {
    c.push_back(Matrix::identity(n, Scalar(uniform(rng, 1, 3))));
    c.push_back(supported_head(rng, n));
  } else {
    c.push_back(supported_head(rng, n));
  }
  while (static_cast<long>(c.size()) <= rel) c.push_back(dense(rng, n, 3, 2));
  return System(n, -q - 1, c, -q - 1 + rel);
}

// Nilpotent leading coefficient of companion type with a dense tail: the shearing loop
// runs on these (Airy-type systems with slope 1/2 for n = 2).
inline System nilpotent_system(Rng& rng, int n, long q, long rel) {
  std::vector<Matrix> c{conjugate(rng, nilpotent_jordan(n))};
  while (static_cast<long>(c.size()) <= rel) c.push_back(dense(rng, n, 3, 2));
  return System(n, -q - 1, c, -q - 1 + rel);
}

// A single-eigenvalue head c I + J with a dense tail, un-sheared by diag(x^((n-1)h), ..., x^h, 1):
// the result has a nilpotent head and the shearing loop needs several iterations to undo it.
inline System unsheared_system(Rng& rng, int n, long q, long h, long rel) {
  std::vector<Matrix> c{nilpotent_jordan(n) + Matrix::identity(n, Scalar(uniform(rng, -2, 2)))};
  long extra = 2 * (n - 1) * h;
  while (static_cast<long>(c.size()) <= rel + extra) c.push_back(dense(rng, n, 2, 1));
  System w(n, -q - 1, c, -q - 1 + rel + extra);
  std::vector<long> e;
  for (int i = 0; i < n; ++i) e.push_back((n - 1 - i) * h);
  return gauge_transform(w, Step::monomial(e));
}

// Replaces every coefficient past relative order `keep` by fresh random data.
inline System retail(Rng& rng, const System& a, long keep) {
  System head = a.truncate(keep);
  std::vector<Matrix> c;
  for (long j = 0; j <= a.rel_order(); ++j) c.push_back(j <= keep ? head.A(j) : dense(rng, a.n(), 3, 2));
  return System(a.n(), a.valuation(), c, a.order());
}

}  // namespace acceptance
