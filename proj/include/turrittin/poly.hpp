#pragma once

// Univariate polynomials over the scalar tower and their factorization.

#include <string>
#include <utility>
#include <vector>

#include "turrittin/field.hpp"

namespace turrittin {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Scalar> coeffs);  // low degree first
  Poly(const Scalar& c);                       // NOLINT(google-explicit-constructor)

  static Poly x() { return monomial(1, 1); }
  static Poly monomial(const Scalar& c, int deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : Scalar(); }
  const Scalar& lead() const { return c_.back(); }
  FieldDescriptor field() const;

  Scalar eval(const Scalar& t) const;
  Poly monic() const;
  Poly derivative() const;
  Poly shift(const Scalar& s) const;  // p(x + s)
  Poly apply_automorphism(int s1, int s2) const;
  Poly scaled(const Scalar& s) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

// Quotient and remainder; throws DivisionByZero for b == 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact quotient (remainder discarded)
Poly operator%(const Poly& a, const Poly& b);
// Monic gcd (zero only if both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly pow(const Poly& p, int e);
bool canonical_less(const Poly& a, const Poly& b);

struct Factor {
  Poly poly;  // monic, irreducible over the factorization field
  int multiplicity = 1;
};

struct Factorization {
  Scalar unit;
  std::vector<Factor> factors;  // canonical order: degree, then coefficients
};

// Maximum supported value of deg(p) * [F : Q]; env TURRITTIN_MAX_DEGREE overrides.
int factor_degree_cap();

// Factors p over the field join(field, p.field()).
Factorization factor_poly(const Poly& p, const FieldDescriptor& field = FieldDescriptor::rationals());

// Squarefree decomposition: p = unit * prod s_i^i.
std::vector<Factor> squarefree_decomposition(const Poly& p);

// Smallest supported field containing `field` and a square root of delta. When
// real_only is set the result must be a real field. Throws UnsupportedTower.
FieldDescriptor field_with_sqrt(const Scalar& delta, const FieldDescriptor& field, bool real_only);
// A square root of delta inside `field` (positive under the embedding when real);
// throws UnsupportedTower if none exists there.
Scalar sqrt_in(const Scalar& delta, const FieldDescriptor& field);

// Roots of a monic irreducible quadratic factor, in a field returned by field_with_sqrt.
std::pair<Scalar, Scalar> quadratic_roots(const Poly& quad, const FieldDescriptor& field);

}  // namespace turrittin
