#pragma once

// Exact scalars in the tower Q, Q(sqrt d) and their i-adjunctions.
//
// Every scalar is stored as (a + b*sqrt(d)) + (c + e*sqrt(d))*i with rational
// coordinates. Coordinates that do not exist in the scalar's field are zero.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "turrittin/error.hpp"

namespace turrittin {

using Rational = mpq_class;
using Integer = mpz_class;

enum class FieldKind { Rationals, RealQuadratic, Complexified };

struct FieldDescriptor {
  std::int64_t d = 1;   // squarefree radicand > 1, or 1 when there is no square root
  bool complex = false; // i adjoined
  int embedding_sign = 1;  // sign of the chosen real root of t^2 - d

  static FieldDescriptor rationals() { return {}; }
  static FieldDescriptor real_quadratic(std::int64_t d, int sign = 1);
  static FieldDescriptor gaussian() { return {1, true, 1}; }
  static FieldDescriptor complexified(const FieldDescriptor& real);

  FieldKind kind() const {
    if (complex) return FieldKind::Complexified;
    return d == 1 ? FieldKind::Rationals : FieldKind::RealQuadratic;
  }
  bool is_real() const { return !complex; }
  bool has_sqrt() const { return d != 1; }
  // [F : Q]
  int degree() const { return (has_sqrt() ? 2 : 1) * (complex ? 2 : 1); }
  FieldDescriptor real_part() const { return {d, false, embedding_sign}; }

  // Canonical names: "Q", "Q(sqrt(2))", "Q(i)", "Q(sqrt(2),i)".
  std::string name() const;
  static FieldDescriptor parse(const std::string& text);

  bool operator==(const FieldDescriptor& o) const {
    return d == o.d && complex == o.complex && (d == 1 || embedding_sign == o.embedding_sign);
  }
  bool operator!=(const FieldDescriptor& o) const { return !(*this == o); }
};

// Smallest descriptor containing both; throws IncompatibleField for distinct radicands.
FieldDescriptor join(const FieldDescriptor& a, const FieldDescriptor& b);
bool contains(const FieldDescriptor& big, const FieldDescriptor& small);

class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : c_{Rational(v), 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v) : c_{v, 0, 0, 0} { c_[0].canonicalize(); }  // NOLINT(google-explicit-constructor)
  Scalar(const FieldDescriptor& f, const Rational& a, const Rational& b = 0,
         const Rational& c = 0, const Rational& e = 0);

  static Scalar i();
  static Scalar sqrt_of(std::int64_t d, int sign = 1);  // d squarefree

  const FieldDescriptor& field() const { return f_; }
  // Coordinates: 0 -> rational part, 1 -> sqrt(d), 2 -> i, 3 -> sqrt(d)*i.
  const Rational& coord(int k) const { return c_[k]; }

  bool is_zero() const { return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }
  bool is_one() const { return c_[0] == 1 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }
  bool is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }
  bool is_real() const { return sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }
  bool is_integer() const { return is_rational() && c_[0].get_den() == 1; }
  const Rational& rational() const { return c_[0]; }

  Scalar real_part() const;
  Scalar imag_part() const;  // so that *this == re + im * i
  Scalar conj() const;       // fixes the real sub-tower, negates the i-coordinates
  Scalar inverse() const;
  // Applies the automorphism sqrt(d) -> s1*sqrt(d), i -> s2*i.
  Scalar apply_automorphism(int s1, int s2) const;
  // Sign under the real embedding; throws SignOfComplex for non-real values.
  int sign() const;
  // Reinterprets this scalar inside a larger field.
  Scalar coerce(const FieldDescriptor& f) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Canonical text, e.g. "1/2", "1-3*sqrt(2)", "2*i", "1+1/2*sqrt(3)*i".
  std::string str() const;
  // Total order on canonical coordinates; used only for deterministic sorting.
  friend bool canonical_less(const Scalar& a, const Scalar& b);

 private:
  FieldDescriptor f_;
  std::array<Rational, 4> c_{};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Parses the canonical scalar text (and ordinary arithmetic on it).
Scalar parse_scalar(const std::string& text);

// Squarefree decomposition of a nonzero integer: value = square * core, core squarefree
// and carrying the sign.
std::int64_t squarefree_core(const Integer& value, Integer* square_root_part = nullptr);

// Exact square root of a rational if it is a perfect square.
bool rational_sqrt(const Rational& q, Rational* root);

}  // namespace turrittin
