#pragma once

// Truncated Laurent series x^v (c_0 + c_1 x + ...) known exactly through an
// absolute degree `order`.

#include <limits>
#include <string>
#include <vector>

#include "turrittin/field.hpp"

namespace turrittin {

// Orders at or above this value mean "exact" (a Laurent polynomial).
constexpr long kExact = 1L << 40;
constexpr long kInfValuation = std::numeric_limits<long>::max();

inline long clamp_order(long o) { return o >= kExact / 2 ? kExact : o; }

class Jet {
 public:
  Jet() = default;  // exact zero
  // Coefficient k sits at absolute degree val + k. Coefficients past `order` are dropped.
  Jet(long val, std::vector<Scalar> coeffs, long order = kExact);

  static Jet zero(long order = kExact) { return Jet(0, {}, order); }
  static Jet constant(const Scalar& c, long order = kExact) { return Jet(0, {c}, order); }
  static Jet monomial(const Scalar& c, long deg, long order = kExact) { return Jet(deg, {c}, order); }

  bool is_zero() const { return c_.empty(); }
  bool is_exact() const { return order_ >= kExact; }
  long valuation() const { return is_zero() ? kInfValuation : val_; }
  long order() const { return order_; }
  // Highest stored degree (valuation - 1 for zero).
  long last_degree() const { return val_ + static_cast<long>(c_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  // Throws PrecisionError past the guaranteed order.
  Scalar coeff(long deg) const;
  FieldDescriptor field() const;

  // J_N in absolute degrees: keeps coefficients through `abs_order`.
  Jet truncated(long abs_order) const;
  Jet shifted(long k) const;  // multiply by x^k
  Jet scaled(const Scalar& s) const;
  Jet derivative() const;
  Jet power_substitute(long r) const;
  // Inverse of a nonzero jet; exact non-monomial inputs are expanded to
  // `max_rel_order` terms past the leading one.
  Jet invert_unit(long max_rel_order = 64) const;
  Jet apply_automorphism(int s1, int s2) const;

  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet operator-() const;
  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
  friend Jet operator*(const Jet& a, const Jet& b);
  // Equal coefficients and equal orders.
  friend bool operator==(const Jet& a, const Jet& b);
  friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

  // "x^v*(c0 + c1*x + ...) @order N"; exact jets omit the order suffix.
  std::string str() const;

 private:
  void normalize();
  long val_ = 0;
  std::vector<Scalar> c_;
  long order_ = kExact;
};

// Parses the jet text form. A missing "@order" yields an exact jet.
Jet parse_jet(const std::string& text);

}  // namespace turrittin
