#pragma once

// Meromorphic systems Y' = A(x) Y stored as A = sum_j x^(val + j) coef[j],
// exact through the absolute degree `order`.

#include <string>
#include <vector>

#include "turrittin/jet.hpp"
#include "turrittin/matrix.hpp"

namespace turrittin {

class System {
 public:
  System() = default;
  System(int n, long val, std::vector<Matrix> coef, long order = kExact);
  static System zero(int n, long order = kExact) { return System(n, 0, {}, order); }
  static System constant(const Matrix& m, long order = kExact) { return System(m.rows(), 0, {m}, order); }
  // x^deg * m
  static System monomial(const Matrix& m, long deg, long order = kExact) { return System(m.rows(), deg, {m}, order); }
  static System from_entries(const std::vector<std::vector<Jet>>& entries);

  int n() const { return n_; }
  bool is_zero() const { return coef_.empty(); }
  bool is_exact() const { return order_ >= kExact; }
  long valuation() const;  // nu(A); kInfValuation for zero
  long order() const { return order_; }
  // Order relative to x^nu (the J_N index); kExact for exact systems.
  long rel_order() const;
  long last_degree() const { return val_ + static_cast<long>(coef_.size()) - 1; }
  // Coefficient of x^abs_deg; throws PrecisionError past the order.
  Matrix coeff(long abs_deg) const;
  // A_j in the expansion x^nu (A_0 + A_1 x + ...).
  Matrix A(long j) const { return coeff(valuation() + j); }
  Jet entry(int i, int j) const;
  FieldDescriptor field() const;
  bool is_real() const;

  // Keeps coefficients through the absolute degree; throws PrecisionError past the order.
  System truncated_abs(long abs_order) const;
  // J_N A = x^nu (A_0 + ... + x^N A_N).
  System truncate(long N) const;
  // Same data, declared exact only through abs_order (never raises it).
  System with_order(long abs_order) const;
  System shifted(long k) const;
  System scaled(const Scalar& s) const;
  System derivative() const;
  System power_substitute(long r) const;
  System map(Matrix (*f)(const Matrix&)) const;
  System apply_automorphism(int s1, int s2) const;
  System conjugated_by(const Matrix& t, const Matrix& t_inv) const;  // t_inv * A * t
  System block(int i0, int j0, int rows, int cols) const;
  // Inverse of a system whose leading coefficient is invertible.
  System inverse(long max_rel_order = 64) const;

  System operator-() const;
  friend System operator+(const System& a, const System& b);
  friend System operator-(const System& a, const System& b) { return a + (-b); }
  friend System operator*(const System& a, const System& b);
  friend bool operator==(const System& a, const System& b);
  friend bool operator!=(const System& a, const System& b) { return !(a == b); }

  const std::vector<Matrix>& coefficients() const { return coef_; }
  long stored_valuation() const { return val_; }
  std::string str() const;

 private:
  void normalize();
  int n_ = 0;
  long val_ = 0;
  std::vector<Matrix> coef_;
  long order_ = kExact;
};

System direct_sum(const System& a, const System& b);

struct Invariants {
  long nu = 0;  // order of the system
  long q = 0;   // Poincare rank
  long k = 0;   // radiality index
  long N = 0;   // determinacy order n(q - k) + k
};

Invariants system_invariants(const System& a);
inline long determinacy_order(long n, long q, long k) { return n * (q - k) + k; }

// ---- transformation steps ----

enum class StepKind { ConstantRegular, RegularPolynomial, DiagonalMonomial, Ramification };

const char* step_kind_name(StepKind k);

struct Step {
  StepKind kind = StepKind::ConstantRegular;
  std::vector<Matrix> poly;     // P = sum_i poly[i] x^i (constant / regular kinds)
  std::vector<long> exponents;  // P = diag(x^e) (diagonal monomial)
  long r = 1;                   // ramification index

  static Step constant(const Matrix& p);
  static Step polynomial(std::vector<Matrix> p);  // collapses to constant when degree 0
  static Step monomial(std::vector<long> e);
  static Step ramification(long r);

  bool is_gauge() const { return kind != StepKind::Ramification; }
  int n() const;
  // The gauge matrix as an exact system.
  System matrix() const;
  bool is_identity() const;
  bool is_real() const;
  friend bool operator==(const Step& a, const Step& b);
};

struct Chain {
  std::vector<Step> steps;

  long ramification() const;
  void push(const Step& s);  // identity gauges are dropped
  void append(const Chain& c);
  bool is_real() const;
  friend bool operator==(const Chain& a, const Chain& b) { return a.steps == b.steps; }
};

// B = P^-1 A P - P^-1 P'. Exact inputs with non-polynomial results are expanded
// `exact_depth` orders past the valuation.
System gauge_transform(const System& a, const Step& p, long exact_depth = 64);
// R_r[A] = r x^(r-1) A(x^r)
System ramify(const System& a, long r);
System apply_step(const System& a, const Step& s);
System replay(const System& a, const Chain& c);
// P(x^r), so that R_r o Psi_P = Psi_P(x^r) o R_r.
Step push_through_ramification(const Step& p, long r);
// Moves every ramification to the front, composing them into one.
Chain normalized(const Chain& c);
// Lifts a chain acting on the diagonal block [offset, offset + size) of an n x n
// system to the whole system (identity elsewhere); ramifications are kept.
Chain embed_chain(const Chain& c, int n, int offset);
// The product of the regular gauge steps as one polynomial matrix truncated at degree d.
std::vector<Matrix> compose_regular(const std::vector<Step>& steps, int n, long d);

}  // namespace turrittin
