#pragma once

// Dense constant matrices over the scalar tower.

#include <string>
#include <vector>

#include "turrittin/poly.hpp"

namespace turrittin {

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
  static Matrix identity(int n, const Scalar& s = Scalar(1));
  static Matrix diag(const std::vector<Scalar>& d);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_; }
  Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  bool is_zero() const;
  bool is_identity() const;
  // M = s * I for some s (true for the empty matrix).
  bool is_scalar() const;
  bool is_diagonal() const;
  bool is_real() const;
  FieldDescriptor field() const;

  Matrix block(int i0, int j0, int rows, int cols) const;
  void set_block(int i0, int j0, const Matrix& b);
  Matrix transpose() const;
  Matrix scaled(const Scalar& s) const;
  Matrix apply_automorphism(int s1, int s2) const;
  Matrix conj() const { return apply_automorphism(1, -1); }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix operator-() const;
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Scalar trace() const;
  int rank() const;
  Scalar det() const;
  Matrix inverse() const;  // throws SingularGauge
  // Reduced row echelon form; pivots receives the pivot column per nonzero row.
  Matrix rref(std::vector<int>* pivots = nullptr) const;
  // Basis of the right null space (columns), free variables in increasing order.
  std::vector<std::vector<Scalar>> nullspace() const;
  Poly char_poly() const;  // det(x I - M), monic

  std::string str() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix eval_poly(const Poly& p, const Matrix& m);
Matrix commutator(const Matrix& a, const Matrix& b);
// Particular solution of M x = b (free variables zero); false if inconsistent.
bool solve_linear(const Matrix& m, const std::vector<Scalar>& b, std::vector<Scalar>* x);
// Matrix whose columns are the given vectors.
Matrix from_columns(const std::vector<std::vector<Scalar>>& cols, int rows);

}  // namespace turrittin
