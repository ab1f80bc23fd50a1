#include "turrittin/matrix.hpp"

#include <sstream>

namespace turrittin {

Matrix Matrix::identity(int n, const Scalar& s) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

Matrix Matrix::diag(const std::vector<Scalar>& d) {
  int n = static_cast<int>(d.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw Error(ErrorCode::PreconditionViolated, "ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& s : a_)
    if (!s.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const { return square() && *this == identity(r_); }

bool Matrix::is_scalar() const {
  if (!square()) return false;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) {
      if (i == j) {
        if ((*this)(i, i) != (*this)(0, 0)) return false;
      } else if (!(*this)(i, j).is_zero()) {
        return false;
      }
    }
  return true;
}

bool Matrix::is_diagonal() const {
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

bool Matrix::is_real() const {
  for (const auto& s : a_)
    if (!s.is_real()) return false;
  return true;
}

FieldDescriptor Matrix::field() const {
  FieldDescriptor f;
  for (const auto& s : a_) f = join(f, s.field());
  return f;
}

Matrix Matrix::block(int i0, int j0, int rows, int cols) const {
  Matrix b(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
  return b;
}

void Matrix::set_block(int i0, int j0, const Matrix& b) {
  for (int i = 0; i < b.r_; ++i)
    for (int j = 0; j < b.c_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

Matrix Matrix::transpose() const {
  Matrix t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

Matrix Matrix::apply_automorphism(int s1, int s2) const {
  Matrix m = *this;
  for (auto& x : m.a_) x = x.apply_automorphism(s1, s2);
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (r_ != o.r_ || c_ != o.c_) throw Error(ErrorCode::PreconditionViolated, "matrix size mismatch");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (r_ != o.r_ || c_ != o.c_) throw Error(ErrorCode::PreconditionViolated, "matrix size mismatch");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.c_ != b.r_) throw Error(ErrorCode::PreconditionViolated, "matrix product size mismatch");
  Matrix m(a.r_, b.c_);
  for (int i = 0; i < a.r_; ++i)
    for (int k = 0; k < a.c_; ++k) {
      const Scalar& s = a(i, k);
      if (s.is_zero()) continue;
      for (int j = 0; j < b.c_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += s * b(k, j);
    }
  return m;
}

Scalar Matrix::trace() const {
  Scalar t;
  for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::rref(std::vector<int>* pivots) const {
  Matrix m = *this;
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < c_ && row < r_; ++col) {
    int p = -1;
    for (int i = row; i < r_; ++i)
      if (!m(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < c_; ++j) std::swap(m(p, j), m(row, j));
    Scalar inv = m(row, col).inverse();
    for (int j = col; j < c_; ++j) m(row, j) *= inv;
    for (int i = 0; i < r_; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Scalar f = m(i, col);
      for (int j = col; j < c_; ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = piv;
  return m;
}

int Matrix::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return static_cast<int>(piv.size());
}

Scalar Matrix::det() const {
  if (!square()) throw Error(ErrorCode::PreconditionViolated, "determinant of a non-square matrix");
  Matrix m = *this;
  Scalar d(1);
  for (int col = 0; col < r_; ++col) {
    int p = -1;
    for (int i = col; i < r_; ++i)
      if (!m(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return Scalar();
    if (p != col) {
      for (int j = 0; j < c_; ++j) std::swap(m(p, j), m(col, j));
      d = -d;
    }
    d *= m(col, col);
    Scalar inv = m(col, col).inverse();
    for (int i = col + 1; i < r_; ++i) {
      if (m(i, col).is_zero()) continue;
      Scalar f = m(i, col) * inv;
      for (int j = col; j < c_; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return d;
}

Matrix Matrix::inverse() const {
  if (!square()) throw Error(ErrorCode::SingularGauge, "inverse of a non-square matrix");
  Matrix aug(r_, 2 * r_);
  aug.set_block(0, 0, *this);
  aug.set_block(0, r_, identity(r_));
  std::vector<int> piv;
  Matrix red = aug.rref(&piv);
  if (static_cast<int>(piv.size()) < r_ || (r_ > 0 && piv[r_ - 1] >= r_))
    throw Error(ErrorCode::SingularGauge, "matrix is singular");
  return red.block(0, r_, r_, r_);
}

std::vector<std::vector<Scalar>> Matrix::nullspace() const {
  std::vector<int> piv;
  Matrix red = rref(&piv);
  std::vector<bool> is_piv(c_, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int f = 0; f < c_; ++f) {
    if (is_piv[f]) continue;
    std::vector<Scalar> v(c_);
    v[f] = Scalar(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -red(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Poly Matrix::char_poly() const {
  // Faddeev-LeVerrier: M_k = M (M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k.
  if (!square()) throw Error(ErrorCode::PreconditionViolated, "characteristic polynomial of a non-square matrix");
  int n = r_;
  std::vector<Scalar> c(n + 1);
  c[n] = Scalar(1);
  Matrix mk(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = *this * (mk + identity(n, c[n - k + 1]));
    c[n - k] = -(mk.trace() * Scalar(Rational(1, k)));
  }
  return Poly(c);
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      m.set_block(i * b.rows(), j * b.cols(), b.scaled(a(i, j)));
    }
  return m;
}

Matrix eval_poly(const Poly& p, const Matrix& m) {
  Matrix acc(m.rows(), m.cols());
  for (int i = p.degree(); i >= 0; --i) acc = acc * m + Matrix::identity(m.rows(), p.coeff(i));
  return acc;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

bool solve_linear(const Matrix& m, const std::vector<Scalar>& b, std::vector<Scalar>* x) {
  int r = m.rows(), c = m.cols();
  Matrix aug(r, c + 1);
  aug.set_block(0, 0, m);
  for (int i = 0; i < r; ++i) aug(i, c) = b[i];
  std::vector<int> piv;
  Matrix red = aug.rref(&piv);
  if (!piv.empty() && piv.back() == c) return false;
  if (x) {
    x->assign(c, Scalar());
    for (size_t k = 0; k < piv.size(); ++k) (*x)[piv[k]] = red(static_cast<int>(k), c);
  }
  return true;
}

Matrix from_columns(const std::vector<std::vector<Scalar>>& cols, int rows) {
  Matrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

}  // namespace turrittin
