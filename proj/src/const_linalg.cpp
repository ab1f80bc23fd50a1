#include "turrittin/const_linalg.hpp"

#include <algorithm>
#include <functional>

namespace turrittin {

namespace {

Matrix hstack(const Matrix& a, const Matrix& b) {
  Matrix r(std::max(a.rows(), b.rows()), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

bool block_diagonal(const Matrix& b, int n1) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if ((i < n1) != (j < n1) && !b(i, j).is_zero()) return false;
  return true;
}

}  // namespace

SplitResult coprime_split(const Matrix& m, const Poly& p1, const Poly& p2) {
  if (p1.degree() < 1 || p2.degree() < 1) throw Error(ErrorCode::DegreeMismatch, "split factors must have positive degree");
  if (p1.monic() * p2.monic() != m.char_poly())
    throw Error(ErrorCode::DegreeMismatch, "p1 * p2 is not the characteristic polynomial");
  if (gcd(p1, p2).degree() > 0) throw Error(ErrorCode::NotCoprime, "split factors share a root");
  auto k1 = eval_poly(p1, m).nullspace();
  auto k2 = eval_poly(p2, m).nullspace();
  if (static_cast<int>(k1.size()) != p1.degree() || static_cast<int>(k2.size()) != p2.degree())
    throw Error(ErrorCode::Internal, "kernel dimensions do not match the factor degrees");
  Matrix t = hstack(from_columns(k1, m.rows()), from_columns(k2, m.rows()));
  Matrix b = t.inverse() * m * t;
  int d1 = p1.degree();
  if (!block_diagonal(b, d1)) throw Error(ErrorCode::Internal, "split is not block diagonal");
  return {t, b.block(0, 0, d1, d1), b.block(d1, d1, p2.degree(), p2.degree())};
}

Matrix shifting_matrix(int n) {
  Matrix h(n, n);
  for (int i = 0; i + 1 < n; ++i) h(i, i + 1) = Scalar(1);
  return h;
}

Matrix jordan_matrix(const Scalar& lambda, const std::vector<int>& sizes) {
  int n = 0;
  for (int s : sizes) n += s;
  Matrix j = Matrix::identity(n, lambda);
  int off = 0;
  for (int s : sizes) {
    for (int i = 0; i + 1 < s; ++i) j(off + i, off + i + 1) = Scalar(1);
    off += s;
  }
  return j;
}

JordanData jordan_single_eigen(const Matrix& m, const Scalar& lambda) {
  int n = m.rows();
  Poly expected = pow(Poly(std::vector<Scalar>{-lambda, Scalar(1)}), n);
  if (m.char_poly() != expected) throw Error(ErrorCode::SpectrumMismatch, "matrix has more than the given eigenvalue");
  Matrix nil = m - Matrix::identity(n, lambda);
  // kernels of N^j until they fill the space
  std::vector<std::vector<std::vector<Scalar>>> ker{{}};
  std::vector<Matrix> powers{Matrix::identity(n)};
  while (static_cast<int>(ker.back().size()) < n) {
    powers.push_back(powers.back() * nil);
    ker.push_back(powers.back().nullspace());
  }
  int top = static_cast<int>(ker.size()) - 1;
  auto dim = [&](int j) { return static_cast<int>(ker[std::min(j, top)].size()); };

  struct ChainHead {
    std::vector<Scalar> v;
    int len;
  };
  std::vector<ChainHead> heads;
  auto apply = [&](const Matrix& a, const std::vector<Scalar>& v) {
    std::vector<Scalar> r(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (!a(i, k).is_zero() && !v[k].is_zero()) r[i] += a(i, k) * v[k];
    return r;
  };
  for (int j = top; j >= 1; --j) {
    int count = (dim(j) - dim(j - 1)) - (dim(j + 1) - dim(j));
    if (count <= 0) continue;
    std::vector<std::vector<Scalar>> span = ker[j - 1];
    for (const auto& h : heads) span.push_back(apply(powers[h.len - j], h.v));
    int rank = span.empty() ? 0 : from_columns(span, n).rank();
    for (const auto& v : ker[j]) {
      if (count == 0) break;
      span.push_back(v);
      int r2 = from_columns(span, n).rank();
      if (r2 > rank) {
        rank = r2;
        heads.push_back({v, j});
        --count;
      } else {
        span.pop_back();
      }
    }
    if (count != 0) throw Error(ErrorCode::Internal, "Jordan chain construction failed");
  }
  std::stable_sort(heads.begin(), heads.end(), [](const ChainHead& a, const ChainHead& b) { return a.len < b.len; });
  JordanData out;
  out.eigenvalue = lambda;
  std::vector<std::vector<Scalar>> cols;
  for (const auto& h : heads) {
    out.sizes.push_back(h.len);
    for (int p = h.len - 1; p >= 0; --p) cols.push_back(apply(powers[p], h.v));
  }
  out.T = from_columns(cols, n);
  if (out.T.inverse() * m * out.T != jordan_matrix(lambda, out.sizes))
    throw Error(ErrorCode::Internal, "Jordan conjugation check failed");
  return out;
}

RealCanonicalForm real_canonical_form(const Matrix& m) {
  FieldDescriptor f = m.field();
  if (f.complex) throw Error(ErrorCode::PreconditionViolated, "real canonical form needs a real matrix");
  int n = m.rows();
  auto fac = factor_poly(m.char_poly(), f);
  // real eigenvalues in ascending order first
  std::stable_sort(fac.factors.begin(), fac.factors.end(), [](const Factor& a, const Factor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    return a.poly.degree() == 1 && (b.poly.coeff(0) - a.poly.coeff(0)).sign() < 0;
  });
  std::vector<std::vector<Scalar>> real_cols, complex_cols;
  auto extend = [&](const FieldDescriptor& g) {
    try {
      f = join(f, g);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::IncompatibleField) throw Error(ErrorCode::UnsupportedTower, e.what());
      throw;
    }
  };
  auto column = [&](const Matrix& t, int j) {
    std::vector<Scalar> v(t.rows());
    for (int i = 0; i < t.rows(); ++i) v[i] = t(i, j);
    return v;
  };
  for (const auto& fc : fac.factors) {
    int d = fc.poly.degree(), mult = fc.multiplicity;
    auto kb = eval_poly(pow(fc.poly, mult), m).nullspace();
    Matrix t0 = from_columns(kb, n);
    int sz = d * mult;
    // restriction of m to the generalized eigenspace
    Matrix pinv = (t0.transpose() * t0).inverse() * t0.transpose();
    Matrix blk = pinv * m * t0;
    if (d == 1) {
      auto jd = jordan_single_eigen(blk, -fc.poly.coeff(0));
      Matrix cols = t0 * jd.T;
      for (int j = 0; j < sz; ++j) real_cols.push_back(column(cols, j));
      continue;
    }
    if (d != 2) throw Error(ErrorCode::UnsupportedTower, "irreducible factor of degree " + std::to_string(d));
    Scalar beta = fc.poly.coeff(1), gamma = fc.poly.coeff(0);
    Scalar disc = beta * beta - Scalar(4) * gamma;
    Scalar a = -beta * Scalar(Rational(1, 2));
    if (disc.sign() > 0) {
      extend(field_with_sqrt(disc, f, true));
      auto roots = quadratic_roots(fc.poly, f);
      Poly l1(std::vector<Scalar>{-roots.first, Scalar(1)}), l2(std::vector<Scalar>{-roots.second, Scalar(1)});
      auto sp = coprime_split(blk, pow(l1, mult), pow(l2, mult));
      auto j1 = jordan_single_eigen(sp.M1, roots.first);
      auto j2 = jordan_single_eigen(sp.M2, roots.second);
      Matrix cols = t0 * sp.T * direct_sum(j1.T, j2.T);
      for (int j = 0; j < sz; ++j) real_cols.push_back(column(cols, j));
      continue;
    }
    Scalar b2 = -disc * Scalar(Rational(1, 4));
    extend(field_with_sqrt(b2, f, true));
    Scalar b = sqrt_in(b2, f);
    Scalar lambda = a + b * Scalar::i();
    Poly l1(std::vector<Scalar>{-lambda, Scalar(1)}), l2(std::vector<Scalar>{-lambda.conj(), Scalar(1)});
    auto sp = coprime_split(blk, pow(l1, mult), pow(l2, mult));
    auto jd = jordan_single_eigen(sp.M1, lambda);
    Matrix chains = t0 * sp.T.block(0, 0, sz, mult) * jd.T;
    for (int j = 0; j < mult; ++j) {
      std::vector<Scalar> p(n), w(n);
      for (int i = 0; i < n; ++i) {
        p[i] = chains(i, j).real_part();
        w[i] = chains(i, j).imag_part();
      }
      complex_cols.push_back(w);
      complex_cols.push_back(p);
    }
  }
  std::vector<std::vector<Scalar>> all = real_cols;
  all.insert(all.end(), complex_cols.begin(), complex_cols.end());
  RealCanonicalForm out;
  out.T = from_columns(all, n);
  Matrix b = out.T.inverse() * m * out.T;
  int n1 = static_cast<int>(real_cols.size());
  if (!block_diagonal(b, n1)) throw Error(ErrorCode::Internal, "real canonical form is not block diagonal");
  out.C1 = b.block(0, 0, n1, n1);
  out.C2 = b.block(n1, n1, n - n1, n - n1);
  out.field = f;
  if (!is_c_matrix(out.C2)) throw Error(ErrorCode::Internal, "complex part is not a C-matrix");
  return out;
}

Matrix sylvester_solve(const Matrix& r, const Matrix& s, const Matrix& m) {
  if (gcd(r.char_poly(), s.char_poly()).degree() > 0)
    throw Error(ErrorCode::CommonEigenvalue, "R and S share an eigenvalue");
  int n = r.rows(), k = s.rows();
  Matrix big = kron(Matrix::identity(k), r) - kron(s.transpose(), Matrix::identity(n));
  std::vector<Scalar> rhs(static_cast<size_t>(n) * k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) rhs[static_cast<size_t>(i + j * n)] = m(i, j);
  std::vector<Scalar> x;
  if (!solve_linear(big, rhs, &x)) throw Error(ErrorCode::Internal, "Sylvester system inconsistent");
  Matrix out(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) out(i, j) = x[static_cast<size_t>(i + j * n)];
  return out;
}

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix characteristic_matrix(const Matrix& m) {
  int n = m.rows();
  PolyMatrix pm(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pm[i][j] = i == j ? Poly(std::vector<Scalar>{m(i, j), Scalar(-1)}) : Poly(m(i, j));
  return pm;
}

Poly poly_det(const PolyMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() == 1) return a[rows[0]][cols[0]];
  Poly acc;
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (size_t c = 0; c < cols.size(); ++c) {
    const Poly& e = a[rows[0]][cols[c]];
    if (e.is_zero()) continue;
    std::vector<int> sub_cols;
    for (size_t k = 0; k < cols.size(); ++k)
      if (k != c) sub_cols.push_back(cols[k]);
    Poly term = e * poly_det(a, sub_rows, sub_cols);
    if (c % 2)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

void subsets(int n, int t, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == t) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::vector<int> gamma_invariants_minors(const Matrix& m) {
  int n = m.rows();
  PolyMatrix pm = characteristic_matrix(m);
  std::vector<int> out;
  for (int t = 1; t <= n; ++t) {
    std::vector<std::vector<int>> sets;
    subsets(n, t, sets);
    Poly g;
    for (const auto& rs : sets) {
      for (const auto& cs : sets) {
        Poly d = poly_det(pm, rs, cs);
        if (!d.is_zero()) g = gcd(g, d);
        if (g.degree() == 0) break;
      }
      if (g.degree() == 0) break;
    }
    out.push_back(g.degree());
  }
  return out;
}

std::vector<int> gamma_invariants_smith(const Matrix& m) {
  int n = m.rows();
  PolyMatrix a = characteristic_matrix(m);
  std::vector<int> diag_deg;
  for (int k = 0; k < n; ++k) {
    for (;;) {
      // pivot of minimal degree in the trailing block
      int pi = -1, pj = -1;
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (!a[i][j].is_zero() && (pi < 0 || a[i][j].degree() < a[pi][pj].degree())) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        for (int r = k; r < n; ++r) diag_deg.push_back(-1);
        goto done;
      }
      std::swap(a[k], a[pi]);
      for (auto& row : a) std::swap(row[k], row[pj]);
      bool clean = true;
      for (int i = k + 1; i < n; ++i) {
        if (a[i][k].is_zero()) continue;
        Poly q = a[i][k] / a[k][k];
        for (int j = k; j < n; ++j) a[i][j] -= q * a[k][j];
        if (!a[i][k].is_zero()) clean = false;
      }
      for (int j = k + 1; j < n; ++j) {
        if (a[k][j].is_zero()) continue;
        Poly q = a[k][j] / a[k][k];
        for (int i = k; i < n; ++i) a[i][j] -= a[i][k] * q;
        if (!a[k][j].is_zero()) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block
      int bad = -1;
      for (int i = k + 1; i < n && bad < 0; ++i)
        for (int j = k + 1; j < n; ++j)
          if (!(a[i][j] % a[k][k]).is_zero()) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      for (int j = k; j < n; ++j) a[k][j] += a[bad][j];
    }
    diag_deg.push_back(a[k][k].degree());
  }
done:
  std::vector<int> out;
  int acc = 0;
  for (int d : diag_deg) {
    acc += std::max(d, 0);
    out.push_back(acc);
  }
  return out;
}

std::vector<int> gamma_invariants(const Matrix& m) {
  return m.rows() <= 4 ? gamma_invariants_minors(m) : gamma_invariants_smith(m);
}

Matrix theta_embed(const Matrix& m) {
  Matrix r(2 * m.rows(), 2 * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Scalar re = m(i, j).real_part(), im = m(i, j).imag_part();
      r(2 * i, 2 * j) = re;
      r(2 * i, 2 * j + 1) = -im;
      r(2 * i + 1, 2 * j) = im;
      r(2 * i + 1, 2 * j + 1) = re;
    }
  return r;
}

bool is_c_matrix(const Matrix& m) {
  if (m.rows() % 2 || m.cols() % 2) return false;
  for (int i = 0; i < m.rows(); i += 2)
    for (int j = 0; j < m.cols(); j += 2) {
      const Scalar &a = m(i, j), &b = m(i, j + 1), &c = m(i + 1, j), &d = m(i + 1, j + 1);
      if (!a.is_real() || !b.is_real() || !c.is_real() || !d.is_real()) return false;
      if (a != d || b != -c) return false;
    }
  return true;
}

Matrix theta_extract(const Matrix& m) {
  if (!is_c_matrix(m)) throw Error(ErrorCode::NotACMatrix, "matrix is not in the image of theta");
  Matrix r(m.rows() / 2, m.cols() / 2);
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j) * Scalar::i();
  return r;
}

System theta_embed(const System& a) {
  std::vector<Matrix> v;
  for (const auto& c : a.coefficients()) v.push_back(theta_embed(c));
  return System(2 * a.n(), a.stored_valuation(), std::move(v), a.order());
}

System theta_extract(const System& a) {
  std::vector<Matrix> v;
  for (const auto& c : a.coefficients()) v.push_back(theta_extract(c));
  return System(a.n() / 2, a.stored_valuation(), std::move(v), a.order());
}

bool is_c_system(const System& a) {
  if (a.n() % 2) return false;
  for (const auto& c : a.coefficients())
    if (!is_c_matrix(c)) return false;
  return true;
}

Step theta_embed(const Step& s) {
  Step r = s;
  if (s.kind == StepKind::DiagonalMonomial) {
    r.exponents.clear();
    for (long e : s.exponents) {
      r.exponents.push_back(e);
      r.exponents.push_back(e);
    }
  } else if (s.kind != StepKind::Ramification) {
    for (auto& p : r.poly) p = theta_embed(p);
  }
  return r;
}

Chain theta_embed(const Chain& c) {
  Chain r;
  for (const auto& s : c.steps) r.steps.push_back(theta_embed(s));
  return r;
}

Matrix c_completion(const Matrix& lambda, const Matrix& s) {
  if (lambda.rows() != 2 || !is_c_matrix(lambda)) throw Error(ErrorCode::NotACMatrix, "Lambda must be a 2x2 C-matrix");
  Scalar b = lambda(1, 0);
  if (b.is_zero()) throw Error(ErrorCode::BZero, "Lambda has b = 0");
  Scalar half(Rational(1, 2));
  Scalar u = (s(0, 0) - s(1, 1)) * half;
  Scalar v = -(s(0, 1) + s(1, 0)) * half;
  Matrix x(2, 2);
  x(0, 1) = u / b;
  x(0, 0) = v / b;
  return x;
}

bool integer_shift(const Poly& f, const Poly& g, long* n) {
  if (f.degree() != g.degree() || f.degree() < 1) return false;
  int d = f.degree();
  Poly fm = f.monic(), gm = g.monic();
  Scalar s = (fm.coeff(d - 1) - gm.coeff(d - 1)) * Scalar(Rational(1, d));
  if (!s.is_integer() || !s.rational().get_num().fits_slong_p()) return false;
  if (fm.shift(-s) != gm) return false;
  if (n) *n = s.rational().get_num().get_si();
  return true;
}

ResonanceData resonance_data(const Matrix& c) { return resonance_data(c, c.field()); }

ResonanceData resonance_data(const Matrix& c, const FieldDescriptor& over) {
  ResonanceData out;
  auto fac = factor_poly(c.char_poly(), join(over, c.field()));
  for (const auto& f : fac.factors) {
    bool placed = false;
    for (auto& cls : out.classes) {
      long n;
      if (integer_shift(cls.members[0].factor, f.poly, &n)) {
        cls.members.push_back({f.poly, cls.members[0].offset + n, f.multiplicity});
        placed = true;
        break;
      }
    }
    if (!placed) out.classes.push_back({{{f.poly, 0, f.multiplicity}}});
  }
  for (auto& cls : out.classes) {
    std::stable_sort(cls.members.begin(), cls.members.end(),
                     [](const ResonanceMember& a, const ResonanceMember& b) { return a.offset > b.offset; });
    long base = cls.members.back().offset;
    for (auto& mem : cls.members) mem.offset -= base;
    out.m_value += cls.degree() * cls.spread();
  }
  return out;
}

}  // namespace turrittin
