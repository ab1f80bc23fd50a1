#include "turrittin/reduce_complex.hpp"

#include "rank0_internal.hpp"
#include "turrittin/reduce_real.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace turrittin {

// ---- normal forms ----

System NormalForm::principal_part() const {
  std::vector<Matrix> c = D;
  c.push_back(C.rows() ? C : Matrix(n, n));
  return System(n, -q - 1, c);
}

std::vector<Poly> NormalForm::exponential_entries() const {
  std::vector<Poly> out;
  for (int j = 0; j < n; ++j) {
    std::vector<Scalar> c;
    for (const auto& d : D) c.push_back(d(j, j));
    out.push_back(Poly(c));
  }
  return out;
}

std::vector<std::vector<int>> d_blocks(const std::vector<Matrix>& d, int n) {
  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<Scalar>> keys;
  for (int j = 0; j < n; ++j) {
    std::vector<Scalar> key;
    for (const auto& m : d) key.push_back(m(j, j));
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      blocks.push_back({j});
    } else {
      blocks[it - keys.begin()].push_back(j);
    }
  }
  return blocks;
}

NormalForm read_normal_form(const System& b, long mu) {
  NormalForm nf;
  nf.n = b.n();
  nf.mu = mu;
  long nu = b.is_zero() ? 0 : b.valuation();
  nf.q = std::max<long>(-nu - 1, 0);
  for (long i = 0; i < nf.q; ++i) nf.D.push_back(tilde_coeff(b, nf.q, i));
  nf.C = b.coeff(-1);
  nf.blocks = d_blocks(nf.D, nf.n);
  nf.tail = b - nf.principal_part().with_order(b.order());
  return nf;
}

// ---- order-by-order solver ----

std::vector<Matrix> solve_by_order(const System& a, long q, long shift, long smax, const OrderSolver& solve) {
  int n = a.n();
  std::vector<Matrix> t{Matrix::identity(n)};
  std::vector<Matrix> bt;
  std::vector<Matrix> at;
  auto formula = [&](long j) {
    Matrix m(n, n);
    for (long i = 0; i <= j && i < static_cast<long>(t.size()); ++i)
      if (!t[i].is_zero() && !at[j - i].is_zero()) m += at[j - i] * t[i];
    long d = j - q;
    if (d >= 1 && d < static_cast<long>(t.size()) && !t[d].is_zero()) m -= t[d].scaled(Scalar(d));
    for (long i = 1; i <= j && i < static_cast<long>(t.size()); ++i)
      if (!t[i].is_zero() && !bt[j - i].is_zero()) m -= t[i] * bt[j - i];
    return m;
  };
  for (long j = 0; j <= shift + smax; ++j) {
    at.push_back(tilde_coeff(a, q, j));
    long s = j - shift;
    if (s >= 1) t.push_back(Matrix(n, n));
    Matrix m = formula(j);
    if (s >= 1) {
      t[s] = solve(s, m);
      if (!t[s].is_zero()) m = formula(j);
    }
    bt.push_back(m);
  }
  return t;
}

long required_input_order(const Chain& c, long input_valuation, long target_abs) {
  long need = target_abs;
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it) {
    switch (it->kind) {
      case StepKind::Ramification: {
        long r = it->r;
        long num = need - r + 1;
        need = num >= 0 ? (num + r - 1) / r : -((-num) / r);
        break;
      }
      case StepKind::DiagonalMonomial: {
        auto [lo, hi] = std::minmax_element(it->exponents.begin(), it->exponents.end());
        need += *hi - *lo;
        break;
      }
      default:
        break;
    }
  }
  return need - input_valuation;
}

// ---- index-set helpers ----

Matrix sub_matrix(const Matrix& m, const std::vector<int>& idx) {
  int k = static_cast<int>(idx.size());
  Matrix r(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) r(i, j) = m(idx[i], idx[j]);
  return r;
}

Matrix embed_matrix(const Matrix& small, const std::vector<int>& idx, int n) {
  Matrix r = Matrix::identity(n);
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) r(idx[i], idx[j]) = small(static_cast<int>(i), static_cast<int>(j));
  return r;
}

namespace detail {

Matrix embed_zero(const Matrix& small, const std::vector<int>& idx, int n) {
  Matrix r(n, n);
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) r(idx[i], idx[j]) = small(static_cast<int>(i), static_cast<int>(j));
  return r;
}

std::vector<Matrix> truncate_poly(std::vector<Matrix> p, long deg) {
  if (static_cast<long>(p.size()) > deg + 1) p.resize(static_cast<size_t>(deg + 1));
  return p;
}

std::vector<Matrix> poly_mul(const std::vector<Matrix>& a, const std::vector<Matrix>& b, long deg) {
  int n = a[0].rows();
  size_t len = std::min<size_t>(a.size() + b.size() - 1, static_cast<size_t>(deg + 1));
  std::vector<Matrix> c(len, Matrix(n, n));
  for (size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size() && i + j < len; ++j)
      if (!b[j].is_zero()) c[i + j] += a[i] * b[j];
  }
  return c;
}

std::vector<int> special_rows(const std::vector<int>& sigma) {
  std::vector<int> rows;
  int acc = 0;
  for (int s : sigma) {
    acc += s;
    rows.push_back(acc - 1);
  }
  return rows;
}

bool is_special(const Matrix& m, const std::vector<int>& rows) {
  for (int i = 0; i < m.rows(); ++i) {
    if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  }
  return true;
}


}  // namespace detail

using detail::embed_zero;
using detail::is_special;
using detail::poly_mul;
using detail::special_rows;
using detail::truncate_poly;

System sub_system(const System& a, const std::vector<int>& idx) {
  std::vector<Matrix> c;
  for (const auto& m : a.coefficients()) c.push_back(sub_matrix(m, idx));
  return System(static_cast<int>(idx.size()), a.stored_valuation(), std::move(c), a.order());
}

// ---- splitting and specialization ----

GaugeResult splitting_lemma(const System& a, const Matrix& t0, int n1, long N) {
  auto inv = system_invariants(a);
  if (inv.k >= inv.q) throw Error(ErrorCode::PreconditionViolated, "splitting needs k < q");
  int n = a.n(), n2 = n - n1;
  System a0 = gauge_transform(a, Step::constant(t0));
  Matrix ak = tilde_coeff(a0, inv.q, inv.k);
  Matrix a11 = ak.block(0, 0, n1, n1), a22 = ak.block(n1, n1, n2, n2);
  if (!ak.block(0, n1, n1, n2).is_zero() || !ak.block(n1, 0, n2, n1).is_zero())
    throw Error(ErrorCode::PreconditionViolated, "T0 does not split A_k");
  if (gcd(a11.char_poly(), a22.char_poly()).degree() > 0)
    throw Error(ErrorCode::SpectraNotDisjoint, "diagonal blocks of A_k share an eigenvalue");
  auto t = solve_by_order(a0, inv.q, inv.k, N - inv.k, [&](long, const Matrix& m) {
    Matrix x(n, n);
    x.set_block(0, n1, sylvester_solve(a11, a22, -m.block(0, n1, n1, n2)));
    x.set_block(n1, 0, sylvester_solve(a22, a11, -m.block(n1, 0, n2, n1)));
    return x;
  });
  for (auto& m : t) m = t0 * m;
  Step p = Step::polynomial(t);
  return {p, gauge_transform(a, p)};
}

GaugeResult specialize_coefficients(const System& a, const std::vector<int>& sigma, long N) {
  auto inv = system_invariants(a);
  int n = a.n();
  Matrix ak = tilde_coeff(a, inv.q, inv.k);
  if (ak.is_scalar()) throw Error(ErrorCode::PreconditionViolated, "A_k is radial");
  Scalar lambda = ak(0, 0);
  if (ak != jordan_matrix(lambda, sigma)) throw Error(ErrorCode::PreconditionViolated, "A_k is not in Jordan form of the given type");
  Matrix h = ak - Matrix::identity(n, lambda);
  auto rows = special_rows(sigma);
  std::vector<int> free_rows;
  for (int u = 0; u < n; ++u)
    if (std::find(rows.begin(), rows.end(), u) == rows.end()) free_rows.push_back(u);
  // ([H, X])_uv for the non-special rows u, as a linear map on vec(X)
  Matrix lin(static_cast<int>(free_rows.size()) * n, n * n);
  for (size_t e = 0; e < free_rows.size(); ++e) {
    int u = free_rows[e];
    for (int v = 0; v < n; ++v) {
      int row = static_cast<int>(e) * n + v;
      for (int w = 0; w < n; ++w) {
        if (!h(u, w).is_zero()) lin(row, w * n + v) += h(u, w);
        if (!h(w, v).is_zero()) lin(row, u * n + w) -= h(w, v);
      }
    }
  }
  auto t = solve_by_order(a, inv.q, inv.k, N - inv.k, [&](long, const Matrix& m) {
    std::vector<Scalar> rhs;
    for (int u : free_rows)
      for (int v = 0; v < n; ++v) rhs.push_back(-m(u, v));
    std::vector<Scalar> x;
    if (!solve_linear(lin, rhs, &x)) throw Error(ErrorCode::Internal, "specialization system inconsistent");
    Matrix r(n, n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) r(u, v) = x[static_cast<size_t>(u * n + v)];
    return r;
  });
  Step p = Step::polynomial(t);
  System b = gauge_transform(a, p);
  for (long j = inv.k + 1; j <= N; ++j)
    if (!is_special(tilde_coeff(b, inv.q, j), rows)) throw Error(ErrorCode::Internal, "specialization failed");
  return {p, b};
}

// ---- shearing ----

ShearingOrder shearing_order(const System& a) {
  auto inv = system_invariants(a);
  int n = a.n();
  long q = inv.q, k = inv.k;
  Matrix ak = tilde_coeff(a, q, k);
  Scalar lambda = ak.trace() / Scalar(static_cast<long>(n));
  long depth = static_cast<long>(n) * (q - k);
  std::vector<std::vector<long>> alpha(n, std::vector<long>(n, -1));
  for (long j = 0; j <= depth; ++j) {
    Matrix m = tilde_coeff(a, q, k + j);
    if (j == 0) m -= Matrix::identity(n, lambda);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (alpha[u][v] < 0 && !m(u, v).is_zero()) alpha[u][v] = j;
  }
  Rational best(q - k);
  std::string witness = "q-k";
  for (int u = 0; u < n; ++u)
    for (int v = 0; v <= u; ++v) {
      if (alpha[u][v] < 0) continue;
      Rational val(alpha[u][v], 1 + u - v);
      val.canonicalize();
      if (val < best) {
        best = val;
        witness = "alpha(" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")=" + std::to_string(alpha[u][v]);
      }
    }
  if (sgn(best) <= 0) throw Error(ErrorCode::PreconditionViolated, "shearing order is not positive");
  ShearingOrder g;
  g.h = best.get_num().get_si();
  g.r = best.get_den().get_si();
  g.witness = witness;
  return g;
}

System shear(const System& a, long h) {
  if (h == 0) return a;
  std::vector<long> e;
  for (int i = 0; i < a.n(); ++i) e.push_back(i * h);
  return gauge_transform(a, Step::monomial(e));
}

std::vector<long> termination_measure(const System& a) {
  auto inv = system_invariants(a);
  std::vector<long> out;
  for (int g : gamma_invariants(tilde_coeff(a, inv.q, inv.k))) out.push_back(g);
  out.push_back(inv.q - inv.k);
  return out;
}

// ---- rank-0 reduction ----

namespace detail {

namespace {

bool is_leaf(const System& w, Invariants* inv) {
  if (w.is_zero()) return true;
  *inv = system_invariants(w);
  return inv->q == 0 || inv->k >= inv->q;
}


Chain split_branch(const System& w, const Invariants& inv, Factorization fac, Rank0State& st, bool real) {
  int n = w.n();
  Matrix ak = tilde_coeff(w, inv.q, inv.k);
  // prefer the factor whose generalized eigenspace contains e_1, so diagonal inputs keep their order
  for (size_t i = 0; i < fac.factors.size(); ++i) {
    Matrix z = eval_poly(pow(fac.factors[i].poly, fac.factors[i].multiplicity), ak);
    bool kills = true;
    for (int r = 0; r < n && kills; ++r) kills = z(r, 0).is_zero();
    if (kills) {
      std::rotate(fac.factors.begin(), fac.factors.begin() + static_cast<long>(i), fac.factors.begin() + static_cast<long>(i) + 1);
      break;
    }
  }
  Poly p1 = pow(fac.factors[0].poly, fac.factors[0].multiplicity), p2(Scalar(1));
  for (size_t i = 1; i < fac.factors.size(); ++i) p2 = p2 * pow(fac.factors[i].poly, fac.factors[i].multiplicity);
  auto sp = coprime_split(ak, p1, p2);
  int n1 = p1.degree();
  auto sl = splitting_lemma(w, sp.T, n1, inv.N);
  Chain c1 = normalized(rank0_chain(sl.B.block(0, 0, n1, n1), st, real));
  Chain c2 = normalized(rank0_chain(sl.B.block(n1, n1, n - n1, n - n1), st, real));
  long r1 = c1.ramification(), r2 = c2.ramification();
  long l = std::lcm(r1, r2);
  Chain out;
  out.push(sl.gauge);
  if (l > 1) out.steps.push_back(Step::ramification(l));
  auto lift = [&](const Chain& c, long r, int size, int offset) {
    Chain g;
    for (const auto& s : c.steps)
      if (s.kind != StepKind::Ramification) g.push(push_through_ramification(s, l / r));
    (void)size;
    out.append(embed_chain(g, n, offset));
  };
  lift(c1, r1, n1, 0);
  lift(c2, r2, n - n1, n1);
  return out;
}

// Trivial case of the real reduction: the residual goes to real canonical form when the tower allows it.
void real_leaf(const System& w, Chain& chain) {
  if (w.is_zero() || w.n() < 2) return;
  auto inv = system_invariants(w);
  try {
    auto rc = real_canonical_form(tilde_coeff(w, inv.q, inv.q));
    chain.push(Step::constant(rc.T));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedTower) throw;
  }
}

// Single pair of conjugate eigenvalues: make the jet a C-system, reduce its complex preimage and
// carry the chain back through theta.
Chain conjugate_pair_case(const System& w, const Invariants& inv, Rank0State& st) {
  auto pc = propagate_c_structure(w, inv.N);
  System bbar = theta_extract(pc.B.truncate(inv.N));
  Chain cc = normalized(rank0_chain(bbar, st, false));
  Chain out;
  out.push(pc.gauge);
  out.append(theta_embed(cc));
  return out;
}

}  // namespace

Chain rank0_chain(System w, Rank0State& st, bool real) {
  Chain chain;
  std::vector<std::vector<long>> loop;
  long iterations = 0;
  auto finish = [&]() {
    if (!loop.empty()) st.measures.push_back(loop);
    st.max_iterations = std::max(st.max_iterations, iterations);
  };
  for (;;) {
    Invariants inv;
    if (is_leaf(w, &inv)) {
      if (real) real_leaf(w, chain);
      finish();
      return chain;
    }
    int n = w.n();
    Matrix ak = tilde_coeff(w, inv.q, inv.k);
    FieldDescriptor f = w.field();
    auto fac = factor_poly(ak.char_poly(), f);
    if (fac.factors.size() == 1 && fac.factors[0].poly.degree() == 2) {
      const Poly& quad = fac.factors[0].poly;
      Scalar disc = quad.coeff(1) * quad.coeff(1) - Scalar(4) * quad.coeff(0);
      if (real && disc.sign() < 0) {
        finish();
        chain.append(conjugate_pair_case(w, inv, st));
        return chain;
      }
      FieldDescriptor g;
      try {
        g = field_with_sqrt(disc, f, real);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::IncompatibleField) throw Error(ErrorCode::UnsupportedTower, e.what());
        throw;
      }
      fac = factor_poly(ak.char_poly(), g);
    }
    if (fac.factors.size() >= 2) {
      finish();
      chain.append(split_branch(w, inv, fac, st, real));
      return chain;
    }
    if (fac.factors[0].poly.degree() != 1)
      throw Error(ErrorCode::UnsupportedTower, "eigenvalues of A_k need an extension of degree " +
                                                   std::to_string(fac.factors[0].poly.degree()));
    // single eigenvalue: Jordan form, specialization, shearing
    if (++iterations > 10L * n) throw Error(ErrorCode::Internal, "single-eigenvalue loop exceeded 10 n iterations");
    loop.push_back(termination_measure(w));
    Scalar lambda = -fac.factors[0].poly.coeff(0);
    auto jd = jordan_single_eigen(ak, lambda);
    Step t0 = Step::constant(jd.T);
    w = gauge_transform(w, t0);
    chain.push(t0);
    auto sp = specialize_coefficients(w, jd.sizes, inv.N);
    w = sp.B;
    chain.push(sp.gauge);
    auto g = shearing_order(w);
    if (g.r > 1) {
      w = ramify(w, g.r);
      chain.push(Step::ramification(g.r));
    }
    std::vector<long> e;
    for (int i = 0; i < n; ++i) e.push_back(i * g.h);
    Step s = Step::monomial(e);
    w = gauge_transform(w, s);
    chain.push(s);
  }
}

}  // namespace detail

static Rank0Result trs_rank0_impl(const System& a) {
  auto inv = system_invariants(a);
  if (a.rel_order() < inv.N)
    throw PrecisionError("rank-0 reduction needs the input through relative order " + std::to_string(inv.N), inv.N);
  detail::Rank0State st;
  Rank0Result res;
  res.chain = normalized(detail::rank0_chain(a.truncate(inv.N), st, false));
  res.measures = st.measures;
  res.max_loop_iterations = st.max_iterations;
  res.B = replay(a, res.chain);
  if (res.B.order() < -1) {
    long need = required_input_order(res.chain, a.valuation(), -1);
    throw PrecisionError("principal part of the reduced system is not determined; input order " +
                             std::to_string(need) + " required",
                         need);
  }
  res.nf = read_normal_form(res.B, 0);
  res.nf.r = res.chain.ramification();
  return res;
}

// ---- tail elimination ----

std::vector<Matrix> eliminate_offdiagonal(const System& a, long q, long mu) {
  int n = a.n();
  std::vector<Matrix> ident{Matrix::identity(n)};
  if (q <= 0 || n == 1) return ident;
  Matrix d0 = tilde_coeff(a, q, 0);
  std::vector<std::vector<int>> coarse = d_blocks({d0}, n);
  std::vector<Matrix> tbar = ident;
  System b = a;
  if (coarse.size() > 1) {
    tbar = solve_by_order(a, q, 0, q + mu, [&](long, const Matrix& m) {
      Matrix x(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Scalar diff = d0(i, i) - d0(j, j);
          if (!diff.is_zero() && !m(i, j).is_zero()) x(i, j) = -m(i, j) / diff;
        }
      return x;
    });
    b = gauge_transform(a, Step::polynomial(tbar));
  }
  std::vector<Matrix> inner(1, Matrix::identity(n));
  for (const auto& idx : coarse) {
    Scalar c0 = d0(idx[0], idx[0]);
    System sub = sub_system(b, idx) - System::monomial(Matrix::identity(static_cast<int>(idx.size()), c0), -q - 1);
    long qs = sub.is_zero() ? 0 : std::max<long>(-sub.valuation() - 1, 0);
    if (qs == 0 || idx.size() == 1) continue;
    auto ts = eliminate_offdiagonal(sub, qs, mu);
    for (size_t i = 0; i < ts.size(); ++i) {
      if (inner.size() <= i) inner.push_back(Matrix(n, n));
      Matrix part = i == 0 ? embed_matrix(ts[0], idx, n) - Matrix::identity(n) : embed_zero(ts[i], idx, n);
      inner[i] += part;
    }
  }
  return poly_mul(tbar, inner, q + mu);
}

static TailResult eliminate_tail_impl(const System& a, long mu) {
  NormalForm nf0 = read_normal_form(a, 0);
  long q = nf0.q;
  int n = a.n();
  for (const auto& idx : nf0.blocks)
    if (resonance_data(sub_matrix(nf0.C, idx)).resonant())
      throw Error(ErrorCode::ResonantResidual, "residual matrix is resonant on a D-block");
  if (a.order() < mu - 1)
    throw PrecisionError("tail elimination needs the input through relative order " + std::to_string(q + mu),
                         mu - 1 - a.valuation());
  auto t = eliminate_offdiagonal(a, q, mu);
  System b1 = gauge_transform(a, Step::polynomial(t));
  // U is carried to degree q + mu when the input allows it, so that the family of gauges is the
  // truncation of a single formal gauge; otherwise only U_1..U_mu are determined
  long umax = b1.order() >= q + mu - 1 ? q + mu : mu;
  auto u = solve_by_order(b1, q, q, umax, [&](long s, const Matrix& m) {
    Matrix x(n, n);
    for (const auto& idx : nf0.blocks) {
      Matrix c = sub_matrix(nf0.C, idx);
      int k = static_cast<int>(idx.size());
      Matrix xs = sylvester_solve(c, c + Matrix::identity(k, Scalar(s)), -sub_matrix(m, idx));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) x(idx[i], idx[j]) = xs(i, j);
    }
    return x;
  });
  auto p = poly_mul(t, u, q + mu);
  TailResult res;
  res.gauge = Step::polynomial(truncate_poly(p, q + mu));
  res.B = gauge_transform(a, res.gauge);
  res.nf = read_normal_form(res.B, mu);
  res.nf.r = 1;
  return res;
}

// ---- deresonation ----

namespace detail {

Step embed_step(const Step& s, const std::vector<int>& idx, int n) {
  if (s.kind == StepKind::Ramification) return s;
  if (s.kind == StepKind::DiagonalMonomial) {
    std::vector<long> e(static_cast<size_t>(n), 0);
    for (size_t i = 0; i < idx.size(); ++i) e[static_cast<size_t>(idx[i])] = s.exponents[i];
    return Step::monomial(e);
  }
  std::vector<Matrix> p;
  for (size_t i = 0; i < s.poly.size(); ++i) p.push_back(i == 0 ? embed_matrix(s.poly[0], idx, n) : embed_zero(s.poly[i], idx, n));
  return Step::polynomial(p);
}

void deresonate_block(System& cur, long q, const std::vector<int>& idx, bool complex_mode,
                      const std::function<long(const System&)>& measure, DeresonateResult& res) {
  int n = cur.n();
  FieldDescriptor over = cur.field();
  for (;;) {
    Matrix c = sub_matrix(tilde_coeff(cur, q, q), idx);
    auto rd = resonance_data(c, over);
    if (!rd.resonant()) break;
    const ResonanceClass* cls = nullptr;
    for (const auto& k : rd.classes)
      if (k.spread() > 0) {
        cls = &k;
        break;
      }
    const ResonanceMember& top = cls->members.front();
    if (complex_mode && top.factor.degree() == 2) {
      Scalar disc = top.factor.coeff(1) * top.factor.coeff(1) - Scalar(4) * top.factor.coeff(0);
      try {
        FieldDescriptor g = field_with_sqrt(disc, over, false);
        if (g != over) {
          over = g;
          continue;
        }
      } catch (const Error&) {
      }
    }
    Poly p1 = pow(top.factor, top.multiplicity);
    Poly p2 = c.char_poly() / p1;
    int t = p1.degree();
    Matrix tm = Matrix::identity(static_cast<int>(idx.size()));
    if (p2.degree() > 0) tm = coprime_split(c, p1, p2).T;
    Step p0 = Step::constant(embed_matrix(tm, idx, n));
    std::vector<long> e(static_cast<size_t>(n), 0);
    for (int i = 0; i < t; ++i) e[static_cast<size_t>(idx[static_cast<size_t>(i)])] = 1;
    Step s = Step::monomial(e);
    cur = gauge_transform(gauge_transform(cur, p0), s);
    res.chain.push(p0);
    res.chain.push(s);
    ++res.rounds;
    res.m_history.push_back(measure(cur));
  }
}

}  // namespace detail

long deresonation_rounds(const NormalForm& nf) {
  long total = 0;
  for (const auto& idx : nf.blocks) total += resonance_data(sub_matrix(nf.C, idx)).m_value;
  return total;
}

static DeresonateResult deresonate_impl(const System& a, bool complex_mode) {
  DeresonateResult res;
  NormalForm nf = read_normal_form(a, 0);
  long q = nf.q;
  long m_max = 0, total = 0;
  for (const auto& idx : nf.blocks) {
    long m = resonance_data(sub_matrix(nf.C, idx)).m_value;
    m_max = std::max(m_max, m);
    total += m;
  }
  res.B = a;
  res.nf = nf;
  res.m_history.push_back(total);
  if (total == 0) return res;
  long need = std::max(m_max, total) - 1;
  if (a.order() < need)
    throw PrecisionError("deresonation needs the input through relative order " + std::to_string(need - a.valuation()),
                         need - a.valuation());
  System cur = a;
  if (nf.blocks.size() > 1) {
    Step t = Step::polynomial(eliminate_offdiagonal(a, q, m_max));
    cur = gauge_transform(cur, t);
    res.chain.push(t);
  }
  auto measure = [&](const System& s) {
    long now = 0;
    for (const auto& j : nf.blocks) now += resonance_data(sub_matrix(tilde_coeff(s, q, q), j), s.field()).m_value;
    return now;
  };
  for (const auto& idx : nf.blocks) detail::deresonate_block(cur, q, idx, complex_mode, measure, res);
  res.B = cur;
  res.nf = read_normal_form(cur, 0);
  return res;
}

// ---- full pipeline ----

std::string symbolic_solution(const NormalForm& nf) {
  std::ostringstream os;
  std::string t = nf.r == 1 ? "x" : "x^(1/" + std::to_string(nf.r) + ")";
  os << "Y(x) = P(" << t << ") * exp(diag(";
  for (int j = 0; j < nf.n; ++j) {
    if (j) os << ", ";
    bool any = false;
    for (long i = 0; i < nf.q; ++i) {
      const Scalar& d = nf.D[i](j, j);
      if (d.is_zero()) continue;
      long e = i - nf.q;
      Scalar c = d / Scalar(e);
      if (any) os << " + ";
      os << "(" << c.str() << ")*" << (nf.r == 1 ? "x" : "t") << "^" << e;
      any = true;
    }
    if (!any) os << "0";
  }
  os << ")) * " << (nf.r == 1 ? "x" : "t") << "^C";
  if (nf.r > 1) os << ", t = " << t;
  os << ", C = " << (nf.C.rows() ? nf.C.str() : "[]");
  return os.str();
}

static FormalNormalForm formal_normal_form_impl(const System& a, long precision) {
  FormalNormalForm out;
  out.rank0 = trs_rank0(a);
  const System& b0 = out.rank0.B;
  long rounds = deresonation_rounds(out.rank0.nf);
  long m_max = 0;
  for (const auto& idx : out.rank0.nf.blocks)
    m_max = std::max(m_max, resonance_data(sub_matrix(out.rank0.nf.C, idx)).m_value);
  long need = std::max(rounds, m_max) + precision - 1;
  if (b0.order() < need) {
    long req = required_input_order(out.rank0.chain, a.valuation(), need);
    throw PrecisionError("normal form of degree " + std::to_string(precision) + " needs input order " +
                             std::to_string(req),
                         req);
  }
  auto dr = deresonate(b0);
  out.deresonation_rounds = dr.rounds;
  auto et = eliminate_tail(dr.B, precision);
  out.chain = out.rank0.chain;
  out.phase.assign(out.chain.steps.size(), "rank0");
  out.chain.append(dr.chain);
  out.phase.resize(out.chain.steps.size(), "deresonation");
  out.chain.push(et.gauge);
  out.phase.resize(out.chain.steps.size(), "tail");
  out.Q = et.gauge.poly;
  out.B = et.B;
  out.nf = et.nf;
  out.nf.r = out.chain.ramification();
  out.F = out.nf.principal_part();
  out.solution = symbolic_solution(out.nf);
  return out;
}

// ---- public entry points ----

Rank0Result trs_rank0(const System& a) {
  return detail::within_tower([&] { return trs_rank0_impl(a); });
}

TailResult eliminate_tail(const System& a, long mu) {
  return detail::within_tower([&] { return eliminate_tail_impl(a, mu); });
}

DeresonateResult deresonate(const System& a, bool complex_mode) {
  return detail::within_tower([&] { return deresonate_impl(a, complex_mode); });
}

FormalNormalForm formal_normal_form(const System& a, long precision) {
  return detail::within_tower([&] { return formal_normal_form_impl(a, precision); });
}

}  // namespace turrittin
