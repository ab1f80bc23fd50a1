#include "turrittin/reduce_real.hpp"

#include <algorithm>
#include <sstream>

#include "rank0_internal.hpp"

namespace turrittin {

namespace {

using detail::embed_step;
using detail::embed_zero;
using detail::poly_mul;

Matrix rect(const Matrix& m, const std::vector<int>& ri, const std::vector<int>& ci) {
  Matrix r(static_cast<int>(ri.size()), static_cast<int>(ci.size()));
  for (size_t i = 0; i < ri.size(); ++i)
    for (size_t j = 0; j < ci.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = m(ri[i], ci[j]);
  return r;
}

void put(Matrix& m, const std::vector<int>& ri, const std::vector<int>& ci, const Matrix& b) {
  for (size_t i = 0; i < ri.size(); ++i)
    for (size_t j = 0; j < ci.size(); ++j) m(ri[i], ci[j]) = b(static_cast<int>(i), static_cast<int>(j));
}

std::vector<Matrix> exponential_coeffs(const System& a, long q) {
  std::vector<Matrix> d;
  for (long i = 0; i < q; ++i) d.push_back(tilde_coeff(a, q, i));
  return d;
}

long rank_of(const System& a) { return a.is_zero() ? 0 : std::max<long>(-a.valuation() - 1, 0); }

// Lambda (+) ... (+) Lambda + H with H made of 0 / I_2 blocks on the block superdiagonal.
bool is_lambda_h(const Matrix& m) {
  if (!is_c_matrix(m)) return false;
  int k = m.rows() / 2;
  Matrix lam = m.block(0, 0, 2, 2);
  if (lam(1, 0).is_zero()) return false;
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v) {
      Matrix b = m.block(2 * u, 2 * v, 2, 2);
      if (u == v ? b != lam : v == u + 1 ? !(b.is_zero() || b.is_identity()) : !b.is_zero()) return false;
    }
  return true;
}

long block_m(const Matrix& c, const std::vector<int>& idx, bool theta) {
  Matrix cb = sub_matrix(c, idx);
  return theta ? resonance_data(theta_extract(cb)).m_value : resonance_data(cb).m_value;
}

}  // namespace

std::vector<std::vector<int>> real_units(const std::vector<Matrix>& d, int n) {
  std::vector<std::vector<int>> units;
  for (int j = 0; j < n;) {
    bool pair = false;
    if (j + 1 < n)
      for (const auto& m : d)
        if (!m(j + 1, j).is_zero()) pair = true;
    if (pair) {
      units.push_back({j, j + 1});
      j += 2;
    } else {
      units.push_back({j});
      j += 1;
    }
  }
  return units;
}

NormalForm read_real_normal_form(const System& b, long mu) {
  NormalForm nf = read_normal_form(b, mu);
  auto units = real_units(nf.D, nf.n);
  nf.blocks.clear();
  std::vector<std::vector<Scalar>> keys;
  nf.real_size = 0;
  bool leading = true;
  for (const auto& u : units) {
    std::vector<Scalar> key;
    for (const auto& m : nf.D) {
      key.push_back(m(u[0], u[0]));
      key.push_back(u.size() == 2 ? m(u[1], u[0]) : Scalar());
    }
    key.push_back(Scalar(static_cast<long>(u.size())));
    if (u.size() == 2) leading = false;
    if (leading) ++nf.real_size;
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      nf.blocks.push_back(u);
    } else {
      auto& blk = nf.blocks[static_cast<size_t>(it - keys.begin())];
      blk.insert(blk.end(), u.begin(), u.end());
    }
  }
  return nf;
}

bool is_theta_block(const NormalForm& nf, const std::vector<int>& idx) {
  if (idx.size() < 2 || idx[1] != idx[0] + 1) return false;
  for (const auto& m : nf.D)
    if (!m(idx[1], idx[0]).is_zero()) return true;
  return false;
}

// ---- C-structure ----

static GaugeResult propagate_c_structure_impl(const System& a, long mu) {
  auto inv = system_invariants(a);
  if (inv.k >= inv.q) throw Error(ErrorCode::PreconditionViolated, "C-structure propagation needs k < q");
  int n = a.n();
  Matrix ak = tilde_coeff(a, inv.q, inv.k);
  auto fac = factor_poly(ak.char_poly(), a.field());
  bool pair = n % 2 == 0 && fac.factors.size() == 1 && fac.factors[0].poly.degree() == 2;
  if (pair) {
    const Poly& f = fac.factors[0].poly;
    pair = (f.coeff(1) * f.coeff(1) - Scalar(4) * f.coeff(0)).sign() < 0;
  }
  if (!pair) throw Error(ErrorCode::WrongSpectrum, "A_k must have a single pair of conjugate non-real eigenvalues");
  if (a.rel_order() < mu)
    throw PrecisionError("C-structure propagation needs the input through relative order " + std::to_string(mu), mu);
  Matrix t0 = Matrix::identity(n);
  if (!is_lambda_h(ak)) t0 = real_canonical_form(ak).T;
  System a0 = t0.is_identity() ? a : gauge_transform(a, Step::constant(t0));
  Matrix ck = tilde_coeff(a0, inv.q, inv.k);
  int m = n / 2;
  Matrix lam = ck.block(0, 0, 2, 2);
  std::vector<bool> eps(static_cast<size_t>(m), false);
  for (int u = 0; u + 1 < m; ++u) eps[static_cast<size_t>(u)] = !ck(2 * u, 2 * u + 2).is_zero();
  auto t = solve_by_order(a0, inv.q, inv.k, mu - inv.k, [&](long, const Matrix& mm) {
    Matrix x(n, n);
    // first column bottom to top, then the next columns
    for (int v = 0; v < m; ++v)
      for (int u = m - 1; u >= 0; --u) {
        Matrix s = mm.block(2 * u, 2 * v, 2, 2);
        if (u + 1 < m && eps[static_cast<size_t>(u)]) s += x.block(2 * (u + 1), 2 * v, 2, 2);
        if (v > 0 && eps[static_cast<size_t>(v - 1)]) s -= x.block(2 * u, 2 * (v - 1), 2, 2);
        x.set_block(2 * u, 2 * v, c_completion(lam, s));
      }
    return x;
  });
  for (auto& c : t) c = t0 * c;
  Step p = Step::polynomial(t);
  System b = gauge_transform(a, p);
  for (long j = 0; j <= mu; ++j)
    if (!is_c_matrix(tilde_coeff(b, inv.q, j))) throw Error(ErrorCode::Internal, "C-structure propagation failed");
  return {p, b};
}

// ---- rank 0 ----

static Rank0Result rtrs_rank0_impl(const System& a) {
  if (!a.is_real()) throw Error(ErrorCode::PreconditionViolated, "real reduction needs a system over the real tower");
  auto inv = system_invariants(a);
  if (a.rel_order() < inv.N)
    throw PrecisionError("rank-0 reduction needs the input through relative order " + std::to_string(inv.N), inv.N);
  detail::Rank0State st;
  Rank0Result res;
  res.chain = normalized(detail::rank0_chain(a.truncate(inv.N), st, true));
  res.measures = st.measures;
  res.max_loop_iterations = st.max_iterations;
  System b = replay(a, res.chain);
  if (b.order() < -1) {
    long need = required_input_order(res.chain, a.valuation(), -1);
    throw PrecisionError("principal part of the reduced system is not determined; input order " +
                             std::to_string(need) + " required",
                         need);
  }
  // real units first, then theta pairs with positive leading imaginary part
  int n = a.n();
  long q = rank_of(b);
  auto d = exponential_coeffs(b, q);
  auto units = real_units(d, n);
  Matrix perm(n, n);
  int col = 0;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& u : units) {
      if ((u.size() == 2) != (pass == 1)) continue;
      if (u.size() == 1) {
        perm(u[0], col++) = Scalar(1);
        continue;
      }
      int sign = 1;
      for (const auto& m : d)
        if (!m(u[1], u[0]).is_zero()) {
          sign = m(u[1], u[0]).sign();
          break;
        }
      perm(u[0], col++) = Scalar(1);
      perm(u[1], col++) = Scalar(sign);
    }
  if (!perm.is_identity()) {
    Step p = Step::constant(perm);
    b = gauge_transform(b, p);
    res.chain.push(p);
  }
  if (!res.chain.is_real()) throw Error(ErrorCode::Internal, "real reduction produced a non-real step");
  res.B = b;
  res.nf = read_real_normal_form(b, 0);
  res.nf.r = res.chain.ramification();
  return res;
}

// ---- tail elimination ----

std::vector<Matrix> real_eliminate_offdiagonal(const System& a, long q, long mu) {
  int n = a.n();
  std::vector<Matrix> ident{Matrix::identity(n)};
  if (q <= 0 || n == 1) return ident;
  Matrix d0 = tilde_coeff(a, q, 0);
  auto units = real_units(exponential_coeffs(a, q), n);
  struct Class {
    Scalar re, im;
    std::vector<int> idx;
  };
  std::vector<Class> classes;
  for (const auto& u : units) {
    Scalar re = d0(u[0], u[0]), im = u.size() == 2 ? d0(u[1], u[0]) : Scalar();
    auto it = std::find_if(classes.begin(), classes.end(), [&](const Class& c) { return c.re == re && c.im == im; });
    if (it == classes.end()) {
      classes.push_back({re, im, u});
    } else {
      it->idx.insert(it->idx.end(), u.begin(), u.end());
    }
  }
  std::vector<Matrix> tbar = ident;
  System b = a;
  if (classes.size() > 1) {
    tbar = solve_by_order(a, q, 0, q + mu, [&](long, const Matrix& m) {
      Matrix x(n, n);
      for (const auto& cu : classes)
        for (const auto& cv : classes) {
          if (&cu == &cv) continue;
          Matrix r = rect(m, cu.idx, cv.idx);
          if (r.is_zero()) continue;
          put(x, cu.idx, cv.idx, sylvester_solve(sub_matrix(d0, cu.idx), sub_matrix(d0, cv.idx), -r));
        }
      return x;
    });
    b = gauge_transform(a, Step::polynomial(tbar));
  }
  std::vector<Matrix> inner(1, Matrix::identity(n));
  auto add = [&](const std::vector<Matrix>& ts, const std::vector<int>& idx) {
    for (size_t i = 0; i < ts.size(); ++i) {
      if (inner.size() <= i) inner.push_back(Matrix(n, n));
      inner[i] += i == 0 ? embed_matrix(ts[0], idx, n) - Matrix::identity(n) : embed_zero(ts[i], idx, n);
    }
  };
  for (const auto& c : classes) {
    int size = static_cast<int>(c.idx.size());
    if (size == 1) continue;
    if (c.im.is_zero()) {
      System sub = sub_system(b, c.idx) - System::monomial(Matrix::identity(size, c.re), -q - 1);
      long qs = rank_of(sub);
      if (qs == 0) continue;
      add(real_eliminate_offdiagonal(sub, qs, mu), c.idx);
      continue;
    }
    // theta class: make it a C-system, then work on its complex preimage
    auto pc = propagate_c_structure(sub_system(b, c.idx), q + mu);
    Scalar lambda = c.re + c.im * Scalar::i();
    System ext = theta_extract(pc.B.truncate(q + mu)) -
                 System::monomial(Matrix::identity(size / 2, lambda), -q - 1);
    long qs = rank_of(ext);
    std::vector<Matrix> tc{Matrix::identity(size / 2)};
    if (qs > 0 && size > 2) tc = eliminate_offdiagonal(ext, qs, mu);
    for (auto& m : tc) m = theta_embed(m);
    add(poly_mul(pc.gauge.poly, tc, q + mu), c.idx);
  }
  return poly_mul(tbar, inner, q + mu);
}

static TailResult real_eliminate_tail_impl(const System& a, long mu) {
  NormalForm nf0 = read_real_normal_form(a, 0);
  long q = nf0.q;
  int n = a.n();
  std::vector<bool> theta;
  for (const auto& idx : nf0.blocks) {
    theta.push_back(is_theta_block(nf0, idx));
    if (block_m(nf0.C, idx, theta.back()) > 0)
      throw Error(ErrorCode::ResonantResidual, "residual matrix is resonant on an exponential block");
  }
  if (a.order() < mu - 1)
    throw PrecisionError("tail elimination needs the input through relative order " + std::to_string(q + mu),
                         mu - 1 - a.valuation());
  auto t = real_eliminate_offdiagonal(a, q, mu);
  System b1 = gauge_transform(a, Step::polynomial(t));
  auto u = solve_by_order(b1, q, q, mu, [&](long s, const Matrix& m) {
    Matrix x(n, n);
    for (size_t bi = 0; bi < nf0.blocks.size(); ++bi) {
      const auto& idx = nf0.blocks[bi];
      Matrix c = sub_matrix(nf0.C, idx), mb = sub_matrix(m, idx);
      Matrix xs;
      if (theta[bi]) {
        Matrix g = theta_extract(c);
        int k = g.rows();
        xs = theta_embed(sylvester_solve(g, g + Matrix::identity(k, Scalar(s)), -theta_extract(mb)));
      } else {
        int k = c.rows();
        xs = sylvester_solve(c, c + Matrix::identity(k, Scalar(s)), -mb);
      }
      put(x, idx, idx, xs);
    }
    return x;
  });
  TailResult res;
  res.gauge = Step::polynomial(detail::truncate_poly(poly_mul(t, u, q + mu), q + mu));
  res.B = gauge_transform(a, res.gauge);
  res.nf = read_real_normal_form(res.B, mu);
  res.nf.r = 1;
  return res;
}

// ---- deresonation ----

long real_deresonation_rounds(const NormalForm& nf) {
  long total = 0;
  for (const auto& idx : nf.blocks) total += block_m(nf.C, idx, is_theta_block(nf, idx));
  return total;
}

static DeresonateResult real_deresonate_impl(const System& a) {
  DeresonateResult res;
  NormalForm nf = read_real_normal_form(a, 0);
  long q = nf.q;
  int n = a.n();
  long m_max = 0, total = 0;
  std::vector<bool> theta;
  for (const auto& idx : nf.blocks) {
    theta.push_back(is_theta_block(nf, idx));
    long m = block_m(nf.C, idx, theta.back());
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
  auto measure = [&](const System& s) {
    long now = 0;
    Matrix c = tilde_coeff(s, q, q);
    for (size_t bi = 0; bi < nf.blocks.size(); ++bi) now += block_m(c, nf.blocks[bi], theta[bi]);
    return now;
  };
  System cur = a;
  if (nf.blocks.size() > 1) {
    Step t = Step::polynomial(real_eliminate_offdiagonal(a, q, m_max));
    cur = gauge_transform(cur, t);
    res.chain.push(t);
  }
  for (size_t bi = 0; bi < nf.blocks.size(); ++bi) {
    const auto& idx = nf.blocks[bi];
    if (!theta[bi]) {
      detail::deresonate_block(cur, q, idx, false, measure, res);
      continue;
    }
    if (block_m(tilde_coeff(cur, q, q), idx, true) == 0) continue;
    auto pc = propagate_c_structure(sub_system(cur, idx), q + m_max);
    Step pe = embed_step(pc.gauge, idx, n);
    cur = gauge_transform(cur, pe);
    res.chain.push(pe);
    System ext = theta_extract(sub_system(cur, idx).truncate(q + m_max));
    auto dr = deresonate(ext, true);
    for (const auto& s : dr.chain.steps) {
      Step st = embed_step(theta_embed(s), idx, n);
      cur = gauge_transform(cur, st);
      res.chain.push(st);
      if (s.kind == StepKind::DiagonalMonomial) {
        ++res.rounds;
        res.m_history.push_back(measure(cur));
      }
    }
  }
  if (!res.chain.is_real()) throw Error(ErrorCode::Internal, "real deresonation produced a non-real step");
  res.B = cur;
  res.nf = read_real_normal_form(cur, 0);
  return res;
}

// ---- full pipeline ----

std::string real_symbolic_solution(const NormalForm& nf) {
  std::ostringstream os;
  std::string t = nf.r == 1 ? "x" : "x^(1/" + std::to_string(nf.r) + ")";
  std::string var = nf.r == 1 ? "x" : "t";
  os << "Y(x) = P(" << t << ") * exp(";
  auto units = real_units(nf.D, nf.n);
  for (size_t k = 0; k < units.size(); ++k) {
    const auto& u = units[k];
    if (k) os << " (+) ";
    std::ostringstream e;
    bool any = false;
    for (long i = 0; i < nf.q; ++i) {
      Scalar c = nf.D[i](u[0], u[0]);
      if (u.size() == 2) c += nf.D[i](u[1], u[0]) * Scalar::i();
      if (c.is_zero()) continue;
      long ex = i - nf.q;
      if (any) e << " + ";
      e << "(" << (c / Scalar(ex)).str() << ")*" << var << "^" << ex;
      any = true;
    }
    std::string body = any ? e.str() : "0";
    os << (u.size() == 2 ? "theta(" + body + ")" : "[" + body + "]");
  }
  if (units.empty()) os << "[]";
  os << ") * " << var << "^C";
  if (nf.r > 1) os << ", t = " << t;
  os << ", C = " << (nf.C.rows() ? nf.C.str() : "[]");
  return os.str();
}

static FormalNormalForm real_formal_normal_form_impl(const System& a, long precision) {
  FormalNormalForm out;
  out.rank0 = rtrs_rank0(a);
  const System& b0 = out.rank0.B;
  long rounds = real_deresonation_rounds(out.rank0.nf);
  long need = rounds + precision - 1;
  if (b0.order() < need) {
    long req = required_input_order(out.rank0.chain, a.valuation(), need);
    throw PrecisionError("normal form of degree " + std::to_string(precision) + " needs input order " +
                             std::to_string(req),
                         req);
  }
  auto dr = real_deresonate(b0);
  out.deresonation_rounds = dr.rounds;
  auto et = real_eliminate_tail(dr.B, precision);
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
  out.solution = real_symbolic_solution(out.nf);
  return out;
}

// ---- public entry points ----

GaugeResult propagate_c_structure(const System& a, long mu) {
  return detail::within_tower([&] { return propagate_c_structure_impl(a, mu); });
}

Rank0Result rtrs_rank0(const System& a) {
  return detail::within_tower([&] { return rtrs_rank0_impl(a); });
}

TailResult real_eliminate_tail(const System& a, long mu) {
  return detail::within_tower([&] { return real_eliminate_tail_impl(a, mu); });
}

DeresonateResult real_deresonate(const System& a) {
  return detail::within_tower([&] { return real_deresonate_impl(a); });
}

FormalNormalForm real_formal_normal_form(const System& a, long precision) {
  return detail::within_tower([&] { return real_formal_normal_form_impl(a, precision); });
}

}  // namespace turrittin
