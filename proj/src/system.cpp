#include "turrittin/system.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "turrittin/kernels.hpp"

namespace turrittin {

System::System(int n, long val, std::vector<Matrix> coef, long order)
    : n_(n), val_(val), coef_(std::move(coef)), order_(clamp_order(order)) {
  for (const auto& m : coef_)
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::PreconditionViolated, "coefficient size mismatch");
  normalize();
}

void System::normalize() {
  if (!coef_.empty() && last_degree() > order_) {
    long keep = order_ - val_ + 1;
    coef_.resize(keep > 0 ? static_cast<size_t>(keep) : 0);
  }
  size_t lead = 0;
  while (lead < coef_.size() && coef_[lead].is_zero()) ++lead;
  if (lead > 0) {
    coef_.erase(coef_.begin(), coef_.begin() + static_cast<long>(lead));
    val_ += static_cast<long>(lead);
  }
  while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
  if (coef_.empty()) val_ = 0;
}

System System::from_entries(const std::vector<std::vector<Jet>>& e) {
  int n = static_cast<int>(e.size());
  long order = kExact, lo = kInfValuation, hi = std::numeric_limits<long>::min();
  for (const auto& row : e) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::PreconditionViolated, "system must be square");
    for (const auto& j : row) {
      order = std::min(order, j.order());
      if (!j.is_zero()) {
        lo = std::min(lo, j.valuation());
        hi = std::max(hi, j.last_degree());
      }
    }
  }
  if (lo == kInfValuation) return zero(n, order);
  hi = std::min(hi, order);
  std::vector<Matrix> coef;
  for (long d = lo; d <= hi; ++d) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Jet& x = e[i][j];
        if (!x.is_zero() && d >= x.valuation() && d <= x.last_degree()) m(i, j) = x.coeff(d);
      }
    coef.push_back(std::move(m));
  }
  return System(n, lo, std::move(coef), order);
}

long System::valuation() const { return is_zero() ? kInfValuation : val_; }

long System::rel_order() const {
  if (is_exact()) return kExact;
  return is_zero() ? order_ : order_ - val_;
}

Matrix System::coeff(long abs_deg) const {
  if (abs_deg > order_)
    throw PrecisionError("coefficient of degree " + std::to_string(abs_deg) + " requested, order is " +
                         std::to_string(order_));
  if (coef_.empty() || abs_deg < val_ || abs_deg > last_degree()) return Matrix(n_, n_);
  return coef_[static_cast<size_t>(abs_deg - val_)];
}

Jet System::entry(int i, int j) const {
  std::vector<Scalar> v;
  for (const auto& m : coef_) v.push_back(m(i, j));
  return Jet(val_, std::move(v), order_);
}

FieldDescriptor System::field() const {
  FieldDescriptor f;
  for (const auto& m : coef_) f = join(f, m.field());
  return f;
}

bool System::is_real() const {
  return std::all_of(coef_.begin(), coef_.end(), [](const Matrix& m) { return m.is_real(); });
}

System System::truncated_abs(long abs_order) const {
  if (abs_order > order_)
    throw PrecisionError("truncation at " + std::to_string(abs_order) + " exceeds order " + std::to_string(order_),
                         abs_order - valuation());
  return System(n_, val_, coef_, abs_order);
}

System System::truncate(long N) const {
  if (is_zero()) throw Error(ErrorCode::ZeroSystem, "truncation of the zero system");
  long target = val_ + N;
  if (target > order_)
    throw PrecisionError("J_" + std::to_string(N) + " needs relative order " + std::to_string(N) + ", have " +
                             std::to_string(rel_order()),
                         N);
  return System(n_, val_, coef_, target);
}

System System::with_order(long abs_order) const { return System(n_, val_, coef_, std::min(order_, abs_order)); }

System System::shifted(long k) const { return System(n_, val_ + k, coef_, is_exact() ? kExact : order_ + k); }

System System::scaled(const Scalar& s) const {
  if (s.is_zero()) return zero(n_);
  std::vector<Matrix> v;
  for (const auto& m : coef_) v.push_back(m.scaled(s));
  return System(n_, val_, std::move(v), order_);
}

System System::derivative() const {
  std::vector<Matrix> v;
  for (size_t i = 0; i < coef_.size(); ++i) v.push_back(coef_[i].scaled(Scalar(val_ + static_cast<long>(i))));
  return System(n_, val_ - 1, std::move(v), is_exact() ? kExact : order_ - 1);
}

System System::power_substitute(long r) const {
  if (r < 1) throw Error(ErrorCode::PreconditionViolated, "ramification index must be positive");
  if (r == 1) return *this;
  std::vector<Matrix> v;
  if (!coef_.empty()) v.assign((coef_.size() - 1) * static_cast<size_t>(r) + 1, Matrix(n_, n_));
  for (size_t i = 0; i < coef_.size(); ++i) v[i * static_cast<size_t>(r)] = coef_[i];
  return System(n_, val_ * r, std::move(v), is_exact() ? kExact : order_ * r);
}

System System::map(Matrix (*f)(const Matrix&)) const {
  std::vector<Matrix> v;
  for (const auto& m : coef_) v.push_back(f(m));
  int n = v.empty() ? f(Matrix(n_, n_)).rows() : v[0].rows();
  return System(n, val_, std::move(v), order_);
}

System System::apply_automorphism(int s1, int s2) const {
  std::vector<Matrix> v;
  for (const auto& m : coef_) v.push_back(m.apply_automorphism(s1, s2));
  return System(n_, val_, std::move(v), order_);
}

System System::conjugated_by(const Matrix& t, const Matrix& t_inv) const {
  std::vector<Matrix> v;
  for (const auto& m : coef_) v.push_back(t_inv * m * t);
  return System(t.cols(), val_, std::move(v), order_);
}

System System::block(int i0, int j0, int rows, int cols) const {
  if (rows != cols) throw Error(ErrorCode::PreconditionViolated, "system blocks must be square");
  std::vector<Matrix> v;
  for (const auto& m : coef_) v.push_back(m.block(i0, j0, rows, cols));
  return System(rows, val_, std::move(v), order_);
}

System System::inverse(long max_rel_order) const {
  if (is_zero()) throw Error(ErrorCode::SingularGauge, "inverse of the zero system");
  Matrix a0inv;
  try {
    a0inv = coef_[0].inverse();
  } catch (const Error&) {
    throw Error(ErrorCode::SingularGauge, "leading coefficient is singular");
  }
  long rel = is_exact() ? (coef_.size() == 1 ? kExact : max_rel_order) : order_ - val_;
  if (rel >= kExact) return System(n_, -val_, {a0inv}, kExact);
  std::vector<Matrix> x(static_cast<size_t>(rel) + 1, Matrix(n_, n_));
  x[0] = a0inv;
  for (long j = 1; j <= rel; ++j) {
    Matrix acc(n_, n_);
    long top = std::min<long>(j, static_cast<long>(coef_.size()) - 1);
    for (long i = 1; i <= top; ++i) {
      const Matrix& ai = coef_[static_cast<size_t>(i)];
      if (!ai.is_zero()) acc += ai * x[static_cast<size_t>(j - i)];
    }
    x[static_cast<size_t>(j)] = -(a0inv * acc);
  }
  return System(n_, -val_, std::move(x), -val_ + rel);
}

System System::operator-() const {
  std::vector<Matrix> v;
  for (const auto& m : coef_) v.push_back(-m);
  return System(n_, val_, std::move(v), order_);
}

System operator+(const System& a, const System& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::PreconditionViolated, "system size mismatch");
  long order = std::min(a.order_, b.order_);
  if (a.is_zero()) return System(b.n_, b.val_, b.coef_, order);
  if (b.is_zero()) return System(a.n_, a.val_, a.coef_, order);
  long lo = std::min(a.val_, b.val_);
  long hi = std::min(std::max(a.last_degree(), b.last_degree()), order);
  if (hi < lo) return System::zero(a.n_, order);
  std::vector<Matrix> v(static_cast<size_t>(hi - lo + 1), Matrix(a.n_, a.n_));
  for (size_t i = 0; i < a.coef_.size(); ++i) {
    long d = a.val_ + static_cast<long>(i);
    if (d > hi) break;
    v[static_cast<size_t>(d - lo)] += a.coef_[i];
  }
  for (size_t i = 0; i < b.coef_.size(); ++i) {
    long d = b.val_ + static_cast<long>(i);
    if (d > hi) break;
    v[static_cast<size_t>(d - lo)] += b.coef_[i];
  }
  return System(a.n_, lo, std::move(v), order);
}

System operator*(const System& a, const System& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::PreconditionViolated, "system size mismatch");
  if (a.is_zero() && b.is_zero())
    return System::zero(a.n_, (a.is_exact() || b.is_exact()) ? kExact : a.order_ + b.order_ + 1);
  long t1 = (a.is_zero() || b.is_exact()) ? kExact : a.val_ + b.order_;
  long t2 = (b.is_zero() || a.is_exact()) ? kExact : b.val_ + a.order_;
  long order = clamp_order(std::min(t1, t2));
  if (a.is_zero() || b.is_zero()) return System::zero(a.n_, order);
  long lo = a.val_ + b.val_;
  long hi = std::min(a.last_degree() + b.last_degree(), order);
  if (hi < lo) return System::zero(a.n_, order);
  auto v = kernels::convolve(a.coef_, b.coef_, static_cast<size_t>(hi - lo + 1));
  return System(a.n_, lo, std::move(v), order);
}

bool operator==(const System& a, const System& b) {
  return a.n_ == b.n_ && a.order_ == b.order_ && a.coef_ == b.coef_ && (a.coef_.empty() || a.val_ == b.val_);
}

std::string System::str() const {
  std::ostringstream os;
  if (coef_.empty()) os << "0";
  for (size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i].is_zero()) continue;
    os << (i ? " + " : "") << "x^" << val_ + static_cast<long>(i) << "*" << coef_[i].str();
  }
  if (!is_exact()) os << " @order " << order_;
  return os.str();
}

System direct_sum(const System& a, const System& b) {
  long lo = std::min(a.is_zero() ? kInfValuation : a.valuation(), b.is_zero() ? kInfValuation : b.valuation());
  long order = std::min(a.order(), b.order());
  int n = a.n() + b.n();
  if (lo == kInfValuation) return System::zero(n, order);
  long hi = std::min(std::max(a.is_zero() ? lo : a.last_degree(), b.is_zero() ? lo : b.last_degree()), order);
  std::vector<Matrix> v;
  for (long d = lo; d <= hi; ++d) {
    Matrix ma = (a.is_zero() || d > a.last_degree() || d < a.valuation()) ? Matrix(a.n(), a.n()) : a.coeff(d);
    Matrix mb = (b.is_zero() || d > b.last_degree() || d < b.valuation()) ? Matrix(b.n(), b.n()) : b.coeff(d);
    v.push_back(direct_sum(ma, mb));
  }
  return System(n, lo, std::move(v), order);
}

Invariants system_invariants(const System& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroSystem, "invariants of the zero system");
  Invariants inv;
  inv.nu = a.valuation();
  inv.q = std::max<long>(-inv.nu - 1, 0);
  inv.k = inv.q;
  for (long j = 0; j < inv.q; ++j) {
    if (!a.coeff(inv.nu + j).is_scalar()) {
      inv.k = j;
      break;
    }
  }
  inv.N = determinacy_order(a.n(), inv.q, inv.k);
  return inv;
}

// ---- steps ----

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::ConstantRegular: return "constant-regular";
    case StepKind::RegularPolynomial: return "regular-polynomial";
    case StepKind::DiagonalMonomial: return "diagonal-monomial";
    case StepKind::Ramification: return "ramification";
  }
  return "unknown";
}

Step Step::constant(const Matrix& p) {
  if (p.det().is_zero()) throw Error(ErrorCode::SingularGauge, "constant gauge is singular");
  Step s;
  s.kind = StepKind::ConstantRegular;
  s.poly = {p};
  return s;
}

Step Step::polynomial(std::vector<Matrix> p) {
  while (p.size() > 1 && p.back().is_zero()) p.pop_back();
  if (p.empty()) throw Error(ErrorCode::SingularGauge, "empty polynomial gauge");
  if (p.size() == 1) return constant(p[0]);
  if (p[0].det().is_zero()) throw Error(ErrorCode::SingularGauge, "P(0) is singular");
  Step s;
  s.kind = StepKind::RegularPolynomial;
  s.poly = std::move(p);
  return s;
}

Step Step::monomial(std::vector<long> e) {
  for (long k : e)
    if (k < 0) throw Error(ErrorCode::PreconditionViolated, "monomial exponents must be non-negative");
  Step s;
  s.kind = StepKind::DiagonalMonomial;
  s.exponents = std::move(e);
  return s;
}

Step Step::ramification(long r) {
  if (r < 1) throw Error(ErrorCode::PreconditionViolated, "ramification index must be positive");
  Step s;
  s.kind = StepKind::Ramification;
  s.r = r;
  return s;
}

int Step::n() const {
  if (kind == StepKind::DiagonalMonomial) return static_cast<int>(exponents.size());
  if (kind == StepKind::Ramification) return 0;
  return poly.empty() ? 0 : poly[0].rows();
}

System Step::matrix() const {
  if (kind == StepKind::DiagonalMonomial) {
    std::vector<std::vector<Jet>> e(exponents.size(), std::vector<Jet>(exponents.size()));
    for (size_t i = 0; i < exponents.size(); ++i) e[i][i] = Jet::monomial(Scalar(1), exponents[i]);
    return System::from_entries(e);
  }
  if (kind == StepKind::Ramification) throw Error(ErrorCode::PreconditionViolated, "a ramification has no gauge matrix");
  return System(n(), 0, poly, kExact);
}

bool Step::is_identity() const {
  switch (kind) {
    case StepKind::Ramification: return r == 1;
    case StepKind::DiagonalMonomial:
      return std::all_of(exponents.begin(), exponents.end(), [](long k) { return k == 0; });
    default: return poly.size() == 1 && poly[0].is_identity();
  }
}

bool Step::is_real() const {
  return std::all_of(poly.begin(), poly.end(), [](const Matrix& m) { return m.is_real(); });
}

bool operator==(const Step& a, const Step& b) {
  return a.kind == b.kind && a.poly == b.poly && a.exponents == b.exponents && a.r == b.r;
}

long Chain::ramification() const {
  long r = 1;
  for (const auto& s : steps)
    if (s.kind == StepKind::Ramification) r *= s.r;
  return r;
}

void Chain::push(const Step& s) {
  if (!s.is_identity()) steps.push_back(s);
}

void Chain::append(const Chain& c) {
  for (const auto& s : c.steps) push(s);
}

bool Chain::is_real() const {
  return std::all_of(steps.begin(), steps.end(), [](const Step& s) { return s.is_real(); });
}

System gauge_transform(const System& a, const Step& p, long exact_depth) {
  if (!p.is_gauge()) throw Error(ErrorCode::PreconditionViolated, "ramification is not a gauge step");
  if (p.n() != a.n()) throw Error(ErrorCode::PreconditionViolated, "gauge size mismatch");
  switch (p.kind) {
    case StepKind::ConstantRegular: {
      Matrix inv = p.poly[0].inverse();
      return a.conjugated_by(p.poly[0], inv);
    }
    case StepKind::DiagonalMonomial: {
      int n = a.n();
      std::vector<std::vector<Jet>> e(n, std::vector<Jet>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          e[i][j] = a.entry(i, j).shifted(p.exponents[j] - p.exponents[i]);
          if (i == j && p.exponents[i] != 0) e[i][i] += Jet::monomial(Scalar(-p.exponents[i]), -1);
        }
      return System::from_entries(e);
    }
    case StepKind::RegularPolynomial: {
      System pm = p.matrix();
      System x = a * pm - pm.derivative();
      long target = a.is_exact() ? (a.is_zero() ? exact_depth : a.valuation() + exact_depth) : a.order();
      if (x.is_zero()) return System::zero(a.n(), a.order());
      long depth = std::max<long>(target - x.valuation(), 0);
      System b = pm.inverse(depth) * x;
      return b.with_order(target);
    }
    case StepKind::Ramification: break;
  }
  throw Error(ErrorCode::Internal, "unhandled step kind");
}

System ramify(const System& a, long r) {
  if (r == 1) return a;
  return a.power_substitute(r).shifted(r - 1).scaled(Scalar(r));
}

System apply_step(const System& a, const Step& s) {
  return s.kind == StepKind::Ramification ? ramify(a, s.r) : gauge_transform(a, s);
}

System replay(const System& a, const Chain& c) {
  System b = a;
  for (const auto& s : c.steps) b = apply_step(b, s);
  return b;
}

Step push_through_ramification(const Step& p, long r) {
  if (r == 1 || p.kind == StepKind::ConstantRegular) return p;
  Step q = p;
  if (p.kind == StepKind::DiagonalMonomial) {
    for (auto& e : q.exponents) e *= r;
  } else if (p.kind == StepKind::RegularPolynomial) {
    int n = p.n();
    q.poly.assign((p.poly.size() - 1) * static_cast<size_t>(r) + 1, Matrix(n, n));
    for (size_t i = 0; i < p.poly.size(); ++i) q.poly[i * static_cast<size_t>(r)] = p.poly[i];
  }
  return q;
}

Chain normalized(const Chain& c) {
  std::vector<Step> gauges;
  long r = 1;
  for (const auto& s : c.steps) {
    if (s.kind == StepKind::Ramification) {
      for (auto& g : gauges) g = push_through_ramification(g, s.r);
      r *= s.r;
    } else if (!s.is_identity()) {
      gauges.push_back(s);
    }
  }
  Chain out;
  if (r > 1) out.steps.push_back(Step::ramification(r));
  for (auto& g : gauges) out.steps.push_back(std::move(g));
  return out;
}

Chain embed_chain(const Chain& c, int n, int offset) {
  Chain out;
  for (const auto& s : c.steps) {
    if (s.kind == StepKind::Ramification) {
      out.steps.push_back(s);
      continue;
    }
    int m = s.n();
    if (s.kind == StepKind::DiagonalMonomial) {
      std::vector<long> e(n, 0);
      for (int i = 0; i < m; ++i) e[offset + i] = s.exponents[i];
      out.push(Step::monomial(e));
      continue;
    }
    std::vector<Matrix> poly;
    for (size_t i = 0; i < s.poly.size(); ++i) {
      Matrix big = i == 0 ? Matrix::identity(n) : Matrix(n, n);
      big.set_block(offset, offset, s.poly[i]);
      poly.push_back(big);
    }
    out.push(Step::polynomial(poly));
  }
  return out;
}

std::vector<Matrix> compose_regular(const std::vector<Step>& steps, int n, long d) {
  std::vector<Matrix> acc{Matrix::identity(n)};
  for (const auto& s : steps) {
    if (s.kind != StepKind::ConstantRegular && s.kind != StepKind::RegularPolynomial)
      throw Error(ErrorCode::PreconditionViolated, "only regular steps compose into one polynomial");
    acc = kernels::convolve(acc, s.poly, static_cast<size_t>(d + 1));
  }
  while (acc.size() > 1 && acc.back().is_zero()) acc.pop_back();
  return acc;
}

}  // namespace turrittin
