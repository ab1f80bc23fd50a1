#include "turrittin/verify.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>

namespace turrittin {

namespace {

std::string first_difference(const System& expected, const System& found) {
  long o = std::min(expected.order(), found.order());
  long lo = std::min(expected.is_zero() ? o : expected.valuation(), found.is_zero() ? o : found.valuation());
  if (expected.is_exact() && found.is_exact()) o = std::max(expected.last_degree(), found.last_degree());
  for (long e = lo; e <= o; ++e) {
    Matrix x = expected.coeff(e), y = found.coeff(e);
    if (x == y) continue;
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j)
        if (x(i, j) != y(i, j))
          return "x^" + std::to_string(e) + " entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                 "): expected " + x(i, j).str() + ", found " + y(i, j).str();
  }
  return "";
}

std::string order_text(long o) { return o >= kExact / 2 ? "exact" : std::to_string(o); }

bool commutes(const Matrix& a, const Matrix& b) { return a * b == b * a; }

bool is_theta2(const Matrix& m) {
  return m(0, 0) == m(1, 1) && m(0, 1) == -m(1, 0);
}

std::string describe(const Matrix& m, int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + m(i, j).str();
}

}  // namespace

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void VerificationReport::add(const std::string& name, bool pass, const std::string& witness) {
  checks.push_back({name, pass, witness});
}

void VerificationReport::append(const VerificationReport& other, const std::string& prefix) {
  for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.pass, c.witness});
}

std::string VerificationReport::json() const {
  nlohmann::json j;
  j["format"] = 1;
  j["all_pass"] = all_pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  return j.dump(2);
}

// ---- chain replay ----

VerificationReport check_gauge_chain(const System& a, const Chain& chain, const System& claimed) {
  VerificationReport rep;
  System cur = a;
  int index = 0;
  for (const auto& s : chain.steps) {
    ++index;
    std::string name = "step " + std::to_string(index) + " (" + step_kind_name(s.kind) + ")";
    if (s.kind == StepKind::Ramification) {
      System expected = System::monomial(Matrix::identity(cur.n(), Scalar(s.r)), s.r - 1) * cur.power_substitute(s.r);
      System next = ramify(cur, s.r);
      std::string w = first_difference(expected, next);
      rep.add(name, w.empty(), w);
      cur = next;
      continue;
    }
    System p = s.matrix();
    System next = gauge_transform(cur, s);
    System lhs = p * next, rhs = cur * p - p.derivative();
    std::string w = first_difference(rhs, lhs);
    rep.add(name + " identity P B = A P - P'", w.empty(), w.empty() ? "order " + order_text(std::min(lhs.order(), rhs.order())) : w);
    cur = next;
  }
  std::string w = first_difference(cur, claimed);
  rep.add("claimed system matches replay", w.empty(), w);
  bool provable = claimed.order() <= cur.order();
  rep.add("claimed order is provable", provable,
          "claimed " + order_text(claimed.order()) + ", replay " + order_text(cur.order()));
  return rep;
}

// ---- form predicates ----

VerificationReport check_form(const System& a, FormMode mode, long q, long mu) {
  VerificationReport rep;
  int n = a.n();
  if (a.order() < mu - 1)
    throw PrecisionError("form check needs the jet through x^" + std::to_string(mu - 1),
                         mu + q);
  // rank: nothing below x^-(q+1), and D(0) != 0 when q > 0
  bool below = a.is_zero() || a.valuation() >= -q - 1;
  rep.add("poincare rank", below, below ? "" : "valuation " + std::to_string(a.valuation()) + " < " + std::to_string(-q - 1));
  std::vector<Matrix> d;
  for (long i = 0; i < q; ++i) d.push_back(a.coeff(i - q - 1));
  Matrix c = a.coeff(-1);
  if (q > 0) rep.add("D(0) != 0", !d[0].is_zero(), d[0].is_zero() ? "x^" + std::to_string(-q - 1) + " coefficient is zero" : "");
  // tail through x^(mu-1)
  std::string tail;
  for (long e = 0; e <= mu - 1 && tail.empty(); ++e) {
    Matrix m = a.coeff(e);
    for (int i = 0; i < n && tail.empty(); ++i)
      for (int j = 0; j < n && tail.empty(); ++j)
        if (!m(i, j).is_zero()) tail = "x^" + std::to_string(e) + " entry " + describe(m, i, j);
  }
  rep.add("tail vanishes through degree " + std::to_string(mu), tail.empty(), tail);
  std::string comm;
  for (long i = 0; i < q && comm.empty(); ++i)
    if (!commutes(d[i], c)) comm = "[D_" + std::to_string(i) + ", C] != 0";
  rep.add("[D, C] = 0", comm.empty(), comm);

  if (mode == FormMode::TRS) {
    std::string diag;
    for (long i = 0; i < q && diag.empty(); ++i)
      for (int r = 0; r < n && diag.empty(); ++r)
        for (int s = 0; s < n && diag.empty(); ++s)
          if (r != s && !d[i](r, s).is_zero()) diag = "D_" + std::to_string(i) + " entry " + describe(d[i], r, s);
    rep.add("D diagonal", diag.empty(), diag);
    return rep;
  }

  // real form: every coefficient real, D = D1 (+) theta(diag), C = C1 (+) C2 with C2 a C-matrix
  std::string real;
  for (long e = a.is_zero() ? 0 : a.valuation(); e <= std::min(a.order(), mu - 1) && real.empty(); ++e) {
    Matrix m = a.coeff(e);
    if (!m.is_real()) real = "x^" + std::to_string(e) + " has a non-real entry";
  }
  rep.add("real entries", real.empty(), real);
  int found = -1;
  std::string why = "no split D1 (+) D2 fits";
  for (int n1 = n; n1 >= 0 && found < 0; --n1) {
    if ((n - n1) % 2) continue;
    bool ok = true;
    for (long i = 0; i < q && ok; ++i)
      for (int r = 0; r < n && ok; ++r)
        for (int s = 0; s < n && ok; ++s) {
          if (r == s) continue;
          bool same_pair = r >= n1 && s >= n1 && (r - n1) / 2 == (s - n1) / 2;
          if (!same_pair && !d[i](r, s).is_zero()) ok = false;
        }
    for (int u = n1; u < n && ok; u += 2) {
      bool nonreal = false;
      for (long i = 0; i < q && ok; ++i) {
        Matrix b = d[i].block(u, u, 2, 2);
        if (!is_theta2(b)) ok = false;
        if (!b(1, 0).is_zero()) nonreal = true;
      }
      if (!nonreal) ok = false;
    }
    if (!ok) continue;
    bool c_ok = c.block(0, n1, n1, n - n1).is_zero() && c.block(n1, 0, n - n1, n1).is_zero();
    for (int u = n1; u < n && c_ok; u += 2)
      for (int v = n1; v < n && c_ok; v += 2)
        if (!is_theta2(c.block(u, v, 2, 2))) c_ok = false;
    if (!c_ok) {
      why = "C is not C1 (+) C2 with a C-matrix C2 for n1 = " + std::to_string(n1);
      continue;
    }
    found = n1;
  }
  rep.add("D1 (+) theta(D2), C1 (+) C2", found >= 0, found >= 0 ? "n1 = " + std::to_string(found) : why);
  return rep;
}

// ---- invariants ----

std::vector<std::string> exponential_signature(const System& b, long r) {
  int n = b.n();
  long q = b.is_zero() ? 0 : std::max<long>(-b.valuation() - 1, 0);
  std::vector<Matrix> d;
  for (long i = 0; i < q; ++i) d.push_back(b.coeff(i - q - 1));
  auto render = [&](const std::vector<Scalar>& coeffs) {
    std::ostringstream os;
    bool any = false;
    for (long i = 0; i < q; ++i) {
      if (coeffs[static_cast<size_t>(i)].is_zero()) continue;
      Rational e(i - q, r);
      e.canonicalize();
      if (any) os << " + ";
      os << "(" << (coeffs[static_cast<size_t>(i)] / Scalar(i - q)).str() << ")*x^(" << e.get_str() << ")";
      any = true;
    }
    return any ? os.str() : std::string("0");
  };
  std::vector<std::string> out;
  for (int j = 0; j < n;) {
    bool pair = false;
    if (j + 1 < n)
      for (const auto& m : d)
        if (!m(j + 1, j).is_zero() && m(j, j + 1) == -m(j + 1, j)) pair = true;
    std::vector<Scalar> c, cc;
    for (const auto& m : d) {
      Scalar re = m(j, j);
      Scalar im = pair ? m(j + 1, j) : Scalar();
      c.push_back(re + im * Scalar::i());
      cc.push_back(re - im * Scalar::i());
    }
    out.push_back(render(c));
    if (pair) out.push_back(render(cc));
    j += pair ? 2 : 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

InvariantData invariant_data(const System& a) {
  InvariantData d;
  if (a.is_zero()) return d;
  d.nu = a.valuation();
  d.q = std::max<long>(-d.nu - 1, 0);
  // radiality index: first coefficient of x^(q+1) A that is not scalar, q if none below q
  d.k = d.q;
  for (long j = 0; j < d.q; ++j)
    if (!a.coeff(j - d.q - 1).is_scalar()) {
      d.k = j;
      break;
    }
  d.N = static_cast<long>(a.n()) * (d.q - d.k) + d.k;
  return d;
}

InvariantData invariant_data(const System& a, const System& normal_form, long r) {
  InvariantData d = invariant_data(a);
  d.has_normal_form = true;
  d.q_tilde = normal_form.is_zero() ? 0 : std::max<long>(-normal_form.valuation() - 1, 0);
  d.r = r;
  d.signature = exponential_signature(normal_form, r);
  return d;
}

VerificationReport invariants_report(const InvariantData& d) {
  VerificationReport rep;
  rep.add("nu", true, std::to_string(d.nu));
  rep.add("q", true, std::to_string(d.q));
  rep.add("k", true, std::to_string(d.k));
  rep.add("N", true, std::to_string(d.N));
  if (d.has_normal_form) {
    Rational ratio(d.q_tilde, d.r);
    ratio.canonicalize();
    rep.add("q~/r", true, ratio.get_str());
    std::string sig;
    for (const auto& s : d.signature) sig += (sig.empty() ? "" : "; ") + s;
    rep.add("exponential part", true, sig);
  }
  return rep;
}

}  // namespace turrittin
