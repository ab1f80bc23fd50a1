#include "turrittin/poly.hpp"

#include <algorithm>
#include <cstdlib>

#include "zfactor.hpp"

namespace turrittin {

Poly::Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(const Scalar& c) {
  if (!c.is_zero()) c_.push_back(c);
}

Poly Poly::monomial(const Scalar& c, int deg) {
  if (c.is_zero()) return {};
  std::vector<Scalar> v(deg + 1);
  v[deg] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldDescriptor Poly::field() const {
  FieldDescriptor f;
  for (const auto& s : c_) f = join(f, s.field());
  return f;
}

Scalar Poly::eval(const Scalar& t) const {
  Scalar acc;
  for (int i = degree(); i >= 0; --i) acc = acc * t + c_[i];
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Scalar inv = lead().inverse();
  return scaled(inv);
}

Poly Poly::scaled(const Scalar& s) const {
  std::vector<Scalar> v = c_;
  for (auto& x : v) x *= s;
  return Poly(std::move(v));
}

Poly Poly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Scalar> v(degree());
  for (int i = 1; i <= degree(); ++i) v[i - 1] = c_[i] * Scalar(static_cast<long>(i));
  return Poly(std::move(v));
}

Poly Poly::shift(const Scalar& s) const {
  // Horner in the ring: p(x + s)
  Poly acc;
  Poly lin(std::vector<Scalar>{s, Scalar(1)});
  for (int i = degree(); i >= 0; --i) acc = acc * lin + Poly(c_[i]);
  return acc;
}

Poly Poly::apply_automorphism(int s1, int s2) const {
  std::vector<Scalar> v = c_;
  for (auto& x : v) x = x.apply_automorphism(s1, s2);
  return Poly(std::move(v));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(v));
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= degree(); ++i) {
    if (c_[i].is_zero()) continue;
    std::string cs = c_[i].str();
    bool compound = cs.find_first_of("+-", 1) != std::string::npos;
    std::string term;
    if (i == 0) {
      term = compound ? "(" + cs + ")" : cs;
    } else {
      std::string mono = var + (i > 1 ? "^" + std::to_string(i) : "");
      if (c_[i].is_one())
        term = mono;
      else if ((-c_[i]).is_one())
        term = "-" + mono;
      else
        term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Scalar> r = a.coeffs();
  std::vector<Scalar> q(a.degree() - b.degree() + 1);
  Scalar inv = b.lead().inverse();
  const auto& bc = b.coeffs();
  for (int i = a.degree(); i >= b.degree(); --i) {
    if (r[i].is_zero()) continue;
    Scalar t = r[i] * inv;
    q[i - b.degree()] = t;
    for (int j = 0; j <= b.degree(); ++j) r[i - b.degree() + j] -= t * bc[j];
  }
  r.resize(b.degree());
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

Poly pow(const Poly& p, int e) {
  Poly r(Scalar(1)), b = p;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool canonical_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (canonical_less(a.coeff(i), b.coeff(i))) return true;
    if (canonical_less(b.coeff(i), a.coeff(i))) return false;
  }
  return false;
}

int factor_degree_cap() {
  if (const char* env = std::getenv("TURRITTIN_MAX_DEGREE")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 16;
}

std::vector<Factor> squarefree_decomposition(const Poly& p) {
  // Yun's algorithm over a field of characteristic zero.
  std::vector<Factor> out;
  if (p.degree() < 1) return out;
  Poly f = p.monic();
  Poly fp = f.derivative();
  Poly a = gcd(f, fp);
  Poly b = f / a;
  Poly c = fp / a;
  Poly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly g = gcd(b, d);
    if (g.degree() > 0) out.push_back({g, i});
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

namespace {

// Automorphism sign pairs of the field over Q.
std::vector<std::pair<int, int>> automorphisms(const FieldDescriptor& f) {
  std::vector<std::pair<int, int>> out{{1, 1}};
  if (f.has_sqrt()) out.push_back({-1, 1});
  if (f.complex) {
    out.push_back({1, -1});
    if (f.has_sqrt()) out.push_back({-1, -1});
  }
  return out;
}

Scalar primitive_element(const FieldDescriptor& f) {
  Scalar a;
  if (f.has_sqrt()) a += Scalar::sqrt_of(f.d, f.embedding_sign);
  if (f.complex) a += Scalar::i();
  return a.coerce(f);
}

Poly norm_to_q(const Poly& g, const FieldDescriptor& f) {
  Poly n(Scalar(1));
  for (auto [s1, s2] : automorphisms(f)) n = n * g.apply_automorphism(s1, s2);
  for (const auto& c : n.coeffs())
    if (!c.is_rational()) throw Error(ErrorCode::Internal, "norm is not rational");
  std::vector<Scalar> v;
  for (const auto& c : n.coeffs()) v.push_back(Scalar(c.rational()));
  return Poly(std::move(v));
}

// Monic irreducible factors over Q of a squarefree rational polynomial.
std::vector<Poly> factor_squarefree_q(const Poly& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) {
    Integer dd = c.rational().get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), dd.get_mpz_t());
  }
  std::vector<Integer> zi;
  for (const auto& c : p.coeffs()) {
    Rational t = c.rational() * den;
    zi.push_back(t.get_num());
  }
  std::vector<Poly> out;
  for (const auto& fz : detail::factor_squarefree_z(zi)) {
    std::vector<Scalar> v;
    for (const auto& c : fz) v.push_back(Scalar(Rational(c)));
    out.push_back(Poly(std::move(v)).monic());
  }
  return out;
}

// Trager: irreducible factors of a squarefree polynomial over an extension of Q.
std::vector<Poly> factor_squarefree_ext(const Poly& f, const FieldDescriptor& field) {
  Scalar alpha = primitive_element(field);
  for (long s = 0; s < 64; ++s) {
    long shift = (s % 2 == 0) ? s / 2 : -(s + 1) / 2;
    Scalar sa = alpha * Scalar(shift);
    Poly g = f.shift(-sa);  // g(x) = f(x - s*alpha)
    Poly nrm = norm_to_q(g, field);
    if (gcd(nrm, nrm.derivative()).degree() > 0) continue;
    std::vector<Poly> out;
    for (const auto& ni : factor_squarefree_q(nrm)) {
      Poly h = gcd(g, ni);
      if (h.degree() > 0) out.push_back(h.shift(sa).monic());
    }
    return out;
  }
  throw Error(ErrorCode::Internal, "no squarefree norm found");
}

}  // namespace

Factorization factor_poly(const Poly& p, const FieldDescriptor& field) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroJet, "factorization of the zero polynomial");
  FieldDescriptor f = join(field, p.field());
  if (p.degree() * f.degree() > factor_degree_cap())
    throw Error(ErrorCode::DegreeCapExceeded,
                "degree " + std::to_string(p.degree()) + " over " + f.name());
  Factorization out;
  out.unit = p.lead();
  for (const auto& sq : squarefree_decomposition(p)) {
    std::vector<Poly> irr;
    if (f.kind() == FieldKind::Rationals)
      irr = factor_squarefree_q(sq.poly);
    else
      irr = factor_squarefree_ext(sq.poly, f);
    for (auto& q : irr) out.factors.push_back({q, sq.multiplicity});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& a, const Factor& b) { return canonical_less(a.poly, b.poly); });
  return out;
}

Scalar sqrt_in(const Scalar& delta, const FieldDescriptor& field) {
  FieldDescriptor f = join(field, delta.field());
  if (delta.is_zero()) return Scalar().coerce(f);
  Scalar root;
  bool found = false;
  if (delta.is_rational()) {
    Rational r;
    if (rational_sqrt(delta.rational(), &r)) {
      root = Scalar(r);
      found = true;
    } else if (sgn(delta.rational()) < 0 && rational_sqrt(-delta.rational(), &r) && f.complex) {
      root = Scalar(r) * Scalar::i();
      found = true;
    }
  }
  if (!found) {
    Poly q(std::vector<Scalar>{-delta, Scalar(0), Scalar(1)});
    for (const auto& fac : factor_poly(q, f).factors) {
      if (fac.poly.degree() == 1) {
        root = -fac.poly.coeff(0);
        found = true;
        break;
      }
    }
  }
  if (!found) throw Error(ErrorCode::UnsupportedTower, "no square root of " + delta.str() + " in " + f.name());
  root = root.coerce(f);
  if (root.is_real() && root.sign() < 0) root = -root;
  return root;
}

FieldDescriptor field_with_sqrt(const Scalar& delta, const FieldDescriptor& field, bool real_only) {
  FieldDescriptor f = join(field, delta.field());
  auto has_root = [&](const FieldDescriptor& g) {
    try {
      sqrt_in(delta, g);
      return true;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UnsupportedTower || e.code() == ErrorCode::IncompatibleField) return false;
      throw;
    }
  };
  if (has_root(f)) return f;
  std::vector<FieldDescriptor> candidates;
  if (f.kind() == FieldKind::Rationals && delta.is_rational()) {
    const Rational& q = delta.rational();
    Integer num = q.get_num() * q.get_den();
    std::int64_t s = squarefree_core(num);
    if (s > 1) candidates.push_back(FieldDescriptor::real_quadratic(s));
    if (s == -1) candidates.push_back(FieldDescriptor::gaussian());
    if (s < -1) candidates.push_back(FieldDescriptor::complexified(FieldDescriptor::real_quadratic(-s)));
  } else if (f.kind() == FieldKind::RealQuadratic) {
    candidates.push_back(FieldDescriptor::complexified(f));
  } else if (f.kind() == FieldKind::Complexified && !f.has_sqrt()) {
    // delta = a + b i; sqrt(delta) = x + y i with x^2 = (a + t)/2, t = |delta|.
    Rational a = delta.coord(0), b = delta.coord(2);
    Rational t;
    if (rational_sqrt(a * a + b * b, &t)) {
      for (const Rational& x2 : {Rational((a + t) / 2), Rational((a - t) / 2)}) {
        if (sgn(x2) == 0) continue;
        Integer num = x2.get_num() * x2.get_den();
        std::int64_t s = squarefree_core(num);
        if (s > 1) candidates.push_back(FieldDescriptor::complexified(FieldDescriptor::real_quadratic(s)));
      }
    }
  }
  for (const auto& c : candidates) {
    if (real_only && !c.is_real()) continue;
    if (has_root(c)) return c;
  }
  throw Error(ErrorCode::UnsupportedTower,
              "square root of " + delta.str() + " lies outside the supported tower over " + f.name());
}

std::pair<Scalar, Scalar> quadratic_roots(const Poly& quad, const FieldDescriptor& field) {
  if (quad.degree() != 2) throw Error(ErrorCode::PreconditionViolated, "not a quadratic");
  Poly m = quad.monic();
  Scalar b = m.coeff(1), c = m.coeff(0);
  Scalar disc = b * b - Scalar(4) * c;
  Scalar r = sqrt_in(disc, field);
  Scalar half = Scalar(Rational(1, 2));
  Scalar r1 = (-b + r) * half, r2 = (-b - r) * half;
  if (canonical_less(r2, r1)) std::swap(r1, r2);
  return {r1, r2};
}

}  // namespace turrittin
