#include "turrittin/field.hpp"

#include <ostream>
#include <sstream>

namespace turrittin {

FieldDescriptor FieldDescriptor::real_quadratic(std::int64_t d, int sign) {
  if (d <= 1) throw Error(ErrorCode::InvalidFieldDescriptor, "real quadratic radicand must exceed 1");
  Integer sq;
  if (squarefree_core(Integer(static_cast<long>(d)), &sq) != d)
    throw Error(ErrorCode::InvalidFieldDescriptor, "radicand must be squarefree");
  return {d, false, sign >= 0 ? 1 : -1};
}

FieldDescriptor FieldDescriptor::complexified(const FieldDescriptor& real) {
  FieldDescriptor f = real;
  f.complex = true;
  return f;
}

std::string FieldDescriptor::name() const {
  std::string s = "Q";
  if (d == 1 && !complex) return s;
  s += "(";
  if (d != 1) {
    s += "sqrt(" + std::to_string(d) + ")";
    if (embedding_sign < 0) s = "Q(-sqrt(" + std::to_string(d) + ")";
  }
  if (complex) s += d != 1 ? ",i" : "i";
  return s + ")";
}

FieldDescriptor FieldDescriptor::parse(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t == "Q") return rationals();
  if (t.size() < 4 || t.substr(0, 2) != "Q(" || t.back() != ')')
    throw Error(ErrorCode::InvalidFieldDescriptor, "unrecognized field '" + text + "'");
  std::string body = t.substr(2, t.size() - 3);
  FieldDescriptor f;
  if (body.size() >= 2 && body.substr(body.size() - 2) == ",i") {
    f.complex = true;
    body = body.substr(0, body.size() - 2);
  } else if (body == "i") {
    return gaussian();
  }
  int sign = 1;
  if (!body.empty() && body[0] == '-') {
    sign = -1;
    body = body.substr(1);
  }
  if (body.size() < 7 || body.substr(0, 5) != "sqrt(" || body.back() != ')')
    throw Error(ErrorCode::InvalidFieldDescriptor, "unrecognized field '" + text + "'");
  std::int64_t d = 0;
  try {
    d = std::stoll(body.substr(5, body.size() - 6));
  } catch (...) {
    throw Error(ErrorCode::InvalidFieldDescriptor, "bad radicand in '" + text + "'");
  }
  FieldDescriptor r = real_quadratic(d, sign);
  r.complex = f.complex;
  return r;
}

FieldDescriptor join(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (a.d != 1 && b.d != 1 && (a.d != b.d || a.embedding_sign != b.embedding_sign))
    throw Error(ErrorCode::IncompatibleField, a.name() + " vs " + b.name());
  FieldDescriptor f;
  f.d = a.d != 1 ? a.d : b.d;
  f.embedding_sign = a.d != 1 ? a.embedding_sign : b.embedding_sign;
  f.complex = a.complex || b.complex;
  return f;
}

bool contains(const FieldDescriptor& big, const FieldDescriptor& small) {
  if (small.complex && !big.complex) return false;
  if (small.d == 1) return true;
  return big.d == small.d && big.embedding_sign == small.embedding_sign;
}

Scalar::Scalar(const FieldDescriptor& f, const Rational& a, const Rational& b, const Rational& c,
               const Rational& e)
    : f_(f), c_{a, b, c, e} {
  if ((!f.has_sqrt() && (sgn(b) != 0 || sgn(e) != 0)) || (!f.complex && (sgn(c) != 0 || sgn(e) != 0)))
    throw Error(ErrorCode::IncompatibleField, "coordinates outside " + f.name());
  for (auto& q : c_) q.canonicalize();
}

Scalar Scalar::i() { return Scalar(FieldDescriptor::gaussian(), 0, 0, 1, 0); }

Scalar Scalar::sqrt_of(std::int64_t d, int sign) {
  return Scalar(FieldDescriptor::real_quadratic(d, sign), 0, 1);
}

Scalar Scalar::real_part() const {
  Scalar r = *this;
  r.c_[2] = 0;
  r.c_[3] = 0;
  r.f_ = f_.real_part();
  return r;
}

Scalar Scalar::imag_part() const {
  Scalar r = *this;
  r.c_[0] = c_[2];
  r.c_[1] = c_[3];
  r.c_[2] = 0;
  r.c_[3] = 0;
  r.f_ = f_.real_part();
  return r;
}

Scalar Scalar::conj() const {
  Scalar r = *this;
  r.c_[2] = -c_[2];
  r.c_[3] = -c_[3];
  return r;
}

Scalar Scalar::apply_automorphism(int s1, int s2) const {
  Scalar r = *this;
  if (s1 < 0) {
    r.c_[1] = -c_[1];
    r.c_[3] = -c_[3];
  }
  if (s2 < 0) {
    r.c_[2] = -r.c_[2];
    r.c_[3] = -r.c_[3];
  }
  return r;
}

Scalar Scalar::coerce(const FieldDescriptor& f) const {
  Scalar r = *this;
  r.f_ = join(f_, f);
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (f_ != o.f_) f_ = join(f_, o.f_);
  c_[0] += o.c_[0];
  if (f_.d != 1) c_[1] += o.c_[1];
  if (f_.complex) {
    c_[2] += o.c_[2];
    if (f_.d != 1) c_[3] += o.c_[3];
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (f_ != o.f_) f_ = join(f_, o.f_);
  c_[0] -= o.c_[0];
  if (f_.d != 1) c_[1] -= o.c_[1];
  if (f_.complex) {
    c_[2] -= o.c_[2];
    if (f_.d != 1) c_[3] -= o.c_[3];
  }
  return *this;
}

namespace {

// (a + b r)(c + e r) with r^2 = d.
inline void quad_mul(const Rational& a, const Rational& b, const Rational& c, const Rational& e,
                     const Rational& d, Rational& out0, Rational& out1) {
  Rational t0 = a * c + b * e * d;
  Rational t1 = a * e + b * c;
  out0 = std::move(t0);
  out1 = std::move(t1);
}

}  // namespace

Scalar& Scalar::operator*=(const Scalar& o) {
  if (f_ != o.f_) f_ = join(f_, o.f_);
  if (f_.d == 1 && !f_.complex) {
    c_[0] *= o.c_[0];
    return *this;
  }
  if (!f_.complex) {
    quad_mul(c_[0], c_[1], o.c_[0], o.c_[1], Rational(f_.d), c_[0], c_[1]);
    return *this;
  }
  const Rational d(f_.d);
  // (R1 + I1 i)(R2 + I2 i) = (R1 R2 - I1 I2) + (R1 I2 + I1 R2) i
  Rational rr0, rr1, ii0, ii1, ri0, ri1, ir0, ir1;
  quad_mul(c_[0], c_[1], o.c_[0], o.c_[1], d, rr0, rr1);
  quad_mul(c_[2], c_[3], o.c_[2], o.c_[3], d, ii0, ii1);
  quad_mul(c_[0], c_[1], o.c_[2], o.c_[3], d, ri0, ri1);
  quad_mul(c_[2], c_[3], o.c_[0], o.c_[1], d, ir0, ir1);
  c_[0] = rr0 - ii0;
  c_[1] = rr1 - ii1;
  c_[2] = ri0 + ir0;
  c_[3] = ri1 + ir1;
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) {
    Scalar r = *this;
    r.c_[0] = 1 / c_[0];
    return r;
  }
  const Rational d(f_.d);
  // Real part of the tower: 1/(a + b r) = (a - b r)/(a^2 - d b^2).
  auto real_inv = [&](const Rational& a, const Rational& b, Rational& o0, Rational& o1) {
    Rational den = a * a - d * b * b;
    o0 = a / den;
    o1 = -b / den;
  };
  Scalar r = *this;
  if (!f_.complex || is_real()) {
    real_inv(c_[0], c_[1], r.c_[0], r.c_[1]);
    return r;
  }
  // 1/(R + I i) = (R - I i) / (R^2 + I^2)
  Rational n0, n1, m0, m1;
  quad_mul(c_[0], c_[1], c_[0], c_[1], d, n0, n1);
  quad_mul(c_[2], c_[3], c_[2], c_[3], d, m0, m1);
  Rational inv0, inv1;
  real_inv(n0 + m0, n1 + m1, inv0, inv1);
  Rational a0, a1, b0, b1;
  quad_mul(c_[0], c_[1], inv0, inv1, d, a0, a1);
  quad_mul(c_[2], c_[3], inv0, inv1, d, b0, b1);
  r.c_[0] = a0;
  r.c_[1] = a1;
  r.c_[2] = -b0;
  r.c_[3] = -b1;
  return r;
}

int Scalar::sign() const {
  if (!is_real()) throw Error(ErrorCode::SignOfComplex, "sign of a non-real scalar");
  int sa = sgn(c_[0]);
  int sb = sgn(c_[1]) * f_.embedding_sign;
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
  // Opposite signs: compare a^2 with b^2 d exactly.
  Rational lhs = c_[0] * c_[0];
  Rational rhs = c_[1] * c_[1] * Rational(f_.d);
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;  // unreachable for squarefree d > 1
  return c > 0 ? sa : sb;
}

namespace {

void append_term(std::string& out, const Rational& coef, const std::string& unit) {
  if (sgn(coef) == 0) return;
  Rational mag = abs(coef);
  if (out.empty()) {
    if (sgn(coef) < 0) out += "-";
  } else {
    out += sgn(coef) < 0 ? "-" : "+";
  }
  if (unit.empty())
    out += mag.get_str();
  else if (mag == 1)
    out += unit;
  else
    out += mag.get_str() + "*" + unit;
}

}  // namespace

std::string Scalar::str() const {
  std::string out;
  std::string root = "sqrt(" + std::to_string(f_.d) + ")";
  append_term(out, c_[0], "");
  append_term(out, c_[1], root);
  append_term(out, c_[2], "i");
  append_term(out, c_[3], root + "*i");
  return out.empty() ? "0" : out;
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  for (int k = 0; k < 4; ++k) {
    int c = cmp(a.c_[k], b.c_[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

std::int64_t squarefree_core(const Integer& value, Integer* square_root_part) {
  if (value == 0) throw Error(ErrorCode::DivisionByZero, "squarefree core of zero");
  Integer v = abs(value);
  Integer core = 1, root = 1;
  for (unsigned long p = 2; p < 1000000 && p * p <= v; ++p) {
    if (mpz_divisible_ui_p(v.get_mpz_t(), p) == 0) continue;
    int e = 0;
    while (mpz_divisible_ui_p(v.get_mpz_t(), p) != 0) {
      v /= p;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) root *= p;
    if (e % 2) core *= p;
  }
  if (v > 1) {
    Integer s = sqrt(v);
    if (s * s == v)
      root *= s;
    else
      core *= v;
  }
  if (square_root_part) *square_root_part = root;
  if (!core.fits_slong_p()) throw Error(ErrorCode::UnsupportedTower, "radicand too large");
  long c = core.get_si();
  return value < 0 ? -c : c;
}

bool rational_sqrt(const Rational& q, Rational* root) {
  if (sgn(q) < 0) return false;
  Integer n = q.get_num(), d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
  if (root) {
    *root = Rational(Integer(sqrt(n)), Integer(sqrt(d)));
    root->canonicalize();
  }
  return true;
}

}  // namespace turrittin
