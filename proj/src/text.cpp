// Recursive-descent reader for scalar and Laurent-polynomial text.

#include <cctype>
#include <map>

#include "turrittin/jet.hpp"

namespace turrittin {

namespace {

using LPoly = std::map<long, Scalar>;

void add_into(LPoly& a, const LPoly& b, bool negate) {
  for (const auto& [d, c] : b) {
    Scalar& t = a[d];
    if (negate)
      t -= c;
    else
      t += c;
    if (t.is_zero()) a.erase(d);
  }
}

LPoly mul(const LPoly& a, const LPoly& b) {
  LPoly r;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b) {
      Scalar& t = r[da + db];
      t += ca * cb;
      if (t.is_zero()) r.erase(da + db);
    }
  return r;
}

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}

  LPoly parse_all() {
    LPoly v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "column " + std::to_string(pos_ + 1) + ": " + what + " in \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(s_.substr(start, pos_ - start));
  }
  long signed_small() {
    skip();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Integer v = integer();
    if (!v.fits_slong_p()) fail("exponent too large");
    return neg ? -v.get_si() : v.get_si();
  }

  LPoly expr() {
    LPoly v = term();
    for (;;) {
      if (eat('+'))
        add_into(v, term(), false);
      else if (eat('-'))
        add_into(v, term(), true);
      else
        return v;
    }
  }

  LPoly term() {
    LPoly v = unary();
    for (;;) {
      if (eat('*')) {
        v = mul(v, unary());
      } else if (eat('/')) {
        LPoly d = unary();
        if (d.size() != 1) fail("division by a non-monomial");
        auto [deg, c] = *d.begin();
        v = mul(v, LPoly{{-deg, c.inverse()}});
      } else {
        return v;
      }
    }
  }

  LPoly unary() {
    if (eat('-')) {
      LPoly v;
      add_into(v, unary(), true);
      return v;
    }
    if (eat('+')) return unary();
    return power();
  }

  LPoly power() {
    LPoly base = primary();
    if (!eat('^')) return base;
    long e = signed_small();
    if (e < 0) {
      if (base.size() != 1) fail("negative power of a non-monomial");
      auto [deg, c] = *base.begin();
      base = LPoly{{-deg, c.inverse()}};
      e = -e;
    }
    LPoly r{{0, Scalar(1)}};
    for (long k = 0; k < e; ++k) r = mul(r, base);
    return r;
  }

  LPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      Integer v = integer();
      if (v == 0) return {};
      return {{0, Scalar(Rational(v))}};
    }
    if (eat('(')) {
      LPoly v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (s_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      long d = signed_small();
      if (!eat(')')) fail("expected ')'");
      if (d == 0) return {};
      Integer sq;
      std::int64_t core = squarefree_core(Integer(d), &sq);
      Scalar r = Scalar(Rational(sq));
      if (core < 0) r *= Scalar::i();
      std::int64_t ac = core < 0 ? -core : core;
      if (ac != 1) r *= Scalar::sqrt_of(ac);
      return {{0, r}};
    }
    if (ch == 'x') {
      ++pos_;
      return {{1, Scalar(1)}};
    }
    if (ch == 'i') {
      ++pos_;
      return {{0, Scalar::i()}};
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(const std::string& text) {
  LPoly v = Reader(text).parse_all();
  if (v.empty()) return Scalar();
  if (v.size() != 1 || v.begin()->first != 0)
    throw Error(ErrorCode::ParseError, "expected a constant, got \"" + text + "\"");
  return v.begin()->second;
}

Jet parse_jet(const std::string& text) {
  std::string body = text;
  long order = kExact;
  size_t at = text.find('@');
  if (at != std::string::npos) {
    body = text.substr(0, at);
    std::string tail = text.substr(at + 1);
    size_t p = tail.find("order");
    if (p == std::string::npos) throw Error(ErrorCode::ParseError, "expected '@order N' in \"" + text + "\"");
    std::string num = tail.substr(p + 5);
    try {
      size_t used = 0;
      order = std::stol(num, &used);
      for (size_t k = used; k < num.size(); ++k)
        if (!std::isspace(static_cast<unsigned char>(num[k]))) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad order in \"" + text + "\"");
    }
  }
  LPoly v = Reader(body).parse_all();
  if (v.empty()) return Jet::zero(order);
  long lo = v.begin()->first, hi = v.rbegin()->first;
  if (hi > order)
    throw Error(ErrorCode::ParseError,
                "coefficient of degree " + std::to_string(hi) + " past declared order " + std::to_string(order));
  std::vector<Scalar> c(static_cast<size_t>(hi - lo + 1));
  for (const auto& [d, s] : v) c[static_cast<size_t>(d - lo)] = s;
  return Jet(lo, std::move(c), order);
}

}  // namespace turrittin
