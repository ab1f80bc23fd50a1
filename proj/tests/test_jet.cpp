#include <doctest.h>

#include <random>

#include "turrittin/jet.hpp"

using namespace turrittin;

namespace {

Jet J(long val, std::initializer_list<long> c, long order = kExact) {
  std::vector<Scalar> v;
  for (long x : c) v.push_back(Scalar(x));
  return Jet(val, v, order);
}

Jet random_jet(std::mt19937_64& rng, long val, int terms, long order) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Scalar> v;
  for (int i = 0; i < terms; ++i) v.push_back(Scalar(Rational(d(rng), 1 + (rng() % 3))));
  return Jet(val, v, order);
}

}  // namespace

TEST_CASE("jet arithmetic examples") {
  CHECK(J(-1, {1, 1}) * J(1, {1}) == J(0, {1, 1}));
  Jet z = J(-2, {1}) + J(-2, {-1});
  CHECK(z.is_zero());
  CHECK(z.valuation() == kInfValuation);
  Jet m = J(0, {1, 1}, 5) * J(-1, {1}, 5);
  CHECK(m.order() == 4);
  CHECK(m == J(-1, {1, 1}, 4));
}

TEST_CASE("jet inversion") {
  Jet inv = J(0, {1, 1}, 6).invert_unit();
  CHECK(inv == J(0, {1, -1, 1, -1, 1, -1, 1}, 6));
  CHECK(J(2, {1}).invert_unit() == J(-2, {1}));
  Jet f = J(0, {2, 1}, 8);
  Jet g = f.invert_unit();
  CHECK(g.coeff(1) == Scalar(Rational(-1, 4)));
  CHECK(g.coeff(2) == Scalar(Rational(1, 8)));
  Jet one = (f * g).truncated(g.order());
  CHECK(one == J(0, {1}, g.order()));
  CHECK_THROWS_AS(Jet().invert_unit(), Error);
}

TEST_CASE("jet derivative and substitution") {
  CHECK(J(-1, {1}).derivative() == J(-2, {-1}));
  CHECK(J(0, {7}).derivative().is_zero());
  CHECK(J(2, {1, 0, 0, 3}).derivative() == J(1, {2, 0, 0, 15}));
  CHECK(J(-1, {1, 1}).power_substitute(2) == J(-2, {1, 0, 1}));
  CHECK(J(0, {1, 2}, 7).power_substitute(1) == J(0, {1, 2}, 7));
  Jet s = J(0, {1, 1, 1}, 2).power_substitute(3);
  CHECK(s.order() == 6);
  CHECK(s == J(0, {1, 0, 0, 1, 0, 0, 1}, 6));
}

TEST_CASE("jet properties on random inputs") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Jet f = random_jet(rng, static_cast<long>(rng() % 5) - 2, 6, 6);
    Jet g = random_jet(rng, static_cast<long>(rng() % 5) - 2, 6, 7);
    if (!f.is_zero() && !g.is_zero()) CHECK((f * g).valuation() == f.valuation() + g.valuation());
    Jet lhs = (f * g).derivative();
    Jet rhs = f.derivative() * g + f * g.derivative();
    long o = std::min(lhs.order(), rhs.order());
    CHECK_MESSAGE(lhs.truncated(o) == rhs.truncated(o), f.str() << " | " << g.str() << " | " << lhs.str() << " | " << rhs.str());
    long r = 1 + static_cast<long>(rng() % 3);
    Jet a = (f * g).power_substitute(r);
    Jet b = f.power_substitute(r) * g.power_substitute(r);
    long o2 = std::min(a.order(), b.order());
    CHECK(a.truncated(o2) == b.truncated(o2));
    if (!f.is_zero()) {
      Jet fi = f.invert_unit();
      Jet prod = f * fi;
      CHECK(prod.truncated(prod.order()) == J(0, {1}, prod.order()));
    }
  }
}

TEST_CASE("jet text round trip") {
  Jet a = parse_jet("x^-2*(1 + 1/2*x)");
  CHECK(a.valuation() == -2);
  CHECK(a.coeffs().size() == 2);
  CHECK(parse_jet(a.str()) == a);
  Jet b = parse_jet("x^-1*(1) @order 3");
  CHECK(b.order() == 3);
  CHECK(parse_jet(b.str()) == b);
  Jet c = parse_jet("x^3*((1+sqrt(2)) - 2*i*x^2) @order 9");
  CHECK(parse_jet(c.str()) == c);
  CHECK_THROWS_AS(parse_jet("x^-1*(1 + x^5) @order 2"), Error);
  CHECK_THROWS_AS(parse_jet("1//2"), Error);
  CHECK_THROWS_AS(J(0, {1}, 2).coeff(3), PrecisionError);
}
