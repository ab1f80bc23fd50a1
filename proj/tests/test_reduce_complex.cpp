#include <doctest.h>

#include "helpers.hpp"
#include "turrittin/reduce_complex.hpp"

using namespace turrittin;
using namespace testutil;

namespace {

// TRS form of degree mu: D_i diagonal, [D_i, C] = 0, tail vanishes through x^(mu-1).
bool looks_trs(const System& b, long mu) {
  NormalForm nf = read_normal_form(b, mu);
  for (const auto& d : nf.D) {
    if (!d.is_diagonal()) return false;
    if (!commutator(d, nf.C).is_zero()) return false;
  }
  if (nf.q > 0 && nf.D[0].is_zero()) return false;
  for (long e = -nf.q - 1; e <= mu - 1; ++e)
    if (!nf.tail.coeff(e).is_zero()) return false;
  return true;
}

bool gauge_identity(const System& a, const Step& p) {
  System b = gauge_transform(a, p);
  System pm = p.matrix();
  return jets_agree(pm * b, a * pm - pm.derivative());
}

Matrix coef_or_zero(const Step& s, long i) {
  int n = s.n();
  return i < static_cast<long>(s.poly.size()) ? s.poly[static_cast<size_t>(i)] : Matrix(n, n);
}

Matrix E(int n, int i, int j) {
  Matrix m(n, n);
  m(i, j) = Scalar(1);
  return m;
}

// x^-(q+1) times a random polynomial whose leading coefficient has the given spectrum.
System random_supported(std::mt19937_64& rng, int n, long q, const Matrix& lead, int terms, long order) {
  Matrix t = random_invertible(rng, n);
  std::vector<Matrix> c{t.inverse() * lead * t};
  for (int i = 1; i < terms; ++i) c.push_back(random_matrix(rng, n, 2, 1));
  return System(n, -q - 1, c, order);
}

}  // namespace

TEST_CASE("splitting lemma") {
  Matrix d = Mi({{1, 0}, {0, 2}});
  System a = Sys(-2, {d, Mi({{0, 1}, {1, 0}})}, 3);
  auto r = splitting_lemma(a, Matrix::identity(2), 1, 2);
  CHECK(gauge_identity(a, r.gauge));
  CHECK(r.B.A(0) == d);
  for (long j = 1; j <= 2; ++j) {
    Matrix bj = r.B.A(j);
    CHECK(bj(0, 1).is_zero());
    CHECK(bj(1, 0).is_zero());
  }
  // T1 off-diagonal solves 1*t - t*2 = -a
  CHECK(r.gauge.poly.at(1)(0, 1) == Scalar(1));
  CHECK(r.gauge.poly.at(1)(1, 0) == Scalar(-1));

  System diag = Sys(-2, {d, Mi({{3, 0}, {0, 4}})});
  auto t = splitting_lemma(diag, Matrix::identity(2), 1, 2);
  CHECK(t.gauge.is_identity());
  CHECK(t.B == diag);

  // radial head is preserved
  Matrix m3 = Mi({{1, 2, 0}, {3, 1, 1}, {0, 1, 2}});
  Matrix i3 = Matrix::identity(3);
  System rad = Sys(-3, {i3, Matrix::diag({1, 2, 2}), m3, m3}, 2);
  auto s = splitting_lemma(rad, i3, 1, system_invariants(rad).N);
  CHECK(s.B.A(0) == i3);
  CHECK(s.B.A(1) == Matrix::diag({1, 2, 2}));
  CHECK(s.B.A(2)(0, 1).is_zero());
  CHECK(s.B.A(2)(2, 0).is_zero());

  CHECK_THROWS_AS(splitting_lemma(Sys(-2, {Matrix::identity(2), d}), Matrix::identity(2), 1, 2), Error);
}

TEST_CASE("specialization") {
  Matrix h = Mi({{0, 1}, {0, 0}});
  System a = Sys(-3, {h, Mi({{2, 3}, {5, 7}}), Mi({{1, -1}, {4, 2}})}, 3);
  auto r = specialize_coefficients(a, {2}, system_invariants(a).N);
  CHECK(gauge_identity(a, r.gauge));
  for (long j = 1; j <= system_invariants(a).N; ++j) {
    CHECK(r.B.A(j)(0, 0).is_zero());
    CHECK(r.B.A(j)(0, 1).is_zero());
  }
  CHECK(r.B.A(0) == h);
  System trivial = Sys(-2, {h});
  CHECK(specialize_coefficients(trivial, {2}, 2).gauge.is_identity());
  CHECK_THROWS_AS(specialize_coefficients(Sys(-2, {Matrix::identity(2), h}), {1, 1}, 2), Error);

  std::mt19937_64 rng(31);
  Matrix j = Matrix::identity(5, Scalar(2));
  j(0, 1) = 1;
  j(2, 3) = 1;
  j(3, 4) = 1;
  for (int t = 0; t < 5; ++t) {
    System b = System(5, -3, {Matrix::identity(5), j, random_matrix(rng, 5), random_matrix(rng, 5)}, 4);
    long N = system_invariants(b).N;
    auto s = specialize_coefficients(b, {2, 3}, N);
    for (long i = 2; i <= N; ++i) {
      Matrix bi = s.B.A(i);
      for (int u : {0, 2, 3})
        for (int v = 0; v < 5; ++v) CHECK(bi(u, v).is_zero());
    }
  }
}

TEST_CASE("shearing order and shear") {
  Matrix h = Mi({{0, 1}, {0, 0}});
  auto g = shearing_order(Sys(-2, {h, E(2, 1, 0)}));
  CHECK(g.h == 1);
  CHECK(g.r == 2);
  auto f = shearing_order(Sys(-3, {h}));
  CHECK(f.h == 2);
  CHECK(f.r == 1);
  CHECK(f.witness == "q-k");
  auto d = shearing_order(Sys(-3, {h, E(2, 1, 1)}));
  CHECK(d.h == 1);
  CHECK(d.r == 1);

  System b = shear(Sys(-2, {h}), 1);
  CHECK(b == Sys(-1, {Mi({{0, 1}, {0, -1}})}));
  CHECK(system_invariants(b).q <= 1);
  System rad = Sys(-2, {Matrix::identity(3)});
  CHECK(shear(rad, 2) == Sys(-2, {Matrix::identity(3), Matrix::diag({0, -2, -4})}));
  CHECK(shear(rad, 0) == rad);
}

TEST_CASE("rank-0 reduction examples") {
  Matrix c = Mi({{1, 2}, {3, 4}});
  auto first = trs_rank0(Sys(-1, {c, c}, 3));
  CHECK(first.chain.steps.empty());
  CHECK(first.nf.q == 0);
  CHECK(first.nf.C == c);

  System a = Sys(-2, {Matrix::diag({1, 2}), Mi({{5, 1}, {1, 7}})}, 2);
  auto r = trs_rank0(a);
  CHECK(r.nf.q == 1);
  CHECK(r.nf.r == 1);
  CHECK(r.nf.D[0] == Matrix::diag({1, 2}));
  CHECK(r.nf.C == Matrix::diag({5, 7}));
  CHECK(looks_trs(r.B, 0));
  CHECK(replay(a, r.chain) == r.B);

  // Airy-type: nilpotent leading coefficient, slope 1/2
  System airy = Sys(-2, {Mi({{0, 1}, {0, 0}}), E(2, 1, 0)}, 4);
  auto s = trs_rank0(airy);
  CHECK(s.nf.r == 2);
  CHECK(s.chain.ramification() == 2);
  CHECK(s.chain.steps.front().kind == StepKind::Ramification);
  CHECK(s.nf.q == 1);
  CHECK(looks_trs(s.B, 0));
  CHECK(s.nf.D[0](0, 0) == -s.nf.D[0](1, 1));
  CHECK(!s.nf.D[0].is_zero());

  CHECK_THROWS_AS(trs_rank0(Sys(-2, {Mi({{0, 1}, {0, 0}}), E(2, 1, 0)}, -1)), PrecisionError);
}

TEST_CASE("rank-0 reduction on random supported systems") {
  std::mt19937_64 rng(2024);
  std::vector<Matrix> leads = {Matrix::diag({1, 2, 3}),  Matrix::diag({0, 0, 1}), Mi({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}),
                               Mi({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), Mi({{0, -1, 0}, {1, 0, 0}, {0, 0, 2}}),
                               Mi({{0, 2, 0}, {1, 0, 0}, {0, 0, 0}})};
  int n_ok = 0, n_unsupported = 0;
  for (int t = 0; t < 24; ++t) {
    const Matrix& lead = leads[t % leads.size()];
    long q = 1 + t % 2;
    System a = random_supported(rng, 3, q, lead, 4, 12);
    Rank0Result r;
    try {
      try {
        r = trs_rank0(a);
      } catch (const PrecisionError& e) {
        REQUIRE(e.required() > a.rel_order());
        a = a.with_order(a.valuation() + e.required());
        r = trs_rank0(a);
      }
    } catch (const Error& e) {
      // nested square roots or cubic eigenvalues of a later leading coefficient
      REQUIRE(e.code() == ErrorCode::UnsupportedTower);
      ++n_unsupported;
      continue;
    }
    CHECK(replay(a, r.chain) == r.B);
    CHECK(looks_trs(r.B, 0));
    CHECK(r.max_loop_iterations <= 30);
    for (const auto& loop : r.measures)
      for (size_t i = 1; i < loop.size(); ++i) CHECK(loop[i] < loop[i - 1]);
    ++n_ok;
    // truncation determinacy
    auto inv = system_invariants(a);
    System a2 = a.truncate(inv.N) + System::monomial(random_matrix(rng, 3), a.valuation() + inv.N + 1);
    a2 = a2.with_order(a.order());
    auto r2 = trs_rank0(a2);
    CHECK(r2.nf.q == r.nf.q);
    CHECK(r2.nf.principal_part() == r.nf.principal_part());
  }
  MESSAGE("supported " << n_ok << ", unsupported " << n_unsupported);
  CHECK(n_ok >= 16);
}

TEST_CASE("tail elimination") {
  Scalar cc = Scalar(Rational(1, 3)), a1(5);
  System s = Sys(-1, {Matrix::identity(1, cc), Matrix::identity(1, a1)});
  auto r = eliminate_tail(s.with_order(2), 1);
  CHECK(r.gauge.poly.size() == 2);
  CHECK(r.gauge.poly[1](0, 0) == a1);
  CHECK(r.B.truncated_abs(0) == Sys(-1, {Matrix::identity(1, cc)}).truncated_abs(0));

  System d = Sys(-2, {Matrix::diag({1, 2}), Matrix(2, 2), E(2, 0, 1), E(2, 1, 0)}, 4);
  auto t = eliminate_tail(d, 2);
  CHECK(gauge_identity(d, t.gauge));
  CHECK(looks_trs(t.B, 2));
  CHECK(t.nf.principal_part() == Sys(-2, {Matrix::diag({1, 2})}));

  // coherence across mu
  std::mt19937_64 rng(77);
  for (int k = 0; k < 6; ++k) {
    std::vector<Matrix> c{Matrix::diag({1, 1, 3}), Matrix::diag({Scalar(Rational(1, 2)), Scalar(Rational(1, 3)), 0})};
    for (int i = 0; i < 6; ++i) c.push_back(random_matrix(rng, 3));
    c[1](0, 1) = Scalar(1);
    System a = System(3, -2, c, 5);
    a = trs_rank0(a).B;
    auto p1 = eliminate_tail(a, 1), p3 = eliminate_tail(a, 3);
    CHECK(looks_trs(p1.B, 1));
    CHECK(looks_trs(p3.B, 3));
    for (long i = 0; i <= 2; ++i) CHECK(coef_or_zero(p1.gauge, i) == coef_or_zero(p3.gauge, i));
  }

  CHECK_THROWS_AS(eliminate_tail(Sys(-1, {Matrix::diag({1, 0})}), 1), Error);
}

TEST_CASE("deresonation") {
  auto r1 = deresonate(Sys(-1, {Matrix::diag({1, 0})}, 2));
  CHECK(r1.rounds == 1);
  CHECK(r1.nf.C == Matrix::diag({0, 0}));
  CHECK(r1.m_history == std::vector<long>{1, 0});
  auto r2 = deresonate(Sys(-1, {Matrix::diag({2, 0})}, 2));
  CHECK(r2.rounds == 2);
  CHECK(r2.m_history == std::vector<long>{2, 1, 0});
  auto r0 = deresonate(Sys(-1, {Matrix::diag({Scalar(Rational(1, 2)), 0})}));
  CHECK(r0.chain.steps.empty());

  // q > 0 with resonance inside a D-block and coupling to another block
  System a = Sys(-2, {Matrix::diag({1, 1, 2}), Mi({{3, 1, 0}, {0, 1, 0}, {0, 0, 0}}), Mi({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}),
                      Mi({{2, 0, 1}, {0, 1, 1}, {1, 0, 2}})},
                 6);
  auto r = deresonate(a);
  CHECK(r.rounds == 2);
  CHECK(replay(a, r.chain) == r.B);
  CHECK(looks_trs(r.B, 0));
  CHECK(r.nf.D == read_normal_form(a, 0).D);
  CHECK(deresonation_rounds(r.nf) == 0);
}

TEST_CASE("formal normal form") {
  Matrix c0 = Matrix::diag({Scalar(Rational(1, 2)), Scalar(Rational(1, 3))});
  auto f = formal_normal_form(Sys(-1, {c0}), 2);
  CHECK(f.chain.steps.empty());
  CHECK(f.F == Sys(-1, {c0}));
  CHECK(f.solution.find("exp(diag(0, 0))") != std::string::npos);

  auto g = formal_normal_form(Sys(-2, {Matrix::diag({1, 2})}), 1);
  CHECK(g.F == Sys(-2, {Matrix::diag({1, 2})}));
  CHECK(g.solution.find("exp(diag((-1)*x^-1, (-2)*x^-1))") != std::string::npos);

  System res = Sys(-1, {Matrix::diag({1, 0}), Mi({{1, 2}, {3, 4}}), Mi({{0, 1}, {1, 0}})}, 4);
  auto h = formal_normal_form(res, 2);
  CHECK(h.deresonation_rounds == 1);
  CHECK(replay(res, h.chain).truncated_abs(1) == h.B.truncated_abs(1));
  CHECK(looks_trs(h.B, 2));
  CHECK(h.F.coeff(-1).is_diagonal() == (h.nf.C.is_diagonal()));

  System airy = Sys(-2, {Mi({{0, 1}, {0, 0}}), E(2, 1, 0)}, 8);
  auto ai = formal_normal_form(airy, 1);
  CHECK(ai.nf.r == 2);
  CHECK(looks_trs(ai.B, 1));
  CHECK(ai.solution.find("t = x^(1/2)") != std::string::npos);
}
