#include <doctest.h>

#include "helpers.hpp"
#include "turrittin/reduce_real.hpp"

using namespace turrittin;
using namespace testutil;

namespace {

Matrix theta1(long a, long b) { return Mi({{a, -b}, {b, a}}); }

// Real TRS form of degree mu, read from the unit structure of the exponential part.
bool looks_rtrs(const System& b, long mu) {
  if (!b.is_real()) return false;
  NormalForm nf = read_real_normal_form(b, mu);
  auto units = real_units(nf.D, nf.n);
  for (const auto& d : nf.D) {
    for (int i = 0; i < nf.n; ++i)
      for (int j = 0; j < nf.n; ++j) {
        bool same_unit = false;
        for (const auto& u : units)
          if (std::find(u.begin(), u.end(), i) != u.end() && std::find(u.begin(), u.end(), j) != u.end()) same_unit = true;
        if (!same_unit && !d(i, j).is_zero()) return false;
      }
    for (const auto& u : units)
      if (u.size() == 2 && !is_c_matrix(sub_matrix(d, u))) return false;
    if (!commutator(d, nf.C).is_zero()) return false;
  }
  for (const auto& idx : nf.blocks)
    if (is_theta_block(nf, idx) && !is_c_matrix(sub_matrix(nf.C, idx))) return false;
  for (long e = -nf.q - 1; e <= mu - 1; ++e)
    if (!nf.tail.coeff(e).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("C-structure propagation") {
  System a = Sys(-2, {theta1(0, 1), Mi({{1, 0}, {0, 0}}), Mi({{2, 1}, {3, 5}})}, 3);
  auto r = propagate_c_structure(a, 3);
  for (long j = 0; j <= 3; ++j) CHECK(is_c_matrix(r.B.A(j)));
  CHECK(r.B.A(0) == theta1(0, 1));
  System c = Sys(-2, {theta1(0, 1), theta1(2, 3)});
  CHECK(propagate_c_structure(c, 3).gauge.is_identity());
  // determinacy: perturbation beyond mu leaves J_mu B unchanged
  System a2 = a + System::monomial(Mi({{7, 1}, {1, 1}}), 2);
  auto r2 = propagate_c_structure(a2.with_order(3), 1);
  auto r1 = propagate_c_structure(a, 1);
  CHECK(r1.B.truncate(1) == r2.B.truncate(1));
  // non-C-matrix leading coefficient with a conjugate pair
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    Matrix p = random_invertible(rng, 4);
    Matrix lead = p.inverse() * Mi({{1, -2, 1, 0}, {2, 1, 0, 1}, {0, 0, 1, -2}, {0, 0, 2, 1}}) * p;
    System s = System(4, -3, {lead, random_matrix(rng, 4), random_matrix(rng, 4), random_matrix(rng, 4)}, 3);
    auto q = propagate_c_structure(s, 4);
    for (long j = 0; j <= 4; ++j) CHECK(is_c_matrix(q.B.A(j)));
    CHECK(q.gauge.is_real());
  }
  CHECK_THROWS_AS(propagate_c_structure(Sys(-2, {Matrix::diag({1, 2}), Matrix::identity(2)}), 2), Error);
}

TEST_CASE("real rank-0 reduction") {
  Matrix m = Mi({{0, -1}, {1, 0}});
  auto triv = rtrs_rank0(Sys(-1, {Mi({{1, 2}, {-3, 1}})}));
  CHECK(triv.nf.q == 0);
  CHECK(triv.nf.real_size == 2);

  // eigenvalues {1, i, -i}
  Matrix lead = Mi({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}});
  Matrix p = Mi({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  System a = Sys(-2, {p.inverse() * lead * p, Mi({{1, 2, 0}, {0, 1, 3}, {1, 1, 1}})}, 4);
  auto r = rtrs_rank0(a);
  CHECK(r.chain.is_real());
  CHECK(looks_rtrs(r.B, 0));
  CHECK(r.nf.real_size == 1);
  CHECK(r.nf.q == 1);
  CHECK(replay(a, r.chain) == r.B);

  // C-system of a one-dimensional complex system
  System cs = Sys(-3, {theta1(0, 1), theta1(1, 2), theta1(3, -1)}, 2);
  auto rc = rtrs_rank0(cs);
  CHECK(looks_rtrs(rc.B, 0));
  CHECK(rc.nf.D.size() == 2);
  CHECK(rc.nf.D[0] == theta1(0, 1));
  CHECK(rc.nf.D[1] == theta1(1, 2));

  // Airy-type over the reals
  System airy = Sys(-2, {Mi({{0, 1}, {0, 0}}), Mi({{0, 0}, {1, 0}})}, 4);
  auto ai = rtrs_rank0(airy);
  CHECK(ai.nf.r == 2);
  CHECK(ai.chain.is_real());
  CHECK(looks_rtrs(ai.B, 0));

  // conjugate pair below a nilpotent leading term: x^-2 [[0,1],[-1,0]] shape after shearing
  System osc = Sys(-3, {Mi({{0, 1}, {0, 0}}), Matrix(2, 2), Mi({{0, 0}, {-1, 0}})}, 6);
  auto ro = rtrs_rank0(osc);
  CHECK(ro.chain.is_real());
  CHECK(looks_rtrs(ro.B, 0));
  CHECK(ro.nf.real_size == 0);
  (void)m;
}

TEST_CASE("real rank-0 on random supported systems") {
  std::mt19937_64 rng(99);
  std::vector<Matrix> leads = {Mi({{0, -1, 0}, {1, 0, 0}, {0, 0, 2}}), Mi({{1, -3, 0, 0}, {3, 1, 0, 0}, {0, 0, 1, -3}, {0, 0, 3, 1}}),
                               Mi({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}), Mi({{2, 0, 0}, {0, 2, 0}, {0, 0, -1}})};
  int ok = 0, unsupported = 0;
  for (int t = 0; t < 16; ++t) {
    const Matrix& l = leads[t % leads.size()];
    int n = l.rows();
    Matrix p = random_invertible(rng, n);
    std::vector<Matrix> c{p.inverse() * l * p};
    for (int i = 0; i < 4; ++i) c.push_back(random_matrix(rng, n, 2, 1));
    System a(n, -2, c, 14);
    Rank0Result r;
    try {
      r = rtrs_rank0(a);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::UnsupportedTower);
      ++unsupported;
      continue;
    }
    ++ok;
    CHECK(r.chain.is_real());
    CHECK(looks_rtrs(r.B, 0));
    CHECK(replay(a, r.chain) == r.B);
    // the determinacy claim for general perturbations
    auto inv = system_invariants(a);
    System a2 = (a.truncate(inv.N) + System::monomial(random_matrix(rng, n), a.valuation() + inv.N + 1)).with_order(a.order());
    CHECK(rtrs_rank0(a2).nf.principal_part() == r.nf.principal_part());
  }
  MESSAGE("supported " << ok << ", unsupported " << unsupported);
  CHECK(ok >= 10);
}

TEST_CASE("real tail elimination") {
  System a = Sys(-2, {theta1(0, 1), Matrix(2, 2), Mi({{1, 2}, {0, 3}})}, 3);
  auto r = real_eliminate_tail(a, 2);
  CHECK(looks_rtrs(r.B, 2));
  CHECK(r.gauge.is_real());
  CHECK(r.nf.principal_part() == Sys(-2, {theta1(0, 1)}));

  Matrix d = Matrix::identity(3);
  d.set_block(1, 1, theta1(0, 1));
  System mixed = Sys(-2, {d, Matrix::diag({Scalar(Rational(1, 2)), 0, 0}), Mi({{1, 1, 1}, {2, 0, 1}, {1, 3, 0}}),
                          Mi({{0, 1, 0}, {1, 0, 2}, {1, 1, 1}})},
                     4);
  auto m = real_eliminate_tail(mixed, 2);
  CHECK(looks_rtrs(m.B, 2));
  CHECK(m.gauge.is_real());
  CHECK(m.nf.real_size == 1);

  auto z = real_eliminate_tail(Sys(-2, {theta1(0, 1)}), 2);
  CHECK(z.gauge.is_identity());
}

TEST_CASE("real deresonation") {
  auto r = real_deresonate(Sys(-1, {Matrix::diag({1, 0})}, 2));
  CHECK(r.rounds == 1);
  CHECK(r.m_history == std::vector<long>{1, 0});
  CHECK(real_deresonate(Sys(-1, {Matrix::diag({Scalar(Rational(1, 2)), 0})})).chain.steps.empty());

  // theta-radial block with an integer gap in the complex residual
  Matrix c = Matrix::identity(4);
  c.set_block(0, 0, theta1(0, 1));
  c.set_block(2, 2, theta1(0, 1));
  Matrix res = Matrix(4, 4);
  res.set_block(0, 0, theta1(1, 0));
  System a = System(4, -2, {c, res, Matrix::identity(4)}, 4);
  auto t = real_deresonate(a);
  CHECK(t.rounds == 1);
  CHECK(t.chain.is_real());
  CHECK(looks_rtrs(t.B, 0));
  CHECK(real_deresonation_rounds(t.nf) == 0);
  CHECK(replay(a, t.chain) == t.B);
}

TEST_CASE("real formal normal form") {
  System a = Sys(-2, {theta1(0, 1)});
  auto f = real_formal_normal_form(a, 2);
  CHECK(f.F == a);
  CHECK(f.chain.steps.empty());
  System b = Sys(-1, {Matrix::diag({0, Scalar(Rational(1, 2))})});
  CHECK(real_formal_normal_form(b, 2).F == b);

  Matrix lead = Mi({{2, 0, 0}, {0, 0, -1}, {0, 1, 0}});
  System mixed = Sys(-2, {lead, Mi({{1, 1, 0}, {0, 1, 1}, {1, 0, 2}}), Mi({{1, 0, 1}, {1, 1, 0}, {0, 2, 1}})}, 6);
  auto g = real_formal_normal_form(mixed, 2);
  CHECK(g.chain.is_real());
  CHECK(looks_rtrs(g.B, 2));
  CHECK(replay(mixed, g.chain).truncated_abs(1) == g.B.truncated_abs(1));
  CHECK(g.solution.find("theta(") != std::string::npos);
}
