#include <doctest.h>

#include "helpers.hpp"
#include "turrittin/reduce_complex.hpp"
#include "turrittin/reduce_real.hpp"
#include "turrittin/verify.hpp"

using namespace turrittin;
using namespace testutil;

TEST_CASE("chain replay oracle") {
  std::mt19937_64 rng(12);
  System a = random_system(rng, 2, -2, 4, 3);
  CHECK(check_gauge_chain(a, Chain{}, a).all_pass());
  Chain c;
  c.push(Step::polynomial({random_invertible(rng, 2), random_matrix(rng, 2)}));
  c.push(Step::ramification(2));
  c.push(Step::monomial({0, 1}));
  System b = replay(a, c);
  auto ok = check_gauge_chain(a, c, b);
  CHECK(ok.all_pass());
  CHECK(ok.checks.size() == 5);
  // mutation: perturb one coefficient
  long e = b.valuation() + 1;
  System bad = b + System::monomial(Mi({{0, 0}, {1, 0}}), e).with_order(b.order());
  auto rep = check_gauge_chain(a, c, bad);
  CHECK(!rep.all_pass());
  bool witnessed = false;
  for (const auto& ch : rep.checks)
    if (!ch.pass) witnessed = ch.witness.find("x^" + std::to_string(e) + " entry (2,1)") != std::string::npos;
  CHECK(witnessed);
  // claiming more order than provable
  std::vector<Matrix> cs;
  for (long e = b.valuation(); e <= b.order(); ++e) cs.push_back(b.coeff(e));
  CHECK(!check_gauge_chain(a, c, System(2, b.valuation(), cs, b.order() + 3)).all_pass());
  CHECK(rep.json().find("\"all_pass\": false") != std::string::npos);
}

TEST_CASE("form predicates") {
  Matrix c0 = Mi({{1, 2}, {3, 4}});
  CHECK(check_form(Sys(-1, {c0}), FormMode::TRS, 0, 0).all_pass());
  CHECK(check_form(Sys(-2, {Matrix::identity(2), c0}), FormMode::TRS, 1, 0).all_pass());
  CHECK(!check_form(Sys(-2, {Matrix::diag({1, 2}), c0}), FormMode::TRS, 1, 0).all_pass());
  CHECK(check_form(Sys(-2, {Matrix::diag({1, 2}), Matrix::diag({3, 4}), c0}), FormMode::TRS, 1, 0).all_pass());
  CHECK(!check_form(Sys(-2, {Matrix::diag({1, 2}), Matrix::diag({3, 4}), c0}), FormMode::TRS, 1, 1).all_pass());
  CHECK(!check_form(Sys(-2, {Matrix(2, 2), Matrix::diag({3, 4})}), FormMode::TRS, 1, 0).all_pass());
  CHECK_THROWS_AS(check_form(Sys(-2, {Matrix::identity(2)}, -1), FormMode::TRS, 1, 1), PrecisionError);

  Matrix d = Matrix::identity(3);
  d(1, 2) = -1;
  d(2, 1) = 1;
  d(2, 2) = 1;
  Matrix c = Matrix::identity(3);
  c(1, 2) = Scalar(-2);
  c(2, 1) = Scalar(2);
  CHECK(check_form(Sys(-2, {d, c}), FormMode::RTRS, 1, 0).all_pass());
  CHECK(!check_form(Sys(-2, {d, c}), FormMode::TRS, 1, 0).all_pass());
  Matrix cbad = c;
  cbad(2, 1) = Scalar(3);
  CHECK(!check_form(Sys(-2, {d, cbad}), FormMode::RTRS, 1, 0).all_pass());
}

TEST_CASE("invariants and exponential signature") {
  auto d = invariant_data(Sys(-3, {Matrix::identity(2), Matrix::identity(2)}));
  CHECK(d.k == 2);
  CHECK(d.q == 2);
  CHECK(d.N == 2);
  // exponential part is invariant under regular gauges
  std::mt19937_64 rng(8);
  for (int t = 0; t < 6; ++t) {
    System a = System(2, -3, {Matrix::diag({1, 2}), random_matrix(rng, 2), random_matrix(rng, 2), random_matrix(rng, 2)}, 6);
    Step p = Step::polynomial({random_invertible(rng, 2), random_matrix(rng, 2), random_matrix(rng, 2)});
    System b = gauge_transform(a, p);
    auto ra = trs_rank0(a), rb = trs_rank0(b);
    CHECK(exponential_signature(ra.B, ra.nf.r) == exponential_signature(rb.B, rb.nf.r));
  }
  System airy = Sys(-2, {Mi({{0, 1}, {0, 0}}), Mi({{0, 0}, {1, 0}})}, 6);
  auto rc = trs_rank0(airy);
  auto rr = rtrs_rank0(airy);
  CHECK(exponential_signature(rc.B, rc.nf.r) == exponential_signature(rr.B, rr.nf.r));
  auto rep = invariants_report(invariant_data(airy, rc.B, rc.nf.r));
  CHECK(rep.checks[4].witness == "1/2");
}
