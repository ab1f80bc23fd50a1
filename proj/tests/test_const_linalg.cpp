#include <doctest.h>

#include "helpers.hpp"
#include "turrittin/const_linalg.hpp"

using namespace turrittin;
using namespace testutil;

namespace {

Poly lin(const Scalar& root) { return Poly(std::vector<Scalar>{-root, Scalar(1)}); }

int rank_of_power(const Matrix& m, int j) {
  Matrix p = Matrix::identity(m.rows());
  for (int i = 0; i < j; ++i) p = p * m;
  return p.rank();
}

}  // namespace

TEST_CASE("coprime split examples") {
  auto s1 = coprime_split(Mi({{1, 0}, {0, 2}}), lin(1), lin(2));
  CHECK(s1.T.is_identity());
  CHECK(s1.M1 == Mi({{1}}));
  CHECK(s1.M2 == Mi({{2}}));

  Matrix rot = Mi({{0, -1}, {1, 0}});
  auto s2 = coprime_split(rot, lin(Scalar::i()), lin(-Scalar::i()));
  CHECK(s2.M1 == M({{"i"}}));
  CHECK(s2.M2 == M({{"-i"}}));
  CHECK(s2.T.inverse() * rot * s2.T == direct_sum(s2.M1, s2.M2));

  auto s3 = coprime_split(Mi({{1, 1}, {0, 2}}), lin(1), lin(2));
  CHECK(s3.T == Mi({{1, 1}, {0, 1}}));
  CHECK(s3.M1 == Mi({{1}}));
  CHECK(s3.M2 == Mi({{2}}));

  CHECK_THROWS_AS(coprime_split(Mi({{1, 0}, {0, 1}}), lin(1), lin(1)), Error);
  CHECK_THROWS_AS(coprime_split(Mi({{1, 0}, {0, 2}}), lin(1), lin(3)), Error);
}

TEST_CASE("coprime split random") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
    Poly pa = a.char_poly(), pb = b.char_poly();
    if (gcd(pa, pb).degree() > 0) continue;
    Matrix p = random_invertible(rng, 4);
    Matrix m = p * direct_sum(a, b) * p.inverse();
    auto s = coprime_split(m, pa, pb);
    CHECK(s.T.inverse() * m * s.T == direct_sum(s.M1, s.M2));
    CHECK(s.M1.char_poly() == pa);
    CHECK(s.M2.char_poly() == pb);
  }
}

TEST_CASE("jordan single eigenvalue") {
  auto j1 = jordan_single_eigen(Matrix::identity(3, Scalar(5)), Scalar(5));
  CHECK(j1.sizes == std::vector<int>{1, 1, 1});
  CHECK(j1.T.is_identity());
  auto j2 = jordan_single_eigen(shifting_matrix(3), Scalar(0));
  CHECK(j2.sizes == std::vector<int>{3});
  CHECK(j2.T.is_identity());
  auto j3 = jordan_single_eigen(direct_sum(shifting_matrix(2), Matrix(1, 1)), Scalar(0));
  CHECK(j3.sizes == std::vector<int>{1, 2});
  CHECK_THROWS_AS(jordan_single_eigen(Mi({{1, 0}, {0, 2}}), Scalar(1)), Error);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> sizes;
    int n = 0;
    while (n < 5) {
      int s = 1 + static_cast<int>(rng() % 3);
      sizes.push_back(s);
      n += s;
    }
    Scalar lambda(small_rational(rng));
    Matrix j = jordan_matrix(lambda, sizes);
    Matrix p = random_invertible(rng, n);
    Matrix m = p * j * p.inverse();
    auto jd = jordan_single_eigen(m, lambda);
    std::sort(sizes.begin(), sizes.end());
    CHECK(jd.sizes == sizes);
    CHECK(jd.T.inverse() * m * jd.T == jordan_matrix(lambda, jd.sizes));
    Matrix nil = m - Matrix::identity(n, lambda);
    for (int k = 0; k <= n; ++k) {
      int expect = 0;
      for (int s : sizes) expect += std::max(s - k, 0);
      CHECK(rank_of_power(nil, k) == expect);
    }
  }
}

TEST_CASE("real canonical form") {
  Matrix rot = Mi({{0, -1}, {1, 0}});
  auto r1 = real_canonical_form(rot);
  CHECK(r1.C1.rows() == 0);
  CHECK(r1.C2 == theta_embed(M({{"i"}})));
  CHECK(r1.T.is_identity());

  auto r2 = real_canonical_form(Mi({{1, 0}, {0, 2}}));
  CHECK(r2.C1 == Mi({{1, 0}, {0, 2}}));
  CHECK(r2.C2.rows() == 0);

  Matrix m = Mi({{0, -1, 1, 0}, {1, 0, 0, 1}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  auto r3 = real_canonical_form(m);
  Matrix expect = direct_sum(rot, rot);
  expect.set_block(0, 2, Matrix::identity(2));
  CHECK(r3.C2 == expect);
  CHECK(r3.T.is_real());
  CHECK(r3.T.inverse() * m * r3.T == r3.C2);

  // spectrum needing sqrt(2) for the imaginary part
  Matrix m4 = Mi({{1, -2}, {1, 1}});
  auto r4 = real_canonical_form(m4);
  CHECK(r4.field == FieldDescriptor::real_quadratic(2));
  CHECK(is_c_matrix(r4.C2));
  CHECK(r4.C2(0, 0) == Scalar(1));
  CHECK(r4.T.inverse() * m4 * r4.T == r4.C2);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    Matrix c = direct_sum(Mi({{2, 1}, {0, 2}}), direct_sum(theta_embed(M({{"1+2*i"}})), Mi({{-1}})));
    Matrix p = random_invertible(rng, 5);
    Matrix a = p * c * p.inverse();
    auto r = real_canonical_form(a);
    CHECK(r.C1.rows() == 3);
    CHECK(r.C2 == theta_embed(M({{"1+2*i"}})));
    CHECK(r.T.inverse() * a * r.T == direct_sum(r.C1, r.C2));
  }
}

TEST_CASE("sylvester") {
  CHECK(sylvester_solve(Mi({{1}}), Mi({{2}}), Mi({{5}})) == Mi({{-5}}));
  CHECK(sylvester_solve(Mi({{1}}), Mi({{2}}), Mi({{0}})).is_zero());
  Matrix r = Mi({{0, 1}, {0, 0}}), s = Mi({{1}}), m = Mi({{1}, {1}});
  Matrix x = sylvester_solve(r, s, m);
  CHECK(x == Mi({{-2}, {-1}}));
  CHECK(r * x - x * s == m);
  CHECK_THROWS_AS(sylvester_solve(Mi({{1}}), Mi({{1}}), Mi({{1}})), Error);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_matrix(rng, 3), b = random_matrix(rng, 2);
    Matrix c(3, 2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) c(i, j) = Scalar(small_rational(rng));
    if (gcd(a.char_poly(), b.char_poly()).degree() > 0) {
      CHECK_THROWS_AS(sylvester_solve(a, b, c), Error);
      continue;
    }
    Matrix y = sylvester_solve(a, b, c);
    CHECK(a * y - y * b == c);
  }
}

TEST_CASE("gamma invariants") {
  CHECK(gamma_invariants(shifting_matrix(2)) == std::vector<int>{0, 2});
  CHECK(gamma_invariants(Matrix::identity(2, Scalar(7))) == std::vector<int>{1, 2});
  CHECK(gamma_invariants(Mi({{4}})) == std::vector<int>{1});
  std::mt19937_64 rng(5);
  for (int t = 0; t < 15; ++t) {
    std::vector<int> sizes{1, 1 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2)};
    Matrix j = direct_sum(jordan_matrix(Scalar(1), {sizes[0], sizes[1]}), jordan_matrix(Scalar(2), {sizes[2]}));
    Matrix p = random_invertible(rng, j.rows());
    Matrix m = p * j * p.inverse();
    CHECK(gamma_invariants_minors(m) == gamma_invariants_smith(m));
    CHECK(gamma_invariants_minors(m).back() == m.rows());
  }
  Matrix big = direct_sum(jordan_matrix(Scalar(0), {1, 2, 3}), Mi({{5}}));
  auto g = gamma_invariants(big);
  CHECK(g == std::vector<int>{0, 0, 0, 0, 1, 3, 7});
}

TEST_CASE("gamma monotonicity under special lower-triangular perturbation") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    std::vector<int> sizes;
    int n = 0;
    while (n < 4) {
      int s = 1 + static_cast<int>(rng() % 2);
      sizes.push_back(s);
      n += s;
    }
    std::sort(sizes.begin(), sizes.end());
    Matrix a = jordan_matrix(Scalar(0), sizes);
    Matrix g = a;
    // perturb the last row of one strictly lower block
    std::vector<int> off{0};
    for (int s : sizes) off.push_back(off.back() + s);
    if (sizes.size() < 2) continue;
    int bi = 1 + static_cast<int>(rng() % (sizes.size() - 1));
    int bj = static_cast<int>(rng() % bi);
    bool nonzero = false;
    for (int i = off[bi + 1] - 1; i < off[bi + 1]; ++i)
      for (int j = off[bj]; j < off[bj + 1]; ++j) {
        g(i, j) = Scalar(static_cast<long>(rng() % 3) - 1);
        nonzero = nonzero || !g(i, j).is_zero();
      }
    if (!nonzero) g(off[bi + 1] - 1, off[bj]) = Scalar(1);
    auto ga = gamma_invariants(a), gg = gamma_invariants(g);
    bool strict = false;
    for (int i = 0; i < n; ++i) {
      CHECK(gg[i] <= ga[i]);
      strict = strict || gg[i] < ga[i];
    }
    CHECK_MESSAGE(strict, "sizes ", sizes.size(), " block ", bi, ",", bj);
  }
}

TEST_CASE("non-special lower perturbation can keep the Jordan type") {
  // blocks (1, 2); the entry sits in the first row of the second block
  Matrix a = jordan_matrix(Scalar(0), {1, 2});
  Matrix g = a;
  g(1, 0) = Scalar(1);
  CHECK(gamma_invariants(g) == gamma_invariants(a));
  Matrix h = a;
  h(2, 0) = Scalar(1);
  CHECK(gamma_invariants(h) == std::vector<int>{0, 0, 3});
}

TEST_CASE("theta calculus") {
  CHECK(theta_embed(M({{"i"}})) == Mi({{0, -1}, {1, 0}}));
  CHECK(theta_embed(M({{"3"}})) == Matrix::identity(2, Scalar(3)));
  CHECK_THROWS_AS(theta_extract(Mi({{1, 0}, {0, 2}})), Error);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    Matrix a(2, 2), b(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        a(i, j) = Scalar(small_rational(rng)) + Scalar(small_rational(rng)) * Scalar::i();
        b(i, j) = Scalar(small_rational(rng)) + Scalar(small_rational(rng)) * Scalar::i();
      }
    CHECK(theta_extract(theta_embed(a)) == a);
    CHECK(theta_embed(a * b) == theta_embed(a) * theta_embed(b));
    CHECK(theta_embed(a + b) == theta_embed(a) + theta_embed(b));
    CHECK(is_c_matrix(theta_embed(a)));
  }
}

TEST_CASE("c completion") {
  Matrix lam = theta_embed(M({{"i"}}));
  CHECK(c_completion(lam, Mi({{1, 2}, {-2, 1}})).is_zero());
  Matrix s = Mi({{1, 0}, {0, 0}});
  Matrix x = c_completion(lam, s);
  CHECK(x == M({{"0", "1/2"}, {"0", "0"}}));
  CHECK(lam * x - x * lam + s == M({{"1/2", "0"}, {"0", "1/2"}}));
  Matrix lam2 = theta_embed(M({{"2*i"}}));
  Matrix x2 = c_completion(lam2, Mi({{0, 1}, {-3, 0}}));
  CHECK(x2(0, 0) == Scalar(Rational(1, 2)));
  CHECK(is_c_matrix(lam2 * x2 - x2 * lam2 + Mi({{0, 1}, {-3, 0}})));
  CHECK_THROWS_AS(c_completion(Matrix::identity(2), s), Error);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    Matrix l = theta_embed(Matrix::from_rows({{Scalar(small_rational(rng)) + Scalar(Rational(1 + rng() % 4)) * Scalar::i()}}));
    Matrix st = random_matrix(rng, 2);
    Matrix xt = c_completion(l, st);
    CHECK(is_c_matrix(l * xt - xt * l + st));
    CHECK(xt(1, 0).is_zero());
    CHECK(xt(1, 1).is_zero());
  }
}

TEST_CASE("resonance data") {
  auto r1 = resonance_data(Mi({{0, 0}, {0, 1}}));
  CHECK(r1.classes.size() == 1);
  CHECK(r1.m_value == 1);
  CHECK(r1.resonant());
  auto r2 = resonance_data(M({{"0", "0"}, {"0", "1/2"}}));
  CHECK(r2.classes.size() == 2);
  CHECK(r2.m_value == 0);
  CHECK_FALSE(r2.resonant());
  Matrix c(5, 5);
  const char* ev[] = {"0", "1", "3", "i", "i+2"};
  for (int i = 0; i < 5; ++i) c(i, i) = parse_scalar(ev[i]);
  auto r3 = resonance_data(c);
  CHECK(r3.classes.size() == 2);
  CHECK(r3.m_value == 5);
  for (const auto& cls : r3.classes)
    for (size_t k = 1; k < cls.members.size(); ++k) CHECK(cls.members[k - 1].offset > cls.members[k].offset);
  // conjugate pairs over the rationals: classes of factors x^2+1 and x^2-4x+5
  Matrix d = direct_sum(Mi({{0, -1}, {1, 0}}), Mi({{2, -1}, {1, 2}}));
  CHECK(resonance_data(d).m_value == 4);
  long n = 0;
  CHECK(integer_shift(lin(Scalar(0)), lin(Scalar(3)), &n));
  CHECK(n == 3);
  CHECK_FALSE(integer_shift(lin(Scalar(0)), lin(Scalar(Rational(1, 2))), &n));
}
